use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rir_sim::config::IrsConventionSetting;
use rir_sim::output::{emit_csv, write_csv};
use rir_sim::presets::{self, FigureKind};
use rir_sim::verify::{summary_line, verify_parallel, write_trials_csv, DEFAULT_L_MAX, DEFAULT_M_MAX};
use rir_sim::{resolve_output, run_rate_sweep, run_sizing_sweep, with_workers, ChannelMode, SweepConfig, SweepRow};

#[derive(Parser)]
#[command(name = "rir", version, about = "Rates and element counts for relay-aided reconfigurable surfaces")]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral efficiency sweep.
    Rates {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum element count for a target spectral efficiency.
    Sizing {
        #[arg(long)]
        config: PathBuf,
        /// Target rate in bps/Hz; overrides `target_rate` in the config.
        #[arg(long)]
        target: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check phase conjugation against random phase configurations.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        l_max: usize,
        /// Per-trial CSV.
        #[arg(long)]
        trials_out: Option<PathBuf>,
    },
    /// Regenerate one of the bundled figure datasets.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=6))]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        target: Option<f64>,
        #[arg(long, value_enum)]
        irs_convention: Option<ConventionArg>,
        /// Print the preset as JSON instead of running it.
        #[arg(long)]
        print_config: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Los,
    UpperBound,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Single,
    Double,
}

fn write_rows(rows: &[SweepRow], path: Option<PathBuf>) -> Result<()> {
    match path {
        Some(p) => {
            emit_csv(rows, &p)?;
            eprintln!("wrote {} rows to {}", rows.len(), p.display());
        }
        None => write_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

fn load(path: &Path) -> Result<SweepConfig> {
    SweepConfig::load(path).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let workers = cli.workers;
    if workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    match cli.command {
        Command::Rates { config, out } => {
            let cfg = load(&config)?;
            let rows = with_workers(workers, || run_rate_sweep(&cfg))??;
            write_rows(&rows, resolve_output(out, cfg.output_path.clone(), "rates.csv"))?;
        }
        Command::Sizing { config, target, out } => {
            let mut cfg = load(&config)?;
            if target.is_some() {
                cfg.target_rate = target;
            }
            let rows = with_workers(workers, || run_sizing_sweep(&cfg))??;
            write_rows(&rows, resolve_output(out, cfg.output_path.clone(), "sizing.csv"))?;
        }
        Command::Verify {
            seed,
            trials,
            m_max,
            l_max,
            trials_out,
        } => {
            let (run, outcomes) = with_workers(workers, || verify_parallel(seed, trials, m_max, l_max))??;
            if let Some(p) = trials_out {
                let f = std::fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                write_trials_csv(&outcomes, io::BufWriter::new(f))?;
            }
            println!("{}", summary_line(&run));
            io::stdout().flush()?;
            if !run.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Figure {
            id,
            out,
            mode,
            target,
            irs_convention,
            print_config,
        } => {
            let mut fig = presets::figure(id).expect("id range checked by clap");
            if let Some(m) = mode {
                fig.config.mode = match m {
                    ModeArg::Exact => ChannelMode::Exact,
                    ModeArg::Los => ChannelMode::Los,
                    ModeArg::UpperBound => ChannelMode::UpperBound,
                };
            }
            if target.is_some() {
                fig.config.target_rate = target;
            }
            if let Some(c) = irs_convention {
                fig.config.irs_convention = match c {
                    ConventionArg::Single => IrsConventionSetting::Single,
                    ConventionArg::Double => IrsConventionSetting::Double,
                };
            }
            if print_config {
                println!("{}", fig.config.to_json());
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = &fig.config;
            let rows = with_workers(workers, || match fig.kind {
                FigureKind::Rates => run_rate_sweep(cfg),
                FigureKind::Sizing => run_sizing_sweep(cfg),
            })??;
            write_rows(&rows, resolve_output(out, None, &fig.default_file_name()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
