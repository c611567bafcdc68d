//! Parallel driver for the phase-conjugation oracle.

use std::io::Write;

use rayon::prelude::*;
use rir_core::oracle::{run_trial, OracleRun, TrialOutcome};

use crate::SimError;

pub const DEFAULT_M_MAX: usize = 64;
pub const DEFAULT_L_MAX: usize = 4;

/// Runs every trial on the current rayon pool. Each trial owns its RNG
/// stream, so the aggregate matches the sequential run exactly.
pub fn verify_parallel(
    seed: u64,
    trials: u64,
    m_max: usize,
    l_max: usize,
) -> Result<(OracleRun, Vec<TrialOutcome>), SimError> {
    if trials == 0 {
        return Err(rir_core::Error::NoTrials.into());
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(seed, i, m_max, l_max))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((OracleRun::from_outcomes(seed, outcomes.iter().copied()), outcomes))
}

pub fn summary_line(run: &OracleRun) -> String {
    format!(
        "oracle seed={} trials={} max_rel_error={:.3e} violations={} {}",
        run.seed,
        run.trials,
        run.max_rel_error,
        run.violations,
        if run.passed() { "PASS" } else { "FAIL" }
    )
}

pub fn write_trials_csv<W: Write>(outcomes: &[TrialOutcome], out: W) -> Result<(), SimError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["trial", "elements", "clusters", "rel_error", "violations"])?;
    for (i, o) in outcomes.iter().enumerate() {
        w.write_record([
            i.to_string(),
            o.elements.to_string(),
            o.clusters.to_string(),
            format!("{:.9e}", o.rel_error),
            o.violations.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
