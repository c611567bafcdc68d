//! Rate and sizing sweeps over element count or distance.
//!
//! Each axis point is evaluated independently on the current rayon pool and
//! the results are collected in axis order, so the output never depends on
//! scheduling or on the number of workers.

use rayon::prelude::*;
use rir_core::channel::{
    check_energy_conservation, direction_angles, eta, ChannelStats, FarFieldChannel, NearFieldChannel,
};
use rir_core::geometry::{NodePositions, Point3, SurfaceLayout};
use rir_core::link_budget::RadioConfig;
use rir_core::rates::{
    rate_af_relay, rate_df_relay, rate_irs, rate_rir_af, rate_rir_df, BetaPolicy, IrsChannel,
    IrsInputs, Powers, RateReport, RelayInputs, RirChannel, RirInputs,
};
use rir_core::sizing::{elements_irs, elements_rir_af, elements_rir_df, SizingReport, SizingTarget};

use crate::config::{Architecture, BetaSetting, ChannelMode, SweepAxis, SweepConfig};
use crate::SimError;

/// One CSV line.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: f64,
    pub architecture: Architecture,
    /// `None` for architectures without an AF gain.
    pub beta: Option<BetaSetting>,
    pub rate_bps_hz: Option<f64>,
    pub m_required: Option<u64>,
    pub m_real: Option<f64>,
    pub branch: String,
}

pub const INFEASIBLE: &str = "infeasible";

/// Large-scale link state at one distance.
#[derive(Debug, Clone, Copy)]
struct Link {
    nodes: NodePositions,
    rho_t: f64,
    rho_r: f64,
}

impl Link {
    fn at(config: &SweepConfig, radio: &RadioConfig, d_x: f64) -> Result<Self, SimError> {
        let geometry = config.geometry.to_geometry().with_d_x(d_x);
        let nodes = geometry.place_nodes()?;
        Ok(Self {
            nodes,
            rho_t: radio.path_gain(nodes.tx_link())?,
            rho_r: radio.path_gain(nodes.rx_link())?,
        })
    }
}

/// Global frame to the surface frame. The panel stands vertically at the
/// node and faces the baseline: its columns run along global `x`, its rows
/// along global `z`, and its normal points along global `-y`.
fn to_surface_frame(v: Point3) -> Point3 {
    Point3::new(v.x, v.z, -v.y)
}

/// Everything a rate evaluation needs at one axis point.
struct RateContext {
    powers: Powers,
    kappa: f64,
    elements: u64,
    link: Link,
    rir: RirChannel,
    irs: IrsChannel,
}

impl RateContext {
    fn build(config: &SweepConfig, radio: &RadioConfig, powers: Powers, axis: f64) -> Result<Self, SimError> {
        let (elements, d_x) = match config.sweep_axis {
            SweepAxis::Elements => (axis as u64, config.geometry.d_x),
            SweepAxis::Distance => (config.elements.unwrap_or(1), axis),
        };
        let link = Link::at(config, radio, d_x)?;
        let (rho_t, rho_r) = (link.rho_t, link.rho_r);
        let (rir, irs) = match config.mode {
            ChannelMode::UpperBound => (
                RirChannel::UpperBound { rho_t, rho_r },
                IrsChannel::UpperBound {
                    zeta_t: rho_t,
                    zeta_r: rho_r,
                },
            ),
            ChannelMode::Los => {
                let layout = surface_layout(config, radio, elements)?;
                let g = NearFieldChannel::magnitudes_for(&layout, radio.fc_ghz, radio.horn_gain)?;
                check_energy_conservation(&g)?;
                let e = eta(&g)?;
                (
                    RirChannel::Los {
                        rho_t,
                        rho_r,
                        eta_t: e,
                        eta_r: e,
                    },
                    IrsChannel::Los { rho_t, rho_r },
                )
            }
            ChannelMode::Exact => {
                let layout = surface_layout(config, radio, elements)?;
                let wl = radio.wavelength();
                let g = NearFieldChannel::from_layout(&layout, radio.fc_ghz, radio.horn_gain)?;
                check_energy_conservation(&g.magnitudes)?;
                let n = link.nodes;
                let (az_t, el_t) = direction_angles(to_surface_frame(n.node - n.tx));
                let (az_r, el_r) = direction_angles(to_surface_frame(n.rx - n.node));
                let h_t = FarFieldChannel::los(rho_t, az_t, el_t, &layout, wl);
                let h_r = FarFieldChannel::los(rho_r, az_r, el_r, &layout, wl);
                let stats = ChannelStats::compute(&h_t, &g, &h_r, &g)?;
                (
                    RirChannel::Exact {
                        xi_circ_t: stats.xi_circ_t,
                        xi_circ_r: stats.xi_circ_r,
                    },
                    IrsChannel::Exact { xi: stats.xi },
                )
            }
        };
        Ok(Self {
            powers,
            kappa: radio.kappa,
            elements,
            link,
            rir,
            irs,
        })
    }

    fn rate(&self, config: &SweepConfig, arch: Architecture, beta: BetaPolicy) -> Result<RateReport, SimError> {
        let report = match arch {
            Architecture::Irs => rate_irs(&IrsInputs {
                elements: self.elements,
                kappa: self.kappa,
                powers: self.powers,
                channel: self.irs,
                convention: config.irs_convention.to_convention(),
            })?,
            Architecture::DfRelay | Architecture::AfRelay => {
                let inputs = RelayInputs {
                    powers: self.powers,
                    zeta_t: self.link.rho_t,
                    zeta_r: self.link.rho_r,
                    beta,
                };
                if arch == Architecture::DfRelay {
                    rate_df_relay(&inputs)?
                } else {
                    rate_af_relay(&inputs)?
                }
            }
            Architecture::RirDf | Architecture::RirAf => {
                let inputs = RirInputs {
                    elements: self.elements,
                    kappa: self.kappa,
                    powers: self.powers,
                    channel: self.rir,
                    beta,
                };
                if arch == Architecture::RirDf {
                    rate_rir_df(&inputs)?
                } else {
                    rate_rir_af(&inputs)?
                }
            }
        };
        Ok(report)
    }
}

fn surface_layout(config: &SweepConfig, radio: &RadioConfig, elements: u64) -> Result<SurfaceLayout, SimError> {
    let wl = radio.wavelength();
    let m = usize::try_from(elements).map_err(|_| rir_core::Error::InvalidLayout("element count too large"))?;
    Ok(SurfaceLayout::new(m, wl / 2.0, config.radio.relay_height_wavelengths * wl)?)
}

/// `(architecture, beta)` pairs in output order.
fn variants(config: &SweepConfig) -> Vec<(Architecture, Option<BetaSetting>)> {
    config
        .sorted_architectures()
        .into_iter()
        .flat_map(|a| {
            if a.uses_beta() {
                config.beta_values_db.iter().map(|&b| (a, Some(b))).collect()
            } else {
                vec![(a, None)]
            }
        })
        .collect()
}

fn policy(beta: Option<BetaSetting>) -> BetaPolicy {
    BetaPolicy::from_db(beta.and_then(BetaSetting::db))
}

fn collect_points<F>(axis: Vec<f64>, eval: F) -> Result<Vec<SweepRow>, SimError>
where
    F: Fn(f64) -> Result<Vec<SweepRow>, SimError> + Sync + Send,
{
    let per_point = axis.into_par_iter().map(eval).collect::<Result<Vec<_>, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Spectral efficiency of every configured architecture at every axis point.
pub fn run_rate_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, SimError> {
    config.validate_rates()?;
    let radio = config.radio.to_radio();
    radio.validate()?;
    let powers = Powers::from_radio(&radio)?;
    let variants = variants(config);
    collect_points(config.sorted_axis(), |axis| {
        let ctx = RateContext::build(config, &radio, powers, axis)?;
        variants
            .iter()
            .map(|&(arch, beta)| {
                let r = ctx.rate(config, arch, policy(beta))?;
                Ok(SweepRow {
                    axis,
                    architecture: arch,
                    beta,
                    rate_bps_hz: Some(r.rate),
                    m_required: None,
                    m_real: None,
                    branch: r.branch.as_str().to_owned(),
                })
            })
            .collect()
    })
}

fn size_one(
    target: &SizingTarget,
    config: &SweepConfig,
    kappa: f64,
    powers: Powers,
    link: &Link,
    arch: Architecture,
    beta: BetaPolicy,
) -> rir_core::Result<SizingReport> {
    let (rho_t, rho_r) = (link.rho_t, link.rho_r);
    let rir = RirInputs {
        elements: 1,
        kappa,
        powers,
        channel: RirChannel::UpperBound { rho_t, rho_r },
        beta,
    };
    match arch {
        Architecture::Irs => elements_irs(
            target,
            &IrsInputs {
                elements: 1,
                kappa,
                powers,
                channel: IrsChannel::UpperBound {
                    zeta_t: rho_t,
                    zeta_r: rho_r,
                },
                convention: config.irs_convention.to_convention(),
            },
        ),
        Architecture::RirDf => elements_rir_df(target, &rir),
        Architecture::RirAf => elements_rir_af(target, &rir),
        Architecture::DfRelay | Architecture::AfRelay => {
            unreachable!("rejected by validate_sizing")
        }
    }
}

/// Minimum elements per panel for the configured target rate at every
/// distance. Points the solvers report as infeasible become rows with
/// branch `infeasible`.
pub fn run_sizing_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, SimError> {
    config.validate_sizing()?;
    let radio = config.radio.to_radio();
    radio.validate()?;
    let powers = Powers::from_radio(&radio)?;
    let target = SizingTarget::new(config.target_rate.expect("checked by validate_sizing"))?;
    let variants = variants(config);
    collect_points(config.sorted_axis(), |d_x| {
        let link = Link::at(config, &radio, d_x)?;
        variants
            .iter()
            .map(|&(arch, beta)| {
                let row = SweepRow {
                    axis: d_x,
                    architecture: arch,
                    beta,
                    rate_bps_hz: None,
                    m_required: None,
                    m_real: None,
                    branch: INFEASIBLE.to_owned(),
                };
                match size_one(&target, config, radio.kappa, powers, &link, arch, policy(beta)) {
                    Ok(rep) => Ok(SweepRow {
                        m_required: Some(rep.m_required),
                        m_real: Some(rep.m_real),
                        branch: rep.branch.as_str().to_owned(),
                        ..row
                    }),
                    Err(rir_core::Error::Infeasible(_)) => Ok(row),
                    Err(e) => Err(e.into()),
                }
            })
            .collect()
    })
}

/// Runs `f` on a dedicated pool with `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SimError> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| SimError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
