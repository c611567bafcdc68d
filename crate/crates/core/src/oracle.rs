//! Brute-force verification of the phase-conjugation step.
//!
//! For a composite channel `h°` and a reflection vector
//! `psi = sqrt(kappa) exp(j phi)`, the beamformed SNR is
//! `p |h°^T psi|^2 / sigma^2`. Phase conjugation, `phi_m = -arg h°_m`,
//! should attain the closed form `p kappa M^2 xi° / sigma^2`, and no other
//! unit-modulus configuration should beat it.
//!
//! Trials draw random multipath far-field channels (uniform cluster count,
//! standard complex Gaussian gains with unit total variance, uniform angles)
//! combined with the near-field channel of a randomly mounted relay. Each
//! trial owns a ChaCha8 stream, `(seed, stream = trial index)`, so trials can
//! run in any order or in parallel and still reproduce bit for bit.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::{composite, far_field_channel, xi_circ, CompositeChannel, NearFieldChannel, PathCluster};
use crate::geometry::{Point3, SurfaceLayout};
use crate::link_budget::wavelength;
use crate::{Complex64, Error, Result};

/// Relative tolerance separating the algebraic identity from rounding noise.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Random reflection vectors tried against the closed form in every trial.
pub const RANDOM_CONFIGS_PER_TRIAL: usize = 100;

const CARRIERS_GHZ: [f64; 3] = [3.5, 28.0, 60.0];
const HORN_GAIN: f64 = 10.0;

/// Surface phase configuration `psi_m = sqrt(kappa) exp(j phases_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    pub phases: Vec<f64>,
    pub kappa: f64,
}

impl PhaseConfig {
    pub fn psi(&self) -> Vec<Complex64> {
        let amp = self.kappa.sqrt();
        self.phases.iter().map(|&p| Complex64::from_polar(amp, p)).collect()
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

/// Phase conjugation of the composite channel.
pub fn optimal_phases(h: &CompositeChannel, kappa: f64) -> Result<PhaseConfig> {
    if h.is_empty() {
        return Err(Error::InvalidInputs("channel must be non-empty"));
    }
    Ok(PhaseConfig {
        phases: h.entries.iter().map(|e| -e.arg()).collect(),
        kappa,
    })
}

/// `p |h°^T psi|^2 / sigma^2` for an explicit configuration.
pub fn achieved_snr(h: &CompositeChannel, config: &PhaseConfig, p: f64, sigma_sq: f64) -> Result<f64> {
    if h.len() != config.len() {
        return Err(Error::LengthMismatch {
            left: h.len(),
            right: config.len(),
        });
    }
    let amp = config.kappa.sqrt();
    let sum: Complex64 = h
        .entries
        .iter()
        .zip(&config.phases)
        .map(|(e, &phi)| e * Complex64::from_polar(amp, phi))
        .sum();
    Ok(p * sum.norm_sqr() / sigma_sq)
}

/// Closed-form optimum `p kappa M^2 xi° / sigma^2`.
pub fn closed_form_snr(h: &CompositeChannel, kappa: f64, p: f64, sigma_sq: f64) -> Result<f64> {
    let m = h.len() as f64;
    Ok(p * kappa * m * m * xi_circ(&h.entries)? / sigma_sq)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub elements: usize,
    pub clusters: usize,
    /// Relative gap between the conjugate-beamformed and closed-form SNR.
    pub rel_error: f64,
    /// 1 if the identity failed, plus one per random configuration that beat
    /// the closed form.
    pub violations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRun {
    pub seed: u64,
    pub trials: u64,
    pub max_rel_error: f64,
    pub violations: u64,
}

impl OracleRun {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Folds per-trial outcomes; order does not matter.
    pub fn from_outcomes(seed: u64, outcomes: impl IntoIterator<Item = TrialOutcome>) -> Self {
        let mut run = OracleRun {
            seed,
            trials: 0,
            max_rel_error: 0.0,
            violations: 0,
        };
        for o in outcomes {
            run.trials += 1;
            run.max_rel_error = run.max_rel_error.max(o.rel_error);
            run.violations += o.violations;
        }
        run
    }
}

/// Random composite channel with `m` elements and `l` clusters.
fn random_channel(rng: &mut ChaCha8Rng, m: usize, l: usize) -> Result<CompositeChannel> {
    let fc = CARRIERS_GHZ[rng.random_range(0..CARRIERS_GHZ.len())];
    let wl = wavelength(fc);
    let layout = SurfaceLayout::half_wavelength(m, wl)?;
    let half_w = layout.cols() as f64 * layout.pitch() / 2.0;
    let half_h = layout.rows() as f64 * layout.pitch() / 2.0;
    let offset = Point3::new(
        rng.random_range(-half_w..=half_w),
        rng.random_range(-half_h..=half_h),
        rng.random_range(2.0..50.0) * wl,
    );
    let layout = layout.with_relay_offset(offset)?;

    let scale = (0.5 / l as f64).sqrt();
    let clusters: Vec<PathCluster> = (0..l)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            PathCluster {
                alpha: Complex64::new(re, im) * scale,
                azimuth: rng.random_range(0.0..2.0 * PI),
                elevation: rng.random_range(0.0..2.0 * PI),
            }
        })
        .collect();
    let rho = 10f64.powf(-rng.random_range(2.0..12.0));
    let h = far_field_channel(&clusters, rho, &layout, wl)?;
    let g = NearFieldChannel::from_layout(&layout, fc, HORN_GAIN)?;
    composite(&h, &g)
}

/// One independent trial; a pure function of `(seed, index)`.
pub fn run_trial(seed: u64, index: u64, m_max: usize, l_max: usize) -> Result<TrialOutcome> {
    if m_max == 0 || l_max == 0 {
        return Err(Error::InvalidInputs("element and cluster limits must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let m = rng.random_range(1..=m_max);
    let l = rng.random_range(1..=l_max);
    let kappa = rng.random_range(0.05..=1.0);
    let (p, sigma_sq) = (100.0, 1e-9);

    let h = random_channel(&mut rng, m, l)?;
    let closed = closed_form_snr(&h, kappa, p, sigma_sq)?;
    let best = achieved_snr(&h, &optimal_phases(&h, kappa)?, p, sigma_sq)?;
    let rel_error = if closed > 0.0 {
        (best - closed).abs() / closed
    } else {
        best.abs()
    };
    let mut violations = u64::from(rel_error > IDENTITY_TOLERANCE);

    let ceiling = closed * (1.0 + IDENTITY_TOLERANCE);
    for _ in 0..RANDOM_CONFIGS_PER_TRIAL {
        let config = PhaseConfig {
            phases: (0..m).map(|_| rng.random_range(0.0..2.0 * PI)).collect(),
            kappa,
        };
        if achieved_snr(&h, &config, p, sigma_sq)? > ceiling {
            violations += 1;
        }
    }
    Ok(TrialOutcome {
        elements: m,
        clusters: l,
        rel_error,
        violations,
    })
}

/// Sequential Monte-Carlo check over `trials` random channels with at most
/// `m_max` elements and `l_max` clusters.
pub fn monte_carlo_verify(seed: u64, trials: u64, m_max: usize, l_max: usize) -> Result<OracleRun> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let outcomes = (0..trials)
        .map(|i| run_trial(seed, i, m_max, l_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleRun::from_outcomes(seed, outcomes))
}
