//! Minimum element counts for a target spectral efficiency.
//!
//! Each solver inverts the matching closed form in [`crate::rates`] to get
//! a real-valued bound `m_real`, then settles on the smallest integer `M`
//! for which the rate engine itself reports at least the target rate. The
//! integer answer is therefore tight by construction: `rate(M) >= R_lim`
//! and `rate(M - 1) < R_lim`.

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::rates::{
    af_gain_cap, rate_irs, rate_rir_af, rate_rir_df, BetaPolicy, IrsConvention, IrsInputs, RirInputs,
};
use crate::{Error, Result};

/// Largest element count the solvers report; beyond this `f64` no longer
/// resolves single elements.
pub const MAX_ELEMENTS: f64 = 9.0e15;

const MAX_SETTLE_STEPS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizingTarget {
    /// Target spectral efficiency, bps/Hz.
    pub r_lim: f64,
    /// Matching SNR threshold, `2^r_lim - 1`.
    pub gamma_lim: f64,
}

impl SizingTarget {
    pub fn new(r_lim: f64) -> Result<Self> {
        if !(r_lim > 0.0 && r_lim.is_finite()) {
            return Err(Error::InvalidInputs("target rate must be positive"));
        }
        Ok(Self {
            r_lim,
            gamma_lim: r_lim.exp2() - 1.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizingBranch {
    /// Classical surface with `2M` elements; `M` is reported.
    Irs2M,
    /// Classical surface with `M` elements.
    IrsM,
    RirDf,
    RirAfGainLimited,
    RirAfPowerLimited,
}

impl SizingBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            SizingBranch::Irs2M => "irs_2m",
            SizingBranch::IrsM => "irs_m",
            SizingBranch::RirDf => "rir_df",
            SizingBranch::RirAfGainLimited => "rir_af_gain_limited",
            SizingBranch::RirAfPowerLimited => "rir_af_power_limited",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizingReport {
    pub m_required: u64,
    pub m_real: f64,
    pub branch: SizingBranch,
}

/// Positive root `x` of `a x^2 - b x - c = 0`, for `a > 0`, `c >= 0`.
pub fn positive_quadratic_root(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidCoefficients("leading coefficient must be positive"));
    }
    if !(c >= 0.0 && c.is_finite()) || !b.is_finite() {
        return Err(Error::InvalidCoefficients("constant term must be non-negative"));
    }
    let disc = (b * b + 4.0 * a * c).sqrt();
    if !disc.is_finite() {
        return Err(Error::InvalidCoefficients("discriminant overflows"));
    }
    // Pick the form that avoids cancellation between b and the discriminant.
    let x = if b >= 0.0 {
        (b + disc) / (2.0 * a)
    } else {
        2.0 * c / (disc - b)
    };
    Ok(x)
}

/// Positive real root `M` of the quartic `a M^4 - b M^2 - c = 0`.
pub fn solve_positive_root(a: f64, b: f64, c: f64) -> Result<f64> {
    positive_quadratic_root(a, b, c).map(f64::sqrt)
}

fn settle(m_real: f64, target: &SizingTarget, rate: impl Fn(u64) -> Result<f64>) -> Result<u64> {
    if m_real.is_nan() || m_real > MAX_ELEMENTS {
        return Err(Error::Infeasible("required element count is out of range"));
    }
    let mut m = (m_real.ceil() as u64).max(1);
    // The closed form and the rate engine can disagree by rounding at an
    // exact integer; walk to the integer the rate engine accepts.
    let start = m;
    while rate(m)? < target.r_lim {
        m += 1;
        if m - start > MAX_SETTLE_STEPS {
            return Err(Error::Infeasible("closed form disagrees with the rate engine"));
        }
    }
    while m > 1 && rate(m - 1)? >= target.r_lim {
        m -= 1;
    }
    Ok(m)
}

/// Classical surface: `M >= (1/k) sqrt(gamma_lim sigma2^2 / (p_t kappa xi))`
/// where the surface has `k M` elements.
pub fn elements_irs(target: &SizingTarget, inputs: &IrsInputs) -> Result<SizingReport> {
    let xi = inputs.channel.xi();
    let p = &inputs.powers;
    let denom = p.p_t * inputs.kappa * xi;
    if !(denom > 0.0) {
        return Err(Error::Infeasible("zero end-to-end channel gain"));
    }
    let factor = inputs.convention.factor();
    let m_real = (target.gamma_lim * p.sigma2_sq / denom).sqrt() / factor;
    let m_required = settle(m_real, target, |m| {
        rate_irs(&IrsInputs { elements: m, ..*inputs }).map(|r| r.rate)
    })?;
    let branch = match inputs.convention {
        IrsConvention::Double => SizingBranch::Irs2M,
        IrsConvention::Single => SizingBranch::IrsM,
    };
    Ok(SizingReport {
        m_required,
        m_real,
        branch,
    })
}

/// Relay-aided surface with DF relay. The weaker hop sets the size:
/// `M^n >= (gamma_lim / kappa) max(sigma1^2/(p_t s_t), sigma2^2/(p_r s_r))`,
/// with `n = 2` for exact/LOS statistics and `n = 1` under the bound.
pub fn elements_rir_df(target: &SizingTarget, inputs: &RirInputs) -> Result<SizingReport> {
    let (s_t, s_r, n) = inputs.channel.scaling();
    let p = &inputs.powers;
    let (d_t, d_r) = (p.p_t * s_t, p.p_r * s_r);
    if !(d_t > 0.0 && d_r > 0.0) {
        return Err(Error::Infeasible("a hop has zero gain"));
    }
    let need = target.gamma_lim / inputs.kappa * (p.sigma1_sq / d_t).max(p.sigma2_sq / d_r);
    let m_real = need.powf(1.0 / n as f64);
    let m_required = settle(m_real, target, |m| {
        rate_rir_df(&RirInputs { elements: m, ..*inputs }).map(|r| r.rate)
    })?;
    Ok(SizingReport {
        m_required,
        m_real,
        branch: SizingBranch::RirDf,
    })
}

/// Relay-aided surface with AF relay.
///
/// With `u = M^n` the gain-limited SNR target is the quadratic
/// `p_t beta kappa^2 s_t s_r u^2 - gamma beta kappa s_r sigma1^2 u - gamma sigma2^2 = 0`.
/// If the requested `beta` exceeds the power cap at that size, the relay
/// runs at full power instead and `u` solves
/// `k1 k2 u^2 - gamma (k1 + k2) u - gamma = 0` with `k1 = kappa p_t s_t / sigma1^2`,
/// `k2 = kappa p_r s_r / sigma2^2`. A gain exactly at the cap stays gain-limited.
pub fn elements_rir_af(target: &SizingTarget, inputs: &RirInputs) -> Result<SizingReport> {
    let (s_t, s_r, n) = inputs.channel.scaling();
    let p = &inputs.powers;
    let kappa = inputs.kappa;
    let gamma = target.gamma_lim;
    if !(s_t > 0.0 && s_r > 0.0 && p.p_t > 0.0 && p.p_r > 0.0) {
        return Err(Error::Infeasible("a hop has zero gain"));
    }

    let gain_limited = match inputs.beta {
        BetaPolicy::Requested(b) if b.is_nan() || b < 0.0 => {
            return Err(Error::InvalidInputs("AF gain must be non-negative"))
        }
        BetaPolicy::Requested(0.0) => {
            return Err(Error::Infeasible("zero AF gain forwards nothing"))
        }
        BetaPolicy::Requested(b) if b.is_finite() => {
            let a = p.p_t * b * kappa * kappa * s_t * s_r;
            let lin = gamma * b * kappa * s_r * p.sigma1_sq;
            let u = positive_quadratic_root(a, lin, gamma * p.sigma2_sq)?;
            (b <= af_gain_cap(p, kappa * u * s_t)).then_some(u)
        }
        _ => None,
    };

    let (u, branch) = match gain_limited {
        Some(u) => (u, SizingBranch::RirAfGainLimited),
        None => {
            let k1 = kappa * p.p_t * s_t / p.sigma1_sq;
            let k2 = kappa * p.p_r * s_r / p.sigma2_sq;
            let u = positive_quadratic_root(k1 * k2, gamma * (k1 + k2), gamma)?;
            (u, SizingBranch::RirAfPowerLimited)
        }
    };
    let m_real = u.powf(1.0 / n as f64);
    let m_required = settle(m_real, target, |m| {
        rate_rir_af(&RirInputs { elements: m, ..*inputs }).map(|r| r.rate)
    })?;
    Ok(SizingReport {
        m_required,
        m_real,
        branch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::{IrsChannel, Powers, RirChannel};
    use approx::assert_relative_eq;

    fn unit_powers() -> Powers {
        Powers {
            p_t: 1.0,
            p_r: 1.0,
            sigma1_sq: 1.0,
            sigma2_sq: 1.0,
        }
    }

    fn gamma3() -> SizingTarget {
        SizingTarget::new(2.0).unwrap()
    }

    #[test]
    fn target_threshold() {
        let t = SizingTarget::new(2.0).unwrap();
        assert_eq!(t.gamma_lim, 3.0);
        assert!(SizingTarget::new(0.0).is_err());
        assert!(SizingTarget::new(f64::NAN).is_err());
    }

    #[test]
    fn quartic_root_examples() {
        assert_eq!(solve_positive_root(1.0, 0.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(solve_positive_root(2.0, 3.0, 2.0).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(solve_positive_root(1.0, 0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(solve_positive_root(1.0, 0.0, 4.0).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        assert!(solve_positive_root(0.0, 1.0, 1.0).is_err());
        assert!(solve_positive_root(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn negative_linear_term_is_stable() {
        // (x - 1e-9)(x + 1) expanded: x^2 - (1e-9 - 1) x - 1e-9
        let x = positive_quadratic_root(1.0, 1e-9 - 1.0, 1e-9).unwrap();
        assert_relative_eq!(x, 1e-9, max_relative = 1e-12);
    }

    fn irs_inputs(xi: f64, convention: IrsConvention) -> IrsInputs {
        IrsInputs {
            elements: 1,
            kappa: 1.0,
            powers: unit_powers(),
            channel: IrsChannel::Exact { xi },
            convention,
        }
    }

    #[test]
    fn irs_examples() {
        let r = elements_irs(&gamma3(), &irs_inputs(1.0, IrsConvention::Double)).unwrap();
        assert_relative_eq!(r.m_real, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(r.m_required, 1);
        assert_eq!(r.branch, SizingBranch::Irs2M);
        // sigma2^2 / (p_t kappa xi) = 4
        let r = elements_irs(&gamma3(), &irs_inputs(0.25, IrsConvention::Double)).unwrap();
        assert_relative_eq!(r.m_real, 12f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(r.m_required, 2);
        assert!(matches!(
            elements_irs(&gamma3(), &irs_inputs(0.0, IrsConvention::Double)),
            Err(Error::Infeasible(_))
        ));
    }

    fn rir_inputs(channel: RirChannel, beta: BetaPolicy) -> RirInputs {
        RirInputs {
            elements: 1,
            kappa: 1.0,
            powers: unit_powers(),
            channel,
            beta,
        }
    }

    #[test]
    fn rir_df_bound_example() {
        // max(sigma^2 / (p rho)) = 10 on the transmit hop.
        let ch = RirChannel::UpperBound { rho_t: 0.1, rho_r: 0.5 };
        let r = elements_rir_df(&gamma3(), &rir_inputs(ch, BetaPolicy::FullPower)).unwrap();
        assert_relative_eq!(r.m_real, 30.0, epsilon = 1e-12);
        assert_eq!(r.m_required, 30);
        let swapped = RirChannel::UpperBound { rho_t: 0.5, rho_r: 0.1 };
        let s = elements_rir_df(&gamma3(), &rir_inputs(swapped, BetaPolicy::FullPower)).unwrap();
        assert_eq!(s.m_required, r.m_required);
    }

    #[test]
    fn rir_df_exact_uses_square_root() {
        let ch = RirChannel::Exact { xi_circ_t: 0.1, xi_circ_r: 0.5 };
        let r = elements_rir_df(&gamma3(), &rir_inputs(ch, BetaPolicy::FullPower)).unwrap();
        assert_relative_eq!(r.m_real, 30f64.sqrt(), epsilon = 1e-12);
        assert_eq!(r.m_required, 6);
    }

    #[test]
    fn rir_af_branches() {
        let ch = RirChannel::UpperBound { rho_t: 1e-3, rho_r: 1e-3 };
        let mut p = unit_powers();
        p.p_t = 100.0;
        p.p_r = 100.0;
        let gain = RirInputs {
            powers: p,
            ..rir_inputs(ch, BetaPolicy::Requested(2.0))
        };
        let r = elements_rir_af(&gamma3(), &gain).unwrap();
        assert_eq!(r.branch, SizingBranch::RirAfGainLimited);
        let full = RirInputs {
            beta: BetaPolicy::FullPower,
            ..gain
        };
        let f = elements_rir_af(&gamma3(), &full).unwrap();
        assert_eq!(f.branch, SizingBranch::RirAfPowerLimited);
        assert!(f.m_required <= r.m_required);
        let huge = RirInputs {
            beta: BetaPolicy::Requested(1e12),
            ..gain
        };
        let h = elements_rir_af(&gamma3(), &huge).unwrap();
        assert_eq!(h.branch, SizingBranch::RirAfPowerLimited);
        assert_eq!(h.m_required, f.m_required);
        let zero = RirInputs {
            beta: BetaPolicy::Requested(0.0),
            ..gain
        };
        assert!(matches!(elements_rir_af(&gamma3(), &zero), Err(Error::Infeasible(_))));
    }

    #[test]
    fn settle_handles_exact_integers() {
        // m_real = 1 exactly; one element is enough and zero is not allowed.
        let ch = RirChannel::Exact { xi_circ_t: 3.0, xi_circ_r: 3.0 };
        let r = elements_rir_df(&gamma3(), &rir_inputs(ch, BetaPolicy::FullPower)).unwrap();
        assert_eq!(r.m_required, 1);
    }
}
