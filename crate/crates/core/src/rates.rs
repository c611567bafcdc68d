//! Closed-form spectral efficiencies.
//!
//! Every expression reduces to `log2(1 + snr)` with an SNR built from a few
//! linear quantities: powers and noise in mW, reflection efficiency `kappa`,
//! element count `M` and channel statistics. A surface hop with optimal
//! phases contributes an array gain of
//!
//! - `kappa M^2 xi°` for an exact composite channel,
//! - `kappa M^2 rho eta` for a LOS far-field channel,
//! - `kappa M rho` under the energy-conservation bound `M eta <= 1`.
//!
//! Relays are full-duplex and interference-free, so no pre-log factor is
//! applied.

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::link_budget::{db_to_linear, RadioConfig};
use crate::{Error, Result};

/// Which closed form produced a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Exact,
    Los,
    UpperBound,
    /// AF relay ran at the requested gain.
    GainLimited,
    /// AF relay gain was capped by its output power.
    PowerLimited,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Exact => "exact",
            Branch::Los => "los",
            Branch::UpperBound => "upper_bound",
            Branch::GainLimited => "gain_limited",
            Branch::PowerLimited => "power_limited",
        }
    }
}

/// Evaluation mode shared by sweeps: exact statistics, LOS specialization or
/// the near-field energy-conservation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Los,
    UpperBound,
}

impl Mode {
    pub fn branch(self) -> Branch {
        match self {
            Mode::Exact => Branch::Exact,
            Mode::Los => Branch::Los,
            Mode::UpperBound => Branch::UpperBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    /// Spectral efficiency, bps/Hz.
    pub rate: f64,
    /// Linear SNR; `rate == log2(1 + snr)`.
    pub snr: f64,
    pub branch: Branch,
}

impl RateReport {
    pub fn from_snr(snr: f64, branch: Branch) -> Self {
        Self {
            rate: spectral_efficiency(snr),
            snr,
            branch,
        }
    }
}

pub fn spectral_efficiency(snr: f64) -> f64 {
    snr.ln_1p() / core::f64::consts::LN_2
}

/// Transmit powers and noise powers, all in mW.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Powers {
    pub p_t: f64,
    pub p_r: f64,
    /// Noise at the relay.
    pub sigma1_sq: f64,
    /// Noise at the receiver.
    pub sigma2_sq: f64,
}

impl Powers {
    pub fn from_radio(radio: &RadioConfig) -> Result<Self> {
        let noise = radio.noise()?;
        Ok(Self {
            p_t: radio.p_t_mw(),
            p_r: radio.p_r_mw(),
            sigma1_sq: noise.sigma1_sq_mw(),
            sigma2_sq: noise.sigma2_sq_mw(),
        })
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: f64| v >= 0.0 && v.is_finite();
        if !(ok(self.p_t) && ok(self.p_r)) {
            return Err(Error::InvalidInputs("transmit powers must be finite and non-negative"));
        }
        let pos = |v: f64| v > 0.0 && v.is_finite();
        if !(pos(self.sigma1_sq) && pos(self.sigma2_sq)) {
            return Err(Error::InvalidInputs("noise powers must be positive"));
        }
        Ok(())
    }
}

fn check_gain(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInputs("channel statistics must be finite and non-negative"))
    }
}

fn check_common(elements: u64, kappa: f64, powers: &Powers) -> Result<()> {
    if elements == 0 {
        return Err(Error::InvalidInputs("element count must be at least 1"));
    }
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::InvalidInputs("kappa must lie in (0, 1]"));
    }
    powers.validate()
}

/// Element-count convention for the classical surface. `Double` gives it
/// `2M` elements so it matches the two `M`-element panels of the
/// relay-aided surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IrsConvention {
    Single,
    #[default]
    Double,
}

impl IrsConvention {
    pub fn factor(self) -> f64 {
        match self {
            IrsConvention::Single => 1.0,
            IrsConvention::Double => 2.0,
        }
    }
}

/// Channel knowledge for the classical surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IrsChannel {
    /// `xi_{t,r}` from the actual far-field channels.
    Exact { xi: f64 },
    /// LOS path gains; `xi_{t,r} = rho_t rho_r` exactly.
    Los { rho_t: f64, rho_r: f64 },
    /// Cauchy-Schwarz bound `xi_{t,r} <= zeta_t zeta_r`.
    UpperBound { zeta_t: f64, zeta_r: f64 },
}

impl IrsChannel {
    pub fn xi(&self) -> f64 {
        match *self {
            IrsChannel::Exact { xi } => xi,
            IrsChannel::Los { rho_t, rho_r } => rho_t * rho_r,
            IrsChannel::UpperBound { zeta_t, zeta_r } => zeta_t * zeta_r,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            IrsChannel::Exact { .. } => Mode::Exact,
            IrsChannel::Los { .. } => Mode::Los,
            IrsChannel::UpperBound { .. } => Mode::UpperBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsInputs {
    /// `M`; the surface has `M` or `2M` elements depending on `convention`.
    pub elements: u64,
    pub kappa: f64,
    pub powers: Powers,
    pub channel: IrsChannel,
    pub convention: IrsConvention,
}

/// Classical surface with phase-conjugate configuration:
/// `snr = p_t kappa N^2 xi_{t,r} / sigma2^2` with `N` the physical element count.
pub fn rate_irs(inputs: &IrsInputs) -> Result<RateReport> {
    check_common(inputs.elements, inputs.kappa, &inputs.powers)?;
    let xi = inputs.channel.xi();
    check_gain(xi)?;
    let n = inputs.elements as f64 * inputs.convention.factor();
    let snr = inputs.powers.p_t * inputs.kappa * n * n * xi / inputs.powers.sigma2_sq;
    Ok(RateReport::from_snr(snr, inputs.channel.mode().branch()))
}

/// AF amplification policy. The relay applies the smaller of the requested
/// gain and the gain its output power allows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaPolicy {
    FullPower,
    /// Requested power gain, linear.
    Requested(f64),
}

impl BetaPolicy {
    pub fn from_db(db: Option<f64>) -> Self {
        match db {
            None => BetaPolicy::FullPower,
            Some(b) => BetaPolicy::Requested(db_to_linear(b)),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            BetaPolicy::Requested(b) if b.is_nan() || b < 0.0 => {
                Err(Error::InvalidInputs("AF gain must be non-negative"))
            }
            _ => Ok(()),
        }
    }
}

/// Largest AF gain keeping the relay output at `p_r`:
/// `p_r / (p_t a_t + sigma1^2)` for a first-hop gain `a_t`.
pub fn af_gain_cap(powers: &Powers, a_t: f64) -> f64 {
    powers.p_r / (powers.p_t * a_t + powers.sigma1_sq)
}

/// End-to-end AF SNR for first/second hop gains `a_t`, `a_r` and gain `beta`.
pub fn af_snr(powers: &Powers, beta: f64, a_t: f64, a_r: f64) -> f64 {
    let num = powers.p_t * beta * a_t * a_r;
    if num == 0.0 {
        return 0.0;
    }
    num / (beta * a_r * powers.sigma1_sq + powers.sigma2_sq)
}

/// AF SNR with the relay at full power, `g1 g2 / (g1 + g2 + 1)`.
///
/// Evaluated as `min * (max / (max + min + 1))` so the result never rounds
/// above `min(g1, g2)`.
pub fn af_full_power_snr(gamma1: f64, gamma2: f64) -> f64 {
    let (lo, hi) = if gamma1 <= gamma2 { (gamma1, gamma2) } else { (gamma2, gamma1) };
    if lo == 0.0 {
        return 0.0;
    }
    lo * (hi / (hi + lo + 1.0))
}

fn af_report(powers: &Powers, beta: BetaPolicy, a_t: f64, a_r: f64) -> RateReport {
    let cap = af_gain_cap(powers, a_t);
    let full = af_full_power_snr(
        powers.p_t * a_t / powers.sigma1_sq,
        powers.p_r * a_r / powers.sigma2_sq,
    );
    match beta {
        // The SNR is increasing in beta, so below the cap it never exceeds
        // the full-power value; taking the min keeps that true after rounding.
        BetaPolicy::Requested(b) if b <= cap => RateReport::from_snr(
            af_snr(powers, b, a_t, a_r).min(full),
            Branch::GainLimited,
        ),
        _ => RateReport::from_snr(full, Branch::PowerLimited),
    }
}

/// Stand-alone single-antenna relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayInputs {
    pub powers: Powers,
    pub zeta_t: f64,
    pub zeta_r: f64,
    pub beta: BetaPolicy,
}

impl RelayInputs {
    fn validate(&self) -> Result<()> {
        self.powers.validate()?;
        check_gain(self.zeta_t)?;
        check_gain(self.zeta_r)?;
        self.beta.validate()
    }
}

/// DF relay: the weaker hop limits the rate.
pub fn rate_df_relay(inputs: &RelayInputs) -> Result<RateReport> {
    inputs.validate()?;
    let p = &inputs.powers;
    let snr = (p.p_t * inputs.zeta_t / p.sigma1_sq).min(p.p_r * inputs.zeta_r / p.sigma2_sq);
    Ok(RateReport::from_snr(snr, Branch::Exact))
}

/// AF relay under its output-power constraint.
pub fn rate_af_relay(inputs: &RelayInputs) -> Result<RateReport> {
    inputs.validate()?;
    Ok(af_report(&inputs.powers, inputs.beta, inputs.zeta_t, inputs.zeta_r))
}

/// Channel knowledge for the two hops of the relay-aided surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RirChannel {
    /// `xi°` of each composite channel.
    Exact { xi_circ_t: f64, xi_circ_r: f64 },
    /// LOS far-field gains with the near-field `eta` of each panel.
    Los {
        rho_t: f64,
        rho_r: f64,
        eta_t: f64,
        eta_r: f64,
    },
    /// LOS gains with the near-field bound `M eta = 1`.
    UpperBound { rho_t: f64, rho_r: f64 },
}

impl RirChannel {
    pub fn mode(&self) -> Mode {
        match self {
            RirChannel::Exact { .. } => Mode::Exact,
            RirChannel::Los { .. } => Mode::Los,
            RirChannel::UpperBound { .. } => Mode::UpperBound,
        }
    }

    /// Per-element gains `(s_t, s_r)` and the power `n` of `M` in the array
    /// gain `kappa M^n s`.
    pub fn scaling(&self) -> (f64, f64, i32) {
        match *self {
            RirChannel::Exact { xi_circ_t, xi_circ_r } => (xi_circ_t, xi_circ_r, 2),
            RirChannel::Los {
                rho_t,
                rho_r,
                eta_t,
                eta_r,
            } => (rho_t * eta_t, rho_r * eta_r, 2),
            RirChannel::UpperBound { rho_t, rho_r } => (rho_t, rho_r, 1),
        }
    }

    /// Array gains `(a_t, a_r)` of both optimally-configured panels.
    pub fn hop_gains(&self, kappa: f64, m: f64) -> (f64, f64) {
        let (s_t, s_r, n) = self.scaling();
        let mn = m.powi(n);
        (kappa * mn * s_t, kappa * mn * s_r)
    }

    fn validate(&self) -> Result<()> {
        let (s_t, s_r, _) = self.scaling();
        check_gain(s_t)?;
        check_gain(s_r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RirInputs {
    /// Elements per panel.
    pub elements: u64,
    pub kappa: f64,
    pub powers: Powers,
    pub channel: RirChannel,
    pub beta: BetaPolicy,
}

impl RirInputs {
    fn validate(&self) -> Result<()> {
        check_common(self.elements, self.kappa, &self.powers)?;
        self.channel.validate()?;
        self.beta.validate()
    }

    /// Per-hop SNRs `(gamma1, gamma2)`: transmitter to relay over panel 1,
    /// relay to receiver over panel 2.
    pub fn hop_snrs(&self) -> (f64, f64) {
        let (a_t, a_r) = self.channel.hop_gains(self.kappa, self.elements as f64);
        let p = &self.powers;
        (p.p_t * a_t / p.sigma1_sq, p.p_r * a_r / p.sigma2_sq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Transmitter to relay through the receive panel.
    Tx,
    /// Relay to receiver through the transmit panel.
    Rx,
}

/// Single-hop rate of one panel with phase-conjugate configuration.
pub fn rate_rir_direction(inputs: &RirInputs, direction: Direction) -> Result<RateReport> {
    inputs.validate()?;
    let (g1, g2) = inputs.hop_snrs();
    let snr = match direction {
        Direction::Tx => g1,
        Direction::Rx => g2,
    };
    Ok(RateReport::from_snr(snr, inputs.channel.mode().branch()))
}

/// Relay-aided surface with DF relay: `log2(1 + min(gamma1, gamma2))`.
pub fn rate_rir_df(inputs: &RirInputs) -> Result<RateReport> {
    inputs.validate()?;
    let (g1, g2) = inputs.hop_snrs();
    Ok(RateReport::from_snr(g1.min(g2), inputs.channel.mode().branch()))
}

/// Relay-aided surface with AF relay under the output-power constraint.
pub fn rate_rir_af(inputs: &RirInputs) -> Result<RateReport> {
    inputs.validate()?;
    let (a_t, a_r) = inputs.channel.hop_gains(inputs.kappa, inputs.elements as f64);
    Ok(af_report(&inputs.powers, inputs.beta, a_t, a_r))
}
