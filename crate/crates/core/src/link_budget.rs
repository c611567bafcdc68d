//! Large-scale link budget: path loss, thermal noise and dB conversions.

use num_traits::Float;

use crate::{Error, Result, SPEED_OF_LIGHT};

/// Thermal noise density at 290 K, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

pub fn db_to_linear(db: f64) -> f64 {
    10.0.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("linear value must be positive"));
    }
    Ok(10.0 * x.log10())
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    db_to_linear(dbm)
}

pub fn mw_to_dbm(mw: f64) -> Result<f64> {
    linear_to_db(mw)
}

/// Wavelength in meters for a carrier in GHz.
pub fn wavelength(fc_ghz: f64) -> f64 {
    SPEED_OF_LIGHT / (fc_ghz * 1e9)
}

/// 3GPP UMi street-canyon LOS path loss in dB:
/// `32.4 + 21 log10(d_3D) + 20 log10(fc)`, `d_3D` in meters, `fc` in GHz.
///
/// The 3GPP model is specified for `d_3D >= 10 m`; shorter distances are
/// evaluated with the same formula rather than clamped.
pub fn umi_pathloss_db(d_3d: f64, fc_ghz: f64) -> Result<f64> {
    if !(d_3d > 0.0) {
        return Err(Error::Domain("path length must be positive"));
    }
    if !(fc_ghz > 0.0) {
        return Err(Error::Domain("carrier frequency must be positive"));
    }
    Ok(32.4 + 21.0 * d_3d.log10() + 20.0 * fc_ghz.log10())
}

/// Linear path gain `rho = 10^(-PL/10)` for the UMi model.
pub fn umi_path_gain(d_3d: f64, fc_ghz: f64) -> Result<f64> {
    umi_pathloss_db(d_3d, fc_ghz).map(|pl| db_to_linear(-pl))
}

/// Receiver noise floor in dBm: `-174 + 10 log10(B) + NF`.
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::Domain("bandwidth must be positive"));
    }
    Ok(THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db)
}

/// Noise powers at the relay (`sigma1_sq`) and at the receiver
/// (`sigma2_sq`), in dBm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisePair {
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

impl NoisePair {
    pub fn sigma1_sq_mw(&self) -> f64 {
        dbm_to_mw(self.sigma1_sq)
    }

    pub fn sigma2_sq_mw(&self) -> f64 {
        dbm_to_mw(self.sigma2_sq)
    }
}

/// Radio parameters shared by every architecture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub fc_ghz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    /// Transmit power, dBm.
    pub p_t_dbm: f64,
    /// Maximum relay output power, dBm.
    pub p_r_dbm: f64,
    /// Power reflection efficiency of every surface element, in (0, 1].
    pub kappa: f64,
    /// Relay horn antenna gain over isotropic, linear.
    pub horn_gain: f64,
    /// Requested AF amplification, dB. `None` runs the relay at full power.
    pub af_gain_db: Option<f64>,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            fc_ghz: 3.5,
            bandwidth_hz: 100e6,
            noise_figure_db: 8.0,
            p_t_dbm: 20.0,
            p_r_dbm: 20.0,
            kappa: 1.0,
            horn_gain: db_to_linear(10.0),
            af_gain_db: None,
        }
    }
}

impl RadioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.fc_ghz > 0.0 && self.fc_ghz.is_finite()) {
            return Err(Error::InvalidRadio("carrier frequency must be positive"));
        }
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::InvalidRadio("bandwidth must be positive"));
        }
        if !self.noise_figure_db.is_finite() {
            return Err(Error::InvalidRadio("noise figure must be finite"));
        }
        if !(self.p_t_dbm.is_finite() && self.p_r_dbm.is_finite()) {
            return Err(Error::InvalidRadio("powers must be finite"));
        }
        if !(self.kappa > 0.0 && self.kappa <= 1.0) {
            return Err(Error::InvalidRadio("kappa must lie in (0, 1]"));
        }
        if !(self.horn_gain >= 1.0 && self.horn_gain.is_finite()) {
            return Err(Error::InvalidRadio("horn gain must be at least 1 (linear)"));
        }
        if let Some(b) = self.af_gain_db {
            if b.is_nan() {
                return Err(Error::InvalidRadio("AF gain must not be NaN"));
            }
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        wavelength(self.fc_ghz)
    }

    /// Relay and receiver use the same bandwidth and noise figure.
    pub fn noise(&self) -> Result<NoisePair> {
        let n = noise_power_dbm(self.bandwidth_hz, self.noise_figure_db)?;
        Ok(NoisePair {
            sigma1_sq: n,
            sigma2_sq: n,
        })
    }

    pub fn p_t_mw(&self) -> f64 {
        dbm_to_mw(self.p_t_dbm)
    }

    pub fn p_r_mw(&self) -> f64 {
        dbm_to_mw(self.p_r_dbm)
    }

    pub fn path_gain(&self, d_3d: f64) -> Result<f64> {
        umi_path_gain(d_3d, self.fc_ghz)
    }
}
