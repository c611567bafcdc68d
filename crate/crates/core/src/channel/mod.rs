//! Mixed near-/far-field channel model and its scalar statistics.
//!
//! Each surface hop of the relay-aided architecture sees a composite channel
//! `h° = h ⊙ ς ⊙ Θ`: the far-field channel `h` between the user and the
//! surface, times the near-field magnitude `ς` and spherical phase `Θ`
//! between the surface and the relay horn.
//!
//! The rate expressions only consume a handful of averages:
//!
//! | symbol | definition                        | source              |
//! |--------|-----------------------------------|---------------------|
//! | ζ      | `mean |h_m|^2`                    | far-field           |
//! | ξ_tr   | `(mean |h_t,m| |h_r,m|)^2`        | two far-field       |
//! | ξ°     | `(mean |h°_m|)^2`                 | composite           |
//! | η      | `(mean ς_m)^2`                    | near-field          |

mod far_field;
mod near_field;

pub use far_field::{
    array_response, direction_angles, far_field_channel, unit_direction, FarFieldChannel, PathCluster,
};
pub use near_field::{aperture_half_width, c_term, near_field_magnitude, spherical_phase, NearFieldChannel};

use alloc::vec::Vec;

use crate::{Complex64, Error, Result};

/// Hadamard product of a far-field and a near-field channel.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeChannel {
    pub entries: Vec<Complex64>,
}

impl CompositeChannel {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn composite(h: &FarFieldChannel, g: &NearFieldChannel) -> Result<CompositeChannel> {
    if h.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: h.len(),
            right: g.len(),
        });
    }
    let entries = h
        .entries
        .iter()
        .zip(g.entries())
        .map(|(h, g)| h * g)
        .collect();
    Ok(CompositeChannel { entries })
}

fn mean(it: impl Iterator<Item = f64>, n: usize) -> f64 {
    it.sum::<f64>() / n as f64
}

fn non_empty(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInputs("channel vectors must be non-empty"))
    } else {
        Ok(())
    }
}

/// ζ: mean per-element power gain.
pub fn zeta(h: &[Complex64]) -> Result<f64> {
    non_empty(h.len())?;
    Ok(mean(h.iter().map(|e| e.norm_sqr()), h.len()))
}

/// ξ_{t,r}: squared mean of the per-element magnitude products.
pub fn xi(h_t: &[Complex64], h_r: &[Complex64]) -> Result<f64> {
    if h_t.len() != h_r.len() {
        return Err(Error::LengthMismatch {
            left: h_t.len(),
            right: h_r.len(),
        });
    }
    non_empty(h_t.len())?;
    let m = mean(h_t.iter().zip(h_r).map(|(a, b)| a.norm() * b.norm()), h_t.len());
    Ok(m * m)
}

/// ξ°: squared mean magnitude of a composite channel.
pub fn xi_circ(h: &[Complex64]) -> Result<f64> {
    non_empty(h.len())?;
    let m = mean(h.iter().map(|e| e.norm()), h.len());
    Ok(m * m)
}

/// η: squared mean of the near-field magnitudes.
pub fn eta(magnitudes: &[f64]) -> Result<f64> {
    non_empty(magnitudes.len())?;
    let m = mean(magnitudes.iter().copied(), magnitudes.len());
    Ok(m * m)
}

/// `M * η`, the factor that replaces `M^2 η` in the energy-conservation
/// bound. Energy conservation requires it not to exceed one.
pub fn near_field_energy_ratio(magnitudes: &[f64]) -> Result<f64> {
    Ok(magnitudes.len() as f64 * eta(magnitudes)?)
}

/// Errors when the near-field gains would collect more power than the horn
/// radiates.
pub fn check_energy_conservation(magnitudes: &[f64]) -> Result<f64> {
    let ratio = near_field_energy_ratio(magnitudes)?;
    if ratio > 1.0 {
        return Err(Error::ModelValidity(ratio));
    }
    Ok(ratio)
}

/// Statistics of a full relay-aided link: transmit-side hop (`_t`) and
/// receive-side hop (`_r`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelStats {
    pub zeta_t: f64,
    pub zeta_r: f64,
    pub xi: f64,
    pub xi_circ_t: f64,
    pub xi_circ_r: f64,
    pub eta_t: f64,
    pub eta_r: f64,
}

impl ChannelStats {
    pub fn compute(
        h_t: &FarFieldChannel,
        g_t: &NearFieldChannel,
        h_r: &FarFieldChannel,
        g_r: &NearFieldChannel,
    ) -> Result<Self> {
        let c_t = composite(h_t, g_t)?;
        let c_r = composite(h_r, g_r)?;
        Ok(Self {
            zeta_t: zeta(&h_t.entries)?,
            zeta_r: zeta(&h_r.entries)?,
            xi: xi(&h_t.entries, &h_r.entries)?,
            xi_circ_t: xi_circ(&c_t.entries)?,
            xi_circ_r: xi_circ(&c_r.entries)?,
            eta_t: eta(&g_t.magnitudes)?,
            eta_r: eta(&g_r.magnitudes)?,
        })
    }

    /// ξ°_{t,r}, the cross term of the AF expression: the product of the
    /// two optimally-beamformed hop gains.
    pub fn xi_circ_tr(&self) -> f64 {
        self.xi_circ_t * self.xi_circ_r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SurfaceLayout;
    use crate::link_budget::wavelength;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_near_field_keeps_far_field() {
        let h = FarFieldChannel {
            entries: alloc::vec![c(1.0, 2.0), c(-0.5, 0.1), c(0.0, -3.0)],
            rho: 1.0,
        };
        let out = composite(&h, &NearFieldChannel::identity(3)).unwrap();
        assert_eq!(out.entries, h.entries);
    }

    #[test]
    fn scaled_magnitudes() {
        let h = FarFieldChannel {
            entries: alloc::vec![c(1.0, 0.0); 4],
            rho: 1.0,
        };
        let g = NearFieldChannel {
            magnitudes: alloc::vec![2.0; 4],
            phases: alloc::vec![c(1.0, 0.0); 4],
        };
        let out = composite(&h, &g).unwrap();
        assert!(out.entries.iter().all(|e| *e == c(2.0, 0.0)));
    }

    #[test]
    fn composite_magnitudes_multiply() {
        let fc = 28.0;
        let wl = wavelength(fc);
        let l = SurfaceLayout::half_wavelength(8, wl).unwrap();
        let h = far_field_channel(
            &[
                PathCluster { alpha: c(0.3, -0.8), azimuth: 0.4, elevation: 1.1 },
                PathCluster { alpha: c(-1.2, 0.5), azimuth: 2.4, elevation: 0.2 },
            ],
            0.7,
            &l,
            wl,
        )
        .unwrap();
        let g = NearFieldChannel::from_layout(&l, fc, 10.0).unwrap();
        let hc = composite(&h, &g).unwrap();
        for m in 0..8 {
            assert_relative_eq!(
                hc.entries[m].norm(),
                h.entries[m].norm() * g.magnitudes[m],
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn length_mismatch() {
        let h = FarFieldChannel {
            entries: alloc::vec![c(1.0, 0.0); 3],
            rho: 1.0,
        };
        assert_eq!(
            composite(&h, &NearFieldChannel::identity(4)),
            Err(Error::LengthMismatch { left: 3, right: 4 })
        );
        assert!(xi(&h.entries, &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn all_ones_statistics() {
        let v = alloc::vec![c(1.0, 0.0); 4];
        assert_eq!(zeta(&v).unwrap(), 1.0);
        assert_eq!(xi_circ(&v).unwrap(), 1.0);
        assert_eq!(eta(&[1.0; 4]).unwrap(), 1.0);
    }

    #[test]
    fn hand_cauchy_schwarz() {
        let h_t = [c(1.0, 0.0), c(1.0, 0.0)];
        let h_r = [c(1.0, 0.0), c(0.0, 0.0)];
        let x = xi(&h_t, &h_r).unwrap();
        assert_eq!(x, 0.25);
        assert_eq!(zeta(&h_t).unwrap() * zeta(&h_r).unwrap(), 0.5);
    }

    #[test]
    fn los_xi_is_product_of_path_gains() {
        let wl = wavelength(60.0);
        let l = SurfaceLayout::half_wavelength(64, wl).unwrap();
        let (rho_t, rho_r) = (3.7e-11, 8.1e-12);
        let h_t = FarFieldChannel::los(rho_t, 0.3, 0.9, &l, wl);
        let h_r = FarFieldChannel::los(rho_r, 2.1, 0.4, &l, wl);
        let g = NearFieldChannel::identity(64);
        let s = ChannelStats::compute(&h_t, &g, &h_r, &g).unwrap();
        assert_relative_eq!(s.xi, rho_t * rho_r, max_relative = 1e-12);
        assert_relative_eq!(s.zeta_t * s.zeta_r, rho_t * rho_r, max_relative = 1e-12);
    }

    #[test]
    fn energy_check() {
        assert!(check_energy_conservation(&[0.1; 50]).is_ok());
        assert!(matches!(check_energy_conservation(&[0.5; 10]), Err(Error::ModelValidity(_))));
    }
}
