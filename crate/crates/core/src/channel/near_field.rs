//! Near-field channel between surface elements and the relay horn.
//!
//! Magnitude follows the aperture-integration approximation for a square
//! element of area `lambda^2 / (4 pi)` (half-width `c / (4 f sqrt(pi))`)
//! illuminated by a horn of gain `G_t`; the phase follows the exact
//! element-to-antenna distance.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{Point3, SurfaceLayout};
use crate::link_budget::wavelength;
use crate::{Complex64, Error, Result, SPEED_OF_LIGHT};

/// Half side-length of the effective element aperture, `c / (4 f sqrt(pi))`.
pub fn aperture_half_width(fc_ghz: f64) -> f64 {
    SPEED_OF_LIGHT / (4.0 * fc_ghz * 1e9 * PI.sqrt())
}

/// `C_{x,y} = (xy/d^2) / sqrt(x^2/d^2 + y^2/d^2 + 1)`.
pub fn c_term(x: f64, y: f64, d: f64) -> f64 {
    let (xn, yn) = (x / d, y / d);
    xn * yn / (xn * xn + yn * yn + 1.0).sqrt()
}

/// Channel magnitude between one element and the relay antenna.
pub fn near_field_magnitude(element: Point3, relay: Point3, fc_ghz: f64, horn_gain: f64) -> Result<f64> {
    let d = (element.z - relay.z).abs();
    if !(d > 0.0) {
        return Err(Error::DegenerateNearField);
    }
    let a = aperture_half_width(fc_ghz);
    let (dx, dy) = (element.x - relay.x, element.y - relay.y);
    let xs = [a + dx, a - dx];
    let ys = [a + dy, a - dy];
    let mut acc = 0.0;
    for &x in &xs {
        for &y in &ys {
            let c = c_term(x, y, d);
            acc += c / (3.0 * (y * y / (d * d) + 1.0)) + (2.0 / 3.0) * c.atan();
        }
    }
    Ok((horn_gain / (4.0 * PI) * acc).sqrt())
}

/// Unit phasor `exp(j 2 pi r / lambda)` for the exact element-to-relay
/// distance `r`.
pub fn spherical_phase(element: Point3, relay: Point3, wavelength: f64) -> Complex64 {
    let r = (element - relay).norm();
    // Reduce to a fraction of a cycle first so long paths keep their precision.
    let cycles = (r / wavelength).fract();
    Complex64::from_polar(1.0, 2.0 * PI * cycles)
}

/// `g = magnitudes ⊙ phases` for every element of a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct NearFieldChannel {
    pub magnitudes: Vec<f64>,
    pub phases: Vec<Complex64>,
}

impl NearFieldChannel {
    pub fn from_layout(layout: &SurfaceLayout, fc_ghz: f64, horn_gain: f64) -> Result<Self> {
        let relay = layout.relay_position();
        let wl = wavelength(fc_ghz);
        let positions = layout.element_positions();
        let magnitudes = positions
            .iter()
            .map(|&p| near_field_magnitude(p, relay, fc_ghz, horn_gain))
            .collect::<Result<Vec<_>>>()?;
        let phases = positions
            .iter()
            .map(|&p| spherical_phase(p, relay, wl))
            .collect();
        Ok(Self { magnitudes, phases })
    }

    /// Magnitudes only; cheaper when the phases are not needed.
    pub fn magnitudes_for(layout: &SurfaceLayout, fc_ghz: f64, horn_gain: f64) -> Result<Vec<f64>> {
        let relay = layout.relay_position();
        layout
            .element_positions()
            .into_iter()
            .map(|p| near_field_magnitude(p, relay, fc_ghz, horn_gain))
            .collect()
    }

    /// Unit magnitudes and zero phase; leaves a far-field channel unchanged
    /// under the Hadamard product.
    pub fn identity(m: usize) -> Self {
        Self {
            magnitudes: alloc::vec![1.0; m],
            phases: alloc::vec![Complex64::new(1.0, 0.0); m],
        }
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.magnitudes.iter().zip(&self.phases).map(|(m, p)| p * *m)
    }
}
