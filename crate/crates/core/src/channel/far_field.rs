use alloc::vec::Vec;
use core::f64::consts::PI;

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{Point3, SurfaceLayout};
use crate::{Complex64, Error, Result};

/// One scattering cluster of the geometric channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathCluster {
    pub alpha: Complex64,
    pub azimuth: f64,
    pub elevation: f64,
}

impl PathCluster {
    pub fn los(azimuth: f64, elevation: f64) -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            azimuth,
            elevation,
        }
    }
}

/// Unit vector in the surface frame. Elevation is measured from the aperture
/// plane, so `elevation = pi/2` is boresight.
pub fn unit_direction(azimuth: f64, elevation: f64) -> Point3 {
    let (se, ce) = elevation.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    Point3::new(ce * ca, ce * sa, se)
}

/// Azimuth and elevation of a direction vector in the surface frame.
pub fn direction_angles(dir: Point3) -> (f64, f64) {
    let n = dir.norm();
    let el = (dir.z / n).clamp(-1.0, 1.0).asin();
    let mut az = dir.y.atan2(dir.x);
    if az < 0.0 {
        az += 2.0 * PI;
    }
    (az, el)
}

/// Planar-array steering vector for a plane wave travelling along
/// `(azimuth, elevation)`, phase-referenced to element 0.
pub fn array_response(
    azimuth: f64,
    elevation: f64,
    layout: &SurfaceLayout,
    wavelength: f64,
) -> Vec<Complex64> {
    let u = unit_direction(azimuth, elevation);
    let k = 2.0 * PI / wavelength;
    (0..layout.element_count())
        .map(|m| Complex64::from_polar(1.0, k * layout.grid_offset(m).dot(u)))
        .collect()
}

/// Far-field channel between a single-antenna node and a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldChannel {
    pub entries: Vec<Complex64>,
    /// Large-scale path gain, linear.
    pub rho: f64,
}

impl FarFieldChannel {
    /// Pure LOS channel, `sqrt(rho) * a(az, el)`.
    pub fn los(rho: f64, azimuth: f64, elevation: f64, layout: &SurfaceLayout, wavelength: f64) -> Self {
        let s = rho.sqrt();
        let entries = array_response(azimuth, elevation, layout, wavelength)
            .into_iter()
            .map(|a| a * s)
            .collect();
        Self { entries, rho }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `h = sum_l sqrt(rho) alpha_l a(theta_l)`.
pub fn far_field_channel(
    clusters: &[PathCluster],
    rho: f64,
    layout: &SurfaceLayout,
    wavelength: f64,
) -> Result<FarFieldChannel> {
    if clusters.is_empty() {
        return Err(Error::EmptyClusters);
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::Domain("path gain must be finite and non-negative"));
    }
    let s = rho.sqrt();
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); layout.element_count()];
    for c in clusters {
        let a = array_response(c.azimuth, c.elevation, layout, wavelength);
        for (h, a) in entries.iter_mut().zip(a) {
            *h += a * c.alpha * s;
        }
    }
    Ok(FarFieldChannel { entries, rho })
}
