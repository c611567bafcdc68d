//! Node placement and surface element grids.
//!
//! Coordinate frame: `x` runs along the transmitter-receiver baseline, `y`
//! points from the baseline toward the surface/relay node and `z` is up. The
//! transmitter sits at the origin (at its own height), the receiver at
//! `(d_x, 0, h_rx)` and the node at the baseline midpoint, offset by `d_y`.
//!
//! Surfaces are described in their own local frame: the aperture lies in the
//! local `x`-`y` plane through [`SurfaceLayout::center`] and the local `z`
//! axis is the surface normal (boresight).

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

// Float methods for no_std builds; std provides them inherently.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, rhs: Point3) -> Point3 {
        Point3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, rhs: f64) -> Point3 {
        Point3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// Euclidean distance between two points, in meters.
pub fn link_distance(a: Point3, b: Point3) -> f64 {
    (a - b).norm()
}

/// Scenario layout: a transmitter and receiver on a common baseline and one
/// node (surface, relay or relay-aided surface) beside the baseline midpoint.
///
/// All values in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioGeometry {
    /// Transmitter-receiver separation along `x`.
    pub d_x: f64,
    /// Offset of the node from the baseline along `y`.
    pub d_y: f64,
    pub h_tx: f64,
    pub h_rx: f64,
    pub h_node: f64,
}

impl Default for ScenarioGeometry {
    fn default() -> Self {
        Self {
            d_x: 400.0,
            d_y: 10.0,
            h_tx: 10.0,
            h_rx: 1.0,
            h_node: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodePositions {
    pub tx: Point3,
    pub rx: Point3,
    pub node: Point3,
}

impl NodePositions {
    /// Transmitter to node distance.
    pub fn tx_link(&self) -> f64 {
        link_distance(self.tx, self.node)
    }

    /// Node to receiver distance.
    pub fn rx_link(&self) -> f64 {
        link_distance(self.node, self.rx)
    }
}

impl ScenarioGeometry {
    pub fn with_d_x(mut self, d_x: f64) -> Self {
        self.d_x = d_x;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.d_x, self.d_y, self.h_tx, self.h_rx, self.h_node]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidGeometry("all distances must be finite"));
        }
        if self.d_x < 0.0 {
            return Err(Error::InvalidGeometry("d_x must be non-negative"));
        }
        if self.d_y <= 0.0 {
            return Err(Error::InvalidGeometry("d_y must be positive"));
        }
        if self.h_tx <= 0.0 || self.h_rx <= 0.0 || self.h_node <= 0.0 {
            return Err(Error::InvalidGeometry("heights must be positive"));
        }
        Ok(())
    }

    pub fn place_nodes(&self) -> Result<NodePositions> {
        self.validate()?;
        Ok(NodePositions {
            tx: Point3::new(0.0, 0.0, self.h_tx),
            rx: Point3::new(self.d_x, 0.0, self.h_rx),
            node: Point3::new(self.d_x / 2.0, self.d_y, self.h_node),
        })
    }
}

/// Rectangular surface of `rows x cols` elements on a square pitch, with the
/// relay antenna mounted at `center + relay_offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceLayout {
    element_count: usize,
    pitch: f64,
    rows: usize,
    cols: usize,
    center: Point3,
    relay_offset: Point3,
}

/// Relay mounting distance above the surface center, in wavelengths.
pub const DEFAULT_RELAY_HEIGHT_WAVELENGTHS: f64 = 10.0;

/// Factor `m` as `rows x cols` with `rows` the largest divisor not above
/// `sqrt(m)`, so the grid is as square as `m` allows.
pub fn grid_dims(m: usize) -> (usize, usize) {
    if m == 0 {
        return (0, 0);
    }
    let mut rows = (m as f64).sqrt().floor() as usize;
    // Float sqrt can be off by one near perfect squares.
    while rows * rows > m {
        rows -= 1;
    }
    while (rows + 1) * (rows + 1) <= m {
        rows += 1;
    }
    while !m.is_multiple_of(rows) {
        rows -= 1;
    }
    (rows, m / rows)
}

impl SurfaceLayout {
    /// Layout with `m` elements on the given pitch, centered at the origin,
    /// with the relay directly above the center at `relay_height`.
    pub fn new(m: usize, pitch: f64, relay_height: f64) -> Result<Self> {
        let (rows, cols) = grid_dims(m);
        Self {
            element_count: m,
            pitch,
            rows,
            cols,
            center: Point3::ORIGIN,
            relay_offset: Point3::new(0.0, 0.0, relay_height),
        }
        .validated()
    }

    /// Default layout: half-wavelength pitch, relay ten wavelengths above
    /// the surface center.
    pub fn half_wavelength(m: usize, wavelength: f64) -> Result<Self> {
        Self::new(
            m,
            wavelength / 2.0,
            DEFAULT_RELAY_HEIGHT_WAVELENGTHS * wavelength,
        )
    }

    pub fn with_grid(mut self, rows: usize, cols: usize) -> Result<Self> {
        self.rows = rows;
        self.cols = cols;
        self.validated()
    }

    pub fn with_center(mut self, center: Point3) -> Result<Self> {
        self.center = center;
        self.validated()
    }

    pub fn with_relay_offset(mut self, offset: Point3) -> Result<Self> {
        self.relay_offset = offset;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.element_count == 0 {
            return Err(Error::InvalidLayout("element count must be positive"));
        }
        if !(self.pitch > 0.0 && self.pitch.is_finite()) {
            return Err(Error::InvalidLayout("element pitch must be positive"));
        }
        if self.rows * self.cols != self.element_count {
            return Err(Error::InvalidLayout("rows * cols must equal the element count"));
        }
        if !self.center.is_finite() || !self.relay_offset.is_finite() {
            return Err(Error::InvalidLayout("positions must be finite"));
        }
        // Every element shares the surface plane, so one check covers all m.
        if self.relay_offset.z == 0.0 {
            return Err(Error::DegenerateNearField);
        }
        Ok(self)
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn center(&self) -> Point3 {
        self.center
    }

    pub fn relay_offset(&self) -> Point3 {
        self.relay_offset
    }

    pub fn relay_position(&self) -> Point3 {
        self.center + self.relay_offset
    }

    /// Relay antenna height above the surface plane, `|z_m - z_0|`.
    pub fn relay_height(&self) -> f64 {
        self.relay_offset.z.abs()
    }

    /// Offset of element `m` from element 0, row-major. Used as the phase
    /// reference of the steering vector.
    pub fn grid_offset(&self, m: usize) -> Point3 {
        let (r, c) = (m / self.cols, m % self.cols);
        Point3::new(c as f64 * self.pitch, r as f64 * self.pitch, 0.0)
    }

    /// Element centers, row-major, forming a grid centered on the surface
    /// center.
    pub fn element_positions(&self) -> Vec<Point3> {
        let x0 = (self.cols as f64 - 1.0) / 2.0;
        let y0 = (self.rows as f64 - 1.0) / 2.0;
        let mut out = Vec::with_capacity(self.element_count);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(Point3::new(
                    self.center.x + (c as f64 - x0) * self.pitch,
                    self.center.y + (r as f64 - y0) * self.pitch,
                    self.center.z,
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn coincident_endpoints() {
        let g = ScenarioGeometry {
            d_x: 0.0,
            ..Default::default()
        };
        let p = g.place_nodes().unwrap();
        assert_eq!(p.tx, Point3::new(0.0, 0.0, 10.0));
        assert_eq!(p.rx, Point3::new(0.0, 0.0, 1.0));
        assert_eq!(p.node, Point3::new(0.0, 10.0, 10.0));
    }

    #[test]
    fn midpoint_placement() {
        let p = ScenarioGeometry::default().place_nodes().unwrap();
        assert_eq!(p.node, Point3::new(200.0, 10.0, 10.0));
        let p = ScenarioGeometry::default().with_d_x(150.0).place_nodes().unwrap();
        assert_eq!(p.node, Point3::new(75.0, 10.0, 10.0));
    }

    #[test]
    fn default_link_distances() {
        let p = ScenarioGeometry::default().place_nodes().unwrap();
        assert_relative_eq!(p.tx_link(), 200.2498, epsilon = 1e-4);
        assert_relative_eq!(p.rx_link(), 200.4520, epsilon = 1e-4);
        assert_eq!(
            link_distance(Point3::new(0.0, 0.0, 10.0), Point3::new(0.0, 10.0, 10.0)),
            10.0
        );
    }

    #[test]
    fn rejects_invalid_geometry() {
        let base = ScenarioGeometry::default();
        for bad in [
            ScenarioGeometry { d_x: -1.0, ..base },
            ScenarioGeometry { d_y: 0.0, ..base },
            ScenarioGeometry { h_rx: 0.0, ..base },
            ScenarioGeometry { h_node: -2.0, ..base },
            ScenarioGeometry { h_tx: f64::NAN, ..base },
        ] {
            assert!(matches!(bad.place_nodes(), Err(Error::InvalidGeometry(_))));
        }
    }

    #[test]
    fn grid_factorization() {
        assert_eq!(grid_dims(1), (1, 1));
        assert_eq!(grid_dims(2), (1, 2));
        assert_eq!(grid_dims(12), (3, 4));
        assert_eq!(grid_dims(13), (1, 13));
        assert_eq!(grid_dims(100_000), (250, 400));
        assert_eq!(grid_dims(49), (7, 7));
    }

    #[test]
    fn single_element_at_center() {
        let c = Point3::new(1.0, 2.0, 3.0);
        let l = SurfaceLayout::new(1, 0.5, 1.0).unwrap().with_center(c).unwrap();
        assert_eq!(l.element_positions(), [c]);
    }

    #[test]
    fn two_by_two_offsets() {
        let p = 0.3;
        let l = SurfaceLayout::new(4, p, 1.0).unwrap();
        let pts = l.element_positions();
        for q in &pts {
            assert_relative_eq!(q.x.abs(), p / 2.0);
            assert_relative_eq!(q.y.abs(), p / 2.0);
        }
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(matches!(SurfaceLayout::new(0, 0.5, 1.0), Err(Error::InvalidLayout(_))));
        assert!(matches!(SurfaceLayout::new(4, 0.0, 1.0), Err(Error::InvalidLayout(_))));
        assert!(matches!(
            SurfaceLayout::new(4, 0.5, 1.0).unwrap().with_grid(3, 2),
            Err(Error::InvalidLayout(_))
        ));
        assert_eq!(SurfaceLayout::new(4, 0.5, 0.0), Err(Error::DegenerateNearField));
    }

    proptest! {
        #[test]
        fn swapping_heights_mirrors_endpoints(
            d_x in 0.0..1000.0f64, d_y in 0.1..100.0f64,
            a in 0.1..50.0f64, b in 0.1..50.0f64, h in 0.1..50.0f64,
        ) {
            let g = ScenarioGeometry { d_x, d_y, h_tx: a, h_rx: b, h_node: h };
            let s = ScenarioGeometry { h_tx: b, h_rx: a, ..g };
            let (p, q) = (g.place_nodes().unwrap(), s.place_nodes().unwrap());
            prop_assert_eq!(p.node, q.node);
            prop_assert_eq!(p.tx.z, q.rx.z);
            prop_assert_eq!(p.rx.z, q.tx.z);
        }

        #[test]
        fn distance_is_a_metric(
            a in prop::array::uniform3(-100.0..100.0f64),
            b in prop::array::uniform3(-100.0..100.0f64),
            c in prop::array::uniform3(-100.0..100.0f64),
        ) {
            let (a, b, c) = (
                Point3::new(a[0], a[1], a[2]),
                Point3::new(b[0], b[1], b[2]),
                Point3::new(c[0], c[1], c[2]),
            );
            prop_assert_eq!(link_distance(a, b), link_distance(b, a));
            prop_assert!(link_distance(a, c) <= link_distance(a, b) + link_distance(b, c) + 1e-9);
        }

        #[test]
        fn grid_centroid_is_surface_center(
            rows in 1usize..20, cols in 1usize..20, pitch in 1e-3..1.0f64,
            c in prop::array::uniform3(-10.0..10.0f64),
        ) {
            let center = Point3::new(c[0], c[1], c[2]);
            let l = SurfaceLayout::new(rows * cols, pitch, 1.0).unwrap()
                .with_grid(rows, cols).unwrap()
                .with_center(center).unwrap();
            let pts = l.element_positions();
            prop_assert_eq!(pts.len(), rows * cols);
            let n = pts.len() as f64;
            let sum = pts.iter().fold(Point3::ORIGIN, |acc, p| acc + (*p - center));
            prop_assert!((sum * (1.0 / n)).norm() < 1e-12);
        }
    }
}
