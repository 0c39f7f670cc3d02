use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::spectral::Spectral;
use crate::error::{domain, Result};

const MIN_GRID: usize = 16;

/// A flat torus `ℂ / λ(ℤ + ℤτ_p)` together with its sampling grid and the
/// transforms used for spectral calculus on it.
pub struct TorusGeometry {
    period_ratio: Complex64,
    scale: f64,
    area: f64,
    dims: (usize, usize),
    pub(crate) spectral: Spectral,
}

impl fmt::Debug for TorusGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGeometry")
            .field("period_ratio", &self.period_ratio)
            .field("scale", &self.scale)
            .field("area", &self.area)
            .field("dims", &self.dims)
            .finish()
    }
}

impl PartialEq for TorusGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.period_ratio == other.period_ratio
            && self.scale == other.scale
            && self.area == other.area
            && self.dims == other.dims
    }
}

/// Builds a torus with the given period ratio, total area and grid.
pub fn make_torus(
    period_ratio: Complex64,
    area: f64,
    grid_dims: (usize, usize),
) -> Result<Arc<TorusGeometry>> {
    TorusGeometry::new(period_ratio, area, grid_dims)
}

fn is_transform_friendly(mut n: usize) -> bool {
    for p in [2, 3, 5, 7] {
        while n % p == 0 {
            n /= p;
        }
    }
    n == 1
}

impl TorusGeometry {
    pub fn new(period_ratio: Complex64, area: f64, grid_dims: (usize, usize)) -> Result<Arc<Self>> {
        if !(period_ratio.im > 0.0) || !period_ratio.re.is_finite() || !period_ratio.im.is_finite()
        {
            return domain(format!(
                "period ratio must have positive imaginary part, got {period_ratio}"
            ));
        }
        if !(area > 0.0) || !area.is_finite() {
            return domain(format!("area must be positive, got {area}"));
        }
        let (n1, n2) = grid_dims;
        for n in [n1, n2] {
            if n < MIN_GRID {
                return domain(format!(
                    "grid dimension {n} is below the minimum {MIN_GRID}"
                ));
            }
            if !is_transform_friendly(n) {
                return domain(format!("grid dimension {n} has a prime factor above 7"));
            }
        }
        let scale = (area / period_ratio.im).sqrt();
        let spectral = Spectral::new(period_ratio, scale, n1, n2);
        Ok(Arc::new(Self {
            period_ratio,
            scale,
            area,
            dims: grid_dims,
            spectral,
        }))
    }

    /// Same torus with a different grid.
    pub fn with_grid(&self, grid_dims: (usize, usize)) -> Result<Arc<Self>> {
        Self::new(self.period_ratio, self.area, grid_dims)
    }

    pub fn period_ratio(&self) -> Complex64 {
        self.period_ratio
    }

    /// Lattice scale `λ`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The two lattice generators `λ` and `λτ_p`.
    pub fn periods(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.scale, 0.0),
            self.period_ratio * self.scale,
        )
    }

    /// Mean grid spacing `sqrt(A / N₁N₂)`.
    pub fn spacing(&self) -> f64 {
        (self.area / self.len() as f64).sqrt()
    }

    /// Position of grid node `(i, j)`.
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        let s = i as f64 / self.dims.0 as f64;
        let t = j as f64 / self.dims.1 as f64;
        self.from_lattice(s, t)
    }

    /// Position of the node with flat index `k`.
    pub fn node_at(&self, k: usize) -> Complex64 {
        self.node(k / self.dims.1, k % self.dims.1)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dims.1 + j
    }

    /// Euclidean point with lattice coordinates `(s, t)`.
    pub fn from_lattice(&self, s: f64, t: f64) -> Complex64 {
        (Complex64::new(s, 0.0) + self.period_ratio * t) * self.scale
    }

    /// Lattice coordinates `(s, t)` with `z = λ(s + tτ_p)`.
    pub fn to_lattice(&self, z: Complex64) -> (f64, f64) {
        let zeta = z / self.scale;
        let t = zeta.im / self.period_ratio.im;
        let s = zeta.re - t * self.period_ratio.re;
        (s, t)
    }

    /// Representative of `z` whose lattice coordinates lie in `[-½, ½)`.
    pub fn reduce_centered(&self, z: Complex64) -> Complex64 {
        let (s, t) = self.to_lattice(z);
        self.from_lattice(s - (s + 0.5).floor(), t - (t + 0.5).floor())
    }
}

/// A point of the torus, stored in its canonical representative with
/// lattice coordinates in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointOnTorus {
    z: Complex64,
    lattice: (f64, f64),
}

fn unit_interval(x: f64) -> f64 {
    let r = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl PointOnTorus {
    pub fn new(geom: &TorusGeometry, z: Complex64) -> Self {
        let (s, t) = geom.to_lattice(z);
        Self::from_lattice(geom, s, t)
    }

    pub fn from_lattice(geom: &TorusGeometry, s: f64, t: f64) -> Self {
        let lattice = (unit_interval(s), unit_interval(t));
        Self {
            z: geom.from_lattice(lattice.0, lattice.1),
            lattice,
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn lattice(&self) -> (f64, f64) {
        self.lattice
    }

    /// Whether two points coincide on the torus up to `tol` in lattice units.
    pub fn coincides(&self, other: &Self, tol: f64) -> bool {
        let d = |a: f64, b: f64| {
            let x = (a - b).abs();
            x.min(1.0 - x)
        };
        d(self.lattice.0, other.lattice.0) <= tol && d(self.lattice.1, other.lattice.1) <= tol
    }
}
