use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::surface::{PointOnTorus, TorusGeometry};

/// Effective divisor `Σ mⱼ·zⱼ` on the torus: the zero set of `ψ` counted
/// with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    points: Vec<PointOnTorus>,
    multiplicities: Vec<u32>,
}

/// Lattice-coordinate distance under which two points count as equal.
const DISTINCT_TOL: f64 = 1e-12;

impl Divisor {
    pub fn new(points: Vec<PointOnTorus>, multiplicities: Vec<u32>) -> Result<Self> {
        if points.is_empty() {
            return domain("divisor needs at least one point");
        }
        if points.len() != multiplicities.len() {
            return domain("one multiplicity per point required");
        }
        if multiplicities.contains(&0) {
            return domain("multiplicities must be positive");
        }
        for (a, p) in points.iter().enumerate() {
            for q in &points[a + 1..] {
                if p.coincides(q, DISTINCT_TOL) {
                    return domain(format!(
                        "points {:?} and {:?} coincide; use a multiplicity instead",
                        p.z(),
                        q.z()
                    ));
                }
            }
        }
        Ok(Self {
            points,
            multiplicities,
        })
    }

    /// Divisor of simple zeros at the given Euclidean positions.
    pub fn simple(geom: &TorusGeometry, zs: &[Complex64]) -> Result<Self> {
        let points = zs.iter().map(|&z| PointOnTorus::new(geom, z)).collect();
        Self::new(points, vec![1; zs.len()])
    }

    pub fn from_positions(geom: &TorusGeometry, zs: &[Complex64], mults: &[u32]) -> Result<Self> {
        let points = zs.iter().map(|&z| PointOnTorus::new(geom, z)).collect();
        Self::new(points, mults.to_vec())
    }

    pub fn degree(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn points(&self) -> &[PointOnTorus] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointOnTorus, u32)> {
        self.points.iter().zip(self.multiplicities.iter().copied())
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }

    /// Every point moved by `w`.
    pub fn translated(&self, geom: &TorusGeometry, w: Complex64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| PointOnTorus::new(geom, p.z() + w))
                .collect(),
            multiplicities: self.multiplicities.clone(),
        }
    }

    /// Point `index` moved by `w`, others fixed.
    pub fn moved(&self, geom: &TorusGeometry, index: usize, w: Complex64) -> Result<Self> {
        let mut points = self.points.clone();
        points[index] = PointOnTorus::new(geom, points[index].z() + w);
        Self::new(points, self.multiplicities.clone())
    }

    /// Same lattice coordinates on another torus grid.
    pub(crate) fn rebased(&self, geom: &TorusGeometry) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| PointOnTorus::from_lattice(geom, p.lattice().0, p.lattice().1))
                .collect(),
            multiplicities: self.multiplicities.clone(),
        }
    }

    /// Smallest torus distance between distinct points (`∞` for one point).
    pub fn min_separation(&self, geom: &TorusGeometry) -> f64 {
        let mut best = f64::INFINITY;
        for (a, p) in self.points.iter().enumerate() {
            for q in &self.points[a + 1..] {
                best = best.min(geom.reduce_centered(p.z() - q.z()).norm());
            }
        }
        best
    }
}
