use std::sync::Arc;

use num_complex::Complex64;

use super::TorusGeometry;
use crate::error::{domain, Result};

/// Real samples of a function on the torus grid.
#[derive(Debug, Clone)]
pub struct GridField {
    geom: Arc<TorusGeometry>,
    values: Vec<f64>,
}

/// Complex samples of a function on the torus grid.
#[derive(Debug, Clone)]
pub struct ComplexField {
    geom: Arc<TorusGeometry>,
    values: Vec<Complex64>,
}

impl GridField {
    pub fn new(geom: Arc<TorusGeometry>, values: Vec<f64>) -> Result<Self> {
        if values.len() != geom.len() {
            return domain(format!(
                "field has {} samples, grid {:?} needs {}",
                values.len(),
                geom.dims(),
                geom.len()
            ));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("non-finite sample {} at node {k}", values[k]));
        }
        Ok(Self { geom, values })
    }

    /// Unchecked constructor for values produced by finite arithmetic.
    pub(crate) fn from_vec(geom: Arc<TorusGeometry>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), geom.len());
        Self { geom, values }
    }

    pub fn constant(geom: Arc<TorusGeometry>, c: f64) -> Self {
        let n = geom.len();
        Self::from_vec(geom, vec![c; n])
    }

    pub fn zeros(geom: Arc<TorusGeometry>) -> Self {
        Self::constant(geom, 0.0)
    }

    /// Samples `f` at every grid node.
    pub fn from_fn(geom: Arc<TorusGeometry>, f: impl Fn(Complex64) -> f64) -> Self {
        let values = (0..geom.len()).map(|k| f(geom.node_at(k))).collect();
        Self::from_vec(geom, values)
    }

    pub fn geometry(&self) -> &Arc<TorusGeometry> {
        &self.geom
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.geom.index(i, j)]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_vec(
            self.geom.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn zip_map(&self, other: &GridField, f: impl Fn(f64, f64) -> f64) -> Self {
        assert!(self.same_grid(other), "fields live on different grids");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_vec(self.geom.clone(), values)
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &GridField) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridField) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &GridField) -> Self {
        self.zip_map(other, |a, b| a * b)
    }

    /// `self += c·other`
    pub fn axpy(&mut self, c: f64, other: &GridField) {
        assert!(self.same_grid(other), "fields live on different grids");
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn argmin(&self) -> usize {
        extreme_index(&self.values, |a, b| a < b)
    }

    pub fn argmax(&self) -> usize {
        extreme_index(&self.values, |a, b| a > b)
    }

    pub fn same_grid(&self, other: &GridField) -> bool {
        Arc::ptr_eq(&self.geom, &other.geom) || *self.geom == *other.geom
    }

    /// Cyclic shift by whole grid steps: `out(i, j) = self(i − di, j − dj)`.
    pub fn shifted(&self, di: isize, dj: isize) -> Self {
        let (n1, n2) = self.geom.dims();
        let mut out = vec![0.0; self.values.len()];
        for i in 0..n1 {
            let si = (i as isize - di).rem_euclid(n1 as isize) as usize;
            for j in 0..n2 {
                let sj = (j as isize - dj).rem_euclid(n2 as isize) as usize;
                out[i * n2 + j] = self.values[si * n2 + sj];
            }
        }
        Self::from_vec(self.geom.clone(), out)
    }

    pub fn to_complex(&self) -> ComplexField {
        ComplexField::from_vec(
            self.geom.clone(),
            self.values
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
        )
    }
}

fn extreme_index(values: &[f64], better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if better(v, values[best]) {
            best = k;
        }
    }
    best
}

impl ComplexField {
    pub fn new(geom: Arc<TorusGeometry>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != geom.len() {
            return domain(format!(
                "field has {} samples, grid needs {}",
                values.len(),
                geom.len()
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("non-finite complex sample");
        }
        Ok(Self { geom, values })
    }

    pub(crate) fn from_vec(geom: Arc<TorusGeometry>, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), geom.len());
        Self { geom, values }
    }

    pub fn from_fn(geom: Arc<TorusGeometry>, f: impl Fn(Complex64) -> Complex64) -> Self {
        let values = (0..geom.len()).map(|k| f(geom.node_at(k))).collect();
        Self::from_vec(geom, values)
    }

    pub fn geometry(&self) -> &Arc<TorusGeometry> {
        &self.geom
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn re(&self) -> GridField {
        GridField::from_vec(
            self.geom.clone(),
            self.values.iter().map(|c| c.re).collect(),
        )
    }

    pub fn im(&self) -> GridField {
        GridField::from_vec(
            self.geom.clone(),
            self.values.iter().map(|c| c.im).collect(),
        )
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_torus;

    #[test]
    fn constructor_checks() {
        let g = make_torus(Complex64::i(), 1.0, (16, 16)).unwrap();
        assert!(GridField::new(g.clone(), vec![0.0; 10]).is_err());
        let mut v = vec![0.0; 256];
        v[3] = f64::NAN;
        assert!(GridField::new(g.clone(), v).is_err());
        assert!(GridField::new(g, vec![1.0; 256]).is_ok());
    }

    #[test]
    fn shift_moves_samples() {
        let g = make_torus(Complex64::i(), 1.0, (16, 16)).unwrap();
        let f = GridField::from_fn(g.clone(), |z| z.re + 10.0 * z.im);
        let s = f.shifted(1, 2);
        assert_eq!(s.at(1, 2), f.at(0, 0));
        assert_eq!(s.at(0, 0), f.at(15, 14));
        assert_eq!(f.shifted(16, -16).values(), f.values());
    }
}
