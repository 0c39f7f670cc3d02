use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{ComplexField, GridField, TorusGeometry};
use crate::error::{domain, Result};

/// Transforms and Fourier symbols for one torus grid.
pub(crate) struct Spectral {
    n1: usize,
    n2: usize,
    fwd1: Arc<dyn Fft<f64>>,
    inv1: Arc<dyn Fft<f64>>,
    fwd2: Arc<dyn Fft<f64>>,
    inv2: Arc<dyn Fft<f64>>,
    /// Euclidean wavevector per mode; zero on Nyquist rows/columns.
    kx: Vec<f64>,
    ky: Vec<f64>,
    /// Symbol of Δ (non-positive). Nyquist modes use the average over the
    /// ±N/2 aliases so the symbol is even in k.
    lap: Vec<f64>,
}

fn signed_freq(i: usize, n: usize) -> Option<i64> {
    if 2 * i == n {
        None
    } else if 2 * i < n {
        Some(i as i64)
    } else {
        Some(i as i64 - n as i64)
    }
}

impl Spectral {
    pub(crate) fn new(period_ratio: Complex64, scale: f64, n1: usize, n2: usize) -> Self {
        let mut planner = FftPlanner::new();
        let base = 2.0 * PI / scale;
        let wave = |m: f64, n: f64| (base * m, base * (n - m * period_ratio.re) / period_ratio.im);
        let mut kx = vec![0.0; n1 * n2];
        let mut ky = vec![0.0; n1 * n2];
        let mut lap = vec![0.0; n1 * n2];
        for i in 0..n1 {
            let ms: Vec<f64> = match signed_freq(i, n1) {
                Some(m) => vec![m as f64],
                None => vec![n1 as f64 / 2.0, -(n1 as f64) / 2.0],
            };
            for j in 0..n2 {
                let ns: Vec<f64> = match signed_freq(j, n2) {
                    Some(n) => vec![n as f64],
                    None => vec![n2 as f64 / 2.0, -(n2 as f64) / 2.0],
                };
                let k = i * n2 + j;
                let mut acc = 0.0;
                for &m in &ms {
                    for &n in &ns {
                        let (a, b) = wave(m, n);
                        acc += a * a + b * b;
                    }
                }
                lap[k] = -acc / (ms.len() * ns.len()) as f64;
                if ms.len() == 1 && ns.len() == 1 {
                    let (a, b) = wave(ms[0], ns[0]);
                    kx[k] = a;
                    ky[k] = b;
                }
            }
        }
        Self {
            n1,
            n2,
            fwd1: planner.plan_fft_forward(n1),
            inv1: planner.plan_fft_inverse(n1),
            fwd2: planner.plan_fft_forward(n2),
            inv2: planner.plan_fft_inverse(n2),
            kx,
            ky,
            lap,
        }
    }

    fn transpose(src: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
        for r in 0..rows {
            for c in 0..cols {
                out[c * rows + r] = src[r * cols + c];
            }
        }
        out
    }

    fn fft2(&self, buf: &mut Vec<Complex64>, inverse: bool) {
        let (along_j, along_i) = if inverse {
            (&self.inv2, &self.inv1)
        } else {
            (&self.fwd2, &self.fwd1)
        };
        along_j.process(buf);
        let mut t = Self::transpose(buf, self.n1, self.n2);
        along_i.process(&mut t);
        *buf = Self::transpose(&t, self.n2, self.n1);
        if inverse {
            let s = 1.0 / (self.n1 * self.n2) as f64;
            buf.iter_mut().for_each(|c| *c *= s);
        }
    }

    pub(crate) fn forward_real(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fft2(&mut buf, false);
        buf
    }

    pub(crate) fn inverse_real(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        self.fft2(&mut spec, true);
        spec.into_iter().map(|c| c.re).collect()
    }

    /// Applies the Fourier multiplier `symbol(k)` to real samples.
    pub(crate) fn multiply(&self, values: &[f64], symbol: impl Fn(usize) -> Complex64) -> Vec<f64> {
        let mut spec = self.forward_real(values);
        for (k, c) in spec.iter_mut().enumerate() {
            *c *= symbol(k);
        }
        self.inverse_real(spec)
    }

    pub(crate) fn laplacian_symbol(&self, k: usize) -> f64 {
        self.lap[k]
    }

    pub(crate) fn gradient(&self, values: &[f64]) -> [Vec<f64>; 2] {
        let spec = self.forward_real(values);
        let dx = spec
            .iter()
            .enumerate()
            .map(|(k, c)| c * Complex64::new(0.0, self.kx[k]))
            .collect();
        let dy = spec
            .iter()
            .enumerate()
            .map(|(k, c)| c * Complex64::new(0.0, self.ky[k]))
            .collect();
        [self.inverse_real(dx), self.inverse_real(dy)]
    }

    /// Solves `(−Δ + shift)·s = f`; for `shift == 0` the zero mode of the
    /// result is set to zero.
    pub(crate) fn solve_shifted(&self, values: &[f64], shift: f64) -> Vec<f64> {
        self.multiply(values, |k| {
            let d = shift - self.lap[k];
            if d == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(1.0 / d, 0.0)
            }
        })
    }

    /// Evaluates the trigonometric interpolant of `values` and its Euclidean
    /// gradient at an arbitrary point with lattice coordinates `(s, t)`.
    pub(crate) fn interpolate(&self, values: &[f64], s: f64, t: f64) -> (f64, [f64; 2]) {
        let spec = self.forward_real(values);
        let norm = 1.0 / (self.n1 * self.n2) as f64;
        let (mut val, mut gx, mut gy) = (0.0, 0.0, 0.0);
        for i in 0..self.n1 {
            let mi = signed_freq(i, self.n1);
            for j in 0..self.n2 {
                let nj = signed_freq(j, self.n2);
                let k = i * self.n2 + j;
                let c = spec[k] * norm;
                // Nyquist modes contribute their real (cosine) part only.
                let (m, n, nyq) = match (mi, nj) {
                    (Some(m), Some(n)) => (m as f64, n as f64, false),
                    (m, n) => (
                        m.map_or(self.n1 as f64 / 2.0, |m| m as f64),
                        n.map_or(self.n2 as f64 / 2.0, |n| n as f64),
                        true,
                    ),
                };
                let phase = Complex64::from_polar(1.0, 2.0 * PI * (m * s + n * t));
                let term = c * phase;
                if nyq {
                    let cosine = c.re * (2.0 * PI * (m * s + n * t)).cos()
                        - c.im * (2.0 * PI * (m * s + n * t)).sin();
                    val += cosine;
                } else {
                    val += term.re;
                    gx += (term * Complex64::new(0.0, self.kx[k])).re;
                    gy += (term * Complex64::new(0.0, self.ky[k])).re;
                }
            }
        }
        (val, [gx, gy])
    }
}

/// `∫ f ω`, computed as the grid mean times the area.
pub fn integrate(f: &GridField) -> f64 {
    f.mean() * f.geometry().area()
}

/// `∫ f ω` for a complex field.
pub fn integrate_complex(f: &ComplexField) -> Complex64 {
    let s: Complex64 = f.values().iter().sum();
    s * (f.geometry().area() / f.values().len() as f64)
}

/// Euclidean gradient `(∂ₓf, ∂_y f)` by spectral differentiation.
pub fn spectral_gradient(f: &GridField) -> [GridField; 2] {
    let g = f.geometry();
    let [dx, dy] = g.spectral.gradient(f.values());
    [
        GridField::from_vec(g.clone(), dx),
        GridField::from_vec(g.clone(), dy),
    ]
}

/// Spectral `Δ = ∂²ₓ + ∂²_y`.
pub fn laplacian_apply(f: &GridField) -> GridField {
    let g = f.geometry();
    let sp = &g.spectral;
    let out = sp.multiply(f.values(), |k| Complex64::new(sp.laplacian_symbol(k), 0.0));
    GridField::from_vec(g.clone(), out)
}

/// Divergence `∂ₓX + ∂_yY` of a vector field, so that `d*α = −div α`.
pub fn divergence(x: &GridField, y: &GridField) -> GridField {
    let g = x.geometry();
    let sp = &g.spectral;
    let sx = sp.forward_real(x.values());
    let sy = sp.forward_real(y.values());
    let spec = sx
        .iter()
        .zip(&sy)
        .enumerate()
        .map(|(k, (a, b))| a * Complex64::new(0.0, sp.kx[k]) + b * Complex64::new(0.0, sp.ky[k]))
        .collect();
    GridField::from_vec(g.clone(), sp.inverse_real(spec))
}

/// Relative tolerance on the mean of a Poisson right-hand side.
pub const POISSON_MEAN_TOL: f64 = 1e-10;

/// Unique mean-zero `s` with `Δs = f − mean(f)`.
///
/// The input must already be mean-zero up to `POISSON_MEAN_TOL·‖f‖∞`.
pub fn poisson_solve(f: &GridField) -> Result<GridField> {
    let mean = f.mean();
    let scale = f.norm_inf();
    if mean.abs() > POISSON_MEAN_TOL * scale.max(f64::MIN_POSITIVE) && mean.abs() > 0.0 {
        return domain(format!(
            "Poisson right-hand side has mean {mean:.3e} (‖f‖∞ = {scale:.3e})"
        ));
    }
    let g = f.geometry();
    let out = g.spectral.multiply(f.values(), |k| {
        let l = g.spectral.laplacian_symbol(k);
        if l == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0 / l, 0.0)
        }
    });
    Ok(GridField::from_vec(g.clone(), out))
}

/// `(−Δ + shift)⁻¹ f` for a constant `shift > 0`.
pub fn shifted_inverse(f: &GridField, shift: f64) -> GridField {
    let g = f.geometry();
    GridField::from_vec(g.clone(), g.spectral.solve_shifted(f.values(), shift))
}

/// Value and gradient of the trigonometric interpolant of `f` at `z`.
pub fn interpolate(f: &GridField, z: Complex64) -> (f64, [f64; 2]) {
    let g = f.geometry();
    let (s, t) = g.to_lattice(z);
    g.spectral.interpolate(f.values(), s, t)
}

impl TorusGeometry {
    /// Euclidean wavevector of the plane wave `exp(2πi(m·s + n·t))`.
    pub fn wavevector(&self, m: i64, n: i64) -> [f64; 2] {
        let tau = self.period_ratio();
        let base = 2.0 * PI / self.scale();
        [
            base * m as f64,
            base * (n as f64 - m as f64 * tau.re) / tau.im,
        ]
    }
}
