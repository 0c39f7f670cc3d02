//! Green's function of the flat Laplacian, `ΔG = δ₀ − 1/A`, `∫G ω = 0`.
//!
//! With `ζ = z/λ` and `q = exp(iπτ_p)`,
//!
//! ```text
//! G(z) = (1/2π)·[ log|θ₁(πζ | τ_p)| − π·(Im z)²/A − M(τ_p) ]
//! ```
//!
//! where `M = Σ_{n≥1} log|1 − q²ⁿ| − π·Im τ_p / 12` is the cell
//! average of the bracket (Jensen's formula applied to the product form of
//! θ₁). The bracket is doubly periodic, so `G` is evaluated at the centred
//! representative of its argument, where the theta series converges fastest.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{GridField, PointOnTorus, TorusGeometry};

/// Green's function sampled on the grid.
#[derive(Debug, Clone)]
pub struct GreenSample {
    pub field: GridField,
    /// Node coinciding with the source, if any. Its sample holds the regular
    /// part `lim (G(z) − log|z − z₀| / 2π)` instead of `−∞`.
    pub singular_node: Option<usize>,
}

const SERIES_EPS: f64 = 1e-18;
const MAX_TERMS: usize = 200;

fn nome_power(tau: Complex64, e: f64) -> Complex64 {
    (Complex64::i() * PI * tau * e).exp()
}

/// `(θ₁(x), θ₁'(x))` for the nome `exp(iπτ)`.
fn theta1(x: Complex64, tau: Complex64) -> (Complex64, Complex64) {
    let q_abs = (-PI * tau.im).exp();
    let mut th = Complex64::new(0.0, 0.0);
    let mut dth = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let half = n as f64 + 0.5;
        let c = nome_power(tau, half * half) * if n % 2 == 0 { 2.0 } else { -2.0 };
        th += c * (x * k).sin();
        dth += c * k * (x * k).cos();
        let bound = q_abs.powf(half * half - 0.25) * (2.0 * n as f64 * x.im.abs()).exp() * k;
        if n >= 1 && bound < SERIES_EPS {
            break;
        }
    }
    (th, dth)
}

/// Cell average `M(τ_p)` of `log|θ₁(πζ)| − π(Im ζ)²/Im τ_p`.
fn cell_mean(tau: Complex64) -> f64 {
    let mut acc = -PI * tau.im / 12.0;
    for n in 1..MAX_TERMS {
        let q2n = nome_power(tau, 2.0 * n as f64);
        acc += (Complex64::new(1.0, 0.0) - q2n).norm().ln();
        if q2n.norm() < SERIES_EPS {
            break;
        }
    }
    acc
}

/// Value and Euclidean gradient of `G(dz)` for `dz ≠ 0` (mod the lattice).
pub fn green_kernel(geom: &TorusGeometry, dz: Complex64) -> (f64, [f64; 2]) {
    let tau = geom.period_ratio();
    let lambda = geom.scale();
    let z = geom.reduce_centered(dz);
    let (th, dth) = theta1(z * (PI / lambda), tau);
    let log_deriv = dth / th * (PI / lambda);
    let y = z.im;
    let a = geom.area();
    let value = (th.norm().ln() - PI * y * y / a - cell_mean(tau)) / (2.0 * PI);
    let grad = [
        log_deriv.re / (2.0 * PI),
        (-log_deriv.im - 2.0 * PI * y / a) / (2.0 * PI),
    ];
    (value, grad)
}

/// `lim_{z→0} (G(z) − log|z| / 2π)`.
pub fn green_regular_part_at_origin(geom: &TorusGeometry) -> f64 {
    let tau = geom.period_ratio();
    let (_, d0) = theta1(Complex64::new(0.0, 0.0), tau);
    ((PI * d0.norm() / geom.scale()).ln() - cell_mean(tau)) / (2.0 * PI)
}

/// Lattice-coordinate distance below which a node is treated as the source.
pub(crate) const COINCIDENCE_TOL: f64 = 1e-9;

pub(crate) fn green_coincidence_tol() -> f64 {
    COINCIDENCE_TOL
}

/// Samples `G(· − z₀)` on the grid of `geom`.
pub fn greens_function(geom: &Arc<TorusGeometry>, z0: &PointOnTorus) -> GreenSample {
    let reg = green_regular_part_at_origin(geom);
    let mut singular_node = None;
    let values = (0..geom.len())
        .map(|k| {
            let z = geom.node_at(k);
            if PointOnTorus::new(geom, z).coincides(z0, COINCIDENCE_TOL) {
                singular_node = Some(k);
                reg
            } else {
                green_kernel(geom, z - z0.z()).0
            }
        })
        .collect();
    GreenSample {
        field: GridField::from_vec(geom.clone(), values),
        singular_node,
    }
}
