//! Preconditioned conjugate gradients for symmetric positive-definite
//! operators on grid samples.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct CgStats {
    pub iterations: usize,
    /// Final `‖b − Ax‖₂ / ‖b‖₂`.
    pub relative_residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `A x = b` starting from `x`, stopping once the relative residual
/// drops below `rtol`. `apply` computes `A·p`, `precond` an SPD
/// approximation of `A⁻¹·r`.
pub fn pcg(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    precond: impl Fn(&[f64]) -> Vec<f64>,
    b: &[f64],
    x: &mut [f64],
    rtol: f64,
    max_iter: usize,
) -> Result<CgStats> {
    let bnorm = dot(b, b).sqrt();
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok(CgStats {
            iterations: 0,
            relative_residual: 0.0,
        });
    }
    let ax = apply(x);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut rel = dot(&r, &r).sqrt() / bnorm;
    for it in 0..max_iter {
        if rel <= rtol {
            return Ok(CgStats {
                iterations: it,
                relative_residual: rel,
            });
        }
        let ap = apply(&p);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::Domain(format!(
                "operator is not positive definite (pᵀAp = {pap:.3e})"
            )));
        }
        let alpha = rz / pap;
        for k in 0..x.len() {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        rel = dot(&r, &r).sqrt() / bnorm;
        z = precond(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..p.len() {
            p[k] = z[k] + beta * p[k];
        }
    }
    if rel <= rtol {
        return Ok(CgStats {
            iterations: max_iter,
            relative_residual: rel,
        });
    }
    Err(Error::Convergence {
        stage: "conjugate gradients",
        iterations: max_iter,
        residual: rel,
    })
}
