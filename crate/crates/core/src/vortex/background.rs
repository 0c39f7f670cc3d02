use std::f64::consts::PI;

use num_complex::Complex64;

use super::VortexParams;
use crate::surface::{green_kernel, green_regular_part_at_origin, GridField, PointOnTorus};

/// The singular part `u₀ = 4π Σ mⱼ G(· − zⱼ)` of `log|ψ|²`, together with
/// the bounded products that downstream formulas need near the cores.
///
/// At a node sitting exactly on a core `zⱼ` the log-singular samples are
/// replaced by their limits: `u0` holds the regular part
/// `aⱼ = lim (u₀ − 2mⱼ log|z − zⱼ|)`, `exp_u0` and `exp_grad` are zero, and
/// `exp_grad_sq` is `4e^{aⱼ}` for a simple zero and zero otherwise.
#[derive(Debug, Clone)]
pub struct SingularBackground {
    pub u0: GridField,
    /// `e^{u₀}`
    pub exp_u0: GridField,
    /// `e^{u₀} ∇u₀`
    pub exp_grad: [GridField; 2],
    /// `e^{u₀} |∇u₀|²`
    pub exp_grad_sq: GridField,
    /// `(node index, divisor point index)` for nodes on a core.
    pub core_nodes: Vec<(usize, usize)>,
    /// Regular part `aⱼ` of `u₀` at each divisor point.
    pub core_regular: Vec<f64>,
}

/// Builds `u₀` and its regularised companions on the parameter grid.
pub fn singular_background(params: &VortexParams) -> SingularBackground {
    let geom = &params.geometry;
    let div = &params.divisor;
    let n = geom.len();
    let g_reg = green_regular_part_at_origin(geom);

    let core_regular: Vec<f64> = div
        .iter()
        .enumerate()
        .map(|(j, (pj, mj))| {
            let mut a = 4.0 * PI * mj as f64 * g_reg;
            for (k, (pk, mk)) in div.iter().enumerate() {
                if k != j {
                    a += 4.0 * PI * mk as f64 * green_kernel(geom, pj.z() - pk.z()).0;
                }
            }
            a
        })
        .collect();

    let mut u0 = vec![0.0; n];
    let mut exp_u0 = vec![0.0; n];
    let mut ex = vec![0.0; n];
    let mut ey = vec![0.0; n];
    let mut esq = vec![0.0; n];
    let mut core_nodes = Vec::new();

    for k in 0..n {
        let z = geom.node_at(k);
        let here = PointOnTorus::new(geom, z);
        let on_core = div
            .points()
            .iter()
            .position(|p| p.coincides(&here, crate::surface::green_coincidence_tol()));
        if let Some(j) = on_core {
            core_nodes.push((k, j));
            u0[k] = core_regular[j];
            if div.multiplicities()[j] == 1 {
                esq[k] = 4.0 * core_regular[j].exp();
            }
            continue;
        }
        let (mut val, mut gx, mut gy) = (0.0, 0.0, 0.0);
        for (p, m) in div.iter() {
            let (g, grad) = green_kernel(geom, z - p.z());
            let c = 4.0 * PI * m as f64;
            val += c * g;
            gx += c * grad[0];
            gy += c * grad[1];
        }
        let e = val.exp();
        u0[k] = val;
        exp_u0[k] = e;
        ex[k] = e * gx;
        ey[k] = e * gy;
        esq[k] = e * (gx * gx + gy * gy);
    }

    let f = |v: Vec<f64>| GridField::from_vec(geom.clone(), v);
    SingularBackground {
        u0: f(u0),
        exp_u0: f(exp_u0),
        exp_grad: [f(ex), f(ey)],
        exp_grad_sq: f(esq),
        core_nodes,
        core_regular,
    }
}

impl SingularBackground {
    /// `∇(u₀ − 2mⱼ log|z − zⱼ|)` at the divisor point `j`, as `∂ₓ + i∂_y`.
    pub fn regular_gradient_at_core(params: &VortexParams, j: usize) -> Complex64 {
        let geom = &params.geometry;
        let div = &params.divisor;
        let zj = div.points()[j].z();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, (pk, mk)) in div.iter().enumerate() {
            if k != j {
                let (_, grad) = green_kernel(geom, zj - pk.z());
                acc += Complex64::new(grad[0], grad[1]) * (4.0 * PI * mk as f64);
            }
        }
        acc
    }
}
