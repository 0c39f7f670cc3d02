use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{singular_background, BradlowRegime, SingularBackground, VortexParams};
use crate::error::{domain, Error, Result};
use crate::krylov::pcg;
use crate::surface::{integrate, laplacian_apply, shifted_inverse, spectral_gradient, GridField};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Newton stops once `‖F(v)‖∞ / 2τ` falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Upper bound on the relative Krylov tolerance of each Newton step.
    pub inner_forcing: f64,
    pub max_inner: usize,
    /// Residuals within `stall_factor · tol` are accepted once a Newton step
    /// fails to halve them: the FFT roundoff floor of `Δv` grows like `N²`
    /// and reaches `tol` on fine grids.
    pub stall_factor: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 25,
            inner_forcing: 1e-3,
            max_inner: 1000,
            stall_factor: 10.0,
        }
    }
}

/// A converged solution of the Taubes equation with its certificates.
#[derive(Debug, Clone)]
pub struct TaubesSolution {
    pub params: VortexParams,
    pub background: SingularBackground,
    /// Smooth correction, `u = u₀ + v`.
    pub v: GridField,
    pub u: GridField,
    /// `|ψ|² = e^u`
    pub exp_u: GridField,
    /// `e^u ∇u`, bounded at the cores.
    pub exp_grad_u: [GridField; 2],
    /// `e^u |∇u|²`, bounded at the cores.
    pub exp_grad_u_sq: GridField,
    pub grad_v: [GridField; 2],
    pub newton_iters: usize,
    /// Final `‖F(v)‖∞ / 2τ`.
    pub residual_linf: f64,
    /// `|∫e^u ω − (2τA − 4πr)|`
    pub bradlow_defect: f64,
    /// Scaled residual before each Newton step and after the last one.
    pub residual_history: Vec<f64>,
}

/// The `τA = 2πr` branch: `ψ ≡ 0` and constant curvature.
#[derive(Debug, Clone)]
pub struct DegenerateSolution {
    pub params: VortexParams,
    /// `f` in `iF_A = f·ω`; equal to `τ`.
    pub curvature_density: f64,
}

impl DegenerateSolution {
    /// `∫ iF_A = τA = 2πr`.
    pub fn flux(&self) -> f64 {
        self.curvature_density * self.params.geometry.area()
    }

    /// `m(A, 0) = *iF_A`.
    pub fn moment_map_value(&self) -> f64 {
        self.curvature_density
    }
}

#[derive(Debug, Clone)]
pub enum Solution {
    Vortex(Box<TaubesSolution>),
    Degenerate(DegenerateSolution),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `‖Δv − e^u + 2τ − 4πr/A‖∞`
    pub pde_residual_linf: f64,
    /// The same divided by `2τ`.
    pub pde_residual_scaled: f64,
    /// `|∫e^u ω − (2τA − 4πr)|`
    pub bradlow_defect: f64,
    /// `|∫(τ − ½e^u) ω − 2πr|`
    pub flux_defect: f64,
    /// `min(2τ − e^u)`
    pub positivity_margin: f64,
    pub degenerate: bool,
}

fn taubes_residual(
    params: &VortexParams,
    bg: &SingularBackground,
    v: &GridField,
) -> (GridField, GridField) {
    let c = rhs_constant(params);
    let exp_u = bg.exp_u0.zip_map(v, |b, v| b * v.exp());
    let lap = laplacian_apply(v);
    let f = lap.zip_map(&exp_u, |l, e| l - e + c);
    (f, exp_u)
}

fn rhs_constant(params: &VortexParams) -> f64 {
    2.0 * params.tau - 4.0 * PI * params.degree() as f64 / params.geometry.area()
}

/// Solves the Taubes equation from the constant initial guess matching the
/// Bradlow integral.
pub fn solve_taubes(params: &VortexParams, opts: &SolveOptions) -> Result<TaubesSolution> {
    solve_taubes_from(params, opts, None)
}

/// Inexact Newton on `F(v) = Δv − e^{u₀+v} + 2τ − 4πr/A`. Each step solves
/// `(−Δ + e^u) δ = F` by conjugate gradients preconditioned with
/// `(−Δ + mean e^u)⁻¹`, followed by a backtracking line search on `‖F‖∞`.
pub fn solve_taubes_from(
    params: &VortexParams,
    opts: &SolveOptions,
    init: Option<GridField>,
) -> Result<TaubesSolution> {
    match params.regime() {
        BradlowRegime::Stable => {}
        BradlowRegime::Degenerate => {
            return domain("τA = 2πr is the degenerate branch; use bradlow_limit")
        }
        BradlowRegime::Violated => return domain("Bradlow bound τA > 2πr violated"),
    }
    let geom = params.geometry.clone();
    let bg = singular_background(params);
    let scale = 2.0 * params.tau;

    let mut v = match init {
        Some(v) => {
            if v.values().len() != geom.len() {
                return domain("initial guess lives on a different grid");
            }
            v
        }
        None => {
            let c = params.bradlow_integral().ln() - integrate(&bg.exp_u0).ln();
            GridField::constant(geom.clone(), c)
        }
    };

    let mut history = Vec::new();
    let (mut f, mut exp_u) = taubes_residual(params, &bg, &v);
    for it in 0..=opts.max_iter {
        let fnorm = f.norm_inf();
        let scaled = fnorm / scale;
        let stalled = history
            .last()
            .is_some_and(|&prev| scaled > 0.5 * prev && scaled <= opts.stall_factor * opts.tol);
        history.push(scaled);
        if scaled <= opts.tol || stalled {
            return Ok(assemble(params.clone(), bg, v, it, history));
        }
        if it == opts.max_iter {
            break;
        }
        let eta = opts.inner_forcing.min(fnorm / scale).max(1e-14);
        let shift = exp_u.mean();
        let eu = exp_u.values();
        let apply = |p: &[f64]| {
            let pf = GridField::from_vec(geom.clone(), p.to_vec());
            let lap = laplacian_apply(&pf);
            lap.values()
                .iter()
                .zip(p.iter().zip(eu))
                .map(|(l, (p, e))| -l + e * p)
                .collect::<Vec<_>>()
        };
        let precond = |r: &[f64]| {
            shifted_inverse(&GridField::from_vec(geom.clone(), r.to_vec()), shift).into_values()
        };
        let mut delta = vec![0.0; geom.len()];
        pcg(apply, precond, f.values(), &mut delta, eta, opts.max_inner)?;
        let delta = GridField::from_vec(geom.clone(), delta);

        let mut step = 1.0;
        loop {
            let mut trial = v.clone();
            trial.axpy(step, &delta);
            let (ft, et) = taubes_residual(params, &bg, &trial);
            let accept = ft.norm_inf() <= (1.0 - 1e-4 * step) * fnorm;
            if accept || step < 1.0 / 64.0 {
                v = trial;
                f = ft;
                exp_u = et;
                break;
            }
            step *= 0.5;
        }
    }
    Err(Error::Convergence {
        stage: "Newton",
        iterations: opts.max_iter,
        residual: *history.last().unwrap_or(&f64::NAN),
    })
}

fn assemble(
    params: VortexParams,
    background: SingularBackground,
    v: GridField,
    newton_iters: usize,
    residual_history: Vec<f64>,
) -> TaubesSolution {
    let grad_v = spectral_gradient(&v);
    let ev = v.map(f64::exp);
    let b = background.exp_u0.values();
    let [e0x, e0y] = &background.exp_grad;
    let s0 = background.exp_grad_sq.values();
    let n = v.values().len();
    let (mut ex, mut ey, mut sq) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for k in 0..n {
        let (gx, gy) = (grad_v[0].values()[k], grad_v[1].values()[k]);
        let (ax, ay) = (e0x.values()[k], e0y.values()[k]);
        let e = ev.values()[k];
        ex[k] = e * (ax + b[k] * gx);
        ey[k] = e * (ay + b[k] * gy);
        sq[k] = e * (s0[k] + 2.0 * (ax * gx + ay * gy) + b[k] * (gx * gx + gy * gy));
    }
    let geom = params.geometry.clone();
    let exp_u = background.exp_u0.mul(&ev);
    let u = background.u0.add(&v);
    let bradlow_defect = (integrate(&exp_u) - params.bradlow_integral()).abs();
    let residual_linf = *residual_history.last().unwrap_or(&f64::NAN);
    TaubesSolution {
        params,
        background,
        u,
        exp_u,
        exp_grad_u: [
            GridField::from_vec(geom.clone(), ex),
            GridField::from_vec(geom.clone(), ey),
        ],
        exp_grad_u_sq: GridField::from_vec(geom, sq),
        grad_v,
        v,
        newton_iters,
        residual_linf,
        bradlow_defect,
        residual_history,
    }
}

impl TaubesSolution {
    /// Rebuilds a solution from a stored smooth correction `v`.
    pub fn from_correction(params: VortexParams, v: GridField) -> Result<Self> {
        if params.regime() != BradlowRegime::Stable {
            return domain("stored solution must satisfy τA > 2πr");
        }
        let bg = singular_background(&params);
        let (f, _) = taubes_residual(&params, &bg, &v);
        let r = f.norm_inf() / (2.0 * params.tau);
        Ok(assemble(params, bg, v, 0, vec![r]))
    }
}

/// The degenerate datum `ψ ≡ 0`, `iF_A = τω` at `τA = 2πr`.
pub fn bradlow_limit(params: &VortexParams) -> Result<DegenerateSolution> {
    if params.regime() != BradlowRegime::Degenerate {
        return domain(format!(
            "degenerate branch needs τA = 2πr, got τA = {} vs 2πr = {}",
            params.tau * params.geometry.area(),
            2.0 * PI * params.degree() as f64
        ));
    }
    Ok(DegenerateSolution {
        params: params.clone(),
        curvature_density: params.tau,
    })
}

/// Dispatches on the Bradlow regime.
pub fn solve(params: &VortexParams, opts: &SolveOptions) -> Result<Solution> {
    match params.regime() {
        BradlowRegime::Degenerate => Ok(Solution::Degenerate(bradlow_limit(params)?)),
        _ => Ok(Solution::Vortex(Box::new(solve_taubes(params, opts)?))),
    }
}

pub fn verify_solution(sol: &Solution) -> ResidualReport {
    match sol {
        Solution::Degenerate(_) => ResidualReport {
            pde_residual_linf: 0.0,
            pde_residual_scaled: 0.0,
            bradlow_defect: 0.0,
            flux_defect: 0.0,
            positivity_margin: 0.0,
            degenerate: true,
        },
        Solution::Vortex(s) => verify_taubes(s),
    }
}

fn verify_taubes(sol: &TaubesSolution) -> ResidualReport {
    let p = &sol.params;
    let (f, exp_u) = taubes_residual(p, &sol.background, &sol.v);
    let pde = f.norm_inf();
    let integral = integrate(&exp_u);
    let area = p.geometry.area();
    let r = p.degree() as f64;
    let flux = p.tau * area - 0.5 * integral;
    ResidualReport {
        pde_residual_linf: pde,
        pde_residual_scaled: pde / (2.0 * p.tau),
        bradlow_defect: (integral - p.bradlow_integral()).abs(),
        flux_defect: (flux - 2.0 * PI * r).abs(),
        positivity_margin: exp_u.map(|e| 2.0 * p.tau - e).min(),
        degenerate: false,
    }
}

/// `|ψ|² = e^u`.
pub fn density_field(sol: &TaubesSolution) -> GridField {
    sol.exp_u.clone()
}

/// `f` with `iF_A = f·ω`, i.e. `τ − ½e^u`.
pub fn curvature_field(sol: &TaubesSolution) -> GridField {
    let tau = sol.params.tau;
    sol.exp_u.map(|e| tau - 0.5 * e)
}
