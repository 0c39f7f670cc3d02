use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::surface::interpolate;
use crate::vortex::{solve_taubes_from, SingularBackground, SolveOptions, TaubesSolution};

/// How the linear coefficient `bⱼ` of `u = 2log|z − zⱼ| + aⱼ + Re(b̄ⱼ(z − zⱼ)) + …`
/// is read off a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamolsExtraction {
    /// Least-squares cubic fit of `u − 2log|z − zⱼ|` on an annulus of grid
    /// nodes, inner radius `2h`, outer radius `min(separation/3, 8h)`.
    AnnulusFit,
    /// `bⱼ = ∇v(zⱼ) + Σ_{k≠j} 4πm_k ∇G(zⱼ − z_k)` from the trigonometric
    /// interpolant of `v` and the analytic kernel.
    Spectral,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamolsData {
    pub positions: Vec<Complex64>,
    /// `bⱼ` as `b_x + i b_y`, the gradient of the regular part at `zⱼ`.
    pub b: Vec<Complex64>,
    pub extraction: SamolsExtraction,
    /// `∂b_s/∂z_r`, indexed `[r][s]`, when a stencil was solved.
    pub db_dz: Option<Vec<Vec<Complex64>>>,
    pub stencil_step: Option<f64>,
    /// `max |∂b_s/∂z_r − conj(∂b_r/∂z_s)| / τ`. The matrix is hermitian
    /// exactly when the localised form is closed (`b_s = ∂F/∂z̄_s` for a
    /// real `F`).
    pub closedness_defect: Option<f64>,
}

/// `σ_τ` on the real basis `(∂x₁, ∂y₁, …, ∂x_r, ∂y_r)` of moduli directions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KahlerMatrix {
    pub dimension: usize,
    /// Antisymmetric `σ(e_a, e_b)`.
    pub entries: Vec<Vec<f64>>,
    /// Symmetric `g(e_a, e_b) = σ(e_a, j·e_b)`.
    pub metric_part: Vec<Vec<f64>>,
    /// Hermitian coefficients `G_rs̄` of `Σ G_rs̄ dz_r dz̄_s`.
    pub hermitian: Vec<Vec<Complex64>>,
    pub kappa: f64,
}

impl KahlerMatrix {
    /// Builds the real matrices from `G_rs̄` with
    /// `σ(X, Y) = −Im Σ G_rs̄ X_r Ȳ_s` and `g(X, Y) = Re Σ G_rs̄ X_r Ȳ_s`.
    pub fn from_hermitian(hermitian: Vec<Vec<Complex64>>, kappa: f64) -> Self {
        let r = hermitian.len();
        let dim = 2 * r;
        let unit = |a: usize| {
            if a % 2 == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 1.0)
            }
        };
        let raw = |a: usize, b: usize| hermitian[a / 2][b / 2] * unit(a) * unit(b).conj();
        let mut entries = vec![vec![0.0; dim]; dim];
        let mut metric = vec![vec![0.0; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                entries[a][b] = -0.5 * (raw(a, b).im - raw(b, a).im);
                metric[a][b] = 0.5 * (raw(a, b).re + raw(b, a).re);
            }
        }
        Self {
            dimension: dim,
            entries,
            metric_part: metric,
            hermitian,
            kappa,
        }
    }

    pub fn min_metric_eigenvalue(&self) -> f64 {
        let m = DMatrix::from_fn(self.dimension, self.dimension, |a, b| {
            self.metric_part[a][b]
        });
        m.symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_metric_eigenvalue() > 0.0
    }
}

/// `σ(T₁, T_i)` for the total translation `T_w` moving every vortex by `w`.
pub fn translation_sigma(m: &KahlerMatrix) -> f64 {
    let r = m.dimension / 2;
    let mut acc = 0.0;
    for a in 0..r {
        for b in 0..r {
            acc += m.entries[2 * a][2 * b + 1];
        }
    }
    acc
}

fn check_simple(sol: &TaubesSolution) -> Result<f64> {
    let geom = &sol.params.geometry;
    let div = &sol.params.divisor;
    if !div.is_simple() {
        return domain("Samols coefficients need simple zeros");
    }
    let h = grid_step(sol);
    let sep = div.min_separation(geom);
    if sep < 4.0 * h {
        return domain(format!(
            "vortices {sep:.3e} apart, closer than four grid cells ({:.3e})",
            4.0 * h
        ));
    }
    Ok(sep)
}

fn grid_step(sol: &TaubesSolution) -> f64 {
    let g = &sol.params.geometry;
    let (w1, w2) = g.periods();
    let (n1, n2) = g.dims();
    (w1.norm() / n1 as f64).max(w2.norm() / n2 as f64)
}

/// Exact-route `bⱼ` for every divisor point.
pub fn b_coefficients_spectral(sol: &TaubesSolution) -> Vec<Complex64> {
    (0..sol.params.divisor.len())
        .map(|j| {
            let zj = sol.params.divisor.points()[j].z();
            let (_, gv) = interpolate(&sol.v, zj);
            Complex64::new(gv[0], gv[1])
                + SingularBackground::regular_gradient_at_core(&sol.params, j)
        })
        .collect()
}

const FIT_MIN_POINTS: usize = 24;

fn annulus_fit(sol: &TaubesSolution, j: usize, sep: f64) -> Result<Complex64> {
    let geom = &sol.params.geometry;
    let zj = sol.params.divisor.points()[j].z();
    let h = grid_step(sol);
    let inner = 2.0 * h;
    let mut outer = (sep / 3.0).min(8.0 * h);
    for attempt in 0..2 {
        let mut rows = Vec::new();
        for k in 0..geom.len() {
            let d = geom.reduce_centered(geom.node_at(k) - zj);
            let r = d.norm();
            if r >= inner && r <= outer {
                rows.push((d / outer, sol.u.values()[k] - 2.0 * r.ln()));
            }
        }
        if rows.len() >= FIT_MIN_POINTS {
            let basis = |d: Complex64| {
                let (x, y) = (d.re, d.im);
                [
                    1.0,
                    x,
                    y,
                    x * x,
                    x * y,
                    y * y,
                    x * x * x,
                    x * x * y,
                    x * y * y,
                    y * y * y,
                ]
            };
            let a = DMatrix::from_fn(rows.len(), 10, |i, c| basis(rows[i].0)[c]);
            let rhs = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
            let svd = a.svd(true, true);
            let sv = &svd.singular_values;
            let cond = sv.max() / sv.min();
            if cond.is_finite() && cond < 1e10 {
                let c = svd
                    .solve(&rhs, 1e-14)
                    .map_err(|e| Error::Conditioning(e.to_string()))?;
                return Ok(Complex64::new(c[1], c[2]) / outer);
            }
        }
        if attempt == 0 {
            outer *= 1.5;
            if outer > sep - 2.0 * h {
                break;
            }
        }
    }
    Err(Error::Conditioning(format!(
        "annulus fit around vortex {j} is degenerate"
    )))
}

/// Reads `bⱼ` off a converged solution with simple, separated zeros.
pub fn samols_coefficients(
    sol: &TaubesSolution,
    extraction: SamolsExtraction,
) -> Result<SamolsData> {
    let sep = check_simple(sol)?;
    let b = match extraction {
        SamolsExtraction::Spectral => b_coefficients_spectral(sol),
        SamolsExtraction::AnnulusFit => (0..sol.params.divisor.len())
            .map(|j| annulus_fit(sol, j, sep))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(SamolsData {
        positions: sol.params.divisor.points().iter().map(|p| p.z()).collect(),
        b,
        extraction,
        db_dz: None,
        stencil_step: None,
        closedness_defect: None,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct SamolsOptions {
    /// Stencil displacement as a fraction of the lattice scale `λ`.
    pub step: f64,
    pub extraction: SamolsExtraction,
    pub solve: SolveOptions,
}

impl Default for SamolsOptions {
    fn default() -> Self {
        Self {
            step: 1e-3,
            extraction: SamolsExtraction::Spectral,
            solve: SolveOptions::default(),
        }
    }
}

/// The localisation formula `G_rs̄ = 2κ(τδ_rs + ∂b_s/∂z_r)` with
/// derivatives from a centred stencil moving each vortex by `±δ` in both
/// real directions.
pub fn samols_form(base: &TaubesSolution, kappa: f64) -> Result<(KahlerMatrix, SamolsData)> {
    samols_form_with(base, kappa, &SamolsOptions::default())
}

pub fn samols_form_with(
    base: &TaubesSolution,
    kappa: f64,
    opts: &SamolsOptions,
) -> Result<(KahlerMatrix, SamolsData)> {
    let mut data = samols_coefficients(base, opts.extraction)?;
    let params = &base.params;
    let geom = &params.geometry;
    let n = params.divisor.len();
    let delta = opts.step * geom.scale();
    let sep = params.divisor.min_separation(geom);
    if !(delta > 1e-9 * geom.scale()) || 4.0 * delta > sep.min(geom.scale()) {
        return Err(Error::Conditioning(format!(
            "stencil step {delta:.3e} unusable for separation {sep:.3e}"
        )));
    }

    let moves: Vec<(usize, Complex64)> = (0..n)
        .flat_map(|r| {
            [1.0, -1.0].into_iter().flat_map(move |s| {
                [Complex64::new(s, 0.0), Complex64::new(0.0, s)].map(|d| (r, d * delta))
            })
        })
        .collect();
    let bs: Vec<Vec<Complex64>> = moves
        .par_iter()
        .map(|&(r, w)| -> Result<Vec<Complex64>> {
            let moved = params.with_divisor(params.divisor.moved(geom, r, w)?)?;
            let sol = solve_taubes_from(&moved, &opts.solve, Some(base.v.clone()))?;
            Ok(samols_coefficients(&sol, opts.extraction)?.b)
        })
        .collect::<Result<_>>()?;

    // moves are ordered (r, +x), (r, +y), (r, −x), (r, −y)
    let mut db = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        let plus_x = &bs[4 * r];
        let plus_y = &bs[4 * r + 1];
        let minus_x = &bs[4 * r + 2];
        let minus_y = &bs[4 * r + 3];
        for s in 0..n {
            let dx = (plus_x[s] - minus_x[s]) / (2.0 * delta);
            let dy = (plus_y[s] - minus_y[s]) / (2.0 * delta);
            db[r][s] = (dx - Complex64::i() * dy) * 0.5;
        }
    }
    let tau = params.tau;
    let mut herm: f64 = 0.0;
    for r in 0..n {
        for s in 0..n {
            herm = herm.max((db[r][s] - db[s][r].conj()).norm());
        }
    }
    let hermitian: Vec<Vec<Complex64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let diag = if r == s { tau } else { 0.0 };
                    (db[r][s] + diag) * (2.0 * kappa)
                })
                .collect()
        })
        .collect();
    data.db_dz = Some(db);
    data.stencil_step = Some(delta);
    data.closedness_defect = Some(herm / tau);
    Ok((KahlerMatrix::from_hermitian(hermitian, kappa), data))
}
