use num_complex::Complex64;

use super::connection_one_form;
use crate::error::{domain, Result};
use crate::surface::{divergence, integrate, spectral_gradient, ComplexField, GridField};
use crate::vortex::TaubesSolution;

/// A tangent vector `(α, φ)` at a vortex solution in `(w, g)` form.
///
/// Built by [`translation_lift`] it is horizontal: it satisfies the Coulomb
/// condition `d*α + Im⟨ψ, φ⟩ = 0`. [`pure_gauge`] builds the vertical
/// directions used to probe gauge invariance.
#[derive(Debug, Clone)]
pub struct HorizontalLift<'a> {
    pub base: &'a TaubesSolution,
    /// Euclidean translation direction `w`.
    pub direction: Complex64,
    /// Infinitesimal gauge part `g`.
    pub gauge: GridField,
    /// Real one-form `α = ia`.
    pub a_form: [GridField; 2],
    /// `P_w = ⟨ψ, ∇_w ψ⟩`, regular at the cores.
    pub translation_pair: ComplexField,
    /// Coulomb corrector removed from the raw translate.
    pub chi: GridField,
}

impl<'a> HorizontalLift<'a> {
    /// `p = ⟨ψ, φ⟩ = P_w + i·g·e^u`.
    pub fn pair(&self) -> ComplexField {
        let vals = self
            .translation_pair
            .values()
            .iter()
            .zip(self.gauge.values().iter().zip(self.base.exp_u.values()))
            .map(|(p, (g, e))| p + Complex64::new(0.0, g * e))
            .collect();
        ComplexField::from_vec(self.base.params.geometry.clone(), vals)
    }

    /// `‖d*α + Im⟨ψ, φ⟩‖∞`.
    pub fn coulomb_residual(&self) -> f64 {
        let div = divergence(&self.a_form[0], &self.a_form[1]);
        div.zip_map(&self.pair().im(), |d, q| -d + q).norm_inf()
    }

    /// `a·self + b·other` over the same base.
    pub fn combine(&self, a: f64, other: &HorizontalLift<'a>, b: f64) -> Result<Self> {
        if !std::ptr::eq(self.base, other.base) {
            return domain("lifts over different base solutions");
        }
        let lin = |x: &GridField, y: &GridField| x.zip_map(y, |x, y| a * x + b * y);
        let pairs = self
            .translation_pair
            .values()
            .iter()
            .zip(other.translation_pair.values())
            .map(|(x, y)| x * a + y * b)
            .collect();
        Ok(Self {
            base: self.base,
            direction: self.direction * a + other.direction * b,
            gauge: lin(&self.gauge, &other.gauge),
            a_form: [
                lin(&self.a_form[0], &other.a_form[0]),
                lin(&self.a_form[1], &other.a_form[1]),
            ],
            translation_pair: ComplexField::from_vec(self.base.params.geometry.clone(), pairs),
            chi: lin(&self.chi, &other.chi),
        })
    }
}

fn translation_pair(sol: &TaubesSolution, w: Complex64) -> ComplexField {
    let [ex, ey] = &sol.exp_grad_u;
    let vals = ex
        .values()
        .iter()
        .zip(ey.values())
        .map(|(x, y)| w * Complex64::new(*x, -*y) * 0.5)
        .collect();
    ComplexField::from_vec(sol.params.geometry.clone(), vals)
}

/// Covariant translate of the solution in direction `w`, projected to
/// Coulomb gauge with the connection one-form.
///
/// The raw translate is `α = ι_w(iF_A) = f·J(w)`, `⟨ψ, φ⟩ = P_w`.
pub fn translation_lift(sol: &TaubesSolution, w: Complex64) -> Result<HorizontalLift<'_>> {
    let f = sol.exp_u.map(|e| sol.params.tau - 0.5 * e);
    let raw = [f.scaled(-w.im), f.scaled(w.re)];
    let pw = translation_pair(sol, w);
    let chi = connection_one_form(sol, &raw, &pw)?;
    let [cx, cy] = spectral_gradient(&chi);
    Ok(HorizontalLift {
        base: sol,
        direction: w,
        gauge: chi.scaled(-1.0),
        a_form: [raw[0].sub(&cx), raw[1].sub(&cy)],
        translation_pair: pw,
        chi,
    })
}

/// The vertical direction `(dg, i·g·ψ)` generated by the gauge parameter `g`.
pub fn pure_gauge<'a>(sol: &'a TaubesSolution, g: &GridField) -> Result<HorizontalLift<'a>> {
    if !g.same_grid(&sol.exp_u) {
        return domain("gauge parameter lives on a different grid");
    }
    let geom = sol.params.geometry.clone();
    Ok(HorizontalLift {
        base: sol,
        direction: Complex64::new(0.0, 0.0),
        gauge: g.clone(),
        a_form: spectral_gradient(g),
        translation_pair: ComplexField::from_vec(
            geom.clone(),
            vec![Complex64::new(0.0, 0.0); geom.len()],
        ),
        chi: GridField::zeros(geom),
    })
}

/// `σ(l₁, l₂) = ∫ α₁ ∧ α₂ + ∫ Im⟨φ₁, φ₂⟩ ω`.
///
/// With `φ = ψ·(w ∂_z u + i g)` the section term is evaluated as
/// `¼ Im(w̄₁w₂)·e^u|∇u|² + g₂ Re P₁ − g₁ Re P₂`, which stays bounded at the
/// cores.
pub fn evaluate_sigma(l1: &HorizontalLift<'_>, l2: &HorizontalLift<'_>) -> Result<f64> {
    if !std::ptr::eq(l1.base, l2.base) {
        return domain("σ needs both lifts over the same base solution");
    }
    let [a1x, a1y] = &l1.a_form;
    let [a2x, a2y] = &l2.a_form;
    let s = &l1.base.exp_grad_u_sq;
    let cross = (l1.direction.conj() * l2.direction).im * 0.25;
    let n = s.values().len();
    let mut dens = vec![0.0; n];
    for k in 0..n {
        let wedge = a1x.values()[k] * a2y.values()[k] - a1y.values()[k] * a2x.values()[k];
        let section = cross * s.values()[k]
            + l2.gauge.values()[k] * l1.translation_pair.values()[k].re
            - l1.gauge.values()[k] * l2.translation_pair.values()[k].re;
        dens[k] = wedge + section;
    }
    Ok(integrate(&GridField::from_vec(
        l1.base.params.geometry.clone(),
        dens,
    )))
}
