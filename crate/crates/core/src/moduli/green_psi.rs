use crate::error::{domain, Result};
use crate::krylov::pcg;
use crate::surface::{divergence, laplacian_apply, shifted_inverse, ComplexField, GridField};
use crate::vortex::TaubesSolution;

/// Relative Krylov tolerance of `G_ψ` solves.
pub const GREEN_PSI_RTOL: f64 = 1e-12;

const MAX_CG: usize = 2000;

/// `G_ψ(f) = (−Δ + e^u)⁻¹ f`.
pub fn green_psi(sol: &TaubesSolution, f: &GridField) -> Result<GridField> {
    let geom = sol.params.geometry.clone();
    if !f.same_grid(&sol.exp_u) {
        return domain("G_ψ input lives on a different grid");
    }
    let eu = sol.exp_u.values();
    let shift = sol.exp_u.mean();
    let apply = |p: &[f64]| {
        let lap = laplacian_apply(&GridField::from_vec(geom.clone(), p.to_vec()));
        lap.values()
            .iter()
            .zip(p.iter().zip(eu))
            .map(|(l, (p, e))| -l + e * p)
            .collect::<Vec<_>>()
    };
    let precond = |r: &[f64]| {
        shifted_inverse(&GridField::from_vec(geom.clone(), r.to_vec()), shift).into_values()
    };
    let b = f.values();
    // the preconditioned guess is already close for smooth data
    let mut x = precond(b);
    pcg(apply, precond, b, &mut x, GREEN_PSI_RTOL, MAX_CG)?;
    Ok(GridField::from_vec(geom, x))
}

/// The real field `γ` with `Γ(α, p) = i·γ`: `γ = G_ψ(d*α + Im p)`, where
/// `α` is the real one-form and `p = ⟨ψ, φ⟩`.
///
/// Subtracting the gauge direction `(dγ, iγψ)` from `(α, φ)` puts it in
/// Coulomb gauge.
pub fn connection_one_form(
    sol: &TaubesSolution,
    alpha: &[GridField; 2],
    p: &ComplexField,
) -> Result<GridField> {
    let rhs = divergence(&alpha[0], &alpha[1]).zip_map(&p.im(), |d, q| -d + q);
    green_psi(sol, &rhs)
}
