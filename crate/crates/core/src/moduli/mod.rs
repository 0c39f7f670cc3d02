//! The L² Kähler form on the vortex moduli space.
//!
//! Tangent vectors are carried as `(w, g)`: a Euclidean translation `w ∈ ℂ`
//! of the whole configuration plus an infinitesimal gauge transformation
//! `g`. The corresponding variation is
//!
//! ```text
//! α = f·J(w) + ∇g,   p = ⟨ψ, φ⟩ = P_w + i·g·e^u,   P_w = ½ w e^u (∂ₓu − i∂_y u)
//! ```
//!
//! with `f = τ − ½e^u` and `J(w) = (−w_y, w_x)`. Individual vortex motions
//! are reached only through the Samols localisation data.

mod green_psi;
mod lift;
mod samols;
mod volume;

pub use green_psi::{connection_one_form, green_psi, GREEN_PSI_RTOL};
pub use lift::{evaluate_sigma, pure_gauge, translation_lift, HorizontalLift};
pub use samols::{
    b_coefficients_spectral, samols_coefficients, samols_form, samols_form_with, translation_sigma,
    KahlerMatrix, SamolsData, SamolsExtraction, SamolsOptions,
};
pub use volume::{
    calibrate_kappa, dh_slope, dh_slope_with, direct_sigma, one_vortex_volume,
    one_vortex_volume_with,
};
