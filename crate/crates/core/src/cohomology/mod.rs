//! Exact intersection calculus on `Sym^r Σ_g` in the generators
//! `η` (divisors through a point) and `θ` (pulled back from the Jacobian).
//!
//! All arithmetic is over `ℚ[π, T]`: `π` is a formal symbol and `T` an
//! optional symbol for `τA`. The only input beyond the formal algebra is the
//! evaluation rule `∫ η^{r−k} θ^k = g!/(g−k)!`.

mod class;
mod coeff;
mod formulas;

pub use class::{cup, eta, integrate_top, theta, CohClass, IntegralValue};
pub use coeff::{rational, Coeff};
pub use formulas::{
    chern_vertical, dh_slope_class, family_class, is_degenerate, one_two_bracket_identities,
    predicted_volume, tau_area_pi, volume_polynomial, volume_positive_above_bradlow,
    volume_positive_iff_above_bradlow, vortex_class, vortex_class_tau_derivative,
};
