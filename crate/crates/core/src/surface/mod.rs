//! Flat-torus geometry and pseudo-spectral calculus.
//!
//! A torus is `ℂ / Λ` with `Λ = λ·(ℤ + ℤ·τ_p)` and the flat area form
//! `ω = dx ∧ dy`. Fields are sampled on the uniform grid
//! `z(i, j) = λ·(i/N₁ + (j/N₂)·τ_p)` and stored row-major with the first
//! lattice index `i` as the row, i.e. sample `(i, j)` lives at `i·N₂ + j`.

mod field;
mod geometry;
mod green;
pub mod io;
mod spectral;

pub use field::{ComplexField, GridField};
pub use geometry::{make_torus, PointOnTorus, TorusGeometry};
pub(crate) use green::green_coincidence_tol;
pub use green::{green_kernel, green_regular_part_at_origin, greens_function, GreenSample};
pub use spectral::{
    divergence, integrate, integrate_complex, interpolate, laplacian_apply, poisson_solve,
    shifted_inverse, spectral_gradient, POISSON_MEAN_TOL,
};
