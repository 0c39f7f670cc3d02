//! Abelian vortices on flat tori.
//!
//! The crate is organised in four layers:
//!
//! * [`surface`]: flat-torus geometry, pseudo-spectral calculus and the
//!   analytic Green's function of the Laplacian.
//! * [`vortex`]: the Taubes scalar reduction of the vortex equations, solved
//!   by inexact Newton–Krylov iteration, together with residual certificates.
//! * [`moduli`]: Coulomb-gauge tangent lifts, the L² Kähler form on the
//!   moduli space, the Samols localisation data, volumes and the
//!   Duistermaat–Heckman slope.
//! * [`cohomology`]: exact intersection calculus on `Sym^r` of a genus-`g`
//!   surface in the generators η and θ.
//!
//! # Conventions
//!
//! | quantity | convention |
//! |---|---|
//! | Laplacian | `Δ = ∂²ₓ + ∂²_y`, so `d*d = −Δ` on functions |
//! | orientation | `ω = dx ∧ dy`, `∫ω = A` |
//! | Hodge star | `*dx = dy`, `*dy = −dx`; `*` acts as `+i` on (0,1)-forms |
//! | hermitian product | `⟨u, v⟩ = ū·v` (antilinear in the first slot) |
//! | connection data | real one-forms `α = i·a` for `a ∈ iΩ¹` |
//! | Coulomb slice | `d*α + Im⟨ψ, φ⟩ = 0` |
//! | infinitesimal gauge by `g` | `(α, φ) = (dg, i·g·ψ)` |
//! | Green's operator | `G_ψ = (−Δ + |ψ|²)⁻¹` |
//! | Taubes equation | `Δu = e^u − 2τ + 4π Σ mⱼ δ_{zⱼ}`, `u = log|ψ|²` |
//! | curvature density | `iF_A = f·ω`, `f = τ − ½e^u` |
//!
//! Holomorphicity of `ψ` gives `⟨ψ, ∇_w ψ⟩ = ½ e^u w (∂ₓu − i∂_y u)` for a
//! Euclidean direction `w ∈ ℂ`, which is how every pairing involving `ψ` is
//! rebuilt from `u` alone.

pub mod cohomology;
pub mod error;
pub mod krylov;
pub mod moduli;
pub mod surface;
pub mod vortex;

pub use error::{Error, Result};

pub use cohomology::{Coeff, CohClass, IntegralValue};
pub use moduli::{HorizontalLift, KahlerMatrix, SamolsData};
pub use surface::{ComplexField, GridField, PointOnTorus, TorusGeometry};
pub use vortex::{
    DegenerateSolution, Divisor, ResidualReport, Solution, SolveOptions, TaubesSolution,
    VortexParams,
};
