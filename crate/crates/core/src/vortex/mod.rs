//! The vortex equations on a flat torus, reduced to the Taubes equation
//! for `u = log|ψ|²`.
//!
//! Holomorphicity of `ψ` gives `*iF_A = −½Δu + 2π Σ mⱼ δ_{zⱼ}`, and the
//! moment-map equation `*iF_A + ½|ψ|² = τ` becomes
//!
//! ```text
//! Δu = e^u − 2τ + 4π Σ mⱼ δ_{zⱼ}.
//! ```
//!
//! Writing `u = u₀ + v` with the singular background
//! `u₀ = 4π Σ mⱼ G(· − zⱼ)` leaves the smooth problem
//! `Δv = e^{u₀+v} − 2τ + 4πr/A`, which is what [`solve_taubes`] solves.

mod background;
mod divisor;
pub mod io;
mod solver;

use std::f64::consts::PI;
use std::sync::Arc;

pub use background::{singular_background, SingularBackground};
pub use divisor::Divisor;
pub use solver::{
    bradlow_limit, curvature_field, density_field, solve, solve_taubes, solve_taubes_from,
    verify_solution, DegenerateSolution, ResidualReport, Solution, SolveOptions, TaubesSolution,
};

use crate::error::{domain, Result};
use crate::surface::TorusGeometry;

/// Relative tolerance deciding `τA = 2πr`.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Position of `τA` relative to the Bradlow bound `2πr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BradlowRegime {
    /// `τA > 2πr`: vortex solutions with `ψ ≢ 0`.
    Stable,
    /// `τA = 2πr`: only `ψ ≡ 0`, `iF_A = τω`.
    Degenerate,
    /// `τA < 2πr`: no solutions.
    Violated,
}

pub fn bradlow_regime(tau: f64, area: f64, degree: u32) -> BradlowRegime {
    let bound = 2.0 * PI * degree as f64;
    let ta = tau * area;
    if (ta - bound).abs() <= DEGENERATE_TOL * bound {
        BradlowRegime::Degenerate
    } else if ta > bound {
        BradlowRegime::Stable
    } else {
        BradlowRegime::Violated
    }
}

/// Constant vortex parameter `τ`, the torus, and the prescribed zero set.
#[derive(Debug, Clone)]
pub struct VortexParams {
    pub tau: f64,
    pub geometry: Arc<TorusGeometry>,
    pub divisor: Divisor,
}

impl VortexParams {
    /// Rejects parameters below the Bradlow bound; the degenerate case
    /// `τA = 2πr` is accepted.
    pub fn new(tau: f64, geometry: Arc<TorusGeometry>, divisor: Divisor) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return domain(format!("τ must be positive, got {tau}"));
        }
        let r = divisor.degree();
        if bradlow_regime(tau, geometry.area(), r) == BradlowRegime::Violated {
            return domain(format!(
                "Bradlow bound violated: τA = {:.6} but solutions need τA > 2πr = {:.6}",
                tau * geometry.area(),
                2.0 * PI * r as f64
            ));
        }
        Ok(Self {
            tau,
            geometry,
            divisor,
        })
    }

    pub fn degree(&self) -> u32 {
        self.divisor.degree()
    }

    pub fn regime(&self) -> BradlowRegime {
        bradlow_regime(self.tau, self.geometry.area(), self.degree())
    }

    /// `2τA − 4πr`, the value of `∫|ψ|² ω` forced by the equations.
    pub fn bradlow_integral(&self) -> f64 {
        2.0 * (self.tau * self.geometry.area() - 2.0 * PI * self.degree() as f64)
    }

    /// Same parameters on another grid.
    pub fn with_geometry(&self, geometry: Arc<TorusGeometry>) -> Result<Self> {
        let divisor = self.divisor.rebased(&geometry);
        Self::new(self.tau, geometry, divisor)
    }

    pub fn with_divisor(&self, divisor: Divisor) -> Result<Self> {
        Self::new(self.tau, self.geometry.clone(), divisor)
    }
}
