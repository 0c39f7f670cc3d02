use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{evaluate_sigma, translation_lift};
use crate::error::{domain, Result};
use crate::surface::TorusGeometry;
use crate::vortex::{
    bradlow_regime, solve_taubes, BradlowRegime, Divisor, SolveOptions, TaubesSolution,
    VortexParams,
};

/// `σ(lift(∂x), lift(∂y))` on the Coulomb-gauge translation lifts.
pub fn direct_sigma(sol: &TaubesSolution) -> Result<f64> {
    let lx = translation_lift(sol, Complex64::new(1.0, 0.0))?;
    let ly = translation_lift(sol, Complex64::new(0.0, 1.0))?;
    evaluate_sigma(&lx, &ly)
}

/// The Samols normalisation `κ` matching the localisation formula to the
/// direct form on a one-vortex solution, `σ(∂x, ∂y) = 2κτ`.
pub fn calibrate_kappa(one_vortex: &TaubesSolution) -> Result<f64> {
    if one_vortex.params.degree() != 1 {
        return domain("κ is calibrated on a single vortex");
    }
    Ok(direct_sigma(one_vortex)? / (2.0 * one_vortex.params.tau))
}

/// Volume of the one-vortex moduli space `≅ Σ`, i.e. `σ(∂x, ∂y)·A` by
/// translation invariance. The vortex sits at the origin.
pub fn one_vortex_volume(geom: &Arc<TorusGeometry>, tau: f64) -> Result<f64> {
    one_vortex_volume_with(
        geom,
        tau,
        Complex64::new(0.0, 0.0),
        &SolveOptions::default(),
    )
}

pub fn one_vortex_volume_with(
    geom: &Arc<TorusGeometry>,
    tau: f64,
    position: Complex64,
    opts: &SolveOptions,
) -> Result<f64> {
    match bradlow_regime(tau, geom.area(), 1) {
        BradlowRegime::Stable => {}
        BradlowRegime::Degenerate => {
            // ψ ≡ 0 on the Picard torus: [σ] = 4π²θ and ∫θ = 1
            return Ok(4.0 * PI * PI);
        }
        BradlowRegime::Violated => return domain("one-vortex volume needs τA > 2π"),
    }
    let div = Divisor::simple(geom, &[position])?;
    let params = VortexParams::new(tau, geom.clone(), div)?;
    let sol = solve_taubes(&params, opts)?;
    Ok(direct_sigma(&sol)? * geom.area())
}

/// Centred difference `(Vol(τ + h) − Vol(τ − h)) / 2h` of the one-vortex
/// volume.
pub fn dh_slope(geom: &Arc<TorusGeometry>, tau: f64, h: f64) -> Result<f64> {
    dh_slope_with(geom, tau, h, &SolveOptions::default())
}

pub fn dh_slope_with(
    geom: &Arc<TorusGeometry>,
    tau: f64,
    h: f64,
    opts: &SolveOptions,
) -> Result<f64> {
    if !(h > 0.0) {
        return domain("difference step must be positive");
    }
    if bradlow_regime(tau - h, geom.area(), 1) != BradlowRegime::Stable {
        return domain("τ − h must stay above the Bradlow bound");
    }
    let z = Complex64::new(0.0, 0.0);
    let up = one_vortex_volume_with(geom, tau + h, z, opts)?;
    let down = one_vortex_volume_with(geom, tau - h, z, opts)?;
    Ok((up - down) / (2.0 * h))
}
