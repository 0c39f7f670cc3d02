//! Experiment configuration.
//!
//! ```toml
//! [geometry]
//! period_ratio = [0.0, 1.0]   # lattice ratio τ_p as [re, im], default square
//! area = 1.0
//! grid = 128                  # N for an N×N grid
//!
//! [vortex]
//! points = [[0.0, 0.0]]       # Euclidean positions
//! multiplicities = [1]        # optional, defaults to all ones
//! tau_area_over_pi = 8.0      # or `tau = 25.13`, exactly one of the two
//!
//! [run]
//! tol = 1e-10
//! max_iter = 25
//! tau_area_over_pi_sweep = [3.0, 8.0, 20.0]
//! dh_step = 0.1               # centred-difference step in τ
//!
//! [output]
//! dir = "out"
//! formats = ["json", "csv", "pgm"]
//! ```
//!
//! Unknown keys are rejected.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use vortexline::surface::make_torus;
use vortexline::vortex::{bradlow_regime, BradlowRegime};
use vortexline::{Divisor, SolveOptions, TorusGeometry, VortexParams};

use crate::error::{config, CliError};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub geometry: GeometryConfig,
    pub vortex: VortexConfig,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub period_ratio: [f64; 2],
    pub area: f64,
    pub grid: usize,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            period_ratio: [0.0, 1.0],
            area: 1.0,
            grid: 128,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VortexConfig {
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_area_over_pi: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub tau_area_over_pi_sweep: Vec<f64>,
    pub dh_step: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let d = SolveOptions::default();
        Self {
            tol: d.tol,
            max_iter: d.max_iter,
            tau_area_over_pi_sweep: Vec::new(),
            dh_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("."),
            formats: vec![Format::Json, Format::Csv, Format::Pgm],
        }
    }
}

impl OutputConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text, overrides)
}

pub fn parse(text: &str, overrides: &Overrides) -> Result<ExperimentConfig, CliError> {
    let mut cfg: ExperimentConfig =
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(n) = overrides.grid {
        cfg.geometry.grid = n;
    }
    if let Some(t) = overrides.tol {
        cfg.run.tol = t;
    }
    if let Some(d) = &overrides.out {
        cfg.output.dir = d.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn bradlow_message(tau_area: f64, degree: u32) -> String {
    format!(
        "Bradlow bound violated: need τA > 2πr, got τA = {tau_area:.6} ≤ 2πr = {:.6} (r = {degree})",
        2.0 * PI * degree as f64
    )
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), CliError> {
        let g = &self.geometry;
        if !(g.area > 0.0) || !g.area.is_finite() {
            return config(format!("geometry.area must be positive, got {}", g.area));
        }
        if !(g.period_ratio[1] > 0.0) {
            return config("geometry.period_ratio must have positive imaginary part");
        }
        if g.grid < 16 {
            return config(format!("geometry.grid must be at least 16, got {}", g.grid));
        }
        let v = &self.vortex;
        if v.points.is_empty() {
            return config("vortex.points must list at least one point");
        }
        if let Some(m) = &v.multiplicities {
            if m.len() != v.points.len() {
                return config(format!(
                    "vortex.multiplicities has {} entries for {} points",
                    m.len(),
                    v.points.len()
                ));
            }
            if m.contains(&0) {
                return config("vortex.multiplicities must be positive");
            }
        }
        match (v.tau, v.tau_area_over_pi) {
            (Some(_), Some(_)) => {
                return config("give exactly one of vortex.tau and vortex.tau_area_over_pi")
            }
            (None, None) => return config("vortex.tau or vortex.tau_area_over_pi is required"),
            _ => {}
        }
        let tau = self.tau();
        if !(tau > 0.0) || !tau.is_finite() {
            return config(format!("τ must be positive, got {tau}"));
        }
        let r = self.degree();
        if bradlow_regime(tau, g.area, r) == BradlowRegime::Violated {
            return config(bradlow_message(tau * g.area, r));
        }
        for &c in &self.run.tau_area_over_pi_sweep {
            if bradlow_regime(c * PI / g.area, g.area, r) == BradlowRegime::Violated {
                return config(format!("sweep entry {c}π: {}", bradlow_message(c * PI, r)));
            }
        }
        if !(self.run.tol > 0.0) {
            return config("run.tol must be positive");
        }
        if self.run.max_iter == 0 {
            return config("run.max_iter must be positive");
        }
        if !(self.run.dh_step > 0.0) {
            return config("run.dh_step must be positive");
        }
        Ok(())
    }

    pub fn tau(&self) -> f64 {
        match (self.vortex.tau, self.vortex.tau_area_over_pi) {
            (Some(t), _) => t,
            (None, Some(c)) => c * PI / self.geometry.area,
            (None, None) => f64::NAN,
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.vortex.multiplicities {
            Some(m) => m.iter().sum(),
            None => self.vortex.points.len() as u32,
        }
    }

    pub fn geometry(&self) -> Result<Arc<TorusGeometry>, CliError> {
        let g = &self.geometry;
        Ok(make_torus(
            Complex64::new(g.period_ratio[0], g.period_ratio[1]),
            g.area,
            (g.grid, g.grid),
        )?)
    }

    pub fn positions(&self) -> Vec<Complex64> {
        self.vortex
            .points
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect()
    }

    pub fn params_at(&self, geom: &Arc<TorusGeometry>, tau: f64) -> Result<VortexParams, CliError> {
        let mults = self
            .vortex
            .multiplicities
            .clone()
            .unwrap_or_else(|| vec![1; self.vortex.points.len()]);
        let divisor = Divisor::from_positions(geom, &self.positions(), &mults)?;
        Ok(VortexParams::new(tau, geom.clone(), divisor)?)
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.run.tol,
            max_iter: self.run.max_iter,
            ..SolveOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "[vortex]\npoints = [[0.0, 0.0]]\ntau_area_over_pi = 8.0\n";

    #[test]
    fn defaults_fill_in() {
        let c = parse(BASE, &Overrides::default()).unwrap();
        assert_eq!(c.geometry.grid, 128);
        assert_eq!(c.degree(), 1);
        assert!((c.tau() - 8.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse(&format!("{BASE}colour = 3\n"), &Overrides::default()).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        let err = parse(
            &format!("[run]\ntoll = 1e-9\n{BASE}"),
            &Overrides::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("toll"));
    }

    #[test]
    fn bradlow_is_checked_at_parse_time() {
        let text = "[vortex]\npoints = [[0.0, 0.0]]\ntau = 3.141592653589793\n";
        let err = parse(text, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("τA > 2πr"), "{err}");
        assert_eq!(err.exit_code(), 2);
        let text = "[vortex]\npoints = [[0.0, 0.0], [0.5, 0.5]]\ntau_area_over_pi = 3.0\n";
        assert!(parse(text, &Overrides::default()).is_err());
        let degenerate = "[vortex]\npoints = [[0.0, 0.0]]\ntau_area_over_pi = 2.0\n";
        assert!(parse(degenerate, &Overrides::default()).is_ok());
    }

    #[test]
    fn overrides_win() {
        let o = Overrides {
            grid: Some(32),
            tol: Some(1e-8),
            out: Some("elsewhere".into()),
        };
        let c = parse(BASE, &o).unwrap();
        assert_eq!(c.geometry.grid, 32);
        assert_eq!(c.run.tol, 1e-8);
        assert_eq!(c.output.dir, PathBuf::from("elsewhere"));
    }

    #[test]
    fn tau_sources_are_exclusive() {
        let text = "[vortex]\npoints = [[0.0, 0.0]]\ntau = 30.0\ntau_area_over_pi = 8.0\n";
        assert!(parse(text, &Overrides::default()).is_err());
    }
}
