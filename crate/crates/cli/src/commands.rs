use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use vortexline::cohomology::{
    chern_vertical, cup, dh_slope_class, integrate_top, predicted_volume,
    volume_positive_above_bradlow, vortex_class, Coeff, CohClass,
};
use vortexline::moduli::{dh_slope_with, direct_sigma};
use vortexline::surface::integrate;
use vortexline::vortex::io::{read_solution, write_solution};
use vortexline::vortex::{
    curvature_field, density_field, solve, solve_taubes, verify_solution, BradlowRegime,
};
use vortexline::{DegenerateSolution, GridField, Solution, SolveOptions, TaubesSolution};

use crate::config::{ExperimentConfig, Format};
use crate::error::{config, CliError};
use crate::render::write_pgm;
use crate::report::{Check, Metric, Report};

/// Relative tolerance on integral identities of a converged solve.
const IDENTITY_TOL: f64 = 1e-6;
const VOLUME_TOL: f64 = 1e-2;
/// Applied to sweep entries with `τA < 2.5π`, where the cores fill the torus.
const NEAR_BRADLOW_VOLUME_TOL: f64 = 5e-2;
const DH_TOL: f64 = 1e-2;
/// Allowed change of the slope estimate when the difference step is halved.
const DH_STEP_TOL: f64 = 2e-3;

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn inputs(cfg: &ExperimentConfig) -> Result<serde_json::Value, CliError> {
    Ok(serde_json::to_value(cfg)?)
}

fn taubes_checks(report: &mut Report, sol: &TaubesSolution, opts: &SolveOptions) {
    let p = &sol.params;
    let rr = verify_solution(&Solution::Vortex(Box::new(sol.clone())));
    let r = p.degree() as f64;
    let integral = integrate(&sol.exp_u);
    report.values.insert("tau".into(), p.tau);
    report
        .values
        .insert("newton_iters".into(), sol.newton_iters as f64);
    report.values.insert("bradlow_integral".into(), integral);
    report.push(Check::absolute(
        "pde_residual_scaled",
        rr.pde_residual_scaled,
        0.0,
        "‖Δv − e^u + 2τ − 4πr/A‖∞ / 2τ = 0",
        opts.stall_factor * opts.tol,
    ));
    report.push(Check::relative(
        "bradlow_integral",
        integral,
        p.bradlow_integral(),
        "∫|ψ|²ω = 2(τA − 2πr)",
        IDENTITY_TOL,
    ));
    report.push(Check::relative(
        "flux",
        p.tau * p.geometry.area() - 0.5 * integral,
        2.0 * PI * r,
        "∫iF_A = 2πr",
        IDENTITY_TOL,
    ));
    report.push(Check::new(
        "positivity_margin",
        rr.positivity_margin,
        0.0,
        "min(2τ − |ψ|²) ≥ 0",
        Metric::LowerBound,
        0.0,
    ));
}

fn degenerate_checks(report: &mut Report, d: &DegenerateSolution) {
    let r = d.params.degree();
    report.values.insert("tau".into(), d.params.tau);
    report.push(Check::relative(
        "flux",
        d.flux(),
        2.0 * PI * r as f64,
        "∫iF_A = τA = 2πr",
        1e-9,
    ));
    report.push(Check::absolute(
        "moment_map",
        d.moment_map_value(),
        d.params.tau,
        "*iF_A = τ with ψ ≡ 0",
        0.0,
    ));
    if r == 1 {
        let oracle = predicted_volume(
            &Coeff::pi_multiple(BigRational::from_integer(2.into())),
            1,
            1,
        );
        report.push(Check::relative(
            "degenerate_volume",
            4.0 * PI * PI,
            oracle.to_f64(),
            format!("∫[σ] = {}", oracle),
            1e-12,
        ));
    }
}

fn solution_checks(report: &mut Report, sol: &Solution, opts: &SolveOptions) {
    match sol {
        Solution::Vortex(s) => {
            report.branch = Some("vortex".into());
            taubes_checks(report, s, opts);
        }
        Solution::Degenerate(d) => {
            report.branch = Some("degenerate".into());
            degenerate_checks(report, d);
        }
    }
}

pub fn cmd_solve(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let geom = cfg.geometry()?;
    let params = cfg.params_at(&geom, cfg.tau())?;
    let opts = cfg.solve_options();
    let sol = solve(&params, &opts)?;
    let solve_secs = t0.elapsed().as_secs_f64();

    let mut report = Report::new("solve", inputs(cfg)?);
    solution_checks(&mut report, &sol, &opts);
    report.finish()?;

    let dir = &cfg.output.dir;
    ensure_dir(dir)?;
    let path = dir.join("solution.vtx");
    let mut w = create(&path)?;
    write_solution(&sol, &mut w)?;
    w.flush().map_err(|e| CliError::io(&path, e))?;
    if cfg.output.wants(Format::Json) {
        report.timings.insert("solve".into(), solve_secs);
        report
            .timings
            .insert("total".into(), t0.elapsed().as_secs_f64());
        report.write(&dir.join("solve_report.json"))?;
    }
    Ok(report)
}

fn require_single_vortex(cfg: &ExperimentConfig, cmd: &str) -> Result<(), CliError> {
    if cfg.degree() != 1 {
        return config(format!(
            "{cmd} needs a single vortex (r = 1), got r = {}",
            cfg.degree()
        ));
    }
    Ok(())
}

/// The one-vortex volume as a polynomial in `T = τA`, from the class algebra.
fn volume_oracle() -> Coeff {
    predicted_volume(&Coeff::t(), 1, 1).value
}

struct VolumeRow {
    tau_area_over_pi: f64,
    tau: f64,
    volume: f64,
    residual: f64,
}

fn volume_at(cfg: &ExperimentConfig, c: f64) -> Result<VolumeRow, CliError> {
    let geom = cfg.geometry()?;
    let tau = c * PI / geom.area();
    let params = cfg.params_at(&geom, tau)?;
    let (volume, residual) = match params.regime() {
        BradlowRegime::Degenerate => (4.0 * PI * PI, 0.0),
        _ => {
            let sol = solve_taubes(&params, &cfg.solve_options())?;
            (direct_sigma(&sol)? * geom.area(), sol.residual_linf)
        }
    };
    Ok(VolumeRow {
        tau_area_over_pi: c,
        tau,
        volume,
        residual,
    })
}

pub fn cmd_volume(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    require_single_vortex(cfg, "volume")?;
    let t0 = Instant::now();
    let area = cfg.geometry.area;
    let sweep = if cfg.run.tau_area_over_pi_sweep.is_empty() {
        vec![cfg.tau() * area / PI]
    } else {
        cfg.run.tau_area_over_pi_sweep.clone()
    };
    let rows: Vec<VolumeRow> = sweep
        .par_iter()
        .map(|&c| volume_at(cfg, c))
        .collect::<Result<_, _>>()?;

    let oracle = volume_oracle();
    let mut report = Report::new("volume", inputs(cfg)?);
    let dir = &cfg.output.dir;
    ensure_dir(dir)?;
    let mut csv = Vec::new();
    writeln!(csv, "tau,area,volume,prediction,rel_error,grid,residual").unwrap();
    for row in &rows {
        let prediction = oracle.eval(PI, row.tau * area);
        let tol = if row.tau_area_over_pi < 2.5 {
            NEAR_BRADLOW_VOLUME_TOL
        } else {
            VOLUME_TOL
        };
        let check = Check::relative(
            format!("volume[tau_area={}pi]", row.tau_area_over_pi),
            row.volume,
            prediction,
            format!("Vol = {oracle} at T = τA"),
            tol,
        );
        writeln!(
            csv,
            "{:e},{:e},{:e},{:e},{:e},{},{:e}",
            row.tau, area, row.volume, prediction, check.error, cfg.geometry.grid, row.residual
        )
        .unwrap();
        report.push(check);
    }
    report.finish()?;
    if cfg.output.wants(Format::Csv) {
        let path = dir.join("volume.csv");
        std::fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
    }
    if cfg.output.wants(Format::Json) {
        report
            .timings
            .insert("total".into(), t0.elapsed().as_secs_f64());
        report.write(&dir.join("volume_report.json"))?;
    }
    Ok(report)
}

pub fn cmd_dh(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    require_single_vortex(cfg, "dh")?;
    let t0 = Instant::now();
    let geom = cfg.geometry()?;
    let area = geom.area();
    let h = cfg.run.dh_step;
    let opts = cfg.solve_options();
    let mut taus = vec![cfg.tau()];
    taus.extend(cfg.run.tau_area_over_pi_sweep.iter().map(|c| c * PI / area));
    let (slopes, half) = rayon::join(
        || {
            taus.par_iter()
                .map(|&t| dh_slope_with(&geom, t, h, &opts))
                .collect::<Result<Vec<_>, _>>()
        },
        || dh_slope_with(&geom, taus[0], 0.5 * h, &opts),
    );
    let (slopes, half) = (slopes?, half?);

    let class = dh_slope_class(1, 1, &Coeff::t());
    let exact = integrate_top(&class).value;
    let oracle = exact.eval(PI, area);
    let mut report = Report::new("dh", inputs(cfg)?);
    report.values.insert("step".into(), h);
    for (t, s) in taus.iter().zip(&slopes) {
        report.push(Check::relative(
            format!("dh_slope[tau={t:.12}]"),
            *s,
            oracle,
            format!("dVol/dτ = {exact} at T = A"),
            DH_TOL,
        ));
    }
    report.push(Check::relative(
        "dh_step_halving",
        half,
        slopes[0],
        format!("slope at step h = {h}"),
        DH_STEP_TOL,
    ));
    report.finish()?;
    if cfg.output.wants(Format::Json) {
        ensure_dir(&cfg.output.dir)?;
        report
            .timings
            .insert("total".into(), t0.elapsed().as_secs_f64());
        report.write(&cfg.output.dir.join("dh_report.json"))?;
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
pub struct Exact {
    pub exact: String,
    pub value: f64,
}

impl Exact {
    fn of(c: &Coeff) -> Self {
        Self {
            exact: c.to_string(),
            value: c.to_f64(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub eta_pow: u32,
    pub theta_pow: u32,
    pub coefficient: Exact,
}

fn entries(c: &CohClass) -> Vec<ClassEntry> {
    c.terms()
        .iter()
        .map(|(&(p, q), v)| ClassEntry {
            eta_pow: p,
            theta_pow: q,
            coefficient: Exact::of(v),
        })
        .collect()
}

/// Exact data of `Sym^r` of a genus-`g` surface at `τA = cπ`.
#[derive(Debug, Serialize)]
pub struct CohReport {
    pub r: u32,
    pub g: u32,
    pub tau_area: Exact,
    pub regime: String,
    pub vortex_class: Vec<ClassEntry>,
    pub predicted_volume: Exact,
    /// The volume as a polynomial in `T = τA`.
    pub volume_polynomial: String,
    /// `dVol/d(τA)` at the given `τA`.
    pub volume_slope: Exact,
    pub chern_vertical: Vec<ClassEntry>,
    /// `∫ c₁(T^v) ∪ [σ]^{r−1}/(r−1)!`
    pub chern_pairing: Exact,
    pub volume_positive_above_bradlow: bool,
}

pub fn cmd_coh(r: u32, g: u32, tau_area: &str) -> Result<CohReport, CliError> {
    if r == 0 {
        return config("--r must be at least 1");
    }
    let c: BigRational = tau_area.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "--tau-area expects a rational like 21/10, got {tau_area:?}"
        ))
    })?;
    let ta = Coeff::pi_multiple(c.clone());
    let bound = BigRational::from_integer((2 * r as i64).into());
    let regime = match c.cmp(&bound) {
        std::cmp::Ordering::Greater => "stable",
        std::cmp::Ordering::Equal => "degenerate",
        std::cmp::Ordering::Less => "violated",
    };
    let class = vortex_class(&ta, r, g);
    let poly = predicted_volume(&Coeff::t(), r, g).value;
    let volume = predicted_volume(&ta, r, g).value;
    let slope = poly.derivative_t().substitute_t(&ta);
    let cv = chern_vertical(r, g);
    let factorial: i64 = (1..r as i64).product();
    let pairing = integrate_top(&cup(&cv, &class.pow(r - 1))?)
        .value
        .scale(&BigRational::new(1.into(), factorial.into()));
    Ok(CohReport {
        r,
        g,
        tau_area: Exact::of(&ta),
        regime: regime.into(),
        vortex_class: entries(&class),
        predicted_volume: Exact::of(&volume),
        volume_polynomial: poly.to_string(),
        volume_slope: Exact::of(&slope),
        chern_vertical: entries(&cv),
        chern_pairing: Exact::of(&pairing),
        volume_positive_above_bradlow: volume_positive_above_bradlow(r, g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Field {
    Density,
    Curvature,
    U,
}

impl Field {
    fn name(self) -> &'static str {
        match self {
            Field::Density => "density",
            Field::Curvature => "curvature",
            Field::U => "u",
        }
    }
}

fn load_solution(path: &Path) -> Result<Solution, CliError> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(read_solution(BufReader::new(f))?.1)
}

/// Writes `<field>.pgm` and `<field>.csv` into `dir`.
pub fn cmd_render(solution: &Path, field: Field, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let sol = load_solution(solution)?;
    let data = match (&sol, field) {
        (Solution::Vortex(s), Field::Density) => density_field(s),
        (Solution::Vortex(s), Field::Curvature) => curvature_field(s),
        (Solution::Vortex(s), Field::U) => s.u.clone(),
        (Solution::Degenerate(d), Field::Density) => GridField::zeros(d.params.geometry.clone()),
        (Solution::Degenerate(d), Field::Curvature) => {
            GridField::constant(d.params.geometry.clone(), d.curvature_density)
        }
        (Solution::Degenerate(_), Field::U) => {
            return config("u = log|ψ|² is undefined on the degenerate branch")
        }
    };
    ensure_dir(dir)?;
    let name = field.name();
    let pgm = dir.join(format!("{name}.pgm"));
    let mut w = create(&pgm)?;
    write_pgm(&data, name, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(&pgm, e))?;
    let csv = dir.join(format!("{name}.csv"));
    let mut w = create(&csv)?;
    vortexline::surface::io::write_csv(&data, &mut w)?;
    w.flush().map_err(|e| CliError::io(&csv, e))?;
    Ok(vec![pgm, csv])
}

pub fn cmd_verify(solution: &Path, tol: Option<f64>) -> Result<Report, CliError> {
    let sol = load_solution(solution)?;
    let opts = SolveOptions {
        tol: tol.unwrap_or(SolveOptions::default().tol),
        ..SolveOptions::default()
    };
    let inputs = serde_json::json!({
        "solution": solution.display().to_string(),
        "tol": opts.tol,
    });
    let mut report = Report::new("verify", inputs);
    solution_checks(&mut report, &sol, &opts);
    report.finish()?;
    Ok(report)
}
