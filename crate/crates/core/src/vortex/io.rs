//! Self-describing solution container.
//!
//! ```text
//! VORTEXLINE-SOLUTION\n
//! <one-line JSON header>\n
//! <binary block: each field in `fields` order, N₁N₂ little-endian f64, row-major>
//! ```
//!
//! The header echoes the parameters (divisor points in lattice coordinates),
//! Newton history and residual report. Degenerate solutions carry no field
//! block.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    bradlow_limit, verify_solution, Divisor, ResidualReport, Solution, TaubesSolution, VortexParams,
};
use crate::error::{Error, Result};
use crate::surface::{io::read_samples, GridField, PointOnTorus, TorusGeometry};

const MAGIC_LINE: &str = "VORTEXLINE-SOLUTION";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GeometryHeader {
    pub period_ratio: [f64; 2],
    pub area: f64,
    pub scale: f64,
    pub dims: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolutionHeader {
    pub version: u32,
    pub branch: String,
    pub geometry: GeometryHeader,
    pub tau: f64,
    /// Divisor points in lattice coordinates `(s, t)`.
    pub points: Vec<[f64; 2]>,
    pub multiplicities: Vec<u32>,
    pub newton_iters: usize,
    pub residual_history: Vec<f64>,
    pub report: ResidualReport,
    pub fields: Vec<String>,
}

fn header_for(sol: &Solution) -> SolutionHeader {
    let (params, branch, iters, history, fields) = match sol {
        Solution::Vortex(s) => (
            &s.params,
            "vortex",
            s.newton_iters,
            s.residual_history.clone(),
            vec!["u0".into(), "v".into(), "u".into()],
        ),
        Solution::Degenerate(d) => (&d.params, "degenerate", 0, vec![], vec![]),
    };
    let g = &params.geometry;
    SolutionHeader {
        version: VERSION,
        branch: branch.into(),
        geometry: GeometryHeader {
            period_ratio: [g.period_ratio().re, g.period_ratio().im],
            area: g.area(),
            scale: g.scale(),
            dims: [g.dims().0, g.dims().1],
        },
        tau: params.tau,
        points: params
            .divisor
            .points()
            .iter()
            .map(|p| [p.lattice().0, p.lattice().1])
            .collect(),
        multiplicities: params.divisor.multiplicities().to_vec(),
        newton_iters: iters,
        residual_history: history,
        report: verify_solution(sol),
        fields,
    }
}

pub fn write_solution<W: Write>(sol: &Solution, mut w: W) -> Result<()> {
    let header = header_for(sol);
    writeln!(w, "{MAGIC_LINE}")?;
    writeln!(w, "{}", serde_json::to_string(&header)?)?;
    if let Solution::Vortex(s) = sol {
        for f in [&s.background.u0, &s.v, &s.u] {
            for v in f.values() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn params_from_header(h: &SolutionHeader) -> Result<VortexParams> {
    let g = TorusGeometry::new(
        Complex64::new(h.geometry.period_ratio[0], h.geometry.period_ratio[1]),
        h.geometry.area,
        (h.geometry.dims[0], h.geometry.dims[1]),
    )?;
    let points = h
        .points
        .iter()
        .map(|p| PointOnTorus::from_lattice(&g, p[0], p[1]))
        .collect();
    let divisor = Divisor::new(points, h.multiplicities.clone())?;
    VortexParams::new(h.tau, g, divisor)
}

/// Reads a container. The smooth correction `v` is authoritative; the
/// stored `u₀` must agree with the one rebuilt from the parameters.
pub fn read_solution<R: BufRead>(mut r: R) -> Result<(SolutionHeader, Solution)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    if line.trim_end() != MAGIC_LINE {
        return Err(Error::Format("not a vortexline solution file".into()));
    }
    line.clear();
    r.read_line(&mut line)?;
    let header: SolutionHeader = serde_json::from_str(line.trim_end())?;
    if header.version != VERSION {
        return Err(Error::Format(format!(
            "unsupported version {}",
            header.version
        )));
    }
    let params = params_from_header(&header)?;
    let sol = match header.branch.as_str() {
        "degenerate" => Solution::Degenerate(bradlow_limit(&params)?),
        "vortex" => {
            let mut fields: Vec<GridField> = Vec::new();
            for _ in &header.fields {
                fields.push(read_samples(params.geometry.clone(), &mut r)?);
            }
            let idx = |name: &str| {
                header
                    .fields
                    .iter()
                    .position(|f| f == name)
                    .ok_or_else(|| Error::Format(format!("missing field {name}")))
            };
            let v = fields[idx("v")?].clone();
            let u0 = &fields[idx("u0")?];
            let sol = TaubesSolution::from_correction(params, v)?;
            let drift = sol.background.u0.sub(u0).norm_inf();
            if drift > 1e-9 * u0.norm_inf().max(1.0) {
                return Err(Error::Format(format!(
                    "stored background disagrees with parameters (drift {drift:.3e})"
                )));
            }
            let mut sol = sol;
            sol.newton_iters = header.newton_iters;
            Solution::Vortex(Box::new(sol))
        }
        other => return Err(Error::Format(format!("unknown branch '{other}'"))),
    };
    let mut rest = Vec::new();
    r.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Format("trailing bytes after field block".into()));
    }
    Ok((header, sol))
}
