use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{config, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|value − oracle| / |oracle|`
    Relative,
    /// `|value − oracle|`
    Absolute,
    /// `max(0, oracle − value)`: the value must not fall below the oracle.
    LowerBound,
}

/// One numeric claim together with its reference value and tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub oracle: f64,
    pub oracle_expr: String,
    pub metric: Metric,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        value: f64,
        oracle: f64,
        oracle_expr: impl Into<String>,
        metric: Metric,
        tolerance: f64,
    ) -> Self {
        let error = match metric {
            Metric::Relative => (value - oracle).abs() / oracle.abs(),
            Metric::Absolute => (value - oracle).abs(),
            Metric::LowerBound => (oracle - value).max(0.0),
        };
        Self {
            name: name.into(),
            value,
            oracle,
            oracle_expr: oracle_expr.into(),
            metric,
            error,
            tolerance,
            pass: error <= tolerance,
        }
    }

    pub fn relative(
        name: impl Into<String>,
        value: f64,
        oracle: f64,
        expr: impl Into<String>,
        tol: f64,
    ) -> Self {
        Self::new(name, value, oracle, expr, Metric::Relative, tol)
    }

    pub fn absolute(
        name: impl Into<String>,
        value: f64,
        oracle: f64,
        expr: impl Into<String>,
        tol: f64,
    ) -> Self {
        Self::new(name, value, oracle, expr, Metric::Absolute, tol)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    pub values: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Wall-clock seconds; the only non-reproducible part of a report.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            branch: None,
            values: BTreeMap::new(),
            checks: Vec::new(),
            pass: false,
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Seals the report; every report needs at least one check and every
    /// check an oracle.
    pub fn finish(&mut self) -> Result<(), CliError> {
        if self.checks.is_empty() {
            return config(format!("{} report carries no checks", self.command));
        }
        if let Some(c) = self
            .checks
            .iter()
            .find(|c| c.oracle_expr.trim().is_empty() || !c.oracle.is_finite())
        {
            return config(format!("check {} has no oracle", c.name));
        }
        self.pass = self.checks.iter().all(|c| c.pass);
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: {:.12e} vs {:.12e} [{}], error {:.3e} (tol {:.1e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.oracle,
                c.oracle_expr,
                c.error,
                c.tolerance
            ));
        }
        out.push_str(if self.pass {
            "all checks passed\n"
        } else {
            "some checks failed\n"
        });
        out
    }
}
