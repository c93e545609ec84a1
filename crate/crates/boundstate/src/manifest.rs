//! Manifest files: a flat key-value format with section headers, listing
//! the states to analyze plus unit, tolerance, solver, and output settings.
//!
//! ```text
//! # comments and blank lines are ignored
//! [units]
//! hbar = 1
//! mass_factor = 1
//!
//! [tolerances]
//! quadrature = 1e-8
//!
//! [output]
//! dir = out
//!
//! [state]
//! label = gaussian
//! source = catalog:gaussian
//!
//! [state]
//! label = narrow
//! source = expr:exp(-x^4/3)
//! ```
//!
//! Validation is fail-fast but exhaustive: every problem in the file is
//! reported in one pass.

use crate::eigensolver::SolverConfig;
use crate::expr::Expression;
use crate::wavefunction::CatalogState;
use crate::wavefunction::Units;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub enum StateSource {
    Catalog(CatalogState),
    Expr(Expression),
}

#[derive(Debug, Clone)]
pub struct StateSpec {
    pub label: String,
    pub source: StateSource,
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub states: Vec<StateSpec>,
    pub units: Units,
    pub quad_tol: Option<f64>,
    pub solver: SolverConfig,
    pub output_dir: PathBuf,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            states: Vec::new(),
            units: Units::default(),
            quad_tol: None,
            solver: SolverConfig::default(),
            output_dir: PathBuf::from("out"),
        }
    }
}

/// Parse and validate a manifest, reporting every error at once.
pub fn parse_manifest(text: &str) -> Result<Manifest, Vec<String>> {
    let mut errors: Vec<String> = Vec::new();
    let mut manifest = Manifest::default();
    let mut section = String::new();
    let mut pending: Option<(Option<String>, Option<String>, usize)> = None; // label, source, line

    let finish_state =
        |pending: &mut Option<(Option<String>, Option<String>, usize)>,
         states: &mut Vec<StateSpec>,
         errors: &mut Vec<String>| {
            if let Some((label, source, line)) = pending.take() {
                let label = match label {
                    Some(l) => l,
                    None => {
                        errors.push(format!("line {line}: [state] block is missing a label"));
                        return;
                    }
                };
                let source_text = match source {
                    Some(s) => s,
                    None => {
                        errors.push(format!(
                            "line {line}: [state] '{label}' is missing a source"
                        ));
                        return;
                    }
                };
                let source = if let Some(name) = source_text.strip_prefix("catalog:") {
                    match name.trim().parse::<CatalogState>() {
                        Ok(c) => StateSource::Catalog(c),
                        Err(_) => {
                            errors.push(format!(
                                "line {line}: unknown catalog state '{}' for '{label}' \
                                 (expected one of gaussian, quartic, extended, lorentzian2)",
                                name.trim()
                            ));
                            return;
                        }
                    }
                } else if let Some(src) = source_text.strip_prefix("expr:") {
                    match Expression::parse(src.trim()) {
                        Ok(e) => StateSource::Expr(e),
                        Err(err) => {
                            errors.push(format!(
                                "line {line}: state '{label}': expression does not parse: {err}"
                            ));
                            return;
                        }
                    }
                } else {
                    errors.push(format!(
                        "line {line}: state '{label}': source must start with 'catalog:' \
                         or 'expr:'"
                    ));
                    return;
                };
                if states.iter().any(|s| s.label == label) {
                    errors.push(format!("line {line}: duplicate state label '{label}'"));
                    return;
                }
                states.push(StateSpec { label, source });
            }
        };

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if section == "state" {
                finish_state(&mut pending, &mut manifest.states, &mut errors);
            }
            section = name.trim().to_string();
            match section.as_str() {
                "units" | "tolerances" | "solver" | "output" => {}
                "state" => pending = Some((None, None, lineno)),
                other => errors.push(format!("line {lineno}: unknown section [{other}]")),
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(format!("line {lineno}: expected 'key = value', got '{line}'"));
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        let num = |errors: &mut Vec<String>| -> Option<f64> {
            match value.parse::<f64>() {
                Ok(v) => Some(v),
                Err(_) => {
                    errors.push(format!("line {lineno}: '{key}' wants a number, got '{value}'"));
                    None
                }
            }
        };
        match (section.as_str(), key) {
            ("units", "hbar") => {
                if let Some(v) = num(&mut errors) {
                    manifest.units.hbar = v;
                }
            }
            ("units", "mass_factor") => {
                if let Some(v) = num(&mut errors) {
                    manifest.units.mass_factor = v;
                }
            }
            ("tolerances", "quadrature") => {
                if let Some(v) = num(&mut errors) {
                    manifest.quad_tol = Some(v);
                }
            }
            ("solver", "x_min") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.x_min = v;
                }
            }
            ("solver", "x_max") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.x_max = v;
                }
            }
            ("solver", "step") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.step = v;
                }
            }
            ("solver", "energy_lo") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.energy_bracket.0 = v;
                }
            }
            ("solver", "energy_hi") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.energy_bracket.1 = v;
                }
            }
            ("solver", "energy_tol") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.energy_tol = v;
                }
            }
            ("solver", "max_bisections") => {
                if let Some(v) = num(&mut errors) {
                    manifest.solver.max_bisections = v as u32;
                }
            }
            ("output", "dir") => manifest.output_dir = PathBuf::from(value),
            ("state", "label") => {
                if let Some((label, _, _)) = &mut pending {
                    if label.is_some() {
                        errors.push(format!("line {lineno}: duplicate label key in [state]"));
                    }
                    *label = Some(value.to_string());
                }
            }
            ("state", "source") => {
                if let Some((_, source, _)) = &mut pending {
                    if source.is_some() {
                        errors.push(format!("line {lineno}: duplicate source key in [state]"));
                    }
                    *source = Some(value.to_string());
                }
            }
            ("", k) => errors.push(format!(
                "line {lineno}: key '{k}' appears before any [section] header"
            )),
            (s, k) => errors.push(format!("line {lineno}: unknown key '{k}' in [{s}]")),
        }
    }
    if section == "state" {
        finish_state(&mut pending, &mut manifest.states, &mut errors);
    }

    if manifest.states.is_empty() {
        errors.push("manifest lists no [state] blocks".to_string());
    }
    if let Err(e) = manifest.units.validate() {
        errors.push(e.to_string());
    }
    if let Some(t) = manifest.quad_tol {
        if !(t > 0.0) {
            errors.push(format!("quadrature tolerance must be positive, got {t}"));
        }
    }

    if errors.is_empty() {
        Ok(manifest)
    } else {
        Err(errors)
    }
}
