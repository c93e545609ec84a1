//! Normalized bound-state candidates: an expression, its normalization
//! constant, and the catalog of reference ground states.

use crate::expr::{gamma, EvalError, Expression, Jet2, ParseError};
use crate::quadrature::{integrate_real_line_with, ExtendedReal, QuadConfig};
use thiserror::Error;

/// Unit conventions: `hbar` and the factor `2m/ħ²` multiplying `[E - V]`.
///
/// The defaults take `2m = ħ = 1`, so `2m/ħ² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub mass_factor: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units { hbar: 1.0, mass_factor: 1.0 }
    }
}

impl Units {
    pub fn validate(&self) -> Result<(), WavefunctionError> {
        if !(self.hbar > 0.0) || !(self.mass_factor > 0.0) {
            return Err(WavefunctionError::InvalidUnits {
                hbar: self.hbar,
                mass_factor: self.mass_factor,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error)]
pub enum WavefunctionError {
    #[error("state is not normalizable: {diagnostic}")]
    NotNormalizable { diagnostic: String },
    #[error("unknown catalog state '{name}'")]
    UnknownName { name: String },
    #[error("invalid units: hbar = {hbar}, mass_factor = {mass_factor} (both must be > 0)")]
    InvalidUnits { hbar: f64, mass_factor: f64 },
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A real, normalized state: `ψ(x) = norm_constant · raw(x)`.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    raw: Expression,
    norm_constant: f64,
    norm_error: f64,
    units: Units,
    label: String,
}

/// The reference ground states discussed throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogState {
    /// `π^{-1/4} e^{-x²/2}` — harmonic-oscillator ground state.
    Gaussian,
    /// `[2^{3/4} Γ(5/4)]^{-1/2} e^{-x⁴}` — double-well ground state.
    Quartic,
    /// `1/√(π(1+x²))` — normalizable but spatially extended.
    Extended,
    /// `√(2/π)/(1+x²)` — decays just fast enough for a finite product.
    Lorentzian2,
}

impl CatalogState {
    pub const ALL: [CatalogState; 4] = [
        CatalogState::Gaussian,
        CatalogState::Quartic,
        CatalogState::Extended,
        CatalogState::Lorentzian2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogState::Gaussian => "gaussian",
            CatalogState::Quartic => "quartic",
            CatalogState::Extended => "extended",
            CatalogState::Lorentzian2 => "lorentzian2",
        }
    }
}

impl std::str::FromStr for CatalogState {
    type Err = WavefunctionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "gaussian" => CatalogState::Gaussian,
            "quartic" => CatalogState::Quartic,
            "extended" => CatalogState::Extended,
            "lorentzian2" => CatalogState::Lorentzian2,
            _ => return Err(WavefunctionError::UnknownName { name: s.to_string() }),
        })
    }
}

/// Catalog state with its exact closed-form normalization constant (not
/// numerically recomputed, so downstream checks do not compound quadrature
/// error).
pub fn catalog(name: CatalogState) -> Wavefunction {
    catalog_with_units(name, Units::default())
}

pub fn catalog_with_units(name: CatalogState, units: Units) -> Wavefunction {
    use std::f64::consts::PI;
    let (source, norm_constant) = match name {
        CatalogState::Gaussian => ("exp(-x^2/2)", PI.powf(-0.25)),
        CatalogState::Quartic => {
            ("exp(-x^4)", 1.0 / ((2.0f64).powf(0.75) * gamma(1.25)).sqrt())
        }
        CatalogState::Extended => ("1/sqrt(1+x^2)", 1.0 / PI.sqrt()),
        CatalogState::Lorentzian2 => ("1/(1+x^2)", (2.0 / PI).sqrt()),
    };
    let raw = Expression::parse(source).expect("catalog sources are well-formed");
    Wavefunction {
        raw,
        norm_constant,
        norm_error: 0.0,
        units,
        label: name.name().to_string(),
    }
}

impl Wavefunction {
    /// Normalize `e` over the real line: `norm_constant = 1/√(∫ e² dx)`.
    ///
    /// Fails with [`WavefunctionError::NotNormalizable`] when the
    /// normalization integral is divergent or indeterminate.
    pub fn from_expression(e: Expression, units: Units) -> Result<Wavefunction, WavefunctionError> {
        Self::from_expression_with(e, units, &QuadConfig::default())
    }

    pub fn from_expression_with(
        e: Expression,
        units: Units,
        cfg: &QuadConfig,
    ) -> Result<Wavefunction, WavefunctionError> {
        units.validate()?;
        let density = |x: f64| {
            let v = e.eval(x).unwrap_or(f64::NAN);
            v * v
        };
        match integrate_real_line_with(density, cfg) {
            ExtendedReal::Finite { value, error_estimate, .. } => {
                if !(value > 0.0) {
                    return Err(WavefunctionError::NotNormalizable {
                        diagnostic: format!("∫ψ² = {value}; the state vanishes"),
                    });
                }
                let norm_constant = 1.0 / value.sqrt();
                let norm_error = norm_constant * error_estimate / (2.0 * value);
                let label = e.source().to_string();
                Ok(Wavefunction { raw: e, norm_constant, norm_error, units, label })
            }
            ExtendedReal::Divergent { diagnostic } => Err(WavefunctionError::NotNormalizable {
                diagnostic: format!("∫ψ² is divergent ({diagnostic})"),
            }),
            ExtendedReal::Indeterminate { diagnostic } => Err(WavefunctionError::NotNormalizable {
                diagnostic: format!("∫ψ² could not be classified ({diagnostic})"),
            }),
        }
    }

    /// Wrap an expression with a caller-supplied normalization constant.
    ///
    /// No normalization check is performed; used by the catalog (exact
    /// constants) and for half-line radial functions where full-line
    /// normalization does not apply.
    pub fn from_raw_parts(
        raw: Expression,
        norm_constant: f64,
        units: Units,
        label: impl Into<String>,
    ) -> Wavefunction {
        Wavefunction { raw, norm_constant, norm_error: 0.0, units, label: label.into() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Wavefunction {
        self.label = label.into();
        self
    }

    pub fn raw(&self) -> &Expression {
        &self.raw
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn norm_error(&self) -> f64 {
        self.norm_error
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// ψ(x) = norm_constant · raw(x).
    pub fn value(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.norm_constant * self.raw.eval(x)?)
    }

    /// (ψ, ψ′, ψ″) at `x`.
    pub fn jet(&self, x: f64) -> Result<Jet2, EvalError> {
        Ok(Jet2::constant(self.norm_constant) * self.raw.eval_jet2(x)?)
    }

    /// ψ as a plain function; evaluation failures map to NaN, which the
    /// quadrature layer reports as an indeterminate integral.
    pub fn as_fn(&self) -> impl Fn(f64) -> f64 + '_ {
        move |x| self.norm_constant * self.raw.eval(x).unwrap_or(f64::NAN)
    }

    /// Recompute ∫ψ² by quadrature (the stored constant is not touched).
    pub fn check_normalization(&self, cfg: &QuadConfig) -> ExtendedReal {
        let f = self.as_fn();
        integrate_real_line_with(move |x| f(x) * f(x), cfg)
    }

    /// `n` uniformly spaced samples of ψ on `[x_min, x_max]`, endpoints
    /// included.
    pub fn sample(
        &self,
        x_min: f64,
        x_max: f64,
        n: usize,
    ) -> Result<Vec<(f64, f64)>, WavefunctionError> {
        if n < 2 {
            return Err(WavefunctionError::InvalidGrid {
                reason: format!("need at least 2 sample points, got {n}"),
            });
        }
        if !(x_min < x_max) {
            return Err(WavefunctionError::InvalidGrid {
                reason: format!("empty window [{x_min}, {x_max}]"),
            });
        }
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = x_min + (i as f64 * (x_max - x_min)) / (n - 1) as f64;
            out.push((x, self.value(x)?));
        }
        Ok(out)
    }

    /// Count strict sign changes of ψ on a uniform grid, ignoring values
    /// inside the dead zone `|ψ| < 1e-12` so tangential zeros do not count.
    pub fn count_nodes(&self, x_min: f64, x_max: f64, n: usize) -> Result<usize, WavefunctionError> {
        if n < 100 {
            return Err(WavefunctionError::InvalidGrid {
                reason: format!("node counting needs at least 100 sample points, got {n}"),
            });
        }
        let samples = self.sample(x_min, x_max, n)?;
        Ok(count_sign_changes(samples.iter().map(|&(_, v)| v), 1e-12))
    }
}

/// Sign changes of a sampled function, skipping exact zeros and values
/// below `dead_zone`.
pub(crate) fn count_sign_changes(values: impl Iterator<Item = f64>, dead_zone: f64) -> usize {
    let mut nodes = 0;
    let mut last_sign = 0i8;
    for v in values {
        if v == 0.0 || v.abs() < dead_zone {
            continue;
        }
        let sign = if v > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            nodes += 1;
        }
        last_sign = sign;
    }
    nodes
}
