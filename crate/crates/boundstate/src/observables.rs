//! Expectation values, uncertainties, and the uncertainty product, with
//! divergence classifications propagated from the quadrature layer.
//!
//! Conventions for a real normalized state ψ:
//! `⟨x⟩ = ∫ x ψ²`, `⟨x²⟩ = ∫ x² ψ²` (symmetric limits), `⟨p²⟩ = ħ² ∫ (ψ′)²`
//! (the positive-definite first-derivative form; an integration-by-parts
//! route is kept as a cross-check), and `⟨p⟩ = 0` whenever its defining
//! integral converges, since a real bound state carries no momentum.

use crate::quadrature::{
    integrate_real_line_with, tail_exponent_with, ExtendedReal, QuadConfig, Side, TailExponent,
};
use crate::wavefunction::Wavefunction;

/// All moments of one state. `delta_*` and `product_u` inherit `Divergent`
/// from any divergent input moment; `product_u` is expressed in units of ħ.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub label: String,
    pub hbar: f64,
    pub mean_x: ExtendedReal,
    pub mean_x2: ExtendedReal,
    pub mean_p: ExtendedReal,
    pub mean_p2: ExtendedReal,
    pub delta_x: ExtendedReal,
    pub delta_p: ExtendedReal,
    pub product_u: ExtendedReal,
    pub notes: String,
}

/// ⟨x⟩ under symmetric limits.
pub fn mean_x(w: &Wavefunction, cfg: &QuadConfig) -> ExtendedReal {
    let psi = w.as_fn();
    integrate_real_line_with(move |x| x * psi(x) * psi(x), cfg)
}

/// ⟨x²⟩ with divergence classification.
pub fn mean_x2(w: &Wavefunction, cfg: &QuadConfig) -> ExtendedReal {
    let psi = w.as_fn();
    integrate_real_line_with(move |x| x * x * psi(x) * psi(x), cfg)
}

/// ⟨p⟩ for a real state: reported as exactly 0 whenever the defining
/// integral `-ħ ∫ ψ ψ′` converges (absolutely or by symmetric limits), with
/// the convergence classification and the integrand's tail exponent noted.
pub fn mean_p(w: &Wavefunction, cfg: &QuadConfig) -> ExtendedReal {
    let hbar = w.units().hbar;
    let integrand = |x: f64| match w.jet(x) {
        Ok(j) => -hbar * j.value * j.d1,
        Err(_) => f64::NAN,
    };
    match integrate_real_line_with(integrand, cfg) {
        ExtendedReal::Finite { value, error_estimate, diagnostic } => {
            let tail = tail_exponent_with(
                integrand,
                Side::Right,
                cfg.initial_box,
                cfg.tail_doublings,
            );
            let tail_note = match tail.exponent {
                TailExponent::SuperPolynomial => "super-polynomial integrand tail".to_string(),
                TailExponent::Power(p) => format!("integrand tail exponent \u{2248} {p:.1}"),
            };
            ExtendedReal::Finite {
                value: 0.0,
                error_estimate: error_estimate + value.abs(),
                diagnostic: format!("vanishes for a real state; {tail_note}; {diagnostic}"),
            }
        }
        other => other,
    }
}

/// ⟨p²⟩ = ħ² ∫ (ψ′)² dx — the boundary-term-free quadratic form.
pub fn mean_p2(w: &Wavefunction, cfg: &QuadConfig) -> ExtendedReal {
    let h2 = w.units().hbar * w.units().hbar;
    let integrand = move |x: f64| match w.jet(x) {
        Ok(j) => h2 * j.d1 * j.d1,
        Err(_) => f64::NAN,
    };
    integrate_real_line_with(integrand, cfg)
}

/// ⟨p²⟩ = -ħ² ∫ ψ ψ″ dx — the integration-by-parts route, retained as an
/// independent cross-check of [`mean_p2`].
pub fn mean_p2_second_form(w: &Wavefunction, cfg: &QuadConfig) -> ExtendedReal {
    let h2 = w.units().hbar * w.units().hbar;
    let integrand = move |x: f64| match w.jet(x) {
        Ok(j) => -h2 * j.value * j.d2,
        Err(_) => f64::NAN,
    };
    integrate_real_line_with(integrand, cfg)
}

/// Δ = √(⟨a²⟩ - ⟨a⟩²), propagating classifications. A variance in
/// `[-1e-12, 0)` from roundoff is clamped to zero.
fn spread(mean: &ExtendedReal, mean_sq: &ExtendedReal, what: &str) -> ExtendedReal {
    match (mean, mean_sq) {
        (
            ExtendedReal::Finite { value: m, error_estimate: em, .. },
            ExtendedReal::Finite { value: m2, error_estimate: em2, .. },
        ) => {
            let mut var = m2 - m * m;
            if var < 0.0 {
                if var < -1e-12 {
                    return ExtendedReal::Indeterminate {
                        diagnostic: format!(
                            "{what}: variance {var:.3e} is negative beyond roundoff"
                        ),
                    };
                }
                var = 0.0;
            }
            let var_err = em2 + 2.0 * m.abs() * em + em * em;
            let delta = var.sqrt();
            let delta_err = if delta > var_err.sqrt() {
                var_err / (2.0 * delta)
            } else {
                var_err.sqrt()
            };
            ExtendedReal::Finite {
                value: delta,
                error_estimate: delta_err,
                diagnostic: String::new(),
            }
        }
        (ExtendedReal::Divergent { diagnostic }, _)
        | (_, ExtendedReal::Divergent { diagnostic }) => ExtendedReal::Divergent {
            diagnostic: format!("{what}: {diagnostic}"),
        },
        (ExtendedReal::Indeterminate { diagnostic }, _)
        | (_, ExtendedReal::Indeterminate { diagnostic }) => ExtendedReal::Indeterminate {
            diagnostic: format!("{what}: {diagnostic}"),
        },
    }
}

/// U = Δx·Δp / ħ. Any divergent factor makes the product divergent.
fn uncertainty_product(dx: &ExtendedReal, dp: &ExtendedReal, hbar: f64) -> ExtendedReal {
    match (dx, dp) {
        (
            ExtendedReal::Finite { value: a, error_estimate: ea, .. },
            ExtendedReal::Finite { value: b, error_estimate: eb, .. },
        ) => ExtendedReal::Finite {
            value: a * b / hbar,
            error_estimate: (a.abs() * eb + b.abs() * ea) / hbar,
            diagnostic: String::new(),
        },
        (ExtendedReal::Divergent { diagnostic }, _)
        | (_, ExtendedReal::Divergent { diagnostic }) => ExtendedReal::Divergent {
            diagnostic: format!("uncertainty product: {diagnostic}"),
        },
        (ExtendedReal::Indeterminate { diagnostic }, _)
        | (_, ExtendedReal::Indeterminate { diagnostic }) => ExtendedReal::Indeterminate {
            diagnostic: format!("uncertainty product: {diagnostic}"),
        },
    }
}

/// Assemble the full moment table for one state.
pub fn uncertainty_report(w: &Wavefunction, cfg: &QuadConfig) -> MomentReport {
    let mx = mean_x(w, cfg);
    let mx2 = mean_x2(w, cfg);
    let mp = mean_p(w, cfg);
    let mp2 = mean_p2(w, cfg);
    let dx = spread(&mx, &mx2, "delta_x");
    let dp = spread(&mp, &mp2, "delta_p");
    let hbar = w.units().hbar;
    let u = uncertainty_product(&dx, &dp, hbar);

    let mut notes = Vec::new();
    for (name, m) in [("mean_x", &mx), ("mean_x2", &mx2), ("mean_p", &mp), ("mean_p2", &mp2)] {
        match m {
            ExtendedReal::Divergent { diagnostic } => {
                notes.push(format!("{name} divergent: {diagnostic}"))
            }
            ExtendedReal::Indeterminate { diagnostic } => {
                notes.push(format!("{name} indeterminate: {diagnostic}"))
            }
            ExtendedReal::Finite { diagnostic, .. } if !diagnostic.is_empty() => {
                notes.push(format!("{name}: {diagnostic}"))
            }
            _ => {}
        }
    }

    MomentReport {
        label: w.label().to_string(),
        hbar,
        mean_x: mx,
        mean_x2: mx2,
        mean_p: mp,
        mean_p2: mp2,
        delta_x: dx,
        delta_p: dp,
        product_u: u,
        notes: notes.join("; "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{gamma, Expression};
    use crate::wavefunction::{catalog, CatalogState, Units, Wavefunction};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn finite(r: &ExtendedReal) -> f64 {
        r.value().unwrap_or_else(|| panic!("expected finite, got {r:?}"))
    }

    #[test]
    fn gaussian_moments() {
        let w = catalog(CatalogState::Gaussian);
        assert!(finite(&mean_x(&w, &cfg())).abs() < 1e-9);
        assert!((finite(&mean_x2(&w, &cfg())) - 0.5).abs() < 1e-8);
        assert!((finite(&mean_p2(&w, &cfg())) - 0.5).abs() < 1e-8);
        assert_eq!(finite(&mean_p(&w, &cfg())), 0.0);
        let rep = uncertainty_report(&w, &cfg());
        assert!((finite(&rep.product_u) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn quartic_moments_match_gamma_closed_forms() {
        let w = catalog(CatalogState::Quartic);
        // ⟨x²⟩ = Γ(3/4)/(4√2 Γ(5/4)), ⟨p²⟩ = √2 Γ(7/4)/Γ(5/4)
        let x2_expect = gamma(0.75) / (4.0 * (2.0f64).sqrt() * gamma(1.25));
        let p2_expect = (2.0f64).sqrt() * gamma(1.75) / gamma(1.25);
        assert!((x2_expect - 0.23899).abs() < 1e-5);
        assert!((p2_expect - 1.43397).abs() < 1e-5);
        assert!((finite(&mean_x2(&w, &cfg())) - x2_expect).abs() < 1e-6);
        assert!((finite(&mean_p2(&w, &cfg())) - p2_expect).abs() < 1e-5);
        let rep = uncertainty_report(&w, &cfg());
        // U = √(Γ(3/4)Γ(7/4))/(2Γ(5/4)) = 0.5854 ħ
        let u_expect = (gamma(0.75) * gamma(1.75)).sqrt() / (2.0 * gamma(1.25));
        assert!((finite(&rep.product_u) - u_expect).abs() < 1e-6);
        assert!((finite(&rep.product_u) - 0.5854).abs() < 5e-4);
    }

    #[test]
    fn extended_state_divergence_pattern() {
        let w = catalog(CatalogState::Extended);
        let rep = uncertainty_report(&w, &cfg());
        // ⟨x⟩ finite under symmetric limits, ⟨x²⟩ divergent, ⟨p⟩ and ⟨p²⟩ finite.
        match &rep.mean_x {
            ExtendedReal::Finite { value, diagnostic, .. } => {
                assert!(value.abs() < 1e-8);
                assert!(diagnostic.contains("principal value"), "{diagnostic}");
            }
            other => panic!("mean_x: {other:?}"),
        }
        assert!(rep.mean_x2.is_divergent(), "{:?}", rep.mean_x2);
        assert_eq!(finite(&rep.mean_p), 0.0);
        assert!((finite(&rep.mean_p2) - 0.125).abs() < 1e-8);
        assert!((finite(&rep.delta_p) - 0.5 / (2.0f64).sqrt()).abs() < 1e-8);
        assert!(rep.delta_x.is_divergent());
        assert!(rep.product_u.is_divergent());
        // ⟨p⟩ integrand falls off like |x|^{-3}.
        assert!(rep.notes.contains("3.0"), "{}", rep.notes);
    }

    #[test]
    fn lorentzian2_product() {
        let w = catalog(CatalogState::Lorentzian2);
        let rep = uncertainty_report(&w, &cfg());
        assert!((finite(&rep.mean_x2) - 1.0).abs() < 1e-7);
        assert!((finite(&rep.mean_p2) - 0.5).abs() < 1e-8);
        let u_expect = 1.0 / (2.0f64).sqrt();
        assert!((finite(&rep.product_u) - u_expect).abs() < 1e-6);
    }

    #[test]
    fn shifted_gaussian_mean() {
        let w = Wavefunction::from_expression(
            Expression::parse("exp(-(x-2)^2/2)").unwrap(),
            Units::default(),
        )
        .unwrap();
        assert!((finite(&mean_x(&w, &cfg())) - 2.0).abs() < 1e-8);
    }

    #[test]
    fn p2_two_routes_agree() {
        for name in [CatalogState::Gaussian, CatalogState::Quartic] {
            let w = catalog(name);
            let a = finite(&mean_p2(&w, &cfg()));
            let b = finite(&mean_p2_second_form(&w, &cfg()));
            assert!((a - b).abs() < 1e-6, "{name:?}: {a} vs {b}");
        }
    }

    #[test]
    fn heisenberg_bound_on_finite_reports() {
        for name in CatalogState::ALL {
            let w = catalog(name);
            let rep = uncertainty_report(&w, &cfg());
            if let Some(u) = rep.product_u.value() {
                assert!(u >= 0.5 * (1.0 - 1e-9), "{name:?}: U = {u}");
            }
        }
    }

    #[test]
    fn hbar_scales_momentum_moments() {
        let units = Units { hbar: 2.0, mass_factor: 1.0 };
        let w = crate::wavefunction::catalog_with_units(CatalogState::Gaussian, units);
        // ⟨p²⟩ = ħ²/2, Δp = ħ/√2, U = ΔxΔp/ħ still 1/2.
        assert!((finite(&mean_p2(&w, &cfg())) - 2.0).abs() < 1e-7);
        let rep = uncertainty_report(&w, &cfg());
        assert!((finite(&rep.delta_p) - 2.0 / (2.0f64).sqrt()).abs() < 1e-7);
        assert!((finite(&rep.product_u) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn variance_clamp_handles_roundoff() {
        let m = ExtendedReal::Finite { value: 1.0, error_estimate: 1e-12, diagnostic: String::new() };
        let m2 = ExtendedReal::Finite {
            value: 1.0 - 5e-13,
            error_estimate: 1e-12,
            diagnostic: String::new(),
        };
        let d = spread(&m, &m2, "delta_x");
        assert_eq!(d.value(), Some(0.0));
        // Beyond the clamp threshold the result is flagged, not fabricated.
        let m2_bad = ExtendedReal::Finite {
            value: 0.9,
            error_estimate: 1e-12,
            diagnostic: String::new(),
        };
        assert!(spread(&m, &m2_bad, "delta_x").is_indeterminate());
    }
}
