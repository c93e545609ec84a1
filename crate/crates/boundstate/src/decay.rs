//! Asymptotic decay classification: does a state vanish fast enough
//! (faster than `|x|^{-3/2}`) for its position uncertainty to be finite?
//!
//! The classifier is empirical slope fitting on |ψ| over a geometric tail
//! window, cross-validated against direct quadrature of ⟨x²⟩ by
//! [`consistency_check`].

use crate::observables::mean_x2;
use crate::quadrature::{tail_exponent_with, ExtendedReal, QuadConfig, Side, TailModel};
use crate::wavefunction::Wavefunction;

/// The critical decay exponent: finite Δx needs |ψ| to vanish faster than
/// `|x|^{-3/2}`.
pub const CRITERION_EXPONENT: f64 = 1.5;

/// Half-width of the Borderline band around the critical exponent.
pub const VERDICT_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Both tails decay strictly faster than the criterion: finite Δx.
    TightlyBound,
    /// Some tail decays at or below the criterion: loosely bound,
    /// spatially extended, Δx infinite.
    Extended,
    /// Within the margin of the critical exponent (or unmeasurable).
    Borderline,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TightlyBound => "tightly_bound",
            Verdict::Extended => "extended",
            Verdict::Borderline => "borderline",
        }
    }
}

/// Decay verdict for one state. `left_tail` is absent for half-line
/// (radial) analyses.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub left_tail: Option<TailModel>,
    pub right_tail: TailModel,
    pub verdict: Verdict,
    pub criterion_exponent: f64,
    pub explanation: String,
}

fn tail_class(m: &TailModel) -> Verdict {
    if m.samples_used == 0 {
        return Verdict::Borderline;
    }
    if m.decays_faster_than(CRITERION_EXPONENT, VERDICT_MARGIN) {
        return Verdict::TightlyBound;
    }
    if let Some(p) = m.power() {
        if p < CRITERION_EXPONENT - VERDICT_MARGIN {
            return Verdict::Extended;
        }
    }
    Verdict::Borderline
}

fn describe(m: &TailModel) -> String {
    if m.samples_used == 0 {
        return format!("unmeasurable ({})", m.diagnostic);
    }
    match m.power() {
        Some(p) => format!("exponent \u{2248} {p:.2}"),
        None => "super-polynomial".to_string(),
    }
}

fn combine(left: Option<&TailModel>, right: &TailModel) -> (Verdict, String) {
    let right_class = tail_class(right);
    let classes = match left {
        Some(l) => vec![tail_class(l), right_class],
        None => vec![right_class],
    };
    let verdict = if classes.contains(&Verdict::Extended) {
        Verdict::Extended
    } else if classes.iter().all(|c| *c == Verdict::TightlyBound) {
        Verdict::TightlyBound
    } else {
        Verdict::Borderline
    };
    let tails = match left {
        Some(l) => format!("left tail {}, right tail {}", describe(l), describe(right)),
        None => format!("radial tail {}", describe(right)),
    };
    let meaning = match verdict {
        Verdict::TightlyBound => format!(
            "decays faster than |x|^-{CRITERION_EXPONENT} (margin {VERDICT_MARGIN})"
        ),
        Verdict::Extended => format!(
            "decays no faster than |x|^-{CRITERION_EXPONENT}: loosely bound, \
             spatially extended"
        ),
        Verdict::Borderline => format!(
            "within the margin {VERDICT_MARGIN} of the critical exponent \
             {CRITERION_EXPONENT}"
        ),
    };
    (verdict, format!("{tails}; {meaning}"))
}

/// Classify the two-sided asymptotic decay of |ψ| from `x_start` outward.
///
/// `x_start` must sit outside the potential well region (≥ 4 for every
/// catalog state).
pub fn classify(w: &Wavefunction, x_start: f64) -> DecayReport {
    assert!(x_start >= 4.0, "tail window must start outside the well (x_start >= 4)");
    let doublings = QuadConfig::default().tail_doublings;
    let f = w.as_fn();
    let right = tail_exponent_with(&f, Side::Right, x_start, doublings);
    let left = tail_exponent_with(&f, Side::Left, x_start, doublings);
    let (verdict, explanation) = combine(Some(&left), &right);
    DecayReport {
        left_tail: Some(left),
        right_tail: right,
        verdict,
        criterion_exponent: CRITERION_EXPONENT,
        explanation,
    }
}

/// Half-line variant for radial reduced functions `u(r)`, `r ≥ 0`: only the
/// right tail is analyzed, against the same `r^{-3/2}` criterion.
pub fn classify_radial(u: &Wavefunction, r_start: f64) -> DecayReport {
    assert!(r_start >= 4.0, "tail window must start outside the well (r_start >= 4)");
    let doublings = QuadConfig::default().tail_doublings;
    let f = u.as_fn();
    let right = tail_exponent_with(&f, Side::Right, r_start, doublings);
    let (verdict, explanation) = combine(None, &right);
    DecayReport {
        left_tail: None,
        right_tail: right,
        verdict,
        criterion_exponent: CRITERION_EXPONENT,
        explanation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone)]
pub struct ConsistencyOutcome {
    pub agreement: Agreement,
    pub verdict: Verdict,
    pub mean_x2: ExtendedReal,
    pub note: String,
}

/// Cross-validate the decay classifier against direct quadrature:
/// a tightly bound verdict must coincide with a finite ⟨x²⟩ and an extended
/// verdict with a divergent one. Borderline is always consistent, with a
/// note.
pub fn consistency_check(w: &Wavefunction, cfg: &QuadConfig) -> ConsistencyOutcome {
    let report = classify(w, cfg.initial_box.max(4.0));
    let m2 = mean_x2(w, cfg);
    let (agreement, note) = match report.verdict {
        Verdict::Borderline => (
            Agreement::Consistent,
            "borderline decay: no verdict to cross-check; see the quadrature \
             classification"
                .to_string(),
        ),
        Verdict::TightlyBound => {
            if m2.is_finite() {
                (Agreement::Consistent, "finite ⟨x²⟩ matches the tight decay verdict".into())
            } else {
                (
                    Agreement::Inconsistent,
                    format!("tight decay verdict but ⟨x²⟩ is {}", m2.diagnostic()),
                )
            }
        }
        Verdict::Extended => {
            if m2.is_divergent() {
                (Agreement::Consistent, "divergent ⟨x²⟩ matches the extended verdict".into())
            } else {
                (
                    Agreement::Inconsistent,
                    format!("extended verdict but ⟨x²⟩ is {}", m2.diagnostic()),
                )
            }
        }
    };
    ConsistencyOutcome { agreement, verdict: report.verdict, mean_x2: m2, note }
}
