//! Asymptotic decay verdicts: a state needs |ψ| to vanish faster than
//! |x|^{-3/2} for its position uncertainty to stay finite. The classifier
//! measures tail exponents and is cross-checked against direct quadrature.
//!
//! ```bash
//! cargo run -p boundstate --example classify_decay
//! ```

use boundstate::decay::{classify, classify_radial, consistency_check};
use boundstate::expr::Expression;
use boundstate::quadrature::QuadConfig;
use boundstate::wavefunction::{catalog, CatalogState, Units, Wavefunction};

fn main() {
    let cfg = QuadConfig::default();

    println!("catalog states:");
    for name in CatalogState::ALL {
        let w = catalog(name);
        let rep = classify(&w, 4.0);
        let check = consistency_check(&w, &cfg);
        println!(
            "  {:<12} {:<14} ({}); quadrature cross-check: {:?}",
            w.label(),
            rep.verdict.as_str(),
            rep.explanation,
            check.agreement,
        );
    }

    println!("\nsynthetic family (1+x^2)^(-q/2), |ψ| ~ x^-q:");
    for q in [1.2, 1.4, 1.6, 2.5] {
        let src = format!("(1+x^2)^-{}", q / 2.0);
        let w = Wavefunction::from_expression(Expression::parse(&src).unwrap(), Units::default())
            .unwrap();
        let rep = classify(&w, 8.0);
        println!(
            "  q = {q}: verdict {:<14} measured exponent {:?}",
            rep.verdict.as_str(),
            rep.right_tail.exponent
        );
    }

    // Radial reduced functions u(r) on the half line face the same
    // criterion against r^{-3/2}.
    println!("\nradial reduced functions u(r):");
    for (src, what) in [
        ("x*exp(-x)", "hydrogen-like 1s"),
        ("x/(1+x^2)", "1/r tail"),
        ("(1+x)^-2", "r^-2 tail"),
    ] {
        let u = Wavefunction::from_raw_parts(
            Expression::parse(src).unwrap(),
            1.0,
            Units::default(),
            src,
        );
        let rep = classify_radial(&u, 4.0);
        println!("  u(r) = {src:<12} ({what}): {}", rep.verdict.as_str());
    }
}
