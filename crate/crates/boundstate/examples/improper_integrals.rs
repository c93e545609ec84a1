//! Improper integrals come back classified, not crashed: finite with an
//! error bound, divergent with a diagnostic, or honestly indeterminate.
//!
//! ```bash
//! cargo run -p boundstate --example improper_integrals
//! ```

use boundstate::quadrature::{
    integrate_finite, integrate_half_line, integrate_real_line, integrate_real_line_with,
    tail_exponent, QuadConfig, Side,
};

fn show(name: &str, r: &boundstate::quadrature::ExtendedReal) {
    println!("  {name}: {r:?}");
}

fn main() {
    let tol = 1e-8;

    println!("endpoint singularities on (0, 1]:");
    show("∫ x^-1/2 (finite, = 2)", &integrate_finite(|x| x.powf(-0.5), 0.0, 1.0, tol));
    show("∫ 1/x   (divergent)", &integrate_finite(|x| 1.0 / x, 0.0, 1.0, tol));

    println!("\npower tails on [1, ∞): convergent only above 1/x");
    for beta in [0.5, 1.0, 1.5, 2.0, 3.0] {
        show(
            &format!("∫ x^-{beta}"),
            &integrate_half_line(move |x| x.powf(-beta), 1.0, tol),
        );
    }

    println!("\nfull-line integrals under symmetric limits:");
    show("∫ e^-x²  (= √π)", &integrate_real_line(|x| (-x * x).exp(), tol));
    show(
        "∫ x²/(π(1+x²))  (divergent second moment)",
        &integrate_real_line(|x| x * x / (std::f64::consts::PI * (1.0 + x * x)), tol),
    );
    show(
        "∫ x/(π(1+x²))  (principal value)",
        &integrate_real_line(|x| x / (std::f64::consts::PI * (1.0 + x * x)), tol),
    );
    show(
        "∫ x/(1+x²)²  (absolutely convergent odd integrand)",
        &integrate_real_line(|x| x / (1.0 + x * x).powi(2), tol),
    );

    println!("\nstrict mode refuses the symmetric-limit cancellation:");
    let mut strict = QuadConfig::with_tol(tol);
    strict.strict = true;
    show(
        "∫ x/(π(1+x²)) [strict]",
        &integrate_real_line_with(|x| x / (std::f64::consts::PI * (1.0 + x * x)), &strict),
    );

    println!("\nmeasured tail exponents:");
    for (name, f) in [
        ("x^-2", Box::new(|x: f64| x.powi(-2)) as Box<dyn Fn(f64) -> f64>),
        ("gaussian", Box::new(|x: f64| (-x * x).exp())),
        ("1/√(π(1+x²))", Box::new(|x: f64| 1.0 / (std::f64::consts::PI * (1.0 + x * x)).sqrt())),
    ] {
        let m = tail_exponent(f, Side::Right, 8.0);
        println!("  {name}: {:?} (fit residual {:.2e})", m.exponent, m.fit_residual);
    }
}
