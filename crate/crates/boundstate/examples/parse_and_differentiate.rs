//! Parse expressions and evaluate them together with exact first and
//! second derivatives from forward-mode jets.
//!
//! ```bash
//! cargo run -p boundstate --example parse_and_differentiate
//! ```

use boundstate::expr::Expression;

fn main() {
    let sources = [
        "exp(-x^2/2)",
        "exp(-x^4)",
        "1/sqrt(1+x^2)",
        "(2*x^2-1)/(1+x^2)^2",
        "gamma(5/4)*sin(x)",
    ];
    for src in sources {
        let e = Expression::parse(src).expect("demo sources parse");
        println!("{src}");
        println!("  canonical form: {}", e.render());
        for x in [0.0, 0.5, 1.0] {
            let j = e.eval_jet2(x).expect("smooth at these points");
            println!("  x = {x}: value = {:.12}, d1 = {:.12}, d2 = {:.12}", j.value, j.d1, j.d2);
        }
        println!();
    }

    // The second-derivative ratio behind the inverse problem: for the
    // harmonic ground state, ψ″/ψ = x² - 1 exactly.
    let psi = Expression::parse("exp(-x^2/2)").unwrap();
    println!("ψ = exp(-x^2/2): ψ''/ψ against x^2 - 1");
    for x in [-1.5, 0.3, 2.0] {
        let j = psi.eval_jet2(x).unwrap();
        println!(
            "  x = {x:+}: ψ''/ψ = {:+.15}, x^2 - 1 = {:+.15}",
            j.d2 / j.value,
            x * x - 1.0
        );
    }

    // Malformed input is a structured error, never a crash.
    match Expression::parse("exp(-x^4") {
        Err(err) => println!("\nexpected failure: {err}"),
        Ok(_) => unreachable!(),
    }
}
