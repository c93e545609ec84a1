//! Forward problem: bound states of a confining potential by two-sided
//! Numerov shooting, plus the residual verifier for the zero-energy state
//! that shooting cannot reach.
//!
//! ```bash
//! cargo run -p boundstate --example solve_eigenstates
//! ```

use boundstate::eigensolver::{solve_state, verify_eigenpair, SolverConfig};
use boundstate::expr::Expression;
use boundstate::wavefunction::{catalog, CatalogState};

fn main() {
    println!("harmonic well V = x^2 (spectrum E_n = 2n+1):");
    for n in 0..=4 {
        let pair = solve_state(|x| x * x, n, &SolverConfig::default()).unwrap();
        println!(
            "  n = {n}: E = {:+.9} ({} nodes, matching defect {:.1e})",
            pair.energy, pair.node_count, pair.matching_defect
        );
    }

    println!("\ndouble well V = 16x^6 - 12x^2 (ground state exactly at E = 0):");
    let cfg = SolverConfig {
        x_min: -3.0,
        x_max: 3.0,
        step: 1.0 / 1024.0,
        energy_bracket: (-2.0, 6.0),
        energy_tol: 1e-9,
        max_bisections: 128,
    };
    for n in 0..=2 {
        let pair = solve_state(|x| 16.0 * x.powi(6) - 12.0 * x * x, n, &cfg).unwrap();
        println!(
            "  n = {n}: E = {:+.9} ({} nodes)",
            pair.energy, pair.node_count
        );
    }

    // The shallow well (2x²-1)/(1+x²)² holds exactly one bound state, at
    // the continuum edge E = 0. Its 1/x-decaying eigenfunction gives the
    // shooting method no exponential contrast, so the eigenpair is checked
    // pointwise instead.
    println!("\nthreshold state of V = (2x^2-1)/(1+x^2)^2:");
    let v = Expression::parse("(2*x^2-1)/(1+x^2)^2").unwrap();
    let psi = catalog(CatalogState::Extended);
    let residual = verify_eigenpair(|x| v.eval(x).unwrap(), 0.0, &psi, -10.0, 10.0, 2001).unwrap();
    println!("  residual of (ψ, E = 0) on [-10, 10]: {residual:.3e}");
    let off = verify_eigenpair(|x| v.eval(x).unwrap(), 0.05, &psi, -10.0, 10.0, 2001).unwrap();
    println!("  residual at the wrong energy E = 0.05: {off:.3e} (detects the mismatch)");
}
