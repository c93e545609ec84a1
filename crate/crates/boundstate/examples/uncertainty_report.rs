//! Moment tables for the catalog states: the gaussian saturates the
//! ħ/2 bound, the quartic sits a little above it, and the extended state
//! has a finite Δp but an infinite Δx — a normalizable state with an
//! infinite uncertainty product.
//!
//! ```bash
//! cargo run -p boundstate --example uncertainty_report
//! ```

use boundstate::observables::uncertainty_report;
use boundstate::quadrature::{ExtendedReal, QuadConfig};
use boundstate::report::fmt_sig;
use boundstate::wavefunction::{catalog, CatalogState};

fn cell(m: &ExtendedReal) -> String {
    match m {
        ExtendedReal::Finite { value, .. } => fmt_sig(*value),
        ExtendedReal::Divergent { .. } => "infinite".into(),
        ExtendedReal::Indeterminate { .. } => "unknown".into(),
    }
}

fn main() {
    let cfg = QuadConfig::default();
    println!(
        "{:<12} {:>16} {:>16} {:>16} {:>16} {:>16}",
        "state", "<x^2>", "<p^2>", "delta x", "delta p", "U [hbar]"
    );
    for name in CatalogState::ALL {
        let w = catalog(name);
        let rep = uncertainty_report(&w, &cfg);
        println!(
            "{:<12} {:>16} {:>16} {:>16} {:>16} {:>16}",
            w.label(),
            cell(&rep.mean_x2),
            cell(&rep.mean_p2),
            cell(&rep.delta_x),
            cell(&rep.delta_p),
            cell(&rep.product_u),
        );
    }

    println!();
    let extended = catalog(CatalogState::Extended);
    let rep = uncertainty_report(&extended, &cfg);
    println!("extended-state diagnostics:");
    println!("  mean_x:  {}", rep.mean_x.diagnostic());
    println!("  mean_x2: {}", rep.mean_x2.diagnostic());
    println!("  notes:   {}", rep.notes);
}
