//! Inverse ⇄ forward round trip: reconstruct the potential from a known
//! ground state, hand the sampled grid (linear interpolation) to the
//! shooting solver, and require the solved eigenfunction to land back on
//! the original state.

use boundstate::eigensolver::{solve_state, SolverConfig};
use boundstate::inverse::reconstruct_potential;
use boundstate::wavefunction::{catalog, CatalogState};

fn max_grid_deviation(
    pair: &boundstate::eigensolver::Eigenpair,
    w: &boundstate::wavefunction::Wavefunction,
) -> f64 {
    pair.grid
        .iter()
        .map(|&(x, p)| (p - w.value(x).unwrap()).abs())
        .fold(0.0f64, f64::max)
}

#[test]
fn gaussian_round_trip() {
    let w = catalog(CatalogState::Gaussian);
    // |ψ| stays above the node threshold out to x ≈ 6.7; reconstruct on
    // [-6, 6] and solve in the same box.
    let grid = reconstruct_potential(&w, -6.0, 6.0, 1201, 0.0).unwrap();
    let cfg = SolverConfig {
        x_min: -6.0,
        x_max: 6.0,
        step: 12.0 / 6144.0,
        energy_bracket: (-1.0, 1.0),
        energy_tol: 1e-10,
        max_bisections: 128,
    };
    let pair = solve_state(|x| grid.interpolate(x), 0, &cfg).unwrap();
    assert!(pair.energy.abs() < 1e-4, "E0 = {} (gauge puts it at 0)", pair.energy);
    let worst = max_grid_deviation(&pair, &w);
    assert!(worst < 1e-4, "max |ψ_solved - ψ| = {worst}");
}

#[test]
fn quartic_round_trip() {
    let w = catalog(CatalogState::Quartic);
    // e^{-x^4} dips below the node threshold past |x| ≈ 2.2.
    let grid = reconstruct_potential(&w, -2.1, 2.1, 4201, 0.0).unwrap();
    let cfg = SolverConfig {
        x_min: -2.1,
        x_max: 2.1,
        step: 4.2 / 4200.0,
        energy_bracket: (-1.0, 1.0),
        energy_tol: 1e-10,
        max_bisections: 128,
    };
    let pair = solve_state(|x| grid.interpolate(x), 0, &cfg).unwrap();
    assert!(pair.energy.abs() < 1e-3, "E0 = {}", pair.energy);
    let worst = max_grid_deviation(&pair, &w);
    assert!(worst < 1e-4, "max |ψ_solved - ψ| = {worst}");
}
