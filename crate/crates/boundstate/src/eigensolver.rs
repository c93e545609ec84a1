//! Forward eigenvalue problem for `ψ″ + (E - V(x))ψ = 0` with Dirichlet
//! boundaries: Numerov integration from both box edges, node counting to
//! isolate the requested state, and energy bisection.
//!
//! Threshold states at the continuum edge decay as a power law and give the
//! shooting method no exponential contrast; they are handled by the
//! independent [`verify_eigenpair`] check instead of [`solve_state`].

use crate::expr::EvalError;
use crate::wavefunction::{count_sign_changes, Wavefunction};
use thiserror::Error;

/// Box, step, and energy-search parameters for one solve.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
    pub energy_bracket: (f64, f64),
    pub energy_tol: f64,
    pub max_bisections: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            x_min: -8.0,
            x_max: 8.0,
            step: 1.0 / 512.0,
            energy_bracket: (0.0, 12.0),
            energy_tol: 1e-9,
            max_bisections: 128,
        }
    }
}

impl SolverConfig {
    /// Number of grid intervals; `(x_max - x_min)/step` must be an integer
    /// of at least 100.
    pub fn intervals(&self) -> Result<usize, SolverError> {
        if !(self.step > 0.0) {
            return Err(SolverError::InvalidConfig { reason: format!("step = {}", self.step) });
        }
        if !(self.x_min < self.x_max) {
            return Err(SolverError::InvalidConfig {
                reason: format!("box [{}, {}] is empty", self.x_min, self.x_max),
            });
        }
        let ratio = (self.x_max - self.x_min) / self.step;
        let n = ratio.round();
        if (ratio - n).abs() > 1e-6 {
            return Err(SolverError::InvalidConfig {
                reason: format!("(x_max - x_min)/step = {ratio} is not an integer"),
            });
        }
        if n < 100.0 {
            return Err(SolverError::InvalidConfig {
                reason: format!("grid has only {n} intervals; need at least 100"),
            });
        }
        if !(self.energy_bracket.0 < self.energy_bracket.1) {
            return Err(SolverError::InvalidConfig {
                reason: format!("energy bracket {:?} is empty", self.energy_bracket),
            });
        }
        Ok(n as usize)
    }
}

/// One converged bound state on the grid.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub energy: f64,
    /// Grid samples `(x, ψ)`, normalized by the trapezoid rule, with ψ > 0
    /// at its leftmost interior extremum.
    pub grid: Vec<(f64, f64)>,
    pub node_count: usize,
    /// Largest Numerov three-term defect over the interior, relative to
    /// `max|ψ|` (scaled by h²; essentially the matching-point defect).
    pub residual_norm: f64,
    /// Log-derivative mismatch between the two shooting branches at the
    /// matching point, relative to `max|ψ|`.
    pub matching_defect: f64,
}

#[derive(Debug, Clone, Error)]
pub enum SolverError {
    #[error(
        "energy bracket does not isolate state {requested}: node counts run \
         from {at_lo} at the lower edge to {at_hi} at the upper edge"
    )]
    Bracket { requested: usize, at_lo: usize, at_hi: usize },
    #[error(
        "box too small: |ψ| near the edge is {edge_fraction:.3e} of its peak \
         (limit 1e-6); enlarge the box or use the residual verifier for \
         threshold states"
    )]
    BoxTooSmall { edge_fraction: f64 },
    #[error("no convergence after {bisections} bisections (bracket width {width:.3e})")]
    NoConvergence { bisections: u32, width: f64 },
    #[error("invalid solver configuration: {reason}")]
    InvalidConfig { reason: String },
}

/// Numerov marches `y″ = -g(x) y` across the grid from one end;
/// `g[i] = E - v(x_i)`. Marches from index 0 forward when `forward`, else
/// from the last index backward. Rescales on overflow risk.
///
/// Uses the summed form of the recurrence in the transformed variable
/// `u = (1 + h²g/12) y`, accumulating its first difference instead of
/// evaluating `1 + h²g/12` inside a three-term update: adding the tiny
/// `h²g/12` to 1 quantizes the effective potential at `12ε/h²`, which
/// floors the eigenvalue accuracy at ~1e-10 for fine steps.
fn numerov_sweep(g: &[f64], h: f64, forward: bool) -> Vec<f64> {
    let n = g.len();
    let h2 = h * h;
    let t = |gi: f64| h2 * gi / 12.0;
    let idx: Box<dyn Fn(usize) -> usize> = if forward {
        Box::new(|k| k)
    } else {
        Box::new(move |k| n - 1 - k)
    };
    let mut u = vec![0.0f64; n];
    let seed = 1e-12;
    u[idx(0)] = 0.0;
    u[idx(1)] = (1.0 + t(g[idx(1)])) * seed;
    // diff = u[k+1] - u[k]; u[k+1] - 2u[k] + u[k-1] = -12 t u / (1 + t).
    let mut diff = u[idx(1)] - u[idx(0)];
    for k in 1..n - 1 {
        let i0 = idx(k);
        let ip = idx(k + 1);
        let ti = t(g[i0]);
        diff -= 12.0 * ti / (1.0 + ti) * u[i0];
        u[ip] = u[i0] + diff;
        if u[ip].abs() > 1e200 {
            let s = 1.0 / u[ip].abs();
            for j in 0..=k + 1 {
                u[idx(j)] *= s;
            }
            diff *= s;
        }
    }
    // Back to y = u / (1 + h²g/12).
    (0..n).map(|i| u[i] / (1.0 + t(g[i]))).collect()
}

/// Interior node count of the one-sided sweep at energy `e` (the standard
/// oscillation count: it equals the number of eigenvalues below `e`).
///
/// Counts strict sign changes with no magnitude dead zone: inside a deep
/// forbidden region the sweep dwarfs the well oscillations by hundreds of
/// orders of magnitude, so any relative cutoff would mask genuine nodes.
fn sweep_nodes(v_grid: &[f64], h: f64, e: f64) -> usize {
    let g: Vec<f64> = v_grid.iter().map(|&v| e - v).collect();
    let y = numerov_sweep(&g, h, true);
    count_sign_changes(y[1..y.len() - 1].iter().copied(), 0.0)
}

/// Index of the rightmost classical turning point at energy `e`, clamped
/// inside the grid; the box center when the energy clears the potential
/// everywhere.
fn matching_index(v_grid: &[f64], e: f64) -> usize {
    let npts = v_grid.len();
    let mut m = npts / 2;
    for i in (1..npts - 1).rev() {
        if e - v_grid[i] > 0.0 && e - v_grid[i + 1] <= 0.0 {
            m = i;
            break;
        }
    }
    m.clamp(2, npts - 3)
}

/// Matching determinant of the two shooting branches at index `m`,
/// normalized to a bounded magnitude. Zero exactly at eigenvalues; its sign
/// flips once inside a bracket that isolates a single state, free of the
/// forward sweep's through-barrier roundoff amplification.
fn matching_determinant(v_grid: &[f64], h: f64, e: f64, m: usize) -> f64 {
    let g: Vec<f64> = v_grid.iter().map(|&v| e - v).collect();
    let left = numerov_sweep(&g, h, true);
    let right = numerov_sweep(&g, h, false);
    let w = left[m + 1] * right[m] - left[m] * right[m + 1];
    let scale = left[m].abs().max(left[m + 1].abs()) * right[m].abs().max(right[m + 1].abs());
    if scale == 0.0 {
        return 0.0;
    }
    w / scale
}

/// Find eigenstate `n` of the potential `v` by two-sided Numerov shooting.
///
/// The energy bracket is scanned in 64 panels by node count to isolate the
/// requested state, bisected on the node-count jump, and then refined to
/// `energy_tol` by sign bisection on the matching determinant of the two
/// shooting branches.
pub fn solve_state<V: Fn(f64) -> f64>(
    v: V,
    n: usize,
    cfg: &SolverConfig,
) -> Result<Eigenpair, SolverError> {
    let intervals = cfg.intervals()?;
    let npts = intervals + 1;
    let h = (cfg.x_max - cfg.x_min) / intervals as f64;
    let xs: Vec<f64> = (0..npts)
        .map(|i| cfg.x_min + (i as f64 * (cfg.x_max - cfg.x_min)) / intervals as f64)
        .collect();
    let v_grid: Vec<f64> = xs.iter().map(|&x| v(x)).collect();
    if let Some(&bad) = v_grid.iter().find(|t| !t.is_finite()) {
        return Err(SolverError::InvalidConfig {
            reason: format!("potential evaluates to {bad} inside the box"),
        });
    }

    // Panel scan: find the node-count transition n -> n+1.
    let (e_lo, e_hi) = cfg.energy_bracket;
    const PANELS: usize = 64;
    let mut lo = e_lo;
    let mut hi = f64::NAN;
    let mut prev_nodes = sweep_nodes(&v_grid, h, e_lo);
    let at_lo = prev_nodes;
    if prev_nodes > n {
        let at_hi = sweep_nodes(&v_grid, h, e_hi);
        return Err(SolverError::Bracket { requested: n, at_lo, at_hi });
    }
    for j in 1..=PANELS {
        let e = e_lo + (j as f64 * (e_hi - e_lo)) / PANELS as f64;
        let nodes = sweep_nodes(&v_grid, h, e);
        if prev_nodes <= n && nodes > n {
            lo = e_lo + ((j - 1) as f64 * (e_hi - e_lo)) / PANELS as f64;
            hi = e;
            break;
        }
        prev_nodes = nodes;
    }
    if hi.is_nan() {
        let at_hi = sweep_nodes(&v_grid, h, e_hi);
        return Err(SolverError::Bracket { requested: n, at_lo, at_hi });
    }

    // Stage 1 — node-count bisection: narrow the bracket to the jump
    // n -> n+1 until it is tight and holds exactly one state. The forward
    // sweep's node count resolves the eigenvalue only down to its roundoff
    // floor, so stop this stage a little above the tolerance when a
    // matching-based refinement can take over.
    let mut used = 0u32;
    let node_floor = cfg.energy_tol.max(1e-7 * (e_hi.abs().max(e_lo.abs()).max(1.0)));
    let exactly_isolated = |lo: f64, hi: f64| {
        sweep_nodes(&v_grid, h, lo) == n && sweep_nodes(&v_grid, h, hi) == n + 1
    };
    while hi - lo > node_floor || !exactly_isolated(lo, hi) {
        if used >= cfg.max_bisections {
            return Err(SolverError::NoConvergence { bisections: used, width: hi - lo });
        }
        if hi - lo <= cfg.energy_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sweep_nodes(&v_grid, h, mid) > n {
            hi = mid;
        } else {
            lo = mid;
        }
        used += 1;
    }

    // Stage 2 — sign bisection on the two-sided matching determinant at a
    // fixed matching point. Falls back to the node bracket when the
    // determinant does not change sign across it.
    if hi - lo > cfg.energy_tol {
        let m = matching_index(&v_grid, 0.5 * (lo + hi));
        let mut w_lo = matching_determinant(&v_grid, h, lo, m);
        let w_hi = matching_determinant(&v_grid, h, hi, m);
        if w_lo == 0.0 {
            hi = lo;
        } else if w_hi == 0.0 {
            lo = hi;
        } else if w_lo.signum() != w_hi.signum() {
            while hi - lo > cfg.energy_tol {
                if used >= cfg.max_bisections {
                    return Err(SolverError::NoConvergence { bisections: used, width: hi - lo });
                }
                let mid = 0.5 * (lo + hi);
                let w_mid = matching_determinant(&v_grid, h, mid, m);
                if w_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if w_mid.signum() == w_lo.signum() {
                    lo = mid;
                    w_lo = w_mid;
                } else {
                    hi = mid;
                }
                used += 1;
            }
        } else {
            // Degenerate-looking bracket: finish on node counts alone.
            while hi - lo > cfg.energy_tol {
                if used >= cfg.max_bisections {
                    return Err(SolverError::NoConvergence { bisections: used, width: hi - lo });
                }
                let mid = 0.5 * (lo + hi);
                if sweep_nodes(&v_grid, h, mid) > n {
                    hi = mid;
                } else {
                    lo = mid;
                }
                used += 1;
            }
        }
    }
    let energy = 0.5 * (lo + hi);

    assemble(&xs, &v_grid, h, energy, n)
}

/// Build the normalized two-sided eigenfunction at the accepted energy.
fn assemble(
    xs: &[f64],
    v_grid: &[f64],
    h: f64,
    energy: f64,
    n: usize,
) -> Result<Eigenpair, SolverError> {
    let npts = xs.len();
    let g: Vec<f64> = v_grid.iter().map(|&v| energy - v).collect();
    let m = matching_index(v_grid, energy);

    let left = numerov_sweep(&g, h, true);
    let right = numerov_sweep(&g, h, false);
    let scale = if right[m] != 0.0 { left[m] / right[m] } else { 1.0 };

    let mut psi: Vec<f64> = (0..npts)
        .map(|i| if i <= m { left[i] } else { scale * right[i] })
        .collect();

    // Log-derivative mismatch at the matching point, from the two branches'
    // own central differences.
    let dl = (left[m + 1] - left[m - 1]) / (2.0 * h);
    let dr = scale * (right[m + 1] - right[m - 1]) / (2.0 * h);
    let peak = psi.iter().fold(0.0f64, |acc, &t| acc.max(t.abs()));
    let matching_defect = if peak > 0.0 { (dl - dr).abs() / peak } else { f64::INFINITY };

    // Trapezoid normalization.
    let mut norm2 = 0.0;
    for i in 0..npts - 1 {
        norm2 += 0.5 * h * (psi[i] * psi[i] + psi[i + 1] * psi[i + 1]);
    }
    let inv = 1.0 / norm2.sqrt();
    for t in psi.iter_mut() {
        *t *= inv;
    }
    let peak = peak * inv;

    // Sign convention: positive at the leftmost interior extremum.
    let mut flip = false;
    for i in 1..npts - 1 {
        if psi[i].abs() > 1e-3 * peak
            && psi[i].abs() >= psi[i - 1].abs()
            && psi[i].abs() >= psi[i + 1].abs()
        {
            flip = psi[i] < 0.0;
            break;
        }
    }
    if flip {
        for t in psi.iter_mut() {
            *t = -*t;
        }
    }

    // Box check: the state must be bound well inside the box.
    let edge_fraction = psi[1].abs().max(psi[npts - 2].abs()) / peak;
    if edge_fraction > 1e-6 {
        return Err(SolverError::BoxTooSmall { edge_fraction });
    }

    let node_count = count_sign_changes(psi[1..npts - 1].iter().copied(), 1e-9 * peak);
    debug_assert_eq!(node_count, n, "oscillation count drifted during assembly");

    // Numerov-form residual over the interior (scaled by h²): zero to
    // rounding away from the matching point, the defect at it.
    let h2 = h * h;
    let w = |gi: f64| 1.0 + h2 * gi / 12.0;
    let mut residual_norm = 0.0f64;
    for i in 1..npts - 1 {
        let r = w(g[i + 1]) * psi[i + 1] - 2.0 * (1.0 - 5.0 * h2 * g[i] / 12.0) * psi[i]
            + w(g[i - 1]) * psi[i - 1];
        residual_norm = residual_norm.max(r.abs());
    }
    residual_norm /= peak;

    Ok(Eigenpair {
        energy,
        grid: xs.iter().copied().zip(psi).collect(),
        node_count,
        residual_norm,
        matching_defect,
    })
}

/// Pointwise residual check of a candidate eigenpair, independent of the
/// shooting machinery: `max |ψ″ + mass_factor·(E - V)ψ|` over `n` uniform
/// grid points, with ψ″ from exact jets. This is the route for threshold
/// (zero-energy) states that shooting cannot resolve.
pub fn verify_eigenpair<V: Fn(f64) -> f64>(
    v: V,
    energy: f64,
    psi: &Wavefunction,
    x_min: f64,
    x_max: f64,
    n: usize,
) -> Result<f64, EvalError> {
    assert!(n >= 2 && x_min < x_max, "verification grid is degenerate");
    let mf = psi.units().mass_factor;
    let mut worst = 0.0f64;
    for i in 0..n {
        let x = x_min + (i as f64 * (x_max - x_min)) / (n - 1) as f64;
        let j = psi.jet(x)?;
        let r = j.d2 + mf * (energy - v(x)) * j.value;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefunction::{catalog, CatalogState};

    fn harmonic_cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn config_validation() {
        let mut cfg = SolverConfig::default();
        assert_eq!(cfg.intervals().unwrap(), 8192);
        cfg.step = 0.3;
        assert!(matches!(cfg.intervals(), Err(SolverError::InvalidConfig { .. })));
        cfg.step = 1.0 / 512.0;
        cfg.energy_bracket = (5.0, 1.0);
        assert!(matches!(cfg.intervals(), Err(SolverError::InvalidConfig { .. })));
    }

    #[test]
    fn harmonic_ground_state() {
        let pair = solve_state(|x| x * x, 0, &harmonic_cfg()).unwrap();
        assert!((pair.energy - 1.0).abs() < 1e-6, "E0 = {}", pair.energy);
        assert_eq!(pair.node_count, 0);
        assert!(pair.matching_defect < 1e-6, "defect {}", pair.matching_defect);
    }

    #[test]
    fn harmonic_ladder() {
        for n in 0..=4 {
            let pair = solve_state(|x| x * x, n, &harmonic_cfg()).unwrap();
            let want = (2 * n + 1) as f64;
            assert!(
                (pair.energy - want).abs() < 1e-6,
                "E_{n} = {}, want {want}",
                pair.energy
            );
            assert_eq!(pair.node_count, n);
        }
    }

    #[test]
    fn harmonic_eigenfunction_matches_gaussian() {
        let pair = solve_state(|x| x * x, 0, &harmonic_cfg()).unwrap();
        let exact = catalog(CatalogState::Gaussian);
        let worst = pair
            .grid
            .iter()
            .map(|&(x, p)| (p - exact.value(x).unwrap()).abs())
            .fold(0.0f64, f64::max);
        assert!(worst < 1e-6, "max deviation {worst}");
    }

    #[test]
    fn eigenfunctions_are_trapezoid_normalized() {
        for n in [0usize, 3] {
            let pair = solve_state(|x| x * x, n, &harmonic_cfg()).unwrap();
            let h = pair.grid[1].0 - pair.grid[0].0;
            let mut norm2 = 0.0;
            for w in pair.grid.windows(2) {
                norm2 += 0.5 * h * (w[0].1 * w[0].1 + w[1].1 * w[1].1);
            }
            assert!((norm2 - 1.0).abs() <= 1e-8, "n = {n}: ∫ψ² = {norm2}");
            assert!(pair.residual_norm < 1e-6, "n = {n}: residual {}", pair.residual_norm);
        }
    }

    #[test]
    fn eigenfunction_parity() {
        for n in 0..=3 {
            let pair = solve_state(|x| x * x, n, &harmonic_cfg()).unwrap();
            let npts = pair.grid.len();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let worst = (0..npts)
                .map(|i| (pair.grid[i].1 - sign * pair.grid[npts - 1 - i].1).abs())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-6, "n = {n}: parity defect {worst}");
        }
    }

    #[test]
    fn double_well_ground_state_at_zero() {
        let cfg = SolverConfig {
            x_min: -3.0,
            x_max: 3.0,
            step: 1.0 / 1024.0,
            energy_bracket: (-2.0, 2.0),
            energy_tol: 1e-9,
            max_bisections: 128,
        };
        let pair = solve_state(|x| 16.0 * x.powi(6) - 12.0 * x * x, 0, &cfg).unwrap();
        assert!(pair.energy.abs() < 1e-3, "E0 = {}", pair.energy);
        assert_eq!(pair.node_count, 0);
        // The solved state should track e^{-x^4} on the grid.
        let exact = catalog(CatalogState::Quartic);
        let worst = pair
            .grid
            .iter()
            .map(|&(x, p)| (p - exact.value(x).unwrap()).abs())
            .fold(0.0f64, f64::max);
        assert!(worst < 1e-4, "max deviation {worst}");
    }

    #[test]
    fn numerov_is_at_least_fourth_order() {
        // Eigenvalue error must fall at least 4 orders per step halving
        // between h = 1/128 and h = 1/512, measured on E_4 = 9. The box is
        // kept at [-7, 7]: wide enough for the state (edge fraction ~1e-7),
        // narrow enough that through-barrier roundoff amplification stays
        // below the h^4 discretization error being measured.
        let exact = 9.0;
        let mut errs = Vec::new();
        for denom in [128.0, 512.0] {
            let cfg = SolverConfig {
                x_min: -7.0,
                x_max: 7.0,
                step: 1.0 / denom,
                energy_bracket: (8.0, 10.0),
                energy_tol: 1e-13,
                max_bisections: 200,
            };
            let pair = solve_state(|x| x * x, 4, &cfg).unwrap();
            errs.push((pair.energy - exact).abs().max(1e-14));
        }
        let slope = (errs[0] / errs[1]).ln() / (4.0f64).ln();
        assert!(slope >= 4.0, "order slope {slope} from errors {errs:?}");
    }

    #[test]
    fn bracket_errors_report_node_counts() {
        // E in [20, 30] brackets states 10..14 of the harmonic well, not 0.
        let cfg = SolverConfig {
            energy_bracket: (20.0, 30.0),
            ..SolverConfig::default()
        };
        match solve_state(|x| x * x, 0, &cfg) {
            Err(SolverError::Bracket { requested, at_lo, at_hi }) => {
                assert_eq!(requested, 0);
                assert!(at_lo >= 10, "{at_lo}");
                assert!(at_hi >= at_lo);
            }
            other => panic!("expected bracket error, got {other:?}"),
        }
    }

    #[test]
    fn box_too_small_is_detected() {
        // A 100-interval box of half-width 1.6 truncates the n = 4 state badly.
        let cfg = SolverConfig {
            x_min: -1.6,
            x_max: 1.6,
            step: 3.2 / 128.0,
            energy_bracket: (8.0, 11.0),
            energy_tol: 1e-9,
            max_bisections: 128,
        };
        match solve_state(|x| x * x, 4, &cfg) {
            Err(SolverError::BoxTooSmall { .. }) | Err(SolverError::Bracket { .. }) => {}
            other => panic!("expected failure on truncated box, got {other:?}"),
        }
    }

    #[test]
    fn threshold_eigenpair_verifies_without_shooting() {
        // The extended state with its shallow well at E = 0.
        let w = catalog(CatalogState::Extended);
        let v = |x: f64| (2.0 * x * x - 1.0) / (1.0 + x * x).powi(2);
        let r = verify_eigenpair(v, 0.0, &w, -10.0, 10.0, 2001).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn verify_detects_wrong_energy() {
        let w = catalog(CatalogState::Gaussian);
        let ok = verify_eigenpair(|x| x * x, 1.0, &w, -6.0, 6.0, 1201).unwrap();
        assert!(ok < 1e-10, "residual {ok}");
        let off = verify_eigenpair(|x| x * x, 1.1, &w, -6.0, 6.0, 1201).unwrap();
        let peak = w.value(0.0).unwrap();
        assert!(
            (off - 0.1 * peak).abs() < 1e-3,
            "off-energy residual {off} vs 0.1·max|ψ| = {}",
            0.1 * peak
        );
    }
}
