//! Inverse problem: reconstruct the potential whose ground state is a given
//! nodeless wavefunction, via `V(x) - E₀ = (ħ²/2m) ψ″(x)/ψ(x)`.
//!
//! ψ″ comes from exact second-order jets, never finite differences, so the
//! reconstruction is exact up to floating-point rounding. The constant split
//! between `V` and `E₀` is a gauge choice: `gauge` is the eigenvalue `E₀`
//! implied for the source state, and the default `gauge = 0` emits the
//! potential with the state sitting at zero energy.

use crate::expr::{EvalError, Expression};
use crate::wavefunction::Wavefunction;
use thiserror::Error;

/// Node threshold: the second-derivative ratio is singular where ψ vanishes.
const NODE_THRESHOLD: f64 = 1e-10;

/// A reconstructed potential sampled on a strictly increasing grid.
#[derive(Debug, Clone)]
pub struct PotentialGrid {
    pub points: Vec<(f64, f64)>,
    /// The eigenvalue `E₀` implied for the source state: the returned
    /// potential satisfies `ψ″ + mass_factor·(E₀ - V)ψ = 0`.
    pub gauge_energy: f64,
    pub source_label: String,
}

impl PotentialGrid {
    /// Piecewise-linear interpolation, clamped to the grid edges.
    pub fn interpolate(&self, x: f64) -> f64 {
        let pts = &self.points;
        if x <= pts[0].0 {
            return pts[0].1;
        }
        if x >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let mut lo = 0;
        let mut hi = pts.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if pts[mid].0 <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x0, v0) = pts[lo];
        let (x1, v1) = pts[hi];
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }
}

#[derive(Debug, Clone, Error)]
pub enum InverseError {
    #[error("node in domain: |ψ({x})| = {psi:.3e} is below the threshold {NODE_THRESHOLD:.0e}")]
    NodeInDomain { x: f64, psi: f64 },
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Sample `V(x) = mass_factor⁻¹ ψ″/ψ + gauge` on `n` uniform points.
pub fn reconstruct_potential(
    w: &Wavefunction,
    x_min: f64,
    x_max: f64,
    n: usize,
    gauge: f64,
) -> Result<PotentialGrid, InverseError> {
    if n < 2 {
        return Err(InverseError::InvalidGrid {
            reason: format!("need at least 2 grid points, got {n}"),
        });
    }
    if !(x_min < x_max) {
        return Err(InverseError::InvalidGrid {
            reason: format!("empty window [{x_min}, {x_max}]"),
        });
    }
    let inv_mass = 1.0 / w.units().mass_factor;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let x = x_min + (i as f64 * (x_max - x_min)) / (n - 1) as f64;
        let j = w.jet(x)?;
        if j.value.abs() <= NODE_THRESHOLD {
            return Err(InverseError::NodeInDomain { x, psi: j.value });
        }
        points.push((x, inv_mass * j.d2 / j.value + gauge));
    }
    Ok(PotentialGrid { points, gauge_energy: gauge, source_label: w.label().to_string() })
}

/// Compare the reconstruction against a closed-form candidate potential,
/// gauge-free: the constant offset `E₀` is taken as the median of
/// `candidate - ψ″/ψ` over the grid, and the returned residual is
/// `max |ψ″/ψ - (candidate - E₀)|` on x ∈ [-2, 2].
pub fn reconstruct_symbolic_check(
    w: &Wavefunction,
    candidate_v: &Expression,
    n_points: usize,
) -> Result<f64, InverseError> {
    let (x_min, x_max) = (-2.0, 2.0);
    if n_points < 2 {
        return Err(InverseError::InvalidGrid {
            reason: format!("need at least 2 grid points, got {n_points}"),
        });
    }
    let inv_mass = 1.0 / w.units().mass_factor;
    let mut ratios = Vec::with_capacity(n_points);
    let mut offsets = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let x = x_min + (i as f64 * (x_max - x_min)) / (n_points - 1) as f64;
        let j = w.jet(x)?;
        if j.value.abs() <= NODE_THRESHOLD {
            return Err(InverseError::NodeInDomain { x, psi: j.value });
        }
        let ratio = inv_mass * j.d2 / j.value;
        let cand = candidate_v.eval(x)?;
        ratios.push((ratio, cand));
        offsets.push(cand - ratio);
    }
    offsets.sort_by(f64::total_cmp);
    let e0 = if offsets.len() % 2 == 1 {
        offsets[offsets.len() / 2]
    } else {
        0.5 * (offsets[offsets.len() / 2 - 1] + offsets[offsets.len() / 2])
    };
    Ok(ratios
        .iter()
        .map(|&(ratio, cand)| (ratio - (cand - e0)).abs())
        .fold(0.0, f64::max))
}
