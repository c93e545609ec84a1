//! Gamma function by the Lanczos approximation (g = 7, 9 coefficients),
//! with the reflection formula for arguments below 1/2.
//!
//! Written generically over [`Real`] so the same code path yields plain
//! values and second-order jets.

use super::jet::Real;

// Coefficient set used by the GNU Scientific Library; relative error of the
// approximation is below 1e-13 on the real axis away from the poles.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// True when `z` sits on a pole of gamma (zero or a negative integer).
pub fn is_gamma_pole(z: f64) -> bool {
    z <= 0.0 && z == z.round()
}

/// Gamma of `z`. The caller must reject poles first (`is_gamma_pole`).
pub fn gamma<T: Real>(z: T) -> T {
    if z.re() < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let pi = T::konst(std::f64::consts::PI);
        let one = T::konst(1.0);
        pi / ((pi * z).sin() * gamma(one - z))
    } else {
        let x = z - T::konst(1.0);
        let mut acc = T::konst(LANCZOS_COEF[0]);
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc = acc + T::konst(c) / (x + T::konst(i as f64));
        }
        let w = x + T::konst(LANCZOS_G + 0.5);
        let sqrt_2pi = T::konst((2.0 * std::f64::consts::PI).sqrt());
        // w^(x + 1/2) via exp/ln; w >= 7 on this branch.
        let p = ((x + T::konst(0.5)) * w.ln()).exp();
        sqrt_2pi * p * (-w).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::jet::Jet2;

    // Reference values: Γ(1/2) = √π and the quarter-integer values used by
    // the closed-form moment expressions, cross-checked below through the
    // recurrence Γ(z+1) = zΓ(z) and the reflection product.
    const GAMMA_QUARTER: f64 = 3.625609908221908;
    const GAMMA_HALF: f64 = 1.772453850905516;
    const GAMMA_THREE_QUARTER: f64 = 1.2254167024651776;
    const GAMMA_FIVE_QUARTER: f64 = 0.9064024770554771;
    const GAMMA_SEVEN_QUARTER: f64 = 0.9190625268488832;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn quarter_integer_values() {
        assert!(rel(gamma(0.25), GAMMA_QUARTER) < 1e-13);
        assert!(rel(gamma(0.5), GAMMA_HALF) < 1e-13);
        assert!(rel(gamma(0.75), GAMMA_THREE_QUARTER) < 1e-13);
        assert!(rel(gamma(1.25), GAMMA_FIVE_QUARTER) < 1e-13);
        assert!(rel(gamma(1.75), GAMMA_SEVEN_QUARTER) < 1e-13);
    }

    #[test]
    fn recurrence_cross_check() {
        // Γ(5/4) = Γ(1/4)/4 and Γ(7/4) = (3/4)Γ(3/4)
        assert!(rel(gamma(1.25), gamma(0.25) / 4.0) < 1e-13);
        assert!(rel(gamma(1.75), 0.75 * gamma(0.75)) < 1e-13);
        for z in [0.6, 1.3, 2.7, 5.5] {
            assert!(rel(gamma(z + 1.0), z * gamma(z)) < 1e-12);
        }
    }

    #[test]
    fn reflection_product() {
        // Γ(1/4)Γ(3/4) = π/sin(π/4) = π√2
        let p = gamma(0.25) * gamma(0.75);
        assert!(rel(p, std::f64::consts::PI * std::f64::consts::SQRT_2) < 1e-13);
    }

    #[test]
    fn integers_and_negatives() {
        assert!(rel(gamma(6.0), 120.0) < 1e-13);
        assert!(rel(gamma(1.0), 1.0) < 1e-13);
        // Γ(-1/2) = -2√π
        assert!(rel(gamma(-0.5), -2.0 * GAMMA_HALF) < 1e-12);
    }

    #[test]
    fn jet_derivatives_match_finite_differences() {
        // Digamma via central differences of the scalar path.
        for z in [0.8, 1.25, 2.5, 4.0] {
            let h = 1e-5;
            let d1 = (gamma(z + h) - gamma(z - h)) / (2.0 * h);
            let d2 = (gamma(z + h) - 2.0 * gamma(z) + gamma(z - h)) / (h * h);
            let j = gamma(Jet2::variable(z));
            assert!(rel(j.value, gamma(z)) < 1e-14);
            assert!((j.d1 - d1).abs() / d1.abs().max(1.0) < 1e-6);
            assert!((j.d2 - d2).abs() / d2.abs().max(1.0) < 1e-4);
        }
    }

    #[test]
    fn pole_detection() {
        assert!(is_gamma_pole(0.0));
        assert!(is_gamma_pole(-3.0));
        assert!(!is_gamma_pole(-2.5));
        assert!(!is_gamma_pole(0.25));
    }
}
