//! Second-order forward-mode jets: a value together with its first and
//! second derivative, propagated exactly through arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// A 2-jet: `(f, f', f'')` evaluated at a point.
///
/// Arithmetic on jets follows the exact chain/product/quotient rules, so any
/// composite built from the operators and methods below carries exact
/// derivatives (up to floating-point rounding), never finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    /// Function value.
    pub value: f64,
    /// First derivative.
    pub d1: f64,
    /// Second derivative.
    pub d2: f64,
}

impl Jet2 {
    /// Jet of a constant: zero derivatives.
    pub fn constant(c: f64) -> Self {
        Jet2 { value: c, d1: 0.0, d2: 0.0 }
    }

    /// Jet of the independent variable at `x`: derivative one.
    pub fn variable(x: f64) -> Self {
        Jet2 { value: x, d1: 1.0, d2: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// Chain rule through a scalar function with known derivatives at `self.value`.
    fn chain(self, f: f64, df: f64, ddf: f64) -> Self {
        Jet2 {
            value: f,
            d1: df * self.d1,
            d2: ddf * self.d1 * self.d1 + df * self.d2,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    /// Natural logarithm; caller guarantees `value > 0`.
    pub fn ln(self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    /// Square root; caller guarantees `value > 0`.
    pub fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.value))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn atan(self) -> Self {
        let v = self.value;
        let den = 1.0 + v * v;
        self.chain(v.atan(), 1.0 / den, -2.0 * v / (den * den))
    }

    /// Power with constant exponent; caller guarantees the combination of
    /// base value and exponent is in-domain (see the evaluator).
    pub fn powf_const(self, n: f64) -> Self {
        if n == 0.0 {
            return Jet2::constant(1.0);
        }
        if n == 1.0 {
            return self;
        }
        let v = self.value;
        if v == 0.0 {
            // n >= 2 (checked by the caller): only the quadratic term survives.
            let d2 = if n == 2.0 { 2.0 * self.d1 * self.d1 } else { 0.0 };
            return Jet2 { value: 0.0, d1: 0.0, d2 };
        }
        let f = powf_signed(v, n);
        let f1 = n * powf_signed(v, n - 1.0);
        let f2 = n * (n - 1.0) * powf_signed(v, n - 2.0);
        self.chain(f, f1, f2)
    }

    /// General power with jet exponent; caller guarantees `value > 0`.
    pub fn pow_jet(self, e: Jet2) -> Self {
        (e * self.ln()).exp()
    }
}

/// `v^n` for possibly negative `v` with integer `n` (sign tracked explicitly);
/// for non-integer `n` the caller has already ensured `v > 0`.
fn powf_signed(v: f64, n: f64) -> f64 {
    if v < 0.0 {
        let mag = (-v).powf(n);
        if (n.rem_euclid(2.0) - 1.0).abs() < 0.5 {
            -mag
        } else {
            mag
        }
    } else {
        v.powf(n)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { value: self.value + o.value, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { value: self.value - o.value, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        let q = self.value / o.value;
        let d1 = (self.d1 - q * o.d1) / o.value;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - q * o.d2) / o.value;
        Jet2 { value: q, d1, d2 }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { value: -self.value, d1: -self.d1, d2: -self.d2 }
    }
}

/// Scalar abstraction shared by plain `f64` evaluation and jet propagation,
/// so numeric kernels (notably the gamma function) are written once.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn konst(c: f64) -> Self;
    /// The underlying point value.
    fn re(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
}

impl Real for f64 {
    fn konst(c: f64) -> Self {
        c
    }
    fn re(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
}

impl Real for Jet2 {
    fn konst(c: f64) -> Self {
        Jet2::constant(c)
    }
    fn re(self) -> f64 {
        self.value
    }
    fn exp(self) -> Self {
        Jet2::exp(self)
    }
    fn ln(self) -> Self {
        Jet2::ln(self)
    }
    fn sin(self) -> Self {
        Jet2::sin(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn product_rule() {
        let x = Jet2::variable(1.3);
        let f = x * x * x; // x^3
        assert!(close(f.value, 1.3f64.powi(3), 1e-15));
        assert!(close(f.d1, 3.0 * 1.3f64.powi(2), 1e-15));
        assert!(close(f.d2, 6.0 * 1.3, 1e-15));
    }

    #[test]
    fn quotient_rule() {
        // f = x / (1 + x^2), f' = (1 - x^2)/(1+x^2)^2
        let xv = 0.7;
        let x = Jet2::variable(xv);
        let f = x / (Jet2::constant(1.0) + x * x);
        let den = 1.0 + xv * xv;
        assert!(close(f.value, xv / den, 1e-15));
        assert!(close(f.d1, (1.0 - xv * xv) / (den * den), 1e-15));
        let d2 = 2.0 * xv * (xv * xv - 3.0) / (den * den * den);
        assert!(close(f.d2, d2, 1e-14));
    }

    #[test]
    fn exp_chain() {
        // f = exp(-x^2/2): f'' = (x^2 - 1) f
        let xv = 0.9;
        let x = Jet2::variable(xv);
        let f = (-(x * x) / Jet2::constant(2.0)).exp();
        let fv = (-xv * xv / 2.0).exp();
        assert!(close(f.value, fv, 1e-15));
        assert!(close(f.d1, -xv * fv, 1e-15));
        assert!(close(f.d2, (xv * xv - 1.0) * fv, 1e-14));
    }

    #[test]
    fn pow_const_negative_base_integer_exponent() {
        let x = Jet2::variable(-2.0);
        let f = x.powf_const(3.0);
        assert!(close(f.value, -8.0, 1e-15));
        assert!(close(f.d1, 12.0, 1e-15));
        assert!(close(f.d2, -12.0, 1e-15));
    }

    #[test]
    fn pow_jet_exponent() {
        // f = x^x at x=2: f' = f (ln x + 1), f'' = f ((ln x + 1)^2 + 1/x)
        let xv = 2.0;
        let x = Jet2::variable(xv);
        let f = x.pow_jet(x);
        let fv = 4.0;
        let l = xv.ln() + 1.0;
        assert!(close(f.value, fv, 1e-14));
        assert!(close(f.d1, fv * l, 1e-14));
        assert!(close(f.d2, fv * (l * l + 1.0 / xv), 1e-14));
    }
}
