//! A small expression language for real functions of one variable `x`,
//! with exact first and second derivatives via forward-mode jets.
//!
//! Expressions are immutable after parsing and all evaluation is pure, so
//! values can be shared freely across threads.

mod gamma;
mod jet;
mod parser;

pub use gamma::{gamma, is_gamma_pole};
pub use jet::{Jet2, Real};

use thiserror::Error;

/// Unary functions admitted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Atan,
    Abs,
    Gamma,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Abs => "abs",
            Func::Gamma => "gamma",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "atan" => Func::Atan,
            "abs" => Func::Abs,
            "gamma" => Func::Gamma,
            _ => return None,
        })
    }
}

/// Abstract syntax of an expression.
///
/// `Number` literals are non-negative by construction (the sign lives in a
/// `Neg` node); the canonical renderer relies on this.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Number(f64),
    Var,
    Pi,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn render(&self) -> String {
        let mut out = String::new();
        parser::render_node(self, &mut out, 0);
        out
    }

    fn contains_var(&self) -> bool {
        match self {
            Node::Number(_) | Node::Pi => false,
            Node::Var => true,
            Node::Neg(c) | Node::Call(_, c) => c.contains_var(),
            Node::Add(l, r)
            | Node::Sub(l, r)
            | Node::Mul(l, r)
            | Node::Div(l, r)
            | Node::Pow(l, r) => l.contains_var() || r.contains_var(),
        }
    }
}

/// Parse failure: either malformed syntax or a name outside the whitelist.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier '{name}' at byte {position}")]
    UnknownIdentifier { name: String, position: usize },
}

/// Evaluation failure at a concrete point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error in '{subexpr}' at x = {x}: {reason}")]
    Domain { subexpr: String, x: f64, reason: String },
    #[error("derivative undefined in '{subexpr}' at x = {x}: {reason}")]
    DerivativeUndefined { subexpr: String, x: f64, reason: String },
}

/// Side conditions noted during evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalFlags {
    /// A `0^0` subterm was evaluated as 1.
    pub zero_pow_zero: bool,
}

/// A parsed expression in the variable `x`.
///
/// The original source text is retained for display; [`Expression::render`]
/// produces the canonical form whose re-parse is structurally identical.
#[derive(Debug, Clone)]
pub struct Expression {
    root: Node,
    source: String,
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl std::fmt::Display for Expression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.source)
    }
}

impl std::str::FromStr for Expression {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expression::parse(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Value,
    Jet,
}

impl Expression {
    pub fn parse(source: &str) -> Result<Expression, ParseError> {
        let root = parser::parse_source(source)?;
        Ok(Expression { root, source: source.to_string() })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Node {
        &self.root
    }

    /// Canonical text form; re-parsing it yields a structurally identical tree.
    pub fn render(&self) -> String {
        self.root.render()
    }

    /// Evaluate at `x` in IEEE double precision. Out-of-domain points give
    /// an error, never a silent NaN.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let mut flags = EvalFlags::default();
        eval_node::<f64>(&self.root, x, Mode::Value, &mut flags)
    }

    /// As [`eval`](Self::eval), also reporting evaluation side conditions.
    pub fn eval_with_flags(&self, x: f64) -> Result<(f64, EvalFlags), EvalError> {
        let mut flags = EvalFlags::default();
        let v = eval_node::<f64>(&self.root, x, Mode::Value, &mut flags)?;
        Ok((v, flags))
    }

    /// Value, first and second derivative at `x` by exact forward-mode
    /// propagation through every node; no finite differencing.
    pub fn eval_jet2(&self, x: f64) -> Result<Jet2, EvalError> {
        let mut flags = EvalFlags::default();
        eval_node::<Jet2>(&self.root, x, Mode::Jet, &mut flags)
    }
}

trait EvalScalar: Real {
    fn seed(x: f64) -> Self;
    fn abs_val(self) -> Self;
    fn pow_const(self, n: f64) -> Self;
    fn pow_var(self, e: Self) -> Self;
    fn sqrt_val(self) -> Self;
    fn cos_val(self) -> Self;
    fn tan_val(self) -> Self;
    fn atan_val(self) -> Self;
}

impl EvalScalar for f64 {
    fn seed(x: f64) -> Self {
        x
    }
    fn abs_val(self) -> Self {
        self.abs()
    }
    fn pow_const(self, n: f64) -> Self {
        if self < 0.0 {
            let mag = (-self).powf(n);
            if (n.rem_euclid(2.0) - 1.0).abs() < 0.5 {
                -mag
            } else {
                mag
            }
        } else {
            self.powf(n)
        }
    }
    fn pow_var(self, e: Self) -> Self {
        self.powf(e)
    }
    fn sqrt_val(self) -> Self {
        self.sqrt()
    }
    fn cos_val(self) -> Self {
        self.cos()
    }
    fn tan_val(self) -> Self {
        self.tan()
    }
    fn atan_val(self) -> Self {
        self.atan()
    }
}

impl EvalScalar for Jet2 {
    fn seed(x: f64) -> Self {
        Jet2::variable(x)
    }
    fn abs_val(self) -> Self {
        if self.value >= 0.0 {
            self
        } else {
            -self
        }
    }
    fn pow_const(self, n: f64) -> Self {
        self.powf_const(n)
    }
    fn pow_var(self, e: Self) -> Self {
        self.pow_jet(e)
    }
    fn sqrt_val(self) -> Self {
        self.sqrt()
    }
    fn cos_val(self) -> Self {
        self.cos()
    }
    fn tan_val(self) -> Self {
        self.tan()
    }
    fn atan_val(self) -> Self {
        self.atan()
    }
}

fn domain_err(node: &Node, x: f64, reason: impl Into<String>) -> EvalError {
    EvalError::Domain { subexpr: node.render(), x, reason: reason.into() }
}

fn deriv_err(node: &Node, x: f64, reason: impl Into<String>) -> EvalError {
    EvalError::DerivativeUndefined { subexpr: node.render(), x, reason: reason.into() }
}

fn eval_node<T: EvalScalar>(
    node: &Node,
    x: f64,
    mode: Mode,
    flags: &mut EvalFlags,
) -> Result<T, EvalError> {
    match node {
        Node::Number(v) => Ok(T::konst(*v)),
        Node::Pi => Ok(T::konst(std::f64::consts::PI)),
        Node::Var => Ok(T::seed(x)),
        Node::Neg(c) => Ok(-eval_node::<T>(c, x, mode, flags)?),
        Node::Add(l, r) => {
            Ok(eval_node::<T>(l, x, mode, flags)? + eval_node::<T>(r, x, mode, flags)?)
        }
        Node::Sub(l, r) => {
            Ok(eval_node::<T>(l, x, mode, flags)? - eval_node::<T>(r, x, mode, flags)?)
        }
        Node::Mul(l, r) => {
            Ok(eval_node::<T>(l, x, mode, flags)? * eval_node::<T>(r, x, mode, flags)?)
        }
        Node::Div(l, r) => {
            let num = eval_node::<T>(l, x, mode, flags)?;
            let den = eval_node::<T>(r, x, mode, flags)?;
            if den.re() == 0.0 {
                return Err(domain_err(node, x, "division by zero"));
            }
            Ok(num / den)
        }
        Node::Pow(b, e) => {
            let base = eval_node::<T>(b, x, mode, flags)?;
            if e.contains_var() {
                if base.re() <= 0.0 {
                    return Err(domain_err(
                        node,
                        x,
                        "non-constant exponent requires a positive base",
                    ));
                }
                let exponent = eval_node::<T>(e, x, mode, flags)?;
                return Ok(base.pow_var(exponent));
            }
            let n = eval_node::<f64>(e, x, Mode::Value, flags)?;
            let v = base.re();
            if v == 0.0 {
                if n == 0.0 {
                    flags.zero_pow_zero = true;
                    return Ok(T::konst(1.0));
                }
                if n < 0.0 {
                    return Err(domain_err(node, x, "zero base with negative exponent"));
                }
                // At a zero base the first derivative blows up for 0 < n < 1
                // and the second for 1 < n < 2; n = 1 passes through exactly.
                if mode == Mode::Jet && n != 1.0 && n < 2.0 {
                    return Err(deriv_err(node, x, "power of zero with exponent below 2"));
                }
            } else if v < 0.0 && n.fract() != 0.0 {
                return Err(domain_err(node, x, "fractional power of a negative base"));
            }
            Ok(base.pow_const(n))
        }
        Node::Call(f, arg) => {
            let a = eval_node::<T>(arg, x, mode, flags)?;
            let v = a.re();
            match f {
                Func::Exp => Ok(a.exp()),
                Func::Log => {
                    if v <= 0.0 {
                        return Err(domain_err(node, x, "log of a non-positive value"));
                    }
                    Ok(a.ln())
                }
                Func::Sqrt => {
                    if v < 0.0 {
                        return Err(domain_err(node, x, "square root of a negative value"));
                    }
                    if v == 0.0 {
                        if mode == Mode::Jet {
                            return Err(deriv_err(node, x, "square root at zero"));
                        }
                        return Ok(T::konst(0.0));
                    }
                    Ok(a.sqrt_val())
                }
                Func::Sin => Ok(a.sin()),
                Func::Cos => Ok(a.cos_val()),
                Func::Tan => Ok(a.tan_val()),
                Func::Atan => Ok(a.atan_val()),
                Func::Abs => {
                    if mode == Mode::Jet && v == 0.0 {
                        return Err(deriv_err(node, x, "abs has a kink at zero"));
                    }
                    Ok(a.abs_val())
                }
                Func::Gamma => {
                    if is_gamma_pole(v) {
                        return Err(domain_err(node, x, "gamma pole at a non-positive integer"));
                    }
                    Ok(gamma(a))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests;
