//! Numeric evaluation of expression trees.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::expr::{BinaryOp, Expr, UnaryOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("variable '{0}' is not bound")]
    UnboundVariable(char),
    #[error("variable '{0}' is not allowed here")]
    DisallowedVariable(char),
    #[error("variable '{name}' bound to non-finite value {value}")]
    NonFiniteBinding { name: char, value: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of non-positive value {0}")]
    LogDomain(f64),
    #[error("negative base {base} raised to non-integer power {exponent}")]
    ComplexPower { base: f64, exponent: f64 },
    #[error("non-finite result from {0}")]
    NonFinite(&'static str),
}

impl EvalError {
    /// True for the arithmetic failures (as opposed to binding problems).
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            EvalError::DivisionByZero
                | EvalError::LogDomain(_)
                | EvalError::ComplexPower { .. }
                | EvalError::NonFinite(_)
        )
    }
}

/// Variable bindings. Every bound value is finite.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Environment {
    bindings: BTreeMap<char, f64>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: char, value: f64) -> Result<(), EvalError> {
        if !value.is_finite() {
            return Err(EvalError::NonFiniteBinding { name, value });
        }
        self.bindings.insert(name, value);
        Ok(())
    }

    /// Builder form of [`bind`](Self::bind).
    pub fn with(mut self, name: char, value: f64) -> Result<Self, EvalError> {
        self.bind(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: char) -> Option<f64> {
        self.bindings.get(&name).copied()
    }

    pub fn from_pairs(pairs: &[(char, f64)]) -> Result<Self, EvalError> {
        pairs.iter().try_fold(Self::new(), |env, &(n, v)| env.with(n, v))
    }
}

pub fn evaluate(expr: &Expr, env: &Environment) -> Result<f64, EvalError> {
    match expr {
        Expr::Num(v) => finite(*v, "literal"),
        Expr::Var(name) => env.get(*name).ok_or(EvalError::UnboundVariable(*name)),
        Expr::Const(c) => Ok(c.value()),
        Expr::Unary(op, child) => {
            let a = evaluate(child, env)?;
            match op {
                UnaryOp::Neg => Ok(-a),
                UnaryOp::Sin => finite(a.sin(), "sin"),
                UnaryOp::Cos => finite(a.cos(), "cos"),
                UnaryOp::Tan => finite(a.tan(), "tan"),
                UnaryOp::Log => {
                    if a <= 0.0 {
                        Err(EvalError::LogDomain(a))
                    } else {
                        finite(a.ln(), "log")
                    }
                }
                UnaryOp::Exp => finite(a.exp(), "exp"),
            }
        }
        Expr::Binary(op, l, r) => {
            let a = evaluate(l, env)?;
            let b = evaluate(r, env)?;
            match op {
                BinaryOp::Add => finite(a + b, "+"),
                BinaryOp::Sub => finite(a - b, "-"),
                BinaryOp::Mul => finite(a * b, "*"),
                BinaryOp::Div => {
                    if b == 0.0 {
                        Err(EvalError::DivisionByZero)
                    } else {
                        finite(a / b, "/")
                    }
                }
                BinaryOp::Pow => {
                    if a < 0.0 && b.fract() != 0.0 {
                        return Err(EvalError::ComplexPower { base: a, exponent: b });
                    }
                    if a == 0.0 && b < 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    finite(a.powf(b), "^")
                }
            }
        }
    }
}

fn finite(v: f64, op: &'static str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite(op))
    }
}

/// Variable names occurring in `expr`. Constants are not variables.
pub fn free_variables(expr: &Expr) -> BTreeSet<char> {
    let mut out = BTreeSet::new();
    visit_vars(expr, &mut |c| {
        out.insert(c);
        true
    });
    out
}

/// Fails with the first variable, in left-to-right order, not in `allowed`.
pub fn check_variables(expr: &Expr, allowed: &[char]) -> Result<(), EvalError> {
    let mut bad = None;
    visit_vars(expr, &mut |c| {
        if allowed.contains(&c) {
            true
        } else {
            bad = Some(c);
            false
        }
    });
    match bad {
        Some(c) => Err(EvalError::DisallowedVariable(c)),
        None => Ok(()),
    }
}

// In-order walk; stops when `f` returns false.
fn visit_vars(expr: &Expr, f: &mut impl FnMut(char) -> bool) -> bool {
    match expr {
        Expr::Var(c) => f(*c),
        Expr::Num(_) | Expr::Const(_) => true,
        Expr::Unary(_, child) => visit_vars(child, f),
        Expr::Binary(_, l, r) => visit_vars(l, f) && visit_vars(r, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_function;

    fn eval_str(src: &str, pairs: &[(char, f64)]) -> Result<f64, EvalError> {
        evaluate(&parse_function(src).unwrap(), &Environment::from_pairs(pairs).unwrap())
    }

    #[test]
    fn first_stage_of_first_order_example() {
        assert_eq!(eval_str("(x-y)/2", &[('x', 0.0), ('y', 1.0)]), Ok(-0.5));
    }

    #[test]
    fn literals_and_functions() {
        assert_eq!(evaluate(&Expr::num(5.0), &Environment::new()), Ok(5.0));
        assert_eq!(eval_str("sin(0)", &[]), Ok(0.0));
        assert_eq!(eval_str("log(1)", &[]), Ok(0.0));
        assert_eq!(eval_str("exp(0)", &[]), Ok(1.0));
        assert_eq!(eval_str("cos(0)", &[]), Ok(1.0));
        assert_eq!(eval_str("tan(0)", &[]), Ok(0.0));
        assert_eq!(eval_str("2^3^2", &[]), Ok(512.0));
        assert_eq!(eval_str("-2^2", &[]), Ok(4.0));
        assert_eq!(eval_str("0^0", &[]), Ok(1.0));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn constants() {
        assert!((eval_str("e^1", &[]).unwrap() - 2.718281828459045).abs() <= 1e-15);
        assert!(eval_str("sin(pi)", &[]).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(eval_str("log(0)", &[]), Err(EvalError::LogDomain(0.0)));
        assert!(matches!(eval_str("log(0-1)", &[]), Err(EvalError::LogDomain(_))));
        assert_eq!(eval_str("1/0", &[]), Err(EvalError::DivisionByZero));
        assert_eq!(eval_str("0/0", &[]), Err(EvalError::DivisionByZero));
        assert_eq!(eval_str("0^(0-1)", &[]), Err(EvalError::DivisionByZero));
        assert!(matches!(
            eval_str("(0-8)^0.5", &[]),
            Err(EvalError::ComplexPower { .. })
        ));
        assert!(eval_str("(0-8)^(1/3)", &[]).is_err());
        assert_eq!(eval_str("(0-2)^3", &[]), Ok(-8.0));
        assert_eq!(eval_str("exp(1000)", &[]), Err(EvalError::NonFinite("exp")));
        assert_eq!(eval_str("10^400", &[]), Err(EvalError::NonFinite("^")));
        assert!(eval_str("exp(1000)", &[]).unwrap_err().is_domain_error());
    }

    #[test]
    fn unbound_variable() {
        assert_eq!(eval_str("w", &[('x', 1.0)]), Err(EvalError::UnboundVariable('w')));
        assert!(!EvalError::UnboundVariable('w').is_domain_error());
    }

    #[test]
    fn non_finite_bindings_rejected() {
        assert!(Environment::new().with('x', f64::NAN).is_err());
        assert!(Environment::new().with('x', f64::INFINITY).is_err());
    }

    #[test]
    fn free_variable_scan() {
        let vars = |s: &str| {
            free_variables(&parse_function(s).unwrap())
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(vars("(x-y)/2"), vec!['x', 'y']);
        assert_eq!(vars("3"), Vec::<char>::new());
        assert_eq!(vars("0-6*y-5*z"), vec!['y', 'z']);
        assert_eq!(vars("e^pi*x"), vec!['x']);
    }

    #[test]
    fn variable_checks() {
        let e = |s: &str| parse_function(s).unwrap();
        assert_eq!(check_variables(&e("(x-y)/2"), &['x', 'y']), Ok(()));
        assert_eq!(
            check_variables(&e("z"), &['x', 'y']),
            Err(EvalError::DisallowedVariable('z'))
        );
        assert_eq!(check_variables(&e("x-2+3*e^-(x/2)"), &['x']), Ok(()));
        // first offender in reading order
        assert_eq!(
            check_variables(&e("x+w*a"), &['x']),
            Err(EvalError::DisallowedVariable('w'))
        );
    }
}
