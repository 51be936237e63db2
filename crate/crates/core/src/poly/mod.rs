//! Exact multivariate Laurent polynomials over the rationals, the input
//! grammar, and univariate rational functions in `q`.

mod gcd;
mod monomial;
mod parse;
mod polynomial;
pub mod rational;
mod univariate;

pub use gcd::{content_in, divides, gcd, gcd_many};
pub use monomial::Monomial;
pub use parse::{parse_expr, parse_poly, Expr, ExprAlgebra};
pub use polynomial::{poly_arith, ArithOp, Polynomial};
pub use rational::{fmt_rational, lcm_denominators, parse_rational, Rational};
pub use univariate::{specialize_m, Coeff, Laurent, QLaurent, RationalFunction, ZLaurent};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable `{name}` at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },
    #[error("division by a non-monomial at position {pos}")]
    NonMonomialDivision { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("variable alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },
    #[error("`{var}` occurs with a negative exponent and can only be replaced by a monomial")]
    NonInvertibleSubstitution { var: String },
    #[error("empty polynomial")]
    Empty,
    #[error("coefficients are not integers")]
    NonIntegral,
    #[error("expected a polynomial in one variable, got {vars:?}")]
    NotUnivariate { vars: Vec<String> },
    #[error("degree of the zero function is undefined")]
    ZeroFunction,
}
