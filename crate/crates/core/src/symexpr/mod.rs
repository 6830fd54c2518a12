//! Exact scalar layer: sparse multivariate polynomials over Q, rational
//! functions, the expression parser and the canonical printer.

mod parse;
mod poly;
mod ratfunc;
mod vars;

pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use poly::{EvalError, Exponents, PolyDisplay, Polynomial};
pub use ratfunc::{gcd, DivisionByZero, RationalFunction};
pub use vars::{Var, VarError, VarTable, SPECTRAL};

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
