//! Exact arithmetic: rationals, polynomials and rational functions in the
//! time variable, and real algebraic event times.

mod poly;
mod ratfun;
mod rational;
mod time;

use thiserror::Error;

pub use poly::{Polynomial, SturmChain};
pub use ratfun::RationalFunction;
pub use rational::{
    digits_for_epsilon, format_rational, int, midpoint, parse_rational, rat, simplest_between,
    to_decimal, to_f64, Rational,
};
pub use time::{poly_real_roots, simplest_between_values, tv_compare, TimeValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("indeterminate roots: the zero polynomial vanishes everywhere")]
    IndeterminateRoots,
    #[error("pole at {}", format_rational(.0))]
    Pole(Rational),
    #[error("division by an identically zero function")]
    DivisionByZero,
}
