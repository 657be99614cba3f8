//! Exact arithmetic in Q(u, v, z, s_1, s_2, ...).

mod gcd;
mod parse;
mod poly;
mod rational;
mod var;

use thiserror::Error;

pub use gcd::gcd;
pub use poly::{Mono, Poly};
pub use rational::{ArithOp, LaurentRational};
pub use var::Variable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclic substitution: value bound to {0} mentions {1}")]
    CyclicBinding(String, String),
    #[error("unknown variable '{0}'")]
    BadVariable(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `u - 1/u`, the coefficient of the quadratic relation.
pub fn quad_c() -> LaurentRational {
    &LaurentRational::u() - &LaurentRational::u().inv().expect("u is nonzero")
}
