//! Exact arithmetic: rationals, quadratic irrationals and quadratic polynomials.

mod poly;
mod qi;
mod rational;

use thiserror::Error;

pub use poly::{quad_eval, quad_roots, QuadPoly, Root};
pub use qi::{qi_compare, squarefree_split, QuadraticIrrational};
pub use rational::{
    ceil_int, floor_int, fmt_rational, from_bigint, int, is_integer, isqrt, parse_rational, rat, rational_to_f64,
    serde_bigint, serde_rational, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("indeterminate roots: polynomial is identically zero")]
    IndeterminateRoots,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("{0}")]
    Parse(String),
}
