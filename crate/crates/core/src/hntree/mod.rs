//! Destabilization trees, HN factors and assembled Chern degree functions.

mod chd;
mod hn;
mod piecewise;
mod tree;
mod validate;

use thiserror::Error;

pub use chd::{
    assemble_chd0, assemble_chd1, classify_breakpoints, serre_dual_function, trivial_chd, BreakpointReport, Condition,
    ConditionTag, LeafRef, TagStatus,
};
pub use hn::{chd0_from_factors, hn_factors_at, hn_factors_limit, HnFactor};
pub use piecewise::PiecewiseQuadratic;
pub use tree::{HNTree, TreeNode};
pub use validate::{validate_tree, validate_tree_in, ValidationReport, Violation, ViolationKind};

use crate::exactnum::ExactError;
use crate::lattice::LatticeError;
use crate::walls::WallError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    Invalid(ValidationReport),
    #[error("point lies on a wall; filtration not unique (node {0})")]
    OnWall(String),
    #[error("point is on the wrong side of the vertical wall of the root")]
    WrongSide,
    #[error("a must be nonnegative")]
    NegativeA,
    #[error("tilt slopes of the factors are not strictly decreasing at node {0}")]
    NotDecreasing(String),
    #[error("functions are assembled for classes with v0 >= 0")]
    NegativeRank,
    #[error("no real root: {0}")]
    NoRealRoot(String),
    #[error("malformed function: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[cfg(test)]
mod tests;
