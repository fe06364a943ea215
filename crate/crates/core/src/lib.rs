//! Exact wall-and-chamber computations for tilt stability on a polarized surface.
//!
//! Classes live in the lattice of triples `(L^2 ch0, L ch1, ch2)`. The crate enumerates numerical
//! walls in the `(a, beta)` half plane (with `a = alpha^2 / 2`), validates destabilization trees,
//! and assembles Chern degree functions as piecewise quadratics with exact algebraic breakpoints.

pub mod catalog;
pub mod cli;
pub mod exactnum;
pub mod hntree;
pub mod lattice;
pub mod walls;
