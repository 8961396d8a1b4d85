//! Exact-arithmetic toolkit for integer-programming relaxations.
//!
//! The crate builds relaxations of 0/1 polytopes `P ⊆ [0,1]^n` from two
//! families of constructions and compares them exactly:
//!
//! * branch-and-bound trees over variable disjunctions, whose leaf atoms are
//!   convexified through a disjunctive extended formulation ([`tree`]);
//! * lift-and-project operators: Sherali-Adams lifts, the canonical
//!   lift-and-project step and its iterates, sequential convexification over
//!   variable subsets, and the height-bounded tree operator ([`hierarchy`]).
//!
//! Every routine is generic over a [`Scalar`]. The aliases below fix the
//! exact rational instantiation used by the checks and the CLI.

pub mod error;
pub mod hierarchy;
pub mod instances;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use linalg::{affine_rank, solve_linear_system, LinearSolution, Matrix, Vector};
pub use lp::{lp_feasible_point, lp_solve, Direction, LinearConstraint, LpOutcome, LpProblem, LpStatus, Sense};
pub use polytope::{IntegerHull, Limits, Polytope, VPointSet};
pub use scalar::Scalar;
pub use tree::BBTree;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
pub type RVector = Vector<Rational>;
pub type RMatrix = Matrix<Rational>;
pub type RPolytope = Polytope<Rational>;
pub type RLinearConstraint = LinearConstraint<Rational>;
pub type RIntegerHull = IntegerHull<Rational>;

/// Float instantiations for exploratory use; no check in this crate relies on them.
pub type FPolytope = Polytope<f64>;
pub type FVector = Vector<f64>;
