//! Degrees of freedom, generalised singular values and essential dimension
//! of linear operators between finite-dimensional normed spaces.
//!
//! For an operator `T: X → Y`, the number of degrees of freedom at level
//! `ε`, `N(ε)`, is the smallest number of vectors in `Y` whose span
//! approximates the image of the unit ball of `X` to within `ε`. Its jump
//! locations are the generalised singular values `ε_1 ≥ ε_2 ≥ …`, which
//! reduce to the classical singular values when both spaces are Euclidean.
//!
//! The crate computes greedy upper bounds on these values
//! ([`gsv::greedy_profile`]), exact Euclidean profiles
//! ([`gsv::hilbert_profile`]), the step function `N(ε)` and its inverse,
//! and the essential dimension of a profile.

pub mod approx;
pub mod error;
pub mod gsv;
pub mod io;
mod lp;
pub mod minimax;
pub mod norms;
pub mod operators;
pub mod oracles;
mod svd;

pub use error::{Error, Result};
pub use gsv::{
    dof_at_level, dof_function, essential_dimension, essential_dimension_order, greedy_profile,
    greedy_profile_with, hilbert_profile, profile_from_dof, truncation_study, DofStepFunction,
    EssDimReport, Provenance, SingularProfile, TruncationPoint,
};
pub use minimax::{sup_over_ball, sup_over_ball_heuristic, sup_over_ball_with, SupOptions, SupResult, Strategy};
pub use norms::{extreme_points, norm_eval, ExtremePointSet, Norm, NormKind};
pub use operators::{truncate, Generator, MatrixOperator, SequenceOperator};
