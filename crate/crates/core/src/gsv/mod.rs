//! Generalised singular values, degrees of freedom at a level and
//! essential dimension.

mod essdim;
mod greedy;
mod profile;

pub use essdim::{essential_dimension, essential_dimension_order, EssDimReport, TIE_TOL};
pub use greedy::{
    greedy_profile, greedy_profile_with, hilbert_profile, truncation_study, TruncationPoint,
    STOP_TOL,
};
pub use profile::{
    dof_at_level, dof_function, profile_from_dof, DofStepFunction, Provenance, SingularProfile,
    MONOTONE_TOL,
};
