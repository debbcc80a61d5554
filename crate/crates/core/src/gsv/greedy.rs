//! Greedy upper bounds on generalised singular values, the exact Euclidean
//! profile, and convergence studies over domain truncations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::profile::{Provenance, SingularProfile};
use crate::error::{Error, Result};
use crate::minimax::{sup_over_ball_with, SupOptions};
use crate::norms::NormKind;
use crate::operators::{MatrixOperator, SequenceOperator};

/// Values below this end a greedy run: the remaining residual is rank deficiency.
pub const STOP_TOL: f64 = 1e-12;

/// Greedy profile with default sup options and the given seed.
pub fn greedy_profile(t: &MatrixOperator, p_max: usize, seed: u64) -> Result<SingularProfile> {
    let options = SupOptions {
        seed,
        ..SupOptions::default()
    };
    greedy_profile_with(t, p_max, &options)
}

/// Runs the greedy construction
///
/// ```text
/// ε'_{p+1} = sup_{‖x‖≤1} inf_a ‖T x − Σ_{i≤p} a_i ψ_i‖,   ψ_{p+1} = T x_{p+1}
/// ```
///
/// for up to `p_max` steps. The first entry is exact when its sup is; later
/// entries are upper bounds while every sup so far was exact, and heuristic
/// from the first non-exact sup onwards.
pub fn greedy_profile_with(
    t: &MatrixOperator,
    p_max: usize,
    options: &SupOptions,
) -> Result<SingularProfile> {
    if p_max == 0 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut values = Vec::new();
    let mut provenance = Vec::new();
    let mut maximizers = Vec::new();
    let mut all_exact = true;

    for p in 0..p_max {
        let step_options = SupOptions {
            seed: options.seed.wrapping_add(p as u64),
            ..*options
        };
        let sup = sup_over_ball_with(t, &basis, &step_options)?;
        // A heuristic sup can undershoot an earlier step; the greedy sequence
        // itself never increases.
        let value = match values.last() {
            Some(prev) => sup.value.min(*prev),
            None => sup.value,
        };
        if value < STOP_TOL {
            break;
        }
        all_exact &= sup.exact;
        provenance.push(match (p, all_exact) {
            (_, false) => Provenance::Heuristic,
            (0, true) => Provenance::Exact,
            (_, true) => Provenance::UpperBound,
        });
        values.push(value);
        basis.push(t.apply_unchecked(&sup.maximizer));
        maximizers.push(sup.maximizer);
    }
    SingularProfile::new(values, provenance)?.with_maximizers(maximizers)
}

/// Classical singular values of an operator between (weighted) Euclidean
/// spaces. Weights are absorbed as `D_y T D_x⁻¹`; values below
/// [`STOP_TOL`] are dropped.
pub fn hilbert_profile(t: &MatrixOperator) -> Result<SingularProfile> {
    let dx = t.domain_norm();
    let dy = t.codomain_norm();
    if dx.kind() != NormKind::L2 || dy.kind() != NormKind::L2 {
        return Err(Error::NotHilbert);
    }
    let scaled = nalgebra::DMatrix::from_fn(t.rows(), t.cols(), |i, j| {
        dy.weight(i) * t.entry(i, j) / dx.weight(j)
    });
    let mut values = crate::svd::Svd::new(&scaled).s;
    values.retain(|v| *v >= STOP_TOL);
    SingularProfile::exact(values)
}

/// `ε_{m,n}` of one truncation; `None` when the truncated operator has
/// fewer than `m` nonzero greedy values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationPoint {
    pub n: usize,
    pub epsilon: Option<f64>,
    pub provenance: Option<Provenance>,
}

/// Runs [`greedy_profile`] on `T_n` for every `n` in `n_range` and reports
/// the `m`-th entry.
pub fn truncation_study(
    s: &SequenceOperator,
    m: usize,
    n_range: &[usize],
    m_rows: usize,
    seed: u64,
) -> Result<Vec<TruncationPoint>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if n_range.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "truncation sizes must be strictly increasing".into(),
        ));
    }
    n_range
        .par_iter()
        .map(|&n| {
            let t = s.truncate(n, m_rows)?;
            let profile = greedy_profile(&t, m, seed)?;
            Ok(TruncationPoint {
                n,
                epsilon: profile.get(m),
                provenance: profile.provenance().get(m - 1).copied(),
            })
        })
        .collect()
}
