//! Essential dimension: the degrees-of-freedom count that holds over the
//! widest range of levels, and its order-`n` generalisation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::profile::SingularProfile;
use crate::error::{Error, Result};

/// Two scores closer than this are treated as tied.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssDimReport {
    pub ess_dim: usize,
    /// Score of every admissible index: the level-set measure `E(n)` for
    /// order 1, the index-offset gap for higher orders.
    pub e_table: BTreeMap<usize, f64>,
    pub order: usize,
    /// All indices whose score ties the maximum, ascending.
    pub argmax_ties: Vec<usize>,
}

fn report(e_table: BTreeMap<usize, f64>, order: usize) -> EssDimReport {
    let best = e_table.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax_ties: Vec<usize> = e_table
        .iter()
        .filter(|(_, v)| **v >= best - TIE_TOL)
        .map(|(n, _)| *n)
        .collect();
    EssDimReport {
        ess_dim: argmax_ties[0],
        e_table,
        order,
        argmax_ties,
    }
}

/// `E(n) = ε_n − ε_{n+1}` is the length of the level range on which
/// `N(ε) = n`; the last index gets `E(K) = ε_K`, the length of `(0, ε_K)`.
/// The essential dimension is the smallest maximizer of `E`.
pub fn essential_dimension(profile: &SingularProfile) -> Result<EssDimReport> {
    let v = profile.values();
    if v.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let k = v.len();
    let e_table = (1..=k)
        .map(|n| {
            let below = if n < k { v[n] } else { 0.0 };
            (n, (v[n - 1] - below).max(0.0))
        })
        .collect();
    Ok(report(e_table, 1))
}

/// Essential dimension of order `n`: the smallest `N` maximizing
/// `ε_{N−n/2} − ε_{N+n/2}` (even `n`) or `ε_{N−(n−1)/2} − ε_{N+(n+1)/2}`
/// (odd `n`). Only `N` whose two indices both fall in `1..=K` take part.
pub fn essential_dimension_order(profile: &SingularProfile, order: usize) -> Result<EssDimReport> {
    let v = profile.values();
    let k = v.len();
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    if order >= k {
        return Err(Error::OrderTooLarge { order, len: k });
    }
    let (before, after) = if order % 2 == 0 {
        (order / 2, order / 2)
    } else {
        ((order - 1) / 2, (order + 1) / 2)
    };
    let e_table = (before + 1..=k - after)
        .map(|n| (n, v[n - before - 1] - v[n + after - 1]))
        .collect();
    Ok(report(e_table, order))
}
