//! Brute-force references for small instances.
//!
//! These do not share code paths with the routines they check: brackets
//! search over explicit grids of approximating sets, and singular values
//! come from a Jacobi eigensolver on the Gram matrix instead of an SVD.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::subspace_distance;
use crate::error::{Error, Result};
use crate::minimax::{sup_over_ball, sup_over_ball_with, SupOptions};
use crate::norms::{extreme_points, Norm, DEFAULT_CAP};
use crate::operators::MatrixOperator;

/// Largest number of candidate sets a bracket search may visit.
pub const MAX_COMBINATIONS: f64 = 1e7;

const ORACLE_SEED: u64 = 0x5eed;

/// Enclosure of a nested optimum computed on a finite grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    pub grid_spec: String,
}

/// Brackets `inf_Ψ sup_x inf_a ‖Tx − Σ a_i ψ_i‖` over sets of `p` vectors.
///
/// `upper` is the best exact sup over all `p`-subsets of a direction grid in
/// the codomain (angular for dimension ≤ 3, seeded random otherwise),
/// extended by the normalized images of the domain extreme points. `lower`
/// re-evaluates the winning set on domain ball samples only. For `p = 0`
/// both ends are the operator norm.
pub fn brute_force_epsilon(t: &MatrixOperator, p: usize, grid_points: usize) -> Result<Bracket> {
    if p == 0 {
        let sup = sup_over_ball(t, &[])?;
        return Ok(Bracket {
            lower: sup.value,
            upper: sup.value,
            grid_spec: format!("operator norm via {:?}", sup.strategy),
        });
    }
    if grid_points == 0 {
        return Err(Error::InvalidArgument("grid_points must be positive".into()));
    }
    let m = t.rows();
    let combos = (grid_points as f64).powf((p * m) as f64);
    if combos > MAX_COMBINATIONS {
        return Err(Error::TooLarge {
            combinations: combos,
        });
    }

    let mut directions = direction_grid(m, grid_points);
    let grid_len = directions.len();
    directions.extend(domain_samples(t, 0)?.iter().filter_map(|x| {
        let mut y = t.apply_unchecked(x);
        let r = Norm::l2().eval_unchecked(&y);
        (r > 1e-14).then(|| {
            y.iter_mut().for_each(|v| *v /= r);
            y
        })
    }));

    let sets = subsets(directions.len(), p);
    if sets.len() as f64 > MAX_COMBINATIONS {
        return Err(Error::TooLarge {
            combinations: sets.len() as f64,
        });
    }
    let options = SupOptions {
        seed: ORACLE_SEED,
        ..SupOptions::default()
    };
    let values = sets
        .par_iter()
        .map(|set| {
            let basis: Vec<Vec<f64>> = set.iter().map(|&i| directions[i].clone()).collect();
            sup_over_ball_with(t, &basis, &options).map(|s| s.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (best, upper) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let best_basis: Vec<Vec<f64>> = sets[best].iter().map(|&i| directions[i].clone()).collect();

    let samples = domain_samples(t, grid_points)?;
    let lower = samples
        .par_iter()
        .map(|x| subspace_distance(&t.apply_unchecked(x), &best_basis, t.codomain_norm()).map(|r| r.distance))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    Ok(Bracket {
        lower: lower.min(upper),
        upper,
        grid_spec: format!(
            "{} grid directions in dimension {m} plus {} extreme-point images, {} sets of size {p}, {} domain samples",
            grid_len,
            directions.len() - grid_len,
            sets.len(),
            samples.len()
        ),
    })
}

/// Unit directions up to sign.
fn direction_grid(m: usize, g: usize) -> Vec<Vec<f64>> {
    use std::f64::consts::PI;
    match m {
        1 => vec![vec![1.0]],
        2 => (0..g)
            .map(|k| {
                let a = k as f64 * PI / g as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let mut out = vec![vec![0.0, 0.0, 1.0]];
            for i in 1..g {
                let theta = i as f64 * PI / g as f64;
                for j in 0..g {
                    let phi = j as f64 * PI / g as f64;
                    out.push(vec![
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ]);
                }
            }
            out
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
            (0..g)
                .map(|_| {
                    let mut v: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
                    let r = Norm::l2().eval_unchecked(&v);
                    v.iter_mut().for_each(|x| *x /= r);
                    v
                })
                .collect()
        }
    }
}

/// Extreme points of the domain ball when enumerable; otherwise the signed
/// coordinate directions plus `extra` seeded random unit vectors.
fn domain_samples(t: &MatrixOperator, extra: usize) -> Result<Vec<Vec<f64>>> {
    let norm = t.domain_norm();
    let n = t.cols();
    match extreme_points(norm, n, DEFAULT_CAP) {
        Ok(set) => Ok(set.points),
        Err(Error::BallNotEnumerable(_)) => {
            let mut out = Vec::with_capacity(2 * n + extra);
            for j in 0..n {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; n];
                    e[j] = s / norm.weight(j);
                    out.push(e);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED ^ 1);
            for _ in 0..extra {
                let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let r = norm.eval_unchecked(&v);
                if r > 0.0 {
                    v.iter_mut().for_each(|x| *x /= r);
                    out.push(v);
                }
            }
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

/// All `p`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..p).rev().find(|&i| idx[i] < n - p + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Singular values of the row-major `rows × cols` matrix, non-increasing,
/// `min(rows, cols)` of them, as square roots of the Gram eigenvalues.
pub fn svd_reference(rows: usize, cols: usize, data: &[f64]) -> Vec<f64> {
    assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
    let at = |i: usize, j: usize| data[i * cols + j];
    // Gram matrix on the smaller side.
    let k = rows.min(cols);
    let mut gram = vec![0.0; k * k];
    for a in 0..k {
        for b in a..k {
            let v: f64 = if cols <= rows {
                (0..rows).map(|i| at(i, a) * at(i, b)).sum()
            } else {
                (0..cols).map(|j| at(a, j) * at(b, j)).sum()
            };
            gram[a * k + b] = v;
            gram[b * k + a] = v;
        }
    }
    let mut values: Vec<f64> = jacobi_eigenvalues(gram, k)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Cyclic Jacobi rotations on a symmetric `k × k` matrix.
fn jacobi_eigenvalues(mut a: Vec<f64>, k: usize) -> Vec<f64> {
    let scale: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..k)
            .flat_map(|i| (0..k).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * k + j].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale || off == 0.0 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * k + p];
                let aqq = a[q * k + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let arp = a[r * k + p];
                    let arq = a[r * k + q];
                    a[r * k + p] = c * arp - s * arq;
                    a[r * k + q] = s * arp + c * arq;
                }
                for r in 0..k {
                    let apr = a[p * k + r];
                    let aqr = a[q * k + r];
                    a[p * k + r] = c * apr - s * aqr;
                    a[q * k + r] = s * apr + c * aqr;
                }
            }
        }
    }
    (0..k).map(|i| a[i * k + i]).collect()
}
