//! Supremum over the domain unit ball of the residual distance
//! `x ↦ dist_Y(Tx, span Ψ)`.
//!
//! The objective is a quotient norm composed with a linear map, hence convex,
//! so its maximum over a polytope is attained at a vertex. Strategies by norm
//! pair:
//!
//! | domain | codomain | strategy |
//! |--------|----------|----------|
//! | ℓ¹ | any | enumerate the `2n` vertices |
//! | ℓ∞ | any | enumerate the `2^n` sign vectors (capped) |
//! | ℓ² | ℓ² | top singular pair of `(I − P_Ψ) T` |
//! | ℓ² | ℓ¹, ℓ∞ | multistart ascent, not certified |

use std::cmp::Ordering;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::subspace_distance;
use crate::error::{Error, Result};
use crate::norms::{extreme_points, Norm, NormKind, DEFAULT_CAP};
use crate::operators::MatrixOperator;
use crate::svd::Svd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    ExtremePointExact,
    SpectralExact,
    MultistartHeuristic,
}

impl Strategy {
    pub fn is_exact(self) -> bool {
        !matches!(self, Strategy::MultistartHeuristic)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupResult {
    pub value: f64,
    pub maximizer: Vec<f64>,
    pub strategy: Strategy,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupOptions {
    /// Largest number of ℓ∞ vertices to enumerate.
    pub cap: usize,
    /// Random starting points for the heuristic path.
    pub starts: usize,
    /// Ascent steps per start.
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions {
            cap: DEFAULT_CAP,
            starts: 64,
            iterations: 500,
            seed: 0,
        }
    }
}

/// `sup_{‖x‖ ≤ 1} dist(Tx, span(basis))` with default options.
pub fn sup_over_ball(t: &MatrixOperator, basis: &[Vec<f64>]) -> Result<SupResult> {
    sup_over_ball_with(t, basis, &SupOptions::default())
}

pub fn sup_over_ball_with(
    t: &MatrixOperator,
    basis: &[Vec<f64>],
    options: &SupOptions,
) -> Result<SupResult> {
    check_basis(t, basis)?;
    let domain = t.domain_norm().kind();
    let codomain = t.codomain_norm().kind();
    match (domain, codomain) {
        (NormKind::L1 | NormKind::Linf, _) => extreme_point_sup(t, basis, options.cap),
        (NormKind::L2, NormKind::L2) => spectral_sup(t, basis),
        (NormKind::L2, _) => heuristic_sup(t, basis, options),
    }
}

/// Runs the multistart ascent regardless of the norm pair.
pub fn sup_over_ball_heuristic(
    t: &MatrixOperator,
    basis: &[Vec<f64>],
    options: &SupOptions,
) -> Result<SupResult> {
    check_basis(t, basis)?;
    heuristic_sup(t, basis, options)
}

fn check_basis(t: &MatrixOperator, basis: &[Vec<f64>]) -> Result<()> {
    match basis.iter().find(|v| v.len() != t.rows()) {
        Some(bad) => Err(Error::DimensionMismatch {
            expected: t.rows(),
            found: bad.len(),
        }),
        None => Ok(()),
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn extreme_point_sup(t: &MatrixOperator, basis: &[Vec<f64>], cap: usize) -> Result<SupResult> {
    let points = extreme_points(t.domain_norm(), t.cols(), cap)?.points;
    let values = points
        .par_iter()
        .map(|x| subspace_distance(&t.apply_unchecked(x), basis, t.codomain_norm()).map(|r| r.distance))
        .collect::<Result<Vec<f64>>>()?;
    let best = values.iter().copied().fold(0.0, f64::max);
    let tol = 1e-12 * best.max(1.0);
    // Ties go to the lexicographically largest vertex.
    let (index, _) = points
        .iter()
        .enumerate()
        .filter(|(i, _)| values[*i] >= best - tol)
        .max_by(|(_, a), (_, b)| lexicographic(a, b))
        .expect("at least one extreme point");
    Ok(SupResult {
        value: values[index],
        maximizer: points[index].clone(),
        strategy: Strategy::ExtremePointExact,
        exact: true,
    })
}

/// Both norms Euclidean (possibly weighted). With `D_x`, `D_y` the weight
/// diagonals, the problem becomes the spectral norm of
/// `(I − QQᵀ) D_y T D_x⁻¹` where `Q` spans `D_y Ψ`.
fn spectral_sup(t: &MatrixOperator, basis: &[Vec<f64>]) -> Result<SupResult> {
    let (m, n) = (t.rows(), t.cols());
    let dx = t.domain_norm();
    let dy = t.codomain_norm();
    let mut scaled = DMatrix::from_fn(m, n, |i, j| dy.weight(i) * t.entry(i, j) / dx.weight(j));

    if !basis.is_empty() {
        let q = orthonormal_basis(&DMatrix::from_fn(m, basis.len(), |i, j| {
            dy.weight(i) * basis[j][i]
        }));
        if q.ncols() > 0 {
            let projection = &q * (q.transpose() * &scaled);
            scaled -= projection;
        }
    }

    let svd = Svd::new(&scaled);
    let value = svd.s[0];
    let mut v: Vec<f64> = svd.v.column(0).iter().copied().collect();
    let lead = v
        .iter()
        .enumerate()
        .fold(0, |best, (j, x)| if x.abs() > v[best].abs() + 1e-12 { j } else { best });
    if v[lead] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let maximizer: Vec<f64> = v.iter().enumerate().map(|(j, x)| x / dx.weight(j)).collect();
    Ok(SupResult {
        value: value.max(0.0),
        maximizer,
        strategy: Strategy::SpectralExact,
        exact: true,
    })
}

/// Orthonormal basis of the column space, dropping numerically dependent directions.
pub(crate) fn orthonormal_basis(a: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = Svd::new(a);
    svd.u.columns(0, svd.rank()).into_owned()
}

fn normalize(x: &mut [f64], norm: &Norm) -> bool {
    let r = norm.eval_unchecked(x);
    if r > 0.0 && r.is_finite() {
        x.iter_mut().for_each(|v| *v /= r);
        true
    } else {
        false
    }
}

fn heuristic_sup(t: &MatrixOperator, basis: &[Vec<f64>], options: &SupOptions) -> Result<SupResult> {
    let (m, n) = (t.rows(), t.cols());
    let domain = t.domain_norm();
    let codomain = t.codomain_norm();

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(options.starts + n + m);
    for k in 0..options.starts {
        let mut rng = ChaCha8Rng::seed_from_u64(
            options.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64),
        );
        starts.push((0..n).map(|_| StandardNormal.sample(&mut rng)).collect());
    }
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        starts.push(e);
    }
    // Domain points that maximize each output coordinate.
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = codomain.weight(i);
        starts.push(domain.support_point(&t.apply_transpose(&e)));
    }

    let climbs = starts
        .into_par_iter()
        .map(|start| ascend(t, basis, start, options.iterations))
        .collect::<Result<Vec<Option<(f64, Vec<f64>)>>>>()?;

    let (value, maximizer) = climbs
        .into_iter()
        .flatten()
        .fold(None, |best: Option<(f64, Vec<f64>)>, (v, x)| match best {
            Some((bv, _)) if bv >= v => best,
            _ => Some((v, x)),
        })
        .unwrap_or_else(|| {
            let mut x = vec![0.0; n];
            x[0] = 1.0 / domain.weight(0);
            (0.0, x)
        });
    Ok(SupResult {
        value,
        maximizer,
        strategy: Strategy::MultistartHeuristic,
        exact: false,
    })
}

/// Conditional-gradient ascent on the unit sphere: move toward the ball point
/// maximizing the current subgradient, halving the step when that fails.
fn ascend(
    t: &MatrixOperator,
    basis: &[Vec<f64>],
    mut x: Vec<f64>,
    iterations: usize,
) -> Result<Option<(f64, Vec<f64>)>> {
    let domain = t.domain_norm();
    let codomain = t.codomain_norm();
    if !normalize(&mut x, domain) {
        return Ok(None);
    }
    let mut current = subspace_distance(&t.apply_unchecked(&x), basis, codomain)?;
    let mut step = 1.0;
    for _ in 0..iterations {
        let gradient = t.apply_transpose(&current.functional);
        let target = domain.support_point(&gradient);
        let mut candidate: Vec<f64> = x
            .iter()
            .zip(&target)
            .map(|(a, b)| a + step * (b - a))
            .collect();
        if !normalize(&mut candidate, domain) {
            step *= 0.5;
            if step < 1e-6 {
                break;
            }
            continue;
        }
        let next = subspace_distance(&t.apply_unchecked(&candidate), basis, codomain)?;
        let gain = next.distance - current.distance;
        if gain > 0.0 {
            x = candidate;
            current = next;
            step = (2.0 * step).min(1.0);
            if gain <= 1e-15 * current.distance {
                break;
            }
        } else {
            step *= 0.5;
            if step < 1e-6 {
                break;
            }
        }
    }
    Ok(Some((current.distance, x)))
}
