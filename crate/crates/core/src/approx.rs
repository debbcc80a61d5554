//! Best approximation of a point by the span of finitely many vectors.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{Constraint, LinearProgram, Relation};
use crate::norms::{Norm, NormKind};
use crate::svd::Svd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    ExactLs,
    ExactLp,
    DegenerateEmptyBasis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceDistanceResult {
    /// `min_a ‖y − Σ a_i ψ_i‖`.
    pub distance: f64,
    /// A minimizing coefficient vector.
    pub coefficients: Vec<f64>,
    pub certificate: Certificate,
    /// Norming functional: dual norm at most 1, annihilates every basis
    /// vector and `⟨functional, y⟩ = distance`. It is a subgradient of
    /// `y ↦ distance` and is zero when `y` lies in the span.
    pub functional: Vec<f64>,
}

/// Distance from `y` to `span(basis)` in `norm`.
///
/// The Euclidean case is solved as a least-squares problem through a
/// truncated SVD, which accepts rank-deficient bases and returns the
/// minimum-norm coefficients. ℓ¹ and ℓ∞ are solved exactly as linear programs.
pub fn subspace_distance(
    y: &[f64],
    basis: &[Vec<f64>],
    norm: &Norm,
) -> Result<SubspaceDistanceResult> {
    let m = y.len();
    norm.check_dim(m)?;
    if let Some(bad) = basis.iter().find(|v| v.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bad.len(),
        });
    }
    if basis.is_empty() {
        let distance = norm.eval_unchecked(y);
        let functional = empty_basis_functional(y, norm, distance);
        return Ok(SubspaceDistanceResult {
            distance,
            coefficients: Vec::new(),
            certificate: Certificate::DegenerateEmptyBasis,
            functional,
        });
    }
    match norm.kind() {
        NormKind::L2 => least_squares(y, basis, norm),
        NormKind::L1 | NormKind::Linf => linear_program(y, basis, norm),
    }
}

fn residual(y: &[f64], basis: &[Vec<f64>], coefficients: &[f64]) -> Vec<f64> {
    let mut r = y.to_vec();
    for (psi, a) in basis.iter().zip(coefficients) {
        for (ri, p) in r.iter_mut().zip(psi) {
            *ri -= a * p;
        }
    }
    r
}

fn empty_basis_functional(y: &[f64], norm: &Norm, distance: f64) -> Vec<f64> {
    let m = y.len();
    if distance == 0.0 {
        return vec![0.0; m];
    }
    match norm.kind() {
        NormKind::L2 => (0..m)
            .map(|i| norm.weight(i).powi(2) * y[i] / distance)
            .collect(),
        NormKind::L1 => (0..m).map(|i| norm.weight(i) * sign(y[i])).collect(),
        NormKind::Linf => {
            let mut best = 0;
            for i in 0..m {
                if (norm.weight(i) * y[i]).abs() > (norm.weight(best) * y[best]).abs() {
                    best = i;
                }
            }
            let mut s = vec![0.0; m];
            s[best] = norm.weight(best) * sign(y[best]);
            s
        }
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn least_squares(y: &[f64], basis: &[Vec<f64>], norm: &Norm) -> Result<SubspaceDistanceResult> {
    let m = y.len();
    let p = basis.len();
    let a = DMatrix::from_fn(m, p, |i, j| norm.weight(i) * basis[j][i]);
    let b = DVector::from_fn(m, |i, _| norm.weight(i) * y[i]);
    let svd = Svd::new(&a);
    let mut coefficients = vec![0.0; p];
    for k in 0..svd.rank() {
        let c = svd.u.column(k).dot(&b) / svd.s[k];
        for (j, a) in coefficients.iter_mut().enumerate() {
            *a += c * svd.v[(j, k)];
        }
    }
    let r = residual(y, basis, &coefficients);
    let distance = norm.eval_unchecked(&r);
    let functional = if distance > 0.0 {
        (0..m)
            .map(|i| norm.weight(i).powi(2) * r[i] / distance)
            .collect()
    } else {
        vec![0.0; m]
    };
    Ok(SubspaceDistanceResult {
        distance,
        coefficients,
        certificate: Certificate::ExactLs,
        functional,
    })
}

/// ℓ¹ / ℓ∞ best approximation as a linear program.
///
/// Variables are `a⁺, a⁻ ≥ 0` (so `a = a⁺ − a⁻`) followed by the error bounds:
/// one shared bound `t` for ℓ∞, one `e_i` per coordinate for ℓ¹. Each
/// coordinate contributes the two rows
/// `±w_i (Ψa)_i + bound ≥ ±w_i y_i`.
fn linear_program(y: &[f64], basis: &[Vec<f64>], norm: &Norm) -> Result<SubspaceDistanceResult> {
    let m = y.len();
    let p = basis.len();
    let bounds = match norm.kind() {
        NormKind::Linf => 1,
        _ => m,
    };
    let vars = 2 * p + bounds;
    let mut objective = vec![0.0; vars];
    objective[2 * p..].iter_mut().for_each(|c| *c = 1.0);

    let mut constraints = Vec::with_capacity(2 * m);
    for i in 0..m {
        let w = norm.weight(i);
        for sign in [1.0, -1.0] {
            let mut coeffs = vec![0.0; vars];
            for (j, psi) in basis.iter().enumerate() {
                coeffs[j] = sign * w * psi[i];
                coeffs[p + j] = -sign * w * psi[i];
            }
            let bound = if bounds == 1 { 2 * p } else { 2 * p + i };
            coeffs[bound] = 1.0;
            constraints.push(Constraint {
                coeffs,
                relation: Relation::Ge,
                rhs: sign * w * y[i],
            });
        }
    }
    let sol = LinearProgram {
        objective,
        constraints,
    }
    .minimize()?;

    let coefficients: Vec<f64> = (0..p).map(|j| sol.x[j] - sol.x[p + j]).collect();
    let r = residual(y, basis, &coefficients);
    let distance = norm.eval_unchecked(&r);
    let functional = (0..m)
        .map(|i| norm.weight(i) * (sol.duals[2 * i] - sol.duals[2 * i + 1]))
        .collect();
    Ok(SubspaceDistanceResult {
        distance,
        coefficients,
        certificate: Certificate::ExactLp,
        functional,
    })
}
