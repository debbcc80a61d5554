//! Weighted ℓ¹, ℓ² and ℓ∞ norms on coordinate spaces, and the extreme
//! points of their closed unit balls.
//!
//! A weighted norm evaluates the base norm on the entry-wise product
//! `w ⊙ x`, so its unit ball is the unweighted ball rescaled by `1 / w`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration cap for ℓ∞ balls, which have `2^dim` vertices.
pub const DEFAULT_CAP: usize = 1 << 20;

/// Relative tolerance for unit-norm membership.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
        }
    }
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(NormKind::L1),
            "l2" => Ok(NormKind::L2),
            "linf" => Ok(NormKind::Linf),
            other => Err(Error::Parse(format!("unknown norm kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawNorm {
    kind: NormKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

/// A norm on a finite-dimensional coordinate space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNorm", into = "RawNorm")]
pub struct Norm {
    kind: NormKind,
    weights: Option<Vec<f64>>,
}

impl TryFrom<RawNorm> for Norm {
    type Error = Error;

    fn try_from(raw: RawNorm) -> Result<Self> {
        match raw.weights {
            Some(w) => Norm::weighted(raw.kind, w),
            None => Ok(Norm::new(raw.kind)),
        }
    }
}

impl From<Norm> for RawNorm {
    fn from(norm: Norm) -> Self {
        RawNorm {
            kind: norm.kind,
            weights: norm.weights,
        }
    }
}

impl Norm {
    pub fn new(kind: NormKind) -> Self {
        Norm {
            kind,
            weights: None,
        }
    }

    pub fn l1() -> Self {
        Norm::new(NormKind::L1)
    }

    pub fn l2() -> Self {
        Norm::new(NormKind::L2)
    }

    pub fn linf() -> Self {
        Norm::new(NormKind::Linf)
    }

    /// Weighted norm `x ↦ ‖w ⊙ x‖`. Every weight must be finite and strictly positive.
    pub fn weighted(kind: NormKind, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNorm("empty weight vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidNorm(format!(
                "weights must be finite and strictly positive, got {w}"
            )));
        }
        Ok(Norm {
            kind,
            weights: Some(weights),
        })
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of coordinate `i` (1 for unweighted norms).
    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    /// Checks that this norm can act on vectors of length `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match &self.weights {
            Some(w) if w.len() != dim => Err(Error::DimensionMismatch {
                expected: w.len(),
                found: dim,
            }),
            _ => Ok(()),
        }
    }

    /// Evaluates the norm of `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let scaled = x.iter().enumerate().map(|(i, v)| (self.weight(i) * v).abs());
        match self.kind {
            NormKind::L1 => scaled.sum(),
            NormKind::L2 => {
                // Scale by the largest entry so squares cannot overflow.
                let scaled: Vec<f64> = scaled.collect();
                let big = scaled.iter().copied().fold(0.0, f64::max);
                if big == 0.0 {
                    0.0
                } else {
                    big * scaled.iter().map(|v| (v / big).powi(2)).sum::<f64>().sqrt()
                }
            }
            NormKind::Linf => scaled.fold(0.0, f64::max),
        }
    }

    /// Value of the dual norm at the functional `s`.
    #[cfg(test)]
    pub(crate) fn dual_eval(&self, s: &[f64]) -> f64 {
        let unweighted: Vec<f64> = s
            .iter()
            .enumerate()
            .map(|(i, v)| v / self.weight(i))
            .collect();
        let dual_kind = match self.kind {
            NormKind::L1 => NormKind::Linf,
            NormKind::L2 => NormKind::L2,
            NormKind::Linf => NormKind::L1,
        };
        Norm::new(dual_kind).eval_unchecked(&unweighted)
    }

    /// A point of the closed unit ball maximizing `⟨s, x⟩`.
    pub(crate) fn support_point(&self, s: &[f64]) -> Vec<f64> {
        let n = s.len();
        let mut x = vec![0.0; n];
        match self.kind {
            NormKind::L1 => {
                // Best vertex ±e_j / w_j: largest |s_j| / w_j, first index on ties.
                let mut best = 0;
                let mut best_val = f64::NEG_INFINITY;
                for (j, v) in s.iter().enumerate() {
                    let val = v.abs() / self.weight(j);
                    if val > best_val {
                        best_val = val;
                        best = j;
                    }
                }
                if n > 0 {
                    let sign = if s[best] < 0.0 { -1.0 } else { 1.0 };
                    x[best] = sign / self.weight(best);
                }
            }
            NormKind::L2 => {
                // Maximize ⟨s, x⟩ subject to ‖w ⊙ x‖₂ ≤ 1: x ∝ s / w².
                for (j, v) in s.iter().enumerate() {
                    x[j] = v / self.weight(j).powi(2);
                }
                let r = self.eval_unchecked(&x);
                if r > 0.0 {
                    x.iter_mut().for_each(|v| *v /= r);
                }
            }
            NormKind::Linf => {
                for (j, v) in s.iter().enumerate() {
                    let sign = if *v < 0.0 { -1.0 } else { 1.0 };
                    x[j] = sign / self.weight(j);
                }
            }
        }
        x
    }
}

/// Evaluates `norm` at `x`.
pub fn norm_eval(x: &[f64], norm: &Norm) -> Result<f64> {
    norm.eval(x)
}

/// Extreme points of a closed unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePointSet {
    pub points: Vec<Vec<f64>>,
    /// True when `points` lists every extreme point of the ball.
    pub exhaustive: bool,
}

impl ExtremePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Enumerates the extreme points of the closed unit ball of `norm` in `dim` dimensions.
///
/// ℓ¹ balls give `±e_j / w_j` in the order `e_1, -e_1, e_2, -e_2, ...`. ℓ∞ balls give
/// the `2^dim` sign vectors (rescaled by `1 / w`) with `+` before `-` in each
/// coordinate, so the unweighted list is in lexicographically decreasing order.
pub fn extreme_points(norm: &Norm, dim: usize, cap: usize) -> Result<ExtremePointSet> {
    if dim == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    norm.check_dim(dim)?;
    match norm.kind {
        NormKind::L2 => Err(Error::BallNotEnumerable("l2")),
        NormKind::L1 => {
            let mut points = Vec::with_capacity(2 * dim);
            for j in 0..dim {
                for sign in [1.0, -1.0] {
                    let mut p = vec![0.0; dim];
                    p[j] = sign / norm.weight(j);
                    points.push(p);
                }
            }
            Ok(ExtremePointSet {
                points,
                exhaustive: true,
            })
        }
        NormKind::Linf => {
            let count = if dim >= usize::BITS as usize {
                None
            } else {
                Some(1usize << dim)
            };
            let count = match count {
                Some(c) if c <= cap => c,
                _ => return Err(Error::CapExceeded { dim, cap }),
            };
            let points = (0..count)
                .map(|code| {
                    (0..dim)
                        .map(|j| {
                            let negative = (code >> (dim - 1 - j)) & 1 == 1;
                            let sign = if negative { -1.0 } else { 1.0 };
                            sign / norm.weight(j)
                        })
                        .collect()
                })
                .collect();
            Ok(ExtremePointSet {
                points,
                exhaustive: true,
            })
        }
    }
}
