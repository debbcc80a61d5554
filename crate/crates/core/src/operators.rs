//! Channel operators: dense matrices between normed coordinate spaces, and
//! column generators for operators on sequence spaces.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::norms::{Norm, NormKind};

/// A linear operator `T: X → Y` stored as a dense `m × n` row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    domain_norm: Norm,
    codomain_norm: Norm,
}

impl MatrixOperator {
    pub fn new(
        rows: usize,
        cols: usize,
        data: Vec<f64>,
        domain_norm: Norm,
        codomain_norm: Norm,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidOperator(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidOperator("matrix entries must be finite".into()));
        }
        domain_norm.check_dim(cols)?;
        codomain_norm.check_dim(rows)?;
        Ok(MatrixOperator {
            rows,
            cols,
            data,
            domain_norm,
            codomain_norm,
        })
    }

    /// Builds an operator from a list of equal-length rows.
    pub fn from_rows(rows: &[Vec<f64>], domain_norm: Norm, codomain_norm: Norm) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        MatrixOperator::new(m, n, rows.concat(), domain_norm, codomain_norm)
    }

    /// Square diagonal operator.
    pub fn diagonal(diag: &[f64], domain_norm: Norm, codomain_norm: Norm) -> Result<Self> {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        MatrixOperator::new(n, n, data, domain_norm, codomain_norm)
    }

    /// Number of rows (codomain dimension).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns (domain dimension).
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn domain_norm(&self) -> &Norm {
        &self.domain_norm
    }

    pub fn codomain_norm(&self) -> &Norm {
        &self.codomain_norm
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.entry(i, j)).collect()
    }

    /// Same matrix with different norms attached.
    pub fn with_norms(&self, domain_norm: Norm, codomain_norm: Norm) -> Result<Self> {
        MatrixOperator::new(
            self.rows,
            self.cols,
            self.data.clone(),
            domain_norm,
            codomain_norm,
        )
    }

    /// Matrix-vector product `T x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Transposed product `Tᵀ y`.
    pub(crate) fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (row, yi) in self.data.chunks_exact(self.cols).zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }
}

/// Finitely supported column: `(row, value)` pairs with 1-based rows.
pub type SparseColumn = Vec<(usize, f64)>;

type ColumnFn = dyn Fn(usize) -> SparseColumn + Send + Sync;

/// An operator on a sequence space described by the images of its Schauder
/// basis vectors. `column(k)` is `T φ_k` in codomain coordinates, with `k`
/// and the row indices both starting at 1.
#[derive(Clone)]
pub struct SequenceOperator {
    column_fn: Arc<ColumnFn>,
    domain_kind: NormKind,
    codomain_kind: NormKind,
}

impl fmt::Debug for SequenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceOperator")
            .field("domain_kind", &self.domain_kind)
            .field("codomain_kind", &self.codomain_kind)
            .finish_non_exhaustive()
    }
}

impl SequenceOperator {
    pub fn new<F>(column_fn: F, domain_kind: NormKind, codomain_kind: NormKind) -> Self
    where
        F: Fn(usize) -> SparseColumn + Send + Sync + 'static,
    {
        SequenceOperator {
            column_fn: Arc::new(column_fn),
            domain_kind,
            codomain_kind,
        }
    }

    /// Column `k` (1-based).
    pub fn column(&self, k: usize) -> SparseColumn {
        (self.column_fn)(k)
    }

    pub fn domain_kind(&self) -> NormKind {
        self.domain_kind
    }

    pub fn codomain_kind(&self) -> NormKind {
        self.codomain_kind
    }

    /// The `m_rows × n` matrix of `T` restricted to the span of the first `n`
    /// basis vectors. Fails rather than dropping codomain rows.
    pub fn truncate(&self, n: usize, m_rows: usize) -> Result<MatrixOperator> {
        truncate(self, n, m_rows)
    }
}

/// See [`SequenceOperator::truncate`].
pub fn truncate(op: &SequenceOperator, n: usize, m_rows: usize) -> Result<MatrixOperator> {
    if n == 0 || m_rows == 0 {
        return Err(Error::InvalidOperator(format!(
            "truncation dimensions must be positive, got n = {n}, m_rows = {m_rows}"
        )));
    }
    let mut data = vec![0.0; m_rows * n];
    for k in 1..=n {
        for (row, value) in op.column(k) {
            if value == 0.0 {
                continue;
            }
            if row == 0 || row > m_rows {
                return Err(Error::CodomainOverflow {
                    column: k,
                    row,
                    m_rows,
                });
            }
            data[(row - 1) * n + (k - 1)] += value;
        }
    }
    MatrixOperator::new(
        m_rows,
        n,
        data,
        Norm::new(op.domain_kind),
        Norm::new(op.codomain_kind),
    )
}

/// Built-in sequence-space operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `e_k ↦ e_1`
    RankOneOnes,
    /// `e_k ↦ (1/k) e_k`
    HarmonicDiag,
    /// `e_k ↦ (1 − 1/k) e_1`
    RankOneHarmonic,
}

impl Generator {
    pub const ALL: [Generator; 3] = [
        Generator::RankOneOnes,
        Generator::HarmonicDiag,
        Generator::RankOneHarmonic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::RankOneOnes => "rank_one_ones",
            Generator::HarmonicDiag => "harmonic_diag",
            Generator::RankOneHarmonic => "rank_one_harmonic",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))
    }

    /// Rows needed to hold the first `n` columns.
    pub fn natural_rows(self, n: usize) -> usize {
        match self {
            Generator::HarmonicDiag => n,
            Generator::RankOneOnes | Generator::RankOneHarmonic => 1,
        }
    }

    pub fn sequence_operator(self, domain: NormKind, codomain: NormKind) -> SequenceOperator {
        match self {
            Generator::RankOneOnes => SequenceOperator::new(|_| vec![(1, 1.0)], domain, codomain),
            Generator::HarmonicDiag => {
                SequenceOperator::new(|k| vec![(k, 1.0 / k as f64)], domain, codomain)
            }
            Generator::RankOneHarmonic => {
                SequenceOperator::new(|k| vec![(1, 1.0 - 1.0 / k as f64)], domain, codomain)
            }
        }
    }
}
