//! Dense two-phase simplex for the small linear programs behind ℓ¹ and ℓ∞
//! best approximation.
//!
//! Solves `min cᵀx` subject to `A x (≤ | = | ≥) b`, `x ≥ 0`. Pivoting uses
//! Bland's rule, so the method terminates on degenerate problems, which are
//! the norm rather than the exception for Chebyshev fits.

use crate::error::{Error, Result};

/// Reduced-cost tolerance for optimality.
const OPT_TOL: f64 = 1e-9;
/// Smallest admissible pivot magnitude.
const PIVOT_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub objective: f64,
    /// Dual multipliers `y`, one per constraint, with `objective = bᵀy`.
    /// Signs follow the minimization convention: `y ≤ 0` on `≤` rows and
    /// `y ≥ 0` on `≥` rows.
    pub duals: Vec<f64>,
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    cells: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.cells[r * (self.cols + 1) + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + 1;
        let p = self.at(row, col);
        for c in 0..width {
            self.cells[row * width + c] /= p;
        }
        self.cells[row * width + col] = 1.0;
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let factor = self.at(r, col);
            if factor == 0.0 {
                continue;
            }
            for c in 0..width {
                let v = self.cells[row * width + c];
                if v != 0.0 {
                    self.cells[r * width + c] -= factor * v;
                }
            }
            self.cells[r * width + col] = 0.0;
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[f64], col: usize) -> f64 {
        let mut d = costs[col];
        for r in 0..self.rows {
            d -= costs[self.basis[r]] * self.at(r, col);
        }
        d
    }

    /// Runs simplex iterations for `costs`; columns with `allowed[c] == false`
    /// never enter the basis.
    fn optimize(&mut self, costs: &[f64], allowed: &[bool], pivots: &mut usize) -> Result<()> {
        loop {
            // Bland: lowest-index improving column.
            let entering = (0..self.cols)
                .find(|&c| allowed[c] && self.reduced_cost(costs, c) < -OPT_TOL);
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(r) / a;
                    leaving = match leaving {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leaving else {
                return Err(Error::Solver("linear program is unbounded".into()));
            };
            self.pivot(row, col);
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::Solver("pivot limit exceeded".into()));
            }
        }
    }
}

impl LinearProgram {
    pub fn minimize(&self) -> Result<LpSolution> {
        let n = self.objective.len();
        let m = self.constraints.len();
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }

        // Normalize to b ≥ 0; each row gets an optional slack and an artificial.
        let mut flip = vec![1.0; m];
        let mut relations = Vec::with_capacity(m);
        for (i, c) in self.constraints.iter().enumerate() {
            let mut rel = c.relation;
            if c.rhs < 0.0 {
                flip[i] = -1.0;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            relations.push(rel);
        }
        let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
        let art_start = n + slack_count;
        let cols = art_start + m;
        let width = cols + 1;

        let mut cells = vec![0.0; m * width];
        let mut slack = n;
        for (i, c) in self.constraints.iter().enumerate() {
            let row = &mut cells[i * width..(i + 1) * width];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = flip[i] * a;
            }
            match relations[i] {
                Relation::Le => {
                    row[slack] = 1.0;
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[art_start + i] = 1.0;
            row[cols] = flip[i] * c.rhs;
        }
        let mut tableau = Tableau {
            cells,
            rows: m,
            cols,
            basis: (art_start..cols).collect(),
        };
        let mut pivots = 0;

        // Phase 1: drive the artificial variables to zero.
        let mut phase1 = vec![0.0; cols];
        phase1[art_start..].iter_mut().for_each(|c| *c = 1.0);
        let all = vec![true; cols];
        tableau.optimize(&phase1, &all, &mut pivots)?;
        let infeasibility: f64 = (0..m)
            .filter(|&r| tableau.basis[r] >= art_start)
            .map(|r| tableau.rhs(r))
            .sum();
        let scale = 1.0 + self.constraints.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
        if infeasibility > 1e-9 * scale {
            return Err(Error::Solver("linear program is infeasible".into()));
        }
        for r in 0..m {
            if tableau.basis[r] >= art_start {
                if let Some(c) = (0..art_start).find(|&c| tableau.at(r, c).abs() > 1e-9) {
                    tableau.pivot(r, c);
                }
            }
        }

        // Phase 2 over structural and slack columns.
        let mut phase2 = vec![0.0; cols];
        phase2[..n].copy_from_slice(&self.objective);
        let mut allowed = vec![true; cols];
        allowed[art_start..].iter_mut().for_each(|a| *a = false);
        tableau.optimize(&phase2, &allowed, &mut pivots)?;

        let mut x = vec![0.0; n];
        for r in 0..m {
            let b = tableau.basis[r];
            if b < n {
                x[b] = tableau.rhs(r).max(0.0);
            }
        }
        let objective = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        // y = c_Bᵀ B⁻¹; the artificial columns hold B⁻¹ of the normalized rows.
        let duals = (0..m)
            .map(|i| {
                let y: f64 = (0..m)
                    .map(|r| phase2[tableau.basis[r]] * tableau.at(r, art_start + i))
                    .sum();
                flip[i] * y
            })
            .collect();
        Ok(LpSolution {
            x,
            objective,
            duals,
        })
    }
}
