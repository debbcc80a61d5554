//! One-sided Jacobi singular value decomposition.
//!
//! nalgebra's bidiagonal SVD occasionally misses the leading singular value
//! of rank-deficient inputs (the projected operators in the minimax step are
//! rank-deficient by construction), so the crate uses Hestenes' method, which
//! is slower but accurate to working precision on the small matrices here.

use nalgebra::DMatrix;

const MAX_SWEEPS: usize = 80;

pub(crate) struct Svd {
    /// Left vectors, one column per singular value; zero columns where σ = 0.
    pub u: DMatrix<f64>,
    /// Non-increasing.
    pub s: Vec<f64>,
    /// Right vectors, one column per singular value.
    pub v: DMatrix<f64>,
}

impl Svd {
    pub fn new(a: &DMatrix<f64>) -> Svd {
        let (m, n) = a.shape();
        let mut w = a.clone();
        let mut v = DMatrix::<f64>::identity(n, n);
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha = w.column(i).norm_squared();
                    let beta = w.column(j).norm_squared();
                    let gamma = w.column(i).dot(&w.column(j));
                    if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    rotate(&mut w, i, j, c, s);
                    rotate(&mut v, i, j, c, s);
                }
            }
            if !rotated {
                break;
            }
        }

        let norms: Vec<f64> = (0..n).map(|k| w.column(k).norm()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|a, b| norms[*b].total_cmp(&norms[*a]));
        let s: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
        let u = DMatrix::from_fn(m, n, |i, k| {
            let src = order[k];
            if norms[src] > 0.0 {
                w[(i, src)] / norms[src]
            } else {
                0.0
            }
        });
        let v = DMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
        Svd { u, s, v }
    }

    /// Rank cutoff in the style of LAPACK's pseudo-inverse.
    pub fn tolerance(&self) -> f64 {
        let (m, n) = (self.u.nrows(), self.v.nrows());
        m.max(n) as f64 * f64::EPSILON * self.s.first().copied().unwrap_or(0.0)
    }

    pub fn rank(&self) -> usize {
        let tol = self.tolerance();
        self.s.iter().filter(|s| **s > tol).count()
    }
}

fn rotate(a: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64) {
    for r in 0..a.nrows() {
        let (x, y) = (a[(r, i)], a[(r, j)]);
        a[(r, i)] = c * x - s * y;
        a[(r, j)] = s * x + c * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_projection() {
        // nalgebra reports 0.59969 here; the Frobenius norm is the truth.
        let t = DMatrix::from_row_slice(
            3,
            3,
            &[
                -0.5113425002135026, 0.7137299079973469, -0.09557619147551888,
                0.5257194958233509, -0.18819903862500187, 0.31698668351037007,
                -0.5940631172035742, -0.11110834789466839, 0.7995037196567178,
            ],
        );
        let b = DMatrix::from_column_slice(
            3,
            2,
            &[
                -0.3865239592197369, 0.9019303642149299, -0.7789351489737233,
                -0.0458545306637137, -0.2380766354338335, 0.48692913728759724,
            ],
        );
        let q = Svd::new(&b).u.columns(0, 2).into_owned();
        let p = &t - &q * (q.transpose() * &t);
        let svd = Svd::new(&p);
        assert!((svd.s[0] - p.norm()).abs() < 1e-14);
        assert_eq!(svd.rank(), 1);
        let v0 = svd.v.column(0);
        assert!(((&p * v0).norm() - svd.s[0]).abs() < 1e-14);
    }

    #[test]
    fn reconstructs_wide_and_tall() {
        for (m, n) in [(2, 4), (4, 2), (3, 3)] {
            let a = DMatrix::from_fn(m, n, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + 0.1 * j as f64);
            let svd = Svd::new(&a);
            let sigma = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(svd.s.clone()));
            let back = &svd.u * sigma * svd.v.transpose();
            assert!((back - &a).norm() < 1e-12);
            assert!(svd.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
