#![allow(dead_code)]

use dofkit::{MatrixOperator, Norm, NormKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KINDS: [NormKind; 3] = [NormKind::L1, NormKind::L2, NormKind::Linf];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    domain: Norm,
    codomain: Norm,
) -> MatrixOperator {
    MatrixOperator::new(m, n, random_vec(rng, m * n), domain, codomain).unwrap()
}

/// Independent linear scan for `#{m : ε_m > level}`.
pub fn count_above(values: &[f64], level: f64) -> usize {
    let mut count = 0;
    for v in values {
        if *v > level {
            count += 1;
        }
    }
    count
}

pub fn max_column_l1(t: &MatrixOperator) -> f64 {
    (0..t.cols())
        .map(|j| (0..t.rows()).map(|i| t.entry(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_row_l1(t: &MatrixOperator) -> f64 {
    (0..t.rows())
        .map(|i| (0..t.cols()).map(|j| t.entry(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
