//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line; run with `--nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use common::*;
use dofkit::minimax::sup_over_ball;
use dofkit::oracles::{brute_force_epsilon, svd_reference};
use dofkit::{
    dof_at_level, dof_function, essential_dimension, essential_dimension_order, greedy_profile,
    hilbert_profile, profile_from_dof, truncation_study, Generator, MatrixOperator, Norm, NormKind,
    SingularProfile,
};
use rand::Rng;

fn report(criterion: u32, failures: &[String], detail: String) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS ({detail})");
    } else {
        println!("criterion {criterion}: FAIL ({detail}); {}", failures.join("; "));
        panic!("criterion {criterion} failed");
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn within_budget(failures: &mut Vec<String>, start: Instant, budget: Duration) -> Duration {
    let elapsed = start.elapsed();
    check(failures, elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"));
    elapsed
}

fn exact(values: &[f64]) -> SingularProfile {
    SingularProfile::exact(values.to_vec()).unwrap()
}

#[test]
fn criterion_1_euclidean_profiles_are_singular_values() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let t = random_matrix(&mut rng, m, n, Norm::l2(), Norm::l2());
        let greedy = greedy_profile(&t, m.min(n), trial).unwrap();
        let hilbert = hilbert_profile(&t).unwrap();
        let reference: Vec<f64> = svd_reference(m, n, t.data())
            .into_iter()
            .filter(|s| *s >= 1e-12)
            .collect();
        check(&mut failures, greedy.len() == reference.len() && hilbert.len() == reference.len(), || {
            format!("trial {trial}: lengths {} {} {}", greedy.len(), hilbert.len(), reference.len())
        });
        for k in 0..reference.len().min(greedy.len()).min(hilbert.len()) {
            let d = (greedy.values()[k] - reference[k])
                .abs()
                .max((hilbert.values()[k] - reference[k]).abs());
            worst = worst.max(d);
            check(&mut failures, d <= 1e-8, || format!("trial {trial}, m = {}: off by {d:e}", k + 1));
        }
    }
    let elapsed = within_budget(&mut failures, start, Duration::from_secs(10));
    report(1, &failures, format!("50 matrices, max deviation {worst:.1e}, {elapsed:.2?}"));
}

#[test]
fn criterion_2_plateau_of_four() {
    let mut failures = Vec::new();
    let p = exact(&[1.0, 0.9, 0.85, 0.5, 0.1, 0.05, 0.0005]);
    let (lo, hi) = (0.1 + 1e-9, 0.5 - 1e-9);
    for k in 0..=1000 {
        let level = lo + (hi - lo) * k as f64 / 1000.0;
        let n = dof_at_level(&p, level);
        check(&mut failures, n == 4, || format!("N({level}) = {n}"));
    }
    check(&mut failures, dof_at_level(&p, 1.0) == 0, || "N(1) != 0".into());
    let r = essential_dimension(&p).unwrap();
    let gap = r.e_table[&4];
    check(&mut failures, r.ess_dim == 4, || format!("ess_dim = {}", r.ess_dim));
    check(&mut failures, (gap - 0.4).abs() <= 1e-12, || format!("E(4) = {gap}"));
    report(2, &failures, format!("ess_dim {}, E(4) = {gap}", r.ess_dim));
}

#[test]
fn criterion_3_eight_value_profile() {
    let mut failures = Vec::new();
    let p = exact(&[1.0, 0.98, 0.96, 0.94, 0.92, 0.9, 0.8, 0.4, 0.1]);
    let n1 = dof_at_level(&p, 0.75);
    let n2 = dof_at_level(&p, 0.1 + 1e-9);
    check(&mut failures, n1 == 7, || format!("N(0.75) = {n1}"));
    check(&mut failures, n2 == 8, || format!("N(0.1+) = {n2}"));
    let first = essential_dimension(&p).unwrap();
    let second = essential_dimension_order(&p, 2).unwrap();
    let (e7, e8) = (first.e_table[&7], second.e_table[&8]);
    check(&mut failures, first.ess_dim == 7, || format!("ess_dim = {}", first.ess_dim));
    check(&mut failures, (e7 - 0.4).abs() <= 1e-12, || format!("E(7) = {e7}"));
    check(&mut failures, second.ess_dim == 8, || format!("order-2 ess_dim = {}", second.ess_dim));
    check(&mut failures, (e8 - 0.7).abs() <= 1e-12, || format!("order-2 E(8) = {e8}"));
    report(
        3,
        &failures,
        format!("ess_dim {} with gap {e7}, order 2 gives {} with gap {e8}", first.ess_dim, second.ess_dim),
    );
}

#[test]
fn criterion_4_truncations_converge() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let ns = [2, 4, 8, 16, 32];
    let harmonic = Generator::RankOneHarmonic.sequence_operator(NormKind::L1, NormKind::L1);
    let points = truncation_study(&harmonic, 1, &ns, 1, 0).unwrap();
    let mut prev = 0.0;
    for p in &points {
        let e = p.epsilon.unwrap_or(f64::NAN);
        let expected = 1.0 - 1.0 / p.n as f64;
        check(&mut failures, (e - expected).abs() <= 1e-10, || format!("ε_1,{} = {e}", p.n));
        check(&mut failures, e > prev && e < 1.0, || format!("ε_1,{} = {e} not in ({prev}, 1)", p.n));
        prev = e;
    }

    let diag = Generator::HarmonicDiag.sequence_operator(NormKind::L1, NormKind::L1);
    let sizes: Vec<usize> = (1..=8).collect();
    let mut checked = 0;
    for m in 1..=5 {
        let points = truncation_study(&diag, m, &sizes, 8, 0).unwrap();
        for p in points.iter().filter(|p| p.n >= m) {
            let e = p.epsilon.unwrap_or(f64::NAN);
            check(&mut failures, (e - 1.0 / m as f64).abs() <= 1e-10, || {
                format!("harmonic_diag ε_{m},{} = {e}", p.n)
            });
            checked += 1;
        }
    }
    let elapsed = within_budget(&mut failures, start, Duration::from_secs(5));
    report(
        4,
        &failures,
        format!("ε_1,32 = {prev}, {checked} diagonal truncations, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_5_cube_greedy_gap() {
    let mut failures = Vec::new();
    let t = MatrixOperator::diagonal(&[1.0, 0.5], Norm::linf(), Norm::linf()).unwrap();
    let greedy = greedy_profile(&t, 2, 0).unwrap();
    let second = greedy.get(2).unwrap_or(f64::NAN);
    let bracket = brute_force_epsilon(&t, 1, 360).unwrap();
    check(&mut failures, (second - 2.0 / 3.0).abs() <= 1e-10, || format!("ε'_2 = {second}"));
    check(&mut failures, bracket.upper <= 0.5 + 1e-3, || format!("upper = {}", bracket.upper));
    check(&mut failures, second > bracket.upper, || "greedy value not above the bracket".into());
    report(5, &failures, format!("ε'_2 = {second}, brute-force upper = {}", bracket.upper));
}

#[test]
fn criterion_6_dof_invariants_on_random_operators() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(6);
    for trial in 0..200usize {
        let domain = KINDS[trial % 3];
        let codomain = KINDS[(trial / 3) % 3];
        let (m, n) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let t = random_matrix(&mut rng, m, n, Norm::new(domain), Norm::new(codomain));
        let p = greedy_profile(&t, m.min(n), trial as u64).unwrap();
        let v = p.values();
        check(&mut failures, v.windows(2).all(|w| w[1] <= w[0]), || {
            format!("trial {trial}: {v:?} increases")
        });
        let Some(&top) = v.first() else { continue };
        for level in [top, top * 1.5, top + 1.0] {
            let k = dof_at_level(&p, level);
            check(&mut failures, k == 0, || format!("trial {trial}: N({level}) = {k} above ε'_1"));
        }
        for k in 1..=1000 {
            let level = 1.2 * top * k as f64 / 1000.0;
            let (got, want) = (dof_at_level(&p, level), count_above(v, level));
            check(&mut failures, got == want, || format!("trial {trial}: N({level}) = {got}, count {want}"));
        }
        let back = profile_from_dof(&dof_function(&p)).unwrap();
        check(&mut failures, back.values() == v, || format!("trial {trial}: round trip gave {:?}", back.values()));
    }
    let elapsed = within_budget(&mut failures, start, Duration::from_secs(30));
    report(6, &failures, format!("200 operators over 9 norm pairs, {elapsed:.2?}"));
}

#[test]
fn criterion_7_induced_norm_identities() {
    let mut failures = Vec::new();
    let mut rng = rng(7);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let (m, n) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let data = random_vec(&mut rng, m * n);
        let l1 = MatrixOperator::new(m, n, data.clone(), Norm::l1(), Norm::l1()).unwrap();
        let linf = MatrixOperator::new(m, n, data, Norm::linf(), Norm::linf()).unwrap();
        let d1 = (sup_over_ball(&l1, &[]).unwrap().value - max_column_l1(&l1)).abs();
        let d2 = (sup_over_ball(&linf, &[]).unwrap().value - max_row_l1(&linf)).abs();
        worst = worst.max(d1).max(d2);
        check(&mut failures, d1 <= 1e-9, || format!("trial {trial}: ℓ1 off by {d1:e}"));
        check(&mut failures, d2 <= 1e-9, || format!("trial {trial}: ℓ∞ off by {d2:e}"));
    }
    report(7, &failures, format!("100 matrices, max deviation {worst:.1e}"));
}
