mod common;

use common::*;
use roap_core::audit::{lambda_violations, lemma_violations};
use roap_core::scan::*;

#[test]
fn lemmas_hold_on_random_families() {
    for seed in 0..40u64 {
        let n = 1 + (seed as usize * 11) % 40;
        let mut v = lemma_violations(&euclidean(n, seed));
        v.extend(lemma_violations(&closure(n, seed)));
        v.extend(lemma_violations(&grid_l1(n.min(30), seed)));
        v.extend(lemma_violations(&zigzag(n, seed)));
        assert!(v.is_empty(), "seed {seed}: {v:?}");
    }
}

#[test]
fn lambda_table_matches_definition() {
    for seed in 0..40u64 {
        let n = 1 + (seed as usize * 7) % 40;
        let mut v = lambda_violations(&euclidean(n, seed));
        v.extend(lambda_violations(&closure(n, seed)));
        v.extend(lambda_violations(&zigzag(n, seed)));
        assert!(v.is_empty(), "seed {seed}: {v:?}");
    }
    assert!(lambda_violations(&cycle(8)).is_empty());
}

#[test]
fn detour_bound_non_increasing() {
    for seed in 0..20 {
        let inst = closure_float(25, seed);
        for i in 1..=25 {
            for j in i..25 {
                let a = gamma(&inst, i, j, GammaConvention::Formula).unwrap();
                let b = gamma(&inst, i, j + 1, GammaConvention::Formula).unwrap();
                assert!(b <= a + 1e-12);
            }
        }
    }
}

#[test]
fn gamma_conventions_differ_only_at_end() {
    let inst = line4();
    assert_eq!(gamma(&inst, 1, 4, GammaConvention::Formula).unwrap(), 3.0);
    assert_eq!(gamma(&inst, 1, 4, GammaConvention::EmptyTail).unwrap(), 0.0);
    assert_eq!(gamma(&inst, 1, 2, GammaConvention::EmptyTail).unwrap(), 3.0);
}

#[test]
fn counters_up_to_large_n() {
    for n in [1usize, 2, 17, 1000, 200_000] {
        let inst = euclidean(n, 5);
        let t = compute_lambda_table(&inst);
        let c = t.counters;
        assert!(
            c.beta_evals <= 2 * n && c.k_advances <= n && c.j_advances <= n,
            "n {n}: {c:?}"
        );
        assert!((1..=n).all(|i| (i..=n).contains(&t.jopt_at(i))));
    }
}
