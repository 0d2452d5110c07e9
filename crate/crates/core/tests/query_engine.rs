mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roap_core::audit::{check_queries, close};
use roap_core::solver::CenterLocation;
use roap_core::*;

fn beta_brute<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize) -> f64 {
    let l = inst.dist(i, j).unwrap().to_f64();
    (i..=j)
        .map(|k| {
            let p = inst.path_dist(i, k).unwrap().to_f64();
            p.min(l + inst.path_dist(k, j).unwrap().to_f64())
        })
        .fold(0.0, f64::max)
}

#[test]
fn tree_examples() {
    let inst = PathInstance::<f64>::from_points(
        &[vec![0.0], vec![1.0], vec![10.0], vec![11.0]],
        MetricKind::Euclidean,
    )
    .unwrap();
    let qs = QueryStructure::preprocess(&inst);
    assert_eq!(qs.tree().root(), Some((2, 9.0)));
    assert_eq!(qs.range_max_edge(1, 4).unwrap(), (2, 9.0));
    assert_eq!(qs.range_max_edge(1, 2).unwrap(), (1, 1.0));
    assert!(qs.range_max_edge(3, 3).is_err());
    assert_eq!(
        QueryStructure::preprocess(&line4())
            .tree()
            .root()
            .unwrap()
            .0,
        1
    );
}

#[test]
fn range_max_matches_linear_scan() {
    let inst = euclidean(50, 3);
    let qs = QueryStructure::preprocess(&inst);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let a = rng.gen_range(1..50);
        let b = rng.gen_range(a + 1..=50);
        let (k, len) = qs.range_max_edge(a, b).unwrap();
        let mut best = (a, inst.path_dist(a, a + 1).unwrap());
        for m in a + 1..b {
            let e = inst.path_dist(m, m + 1).unwrap();
            if e > best.1 {
                best = (m, e);
            }
        }
        assert_eq!((k, len), best, "range [{a}, {b})");
    }
}

#[test]
fn beta_query_matches_bruteforce() {
    for seed in 0..6 {
        let inst = euclidean(60, seed);
        let qs = QueryStructure::preprocess(&inst);
        for i in 1..=60 {
            for j in i..=60 {
                let got = qs.beta_query(i, j).unwrap();
                assert!(
                    close(got, beta_brute(&inst, i, j)),
                    "seed {seed} ({i}, {j})"
                );
            }
        }
    }
    let c = cycle(8);
    assert_eq!(
        QueryStructure::preprocess(&c).beta_query(1, 8).unwrap(),
        HalfInt::from_int(4)
    );
}

#[test]
fn cycle_query() {
    let qs = QueryStructure::preprocess(&cycle(8));
    let q = qs.query(1, 8).unwrap();
    assert_eq!(q.radius, HalfInt::from_int(7).half());
}

#[test]
fn trivial_pairs_give_path_radius() {
    let inst = euclidean(9, 4);
    let qs = QueryStructure::preprocess(&inst);
    let half = inst.total() / 2.0;
    for i in 1..=9 {
        for j in [i, (i + 1).min(9)] {
            let q = qs.query(i, j).unwrap();
            assert_eq!(q.radius, half);
            assert_eq!(q.center, CenterLocation::OnPath { arc: half });
        }
    }
}

#[test]
fn all_pairs_match_oracle() {
    for seed in 0..12u64 {
        let n = 10 + (seed as usize * 13) % 50;
        check_queries(
            &euclidean(n, seed),
            &QueryStructure::preprocess(&euclidean(n, seed)),
        )
        .unwrap();
        check_queries(
            &closure(n.min(30), seed),
            &QueryStructure::preprocess(&closure(n.min(30), seed)),
        )
        .unwrap();
        check_queries(
            &grid_l1(n.min(25), seed),
            &QueryStructure::preprocess(&grid_l1(n.min(25), seed)),
        )
        .unwrap();
    }
}

#[test]
fn comparisons_are_logarithmic() {
    for n in [2usize, 10, 1000, 100_000] {
        let inst = euclidean(n, 9);
        let qs = QueryStructure::preprocess(&inst);
        let budget = 64.0 * ((n + 2) as f64).log2();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..300 {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            let q = qs.query(a, b).unwrap();
            assert!(
                (q.comparisons as f64) <= budget,
                "n {n}: {} comparisons",
                q.comparisons
            );
        }
    }
}

#[test]
fn out_of_range_pairs_fail() {
    let qs = QueryStructure::preprocess(&line4());
    assert!(matches!(qs.query(0, 2), Err(RoapError::IndexError(_))));
    assert!(qs.query(3, 5).is_err());
    assert!(qs.query(3, 2).is_err());
}
