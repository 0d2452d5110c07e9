#![allow(dead_code)]

use roap_core::gen;
use roap_core::{HalfInt, MetricKind, PathInstance};

pub fn euclidean(n: usize, seed: u64) -> PathInstance<f64> {
    gen::random_euclidean(n, 2, seed)
        .build(MetricKind::Euclidean)
        .unwrap()
}

pub fn closure(n: usize, seed: u64) -> PathInstance<HalfInt> {
    gen::random_metric_closure(n, 100, seed)
        .build(MetricKind::L1)
        .unwrap()
}

pub fn closure_float(n: usize, seed: u64) -> PathInstance<f64> {
    gen::random_metric_closure(n, 100, seed)
        .build(MetricKind::L1)
        .unwrap()
}

/// Integer points on a small grid under L1: many exact ties.
pub fn grid_l1(n: usize, seed: u64) -> PathInstance<HalfInt> {
    gen::random_integer_points(n, 2, 6, seed)
        .build(MetricKind::L1)
        .unwrap()
}

/// Integer points on a line visited in random order.
pub fn zigzag(n: usize, seed: u64) -> PathInstance<HalfInt> {
    gen::random_integer_points(n, 1, 3 * n as i64 + 1, seed)
        .build(MetricKind::L1)
        .unwrap()
}

pub fn cycle(n: usize) -> PathInstance<HalfInt> {
    gen::cycle_metric(n).build(MetricKind::L1).unwrap()
}

pub fn line4() -> PathInstance<f64> {
    gen::line(4).build(MetricKind::Euclidean).unwrap()
}
