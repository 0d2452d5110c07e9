//! Deterministic instance families.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RoapError;
use crate::io::InstanceData;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Collinear points `0, 1, ..., n-1`.
    Line,
    /// Cycle metric `min(|a-b|, n-|a-b|)` on `n` equally spaced vertices.
    CycleMetric,
    /// Uniform points in the unit square.
    RandomEuclidean,
    /// Shortest-path closure of a random symmetric integer matrix.
    RandomMetricClosure,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Line,
        Family::CycleMetric,
        Family::RandomEuclidean,
        Family::RandomMetricClosure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Line => "line",
            Family::CycleMetric => "cycle_metric",
            Family::RandomEuclidean => "random_euclidean",
            Family::RandomMetricClosure => "random_metric_closure",
        }
    }

    pub fn generate(self, n: usize, seed: u64) -> InstanceData {
        match self {
            Family::Line => line(n),
            Family::CycleMetric => cycle_metric(n),
            Family::RandomEuclidean => random_euclidean(n, 2, seed),
            Family::RandomMetricClosure => random_metric_closure(n, 100, seed),
        }
    }
}

impl FromStr for Family {
    type Err = RoapError;

    fn from_str(s: &str) -> Result<Self, RoapError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| RoapError::Parse(format!("unknown family `{s}`")))
    }
}

pub fn line(n: usize) -> InstanceData {
    InstanceData::Points {
        dim: 1,
        coords: (0..n).map(|k| k as f64).collect(),
    }
}

/// Integer cycle metric; divide by `n` for total length 1.
pub fn cycle_metric(n: usize) -> InstanceData {
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let d = a.abs_diff(b);
            values.push(d.min(n - d) as f64);
        }
    }
    InstanceData::Matrix { n, values }
}

pub fn random_euclidean(n: usize, dim: usize, seed: u64) -> InstanceData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    InstanceData::Points {
        dim,
        coords: (0..n * dim).map(|_| rng.gen::<f64>()).collect(),
    }
}

/// Integer points with coordinates in `0..range`, no two equal. Useful with
/// the L1 metric in exact mode, where ties between path lengths are common.
///
/// Panics if the grid has fewer than `n` cells.
pub fn random_integer_points(n: usize, dim: usize, range: i64, seed: u64) -> InstanceData {
    let cells = (range.max(0) as f64).powi(dim as i32);
    assert!(
        cells >= n as f64,
        "{n} distinct points do not fit in a grid of {cells} cells"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut coords = Vec::with_capacity(n * dim);
    while seen.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..range)).collect();
        if seen.insert(p.clone()) {
            coords.extend(p.into_iter().map(|x| x as f64));
        }
    }
    InstanceData::Points { dim, coords }
}

/// Random symmetric weights in `1..=max_weight`, replaced by all-pairs
/// shortest-path distances (Floyd-Warshall), which always form a metric.
pub fn random_metric_closure(n: usize, max_weight: u32, seed: u64) -> InstanceData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = vec![0.0f64; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let w = f64::from(rng.gen_range(1..=max_weight.max(1)));
            m[a * n + b] = w;
            m[b * n + a] = w;
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                let via = m[a * n + k] + m[k * n + b];
                if via < m[a * n + b] {
                    m[a * n + b] = via;
                }
            }
        }
    }
    InstanceData::Matrix { n, values: m }
}
