//! The metric-embedded path `v_1, ..., v_n`.
//!
//! All vertex indices are 1-based. Path distances come from a prefix array
//! `W` with `W[1] = 0`, so `d_P(v_i, v_j) = |W[j] - W[i]|` in O(1).

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RoapError};
use crate::scalar::{Scalar, DEFAULT_REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Euclidean,
    L1,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::L1 => "l1",
        }
    }
}

/// Where pairwise distances come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Points { dim: usize, metric: MetricKind },
    Matrix,
}

#[derive(Debug)]
enum DistSource<S> {
    Points {
        dim: usize,
        coords: Vec<f64>,
        metric: MetricKind,
    },
    Matrix {
        values: Vec<S>,
    },
}

#[derive(Debug)]
struct PathData<S> {
    n: usize,
    source: DistSource<S>,
    prefix: Vec<S>,
}

/// A path embedded in a metric space.
///
/// Cloning is cheap and so is [`PathInstance::reverse`]: both share the
/// underlying storage and only flip an orientation flag.
#[derive(Debug, Clone)]
pub struct PathInstance<S> {
    data: Arc<PathData<S>>,
    reversed: bool,
    eps: S,
    rel_tol: f64,
}

/// Outcome of [`validate_metric`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub valid: bool,
    /// Triangle violations `(i, k, j, slack)` with
    /// `slack = |v_i v_k| + |v_k v_j| - |v_i v_j| < 0`.
    pub violations: Vec<(usize, usize, usize, f64)>,
    pub duplicate_pairs: Vec<(usize, usize)>,
    /// Total violations found; the list above is truncated at
    /// [`MetricReport::LIST_CAP`] entries.
    pub violation_count: usize,
    pub triples_checked: u64,
}

impl MetricReport {
    pub const LIST_CAP: usize = 1000;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    FullCubic,
    Sampled { triples: u64, seed: u64 },
}

fn point_distance(a: &[f64], b: &[f64], metric: MetricKind) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    match metric {
        MetricKind::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        MetricKind::Euclidean => {
            if a.len() == 2 {
                (a[0] - b[0]).hypot(a[1] - b[1])
            } else {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }
}

impl<S: Scalar> PathData<S> {
    /// Distance between raw 0-based vertices.
    #[inline]
    fn raw_dist(&self, a: usize, b: usize) -> S {
        match &self.source {
            DistSource::Points {
                dim,
                coords,
                metric,
            } => {
                let x = point_distance(
                    &coords[a * dim..(a + 1) * dim],
                    &coords[b * dim..(b + 1) * dim],
                    *metric,
                );
                // Representability was checked at construction time.
                S::from_input(x).unwrap_or(S::ZERO)
            }
            DistSource::Matrix { values } => values[a * self.n + b],
        }
    }

    fn build_prefix(&mut self) -> Result<()> {
        let mut prefix = Vec::with_capacity(self.n);
        let mut acc = S::ZERO;
        prefix.push(acc);
        for k in 1..self.n {
            let w = self.raw_dist(k - 1, k);
            if w <= S::ZERO {
                return Err(RoapError::DegenerateInstance(format!(
                    "consecutive vertices {} and {} coincide",
                    k,
                    k + 1
                )));
            }
            acc = acc + w;
            prefix.push(acc);
        }
        self.prefix = prefix;
        Ok(())
    }
}

impl<S: Scalar> PathInstance<S> {
    fn from_data(mut data: PathData<S>) -> Result<Self> {
        if data.n == 0 {
            return Err(RoapError::DegenerateInstance("path has no vertices".into()));
        }
        data.build_prefix()?;
        let mut inst = PathInstance {
            data: Arc::new(data),
            reversed: false,
            eps: S::ZERO,
            rel_tol: DEFAULT_REL_TOL,
        };
        inst.eps = S::tolerance(inst.total(), inst.rel_tol);
        Ok(inst)
    }

    /// Builds an instance from points given as a flat row-major array.
    pub fn from_flat_points(dim: usize, coords: Vec<f64>, metric: MetricKind) -> Result<Self> {
        if dim == 0 {
            return Err(RoapError::DegenerateInstance(
                "points have dimension 0".into(),
            ));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(RoapError::Parse(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(&bad) = coords.iter().find(|x| !x.is_finite()) {
            return Err(RoapError::Parse(format!("non-finite coordinate {bad}")));
        }
        if S::EXACT {
            if dim > 1 && metric == MetricKind::Euclidean {
                return Err(RoapError::DegenerateInstance(
                    "exact integer mode needs the L1 metric or one-dimensional points".into(),
                ));
            }
            if let Some(&bad) = coords.iter().find(|&&x| S::from_input(x).is_none()) {
                return Err(RoapError::NotExact(bad));
            }
        }
        let n = coords.len() / dim;
        let mut seen: HashSet<&[u64]> = HashSet::with_capacity(n);
        let keys: Vec<u64> = coords
            .iter()
            .map(|&x| if x == 0.0 { 0 } else { x.to_bits() })
            .collect();
        for (idx, key) in keys.chunks(dim).enumerate() {
            if !seen.insert(key) {
                return Err(RoapError::DegenerateInstance(format!(
                    "point {} duplicates an earlier point",
                    idx + 1
                )));
            }
        }
        drop(seen);
        Self::from_data(PathData {
            n,
            source: DistSource::Points {
                dim,
                coords,
                metric,
            },
            prefix: Vec::new(),
        })
    }

    pub fn from_points(points: &[Vec<f64>], metric: MetricKind) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(RoapError::Parse("points have mixed dimensions".into()));
        }
        Self::from_flat_points(dim, points.concat(), metric)
    }

    /// Builds an instance from a full distance matrix.
    ///
    /// Entries must be finite and nonnegative, the diagonal zero and the
    /// matrix symmetric up to a relative tolerance of 1e-9 (exactly symmetric
    /// in integer mode). The upper triangle is kept.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().position(|row| row.len() != n) {
            return Err(RoapError::InvalidMatrix(format!(
                "row {} has {} entries, expected {n}",
                r + 1,
                rows[r].len()
            )));
        }
        let mut values = vec![S::ZERO; n * n];
        for (a, row) in rows.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                if !x.is_finite() || x < 0.0 {
                    return Err(RoapError::InvalidMatrix(format!(
                        "entry ({}, {}) = {x} is not a finite nonnegative number",
                        a + 1,
                        b + 1
                    )));
                }
                if S::EXACT && S::from_input(x).is_none() {
                    return Err(RoapError::NotExact(x));
                }
            }
        }
        for a in 0..n {
            if rows[a][a] != 0.0 {
                return Err(RoapError::InvalidMatrix(format!(
                    "diagonal entry ({0}, {0}) is nonzero",
                    a + 1
                )));
            }
            for b in a + 1..n {
                let (x, y) = (rows[a][b], rows[b][a]);
                let tol = if S::EXACT {
                    0.0
                } else {
                    1e-9 * x.abs().max(y.abs()).max(1.0)
                };
                if (x - y).abs() > tol {
                    return Err(RoapError::InvalidMatrix(format!(
                        "entries ({0}, {1}) = {x} and ({1}, {0}) = {y} differ",
                        a + 1,
                        b + 1
                    )));
                }
                if x <= 0.0 {
                    return Err(RoapError::DegenerateInstance(format!(
                        "vertices {} and {} are at distance zero",
                        a + 1,
                        b + 1
                    )));
                }
                let v = S::from_input(x).ok_or(RoapError::NotExact(x))?;
                values[a * n + b] = v;
                values[b * n + a] = v;
            }
        }
        Self::from_data(PathData {
            n,
            source: DistSource::Matrix { values },
            prefix: Vec::new(),
        })
    }

    /// Returns a copy whose comparison tolerance is `rel` times the total
    /// path length (plus a tiny absolute floor). Ignored in exact mode.
    pub fn with_tolerance(mut self, rel: f64) -> Self {
        self.rel_tol = rel;
        self.eps = S::tolerance(self.total(), rel);
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Absolute comparison slack used by every tolerant comparison.
    pub fn eps(&self) -> S {
        self.eps
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn source_kind(&self) -> SourceKind {
        match &self.data.source {
            DistSource::Points { dim, metric, .. } => SourceKind::Points {
                dim: *dim,
                metric: *metric,
            },
            DistSource::Matrix { .. } => SourceKind::Matrix,
        }
    }

    /// Coordinates of vertex `k` in the current orientation, if the
    /// instance was built from points.
    pub fn point(&self, k: usize) -> Option<&[f64]> {
        self.check_index(k).ok()?;
        match &self.data.source {
            DistSource::Points { dim, coords, .. } => {
                let a = self.raw(k);
                Some(&coords[a * dim..(a + 1) * dim])
            }
            DistSource::Matrix { .. } => None,
        }
    }

    /// Swaps the orientation: vertex `k` becomes vertex `n + 1 - k`.
    pub fn reverse(&self) -> Self {
        PathInstance {
            data: Arc::clone(&self.data),
            reversed: !self.reversed,
            eps: self.eps,
            rel_tol: self.rel_tol,
        }
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(RoapError::IndexError(format!(
                "vertex {k} outside 1..={}",
                self.n()
            )))
        } else {
            Ok(())
        }
    }

    /// Checks `1 <= i <= j <= n`.
    pub fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i > j {
            return Err(RoapError::IndexError(format!("pair ({i}, {j}) has i > j")));
        }
        Ok(())
    }

    pub fn dist(&self, i: usize, j: usize) -> Result<S> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.d(i, j))
    }

    pub fn path_dist(&self, i: usize, j: usize) -> Result<S> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.p(i, j))
    }

    /// `W[k] = d_P(v_1, v_k)`.
    pub fn prefix_at(&self, k: usize) -> Result<S> {
        self.check_index(k)?;
        Ok(self.w(k))
    }

    /// The prefix array in the current orientation, 0-based (`W[1]` first).
    pub fn prefix(&self) -> Vec<S> {
        (1..=self.n()).map(|k| self.w(k)).collect()
    }

    /// `d_P(v_1, v_n)`.
    #[inline]
    pub fn total(&self) -> S {
        self.data.prefix[self.n() - 1]
    }

    #[inline]
    fn raw(&self, k: usize) -> usize {
        if self.reversed {
            self.data.n - k
        } else {
            k - 1
        }
    }

    /// Unchecked metric distance.
    #[inline]
    pub(crate) fn d(&self, i: usize, j: usize) -> S {
        self.data.raw_dist(self.raw(i), self.raw(j))
    }

    /// Unchecked path distance.
    #[inline]
    pub(crate) fn p(&self, i: usize, j: usize) -> S {
        let (a, b) = (self.data.prefix[self.raw(i)], self.data.prefix[self.raw(j)]);
        if a >= b {
            a - b
        } else {
            b - a
        }
    }

    /// Unchecked `W[k]`.
    #[inline]
    pub(crate) fn w(&self, k: usize) -> S {
        self.p(1, k)
    }

    /// Unchecked length of the path edge `(v_k, v_{k+1})`.
    #[inline]
    pub(crate) fn edge(&self, k: usize) -> S {
        self.p(k, k + 1)
    }

    #[inline]
    pub fn lt(&self, a: S, b: S) -> bool {
        a < b - self.eps
    }

    #[inline]
    pub fn le(&self, a: S, b: S) -> bool {
        a <= b + self.eps
    }

    #[inline]
    pub fn gt(&self, a: S, b: S) -> bool {
        a > b + self.eps
    }

    #[inline]
    pub fn ge(&self, a: S, b: S) -> bool {
        a >= b - self.eps
    }

    #[inline]
    pub fn approx_eq(&self, a: S, b: S) -> bool {
        (a - b).abs_val() <= self.eps
    }
}

/// Checks the triangle inequality and distinctness.
///
/// Triples `(i, k, j)` with `i < j` and `k` distinct from both are examined
/// (symmetry makes the mirrored triple redundant). Slack below `-eps` of the
/// instance counts as a violation.
pub fn validate_metric<S: Scalar>(inst: &PathInstance<S>, mode: ValidationMode) -> MetricReport {
    let n = inst.n();
    let eps = inst.eps();
    let mut report = MetricReport {
        valid: true,
        violations: Vec::new(),
        duplicate_pairs: Vec::new(),
        violation_count: 0,
        triples_checked: 0,
    };
    let check = |report: &mut MetricReport, i: usize, k: usize, j: usize| {
        report.triples_checked += 1;
        let slack = inst.d(i, k) + inst.d(k, j) - inst.d(i, j);
        if slack < -eps {
            report.violation_count += 1;
            if report.violations.len() < MetricReport::LIST_CAP {
                report.violations.push((i, k, j, slack.to_f64()));
            }
        }
    };
    match mode {
        ValidationMode::FullCubic => {
            for i in 1..=n {
                for j in i + 1..=n {
                    if inst.d(i, j) <= S::ZERO {
                        report.duplicate_pairs.push((i, j));
                    }
                    for k in 1..=n {
                        if k != i && k != j {
                            check(&mut report, i, k, j);
                        }
                    }
                }
            }
        }
        ValidationMode::Sampled { triples, seed } => {
            if n >= 3 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..triples {
                    let i = rng.gen_range(1..=n);
                    let k = rng.gen_range(1..=n);
                    let j = rng.gen_range(1..=n);
                    if i == j || k == i || k == j {
                        continue;
                    }
                    let (i, j) = (i.min(j), i.max(j));
                    if inst.d(i, j) <= S::ZERO && !report.duplicate_pairs.contains(&(i, j)) {
                        report.duplicate_pairs.push((i, j));
                    }
                    check(&mut report, i, k, j);
                }
            }
        }
    }
    report.valid = report.violation_count == 0 && report.duplicate_pairs.is_empty();
    report
}
