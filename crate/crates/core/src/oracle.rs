//! Slow exact ground truth.
//!
//! Everything here works from first principles: shortest paths in `G(i, j)`
//! by enumerating the three possible routes, absolute centers by minimizing
//! the distance envelope on every edge, and the augmentation optimum by
//! trying every pair.

use crate::error::{Result, RoapError};
use crate::metric::PathInstance;
use crate::query::QueryResult;
use crate::scalar::Scalar;
use crate::solver::{Candidate, CaseTag, CenterLocation, Solution, SolveStats};

/// Default size limit for [`roap_bruteforce`].
pub const DEFAULT_CAP: usize = 60;

/// An edge of `G(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeRef {
    /// The path edge `(v_k, v_{k+1})`.
    PathEdge {
        k: usize,
    },
    NewEdge,
}

/// Vertex-to-vertex distance in `G(i, j)`.
#[inline]
pub(crate) fn graph_dist<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
) -> S {
    let l = inst.d(i, j);
    inst.p(a, b)
        .min_of(inst.p(a, i) + l + inst.p(j, b))
        .min_of(inst.p(a, j) + l + inst.p(i, b))
}

/// Point-to-vertex distance in `G(i, j)` without validation.
#[inline]
pub(crate) fn dist_point_vertex_unchecked<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    loc: CenterLocation<S>,
    k: usize,
) -> S {
    let l = inst.d(i, j);
    match loc {
        CenterLocation::OnPath { arc } => {
            let wk = inst.w(k);
            (arc - wk)
                .abs_val()
                .min_of((arc - inst.w(i)).abs_val() + l + inst.p(j, k))
                .min_of((arc - inst.w(j)).abs_val() + l + inst.p(i, k))
        }
        CenterLocation::OnNewEdge { offset } => {
            let via_i = inst.p(i, k).min_of(l + inst.p(j, k));
            let via_j = inst.p(j, k).min_of(l + inst.p(i, k));
            (offset + via_i).min_of(l - offset + via_j)
        }
    }
}

fn check_location<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    loc: CenterLocation<S>,
) -> Result<()> {
    inst.check_pair(i, j)?;
    let eps = inst.eps();
    let (x, hi) = match loc {
        CenterLocation::OnPath { arc } => (arc, inst.total()),
        CenterLocation::OnNewEdge { offset } => (offset, inst.d(i, j)),
    };
    if x < S::ZERO - eps || x > hi + eps {
        return Err(RoapError::IndexError(format!(
            "location {x} outside [0, {hi}] for pair ({i}, {j})"
        )));
    }
    Ok(())
}

/// Shortest distance in `G(i, j)` from the point `loc` to `v_k`.
pub fn dist_point_vertex<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    loc: CenterLocation<S>,
    k: usize,
) -> Result<S> {
    check_location(inst, i, j, loc)?;
    if k == 0 || k > inst.n() {
        return Err(RoapError::IndexError(format!(
            "vertex {k} outside 1..={}",
            inst.n()
        )));
    }
    Ok(dist_point_vertex_unchecked(inst, i, j, loc, k))
}

/// Largest distance from `loc` to any vertex of `G(i, j)`.
pub fn eccentricity<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    loc: CenterLocation<S>,
) -> Result<S> {
    check_location(inst, i, j, loc)?;
    Ok((1..=inst.n())
        .map(|k| dist_point_vertex_unchecked(inst, i, j, loc, k))
        .fold(S::ZERO, S::max_of))
}

/// Endpoint distance lists `(a, b)` and length of an edge of `G(i, j)`.
fn edge_profile<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    edge: EdgeRef,
) -> (Vec<S>, Vec<S>, S) {
    let (u, w, len) = match edge {
        EdgeRef::PathEdge { k } => (k, k + 1, inst.edge(k)),
        EdgeRef::NewEdge => (i, j, inst.d(i, j)),
    };
    let n = inst.n();
    let a = (1..=n).map(|k| graph_dist(inst, i, j, u, k)).collect();
    let b = (1..=n).map(|k| graph_dist(inst, i, j, w, k)).collect();
    (a, b, len)
}

fn envelope<S: Scalar>(a: &[S], b: &[S], len: S, t: S) -> S {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x + t).min_of(y + len - t))
        .fold(S::ZERO, S::max_of)
}

fn check_edge<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize, edge: EdgeRef) -> Result<()> {
    inst.check_pair(i, j)?;
    match edge {
        EdgeRef::PathEdge { k } if k == 0 || k >= inst.n() => Err(RoapError::IndexError(format!(
            "path edge {k} outside 1..{}",
            inst.n()
        ))),
        EdgeRef::NewEdge if j <= i + 1 => Err(RoapError::IndexError(format!(
            "pair ({i}, {j}) adds no new edge"
        ))),
        _ => Ok(()),
    }
}

/// Picks the smallest envelope value over `ts`, preferring the smallest `t`
/// among ties.
fn best_of<S: Scalar>(
    inst: &PathInstance<S>,
    a: &[S],
    b: &[S],
    len: S,
    ts: impl Iterator<Item = S>,
) -> (S, S) {
    let mut best: Option<(S, S)> = None;
    for t in ts {
        let f = envelope(a, b, len, t);
        best = match best {
            Some((bf, bt)) if inst.lt(bf, f) || (!inst.lt(f, bf) && bt <= t) => Some((bf, bt)),
            _ => Some((f, t)),
        };
    }
    best.expect("candidate set is never empty")
}

/// Minimum over `t ∈ [0, L]` of the distance envelope of an edge, found by
/// evaluating every candidate `t` where a rising piece may cross a falling
/// one. Returns `(radius, t)`, `t` measured from the edge's first endpoint.
pub fn edge_restricted_radius<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    edge: EdgeRef,
) -> Result<(S, S)> {
    check_edge(inst, i, j, edge)?;
    let (a, b, len) = edge_profile(inst, i, j, edge);
    let mut ts = vec![S::ZERO, len];
    for &x in &a {
        for &y in &b {
            ts.push((len + y - x).half().max_of(S::ZERO).min_of(len));
        }
    }
    Ok(best_of(inst, &a, &b, len, ts.into_iter()))
}

/// Same result as [`edge_restricted_radius`] with a reduced candidate set:
/// dominated distance pairs are dropped and only crossings between
/// neighbors in the remaining staircase are tried.
pub fn edge_restricted_radius_fast<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    edge: EdgeRef,
) -> Result<(S, S)> {
    check_edge(inst, i, j, edge)?;
    let (a, b, len) = edge_profile(inst, i, j, edge);
    Ok(staircase_min(inst, &a, &b, len))
}

fn staircase_min<S: Scalar>(inst: &PathInstance<S>, a: &[S], b: &[S], len: S) -> (S, S) {
    let mut tents: Vec<(S, S)> = a.iter().copied().zip(b.iter().copied()).collect();
    tents.sort_by(|x, y| y.0.total_cmp(&x.0).then(y.1.total_cmp(&x.1)));
    let mut stairs: Vec<(S, S)> = Vec::with_capacity(tents.len());
    for (x, y) in tents {
        if stairs.last().is_none_or(|&(_, top)| y > top) {
            stairs.push((x, y));
        }
    }
    let mut ts = vec![S::ZERO, len];
    for pair in stairs.windows(2) {
        let t = (pair[0].1 + len - pair[1].0).half();
        if t >= S::ZERO && t <= len {
            ts.push(t);
        }
    }
    best_of(inst, a, b, len, ts.into_iter())
}

/// Dense sampling of an edge envelope, for cross-checking the exact
/// methods. Returns the smallest sampled value.
pub fn edge_radius_grid<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    edge: EdgeRef,
    samples: usize,
) -> Result<f64> {
    check_edge(inst, i, j, edge)?;
    let (a, b, len) = edge_profile(inst, i, j, edge);
    let a: Vec<f64> = a.into_iter().map(S::to_f64).collect();
    let b: Vec<f64> = b.into_iter().map(S::to_f64).collect();
    let len = len.to_f64();
    let samples = samples.max(1);
    Ok((0..=samples)
        .map(|s| envelope(&a, &b, len, len * s as f64 / samples as f64))
        .fold(f64::INFINITY, f64::min))
}

fn center_with<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    per_edge: impl Fn(EdgeRef) -> Result<(S, S)>,
) -> Result<QueryResult<S>> {
    inst.check_pair(i, j)?;
    let n = inst.n();
    let mut edges: Vec<EdgeRef> = (1..n).map(|k| EdgeRef::PathEdge { k }).collect();
    if j > i + 1 {
        edges.push(EdgeRef::NewEdge);
    }
    let mut best = QueryResult {
        radius: S::ZERO,
        center: CenterLocation::OnPath { arc: S::ZERO },
        case_tag: CaseTag::Exhaustive,
        comparisons: 0,
    };
    let mut found = false;
    for e in edges {
        let (r, t) = per_edge(e)?;
        if !found || inst.lt(r, best.radius) {
            found = true;
            best.radius = r;
            best.center = match e {
                EdgeRef::PathEdge { k } => CenterLocation::OnPath { arc: inst.w(k) + t },
                EdgeRef::NewEdge => CenterLocation::OnNewEdge { offset: t },
            };
        }
    }
    Ok(best)
}

/// Absolute center of `G(i, j)`: the best point over every edge.
pub fn center_bruteforce<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
) -> Result<QueryResult<S>> {
    center_with(inst, i, j, |e| edge_restricted_radius_fast(inst, i, j, e))
}

/// As [`center_bruteforce`], using the full candidate set on every edge.
/// O(n^4); for small instances.
pub fn center_bruteforce_full<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
) -> Result<QueryResult<S>> {
    center_with(inst, i, j, |e| edge_restricted_radius(inst, i, j, e))
}

/// Optimal augmentation by trying every pair. Pairs with `j <= i + 1` are
/// represented once by `(1, 1)`.
pub fn roap_bruteforce<S: Scalar>(inst: &PathInstance<S>, cap: usize) -> Result<Solution<S>> {
    let n = inst.n();
    if n > cap {
        return Err(RoapError::CapExceeded { n, cap });
    }
    let base = center_bruteforce(inst, 1, 1)?;
    let mut best = Candidate {
        i: 1,
        j: 1,
        radius: base.radius,
        center: base.center,
        case_tag: CaseTag::NoEdge,
    };
    for i in 1..=n {
        for j in i + 2..=n {
            let q = center_bruteforce(inst, i, j)?;
            if inst.lt(q.radius, best.radius) {
                best = Candidate {
                    i,
                    j,
                    radius: q.radius,
                    center: q.center,
                    case_tag: CaseTag::Exhaustive,
                };
            }
        }
    }
    Ok(Solution {
        best,
        all_candidates: vec![best],
        audit: Vec::new(),
        stats: SolveStats::default(),
    })
}

/// `λ_i` by its definition: for each `j`, the farthest vertex of `[i, n]`
/// from `v_i` in `G(i, j)`; minimized over `j`, smallest `j` on ties.
pub fn lambda_bruteforce<S: Scalar>(inst: &PathInstance<S>, i: usize) -> Result<(S, usize)> {
    inst.check_pair(i, i)?;
    let n = inst.n();
    let mut best: Option<(S, usize)> = None;
    for j in i..=n {
        let l = inst.d(i, j);
        let far = (i..=n)
            .map(|k| inst.p(i, k).min_of(l + inst.p(j, k)))
            .fold(S::ZERO, S::max_of);
        if best.is_none_or(|(b, _)| far < b) {
            best = Some((far, j));
        }
    }
    Ok(best.expect("range i..=n is not empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricKind;
    use crate::scalar::HalfInt;

    fn line4() -> PathInstance<f64> {
        PathInstance::from_points(
            &[vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            MetricKind::Euclidean,
        )
        .unwrap()
    }

    fn cycle8() -> PathInstance<HalfInt> {
        let rows: Vec<Vec<f64>> = (0..8i64)
            .map(|a| {
                (0..8i64)
                    .map(|b| ((a - b).abs()).min(8 - (a - b).abs()) as f64)
                    .collect()
            })
            .collect();
        PathInstance::from_matrix(&rows).unwrap()
    }

    fn h(x: f64) -> HalfInt {
        HalfInt::from_input(x).unwrap()
    }

    #[test]
    fn point_distances() {
        let l = line4();
        let at = CenterLocation::OnPath { arc: 2.0 };
        assert_eq!(dist_point_vertex(&l, 1, 4, at, 3).unwrap(), 0.0);
        assert_eq!(
            dist_point_vertex(&l, 1, 4, CenterLocation::OnPath { arc: 1.5 }, 4).unwrap(),
            1.5
        );
        // Midpoint of the new edge (1, 8) in the 8-cycle: v_5 is 3.5 away
        // either way round.
        let c = cycle8();
        let mid = CenterLocation::OnNewEdge {
            offset: h(1.0).half(),
        };
        assert_eq!(
            dist_point_vertex(&c, 1, 8, mid, 5).unwrap(),
            h(3.5 * 2.0).half()
        );
        assert!(
            dist_point_vertex(&c, 1, 8, CenterLocation::OnNewEdge { offset: h(2.0) }, 5).is_err()
        );
        assert!(dist_point_vertex(&c, 1, 8, mid, 9).is_err());
    }

    #[test]
    fn edge_radius_examples() {
        let two = PathInstance::<f64>::from_matrix(&[vec![0.0, 7.0], vec![7.0, 0.0]]).unwrap();
        assert_eq!(
            edge_restricted_radius(&two, 1, 1, EdgeRef::PathEdge { k: 1 }).unwrap(),
            (3.5, 3.5)
        );
        let c = cycle8();
        assert_eq!(
            edge_restricted_radius(&c, 1, 8, EdgeRef::NewEdge).unwrap(),
            (h(7.0).half(), h(1.0).half())
        );
        let l = line4();
        let (r, _) = edge_restricted_radius(&l, 1, 4, EdgeRef::PathEdge { k: 2 }).unwrap();
        assert_eq!(r, 1.5);
        let grid = edge_radius_grid(&l, 1, 4, EdgeRef::PathEdge { k: 2 }, 10_000).unwrap();
        assert!((grid - 1.5).abs() < 1e-6);
        assert!(edge_restricted_radius(&l, 1, 2, EdgeRef::NewEdge).is_err());
    }

    #[test]
    fn centers_and_optimum() {
        let c = cycle8();
        assert_eq!(center_bruteforce(&c, 1, 8).unwrap().radius, HalfInt(7));
        assert_eq!(center_bruteforce(&c, 3, 3).unwrap().radius, HalfInt(7));
        assert_eq!(
            roap_bruteforce(&c, DEFAULT_CAP).unwrap().best.radius,
            HalfInt(7)
        );
        let l = line4();
        assert_eq!(center_bruteforce(&l, 1, 4).unwrap().radius, 1.5);
        assert_eq!(roap_bruteforce(&l, DEFAULT_CAP).unwrap().best.radius, 1.5);
        let one = PathInstance::<f64>::from_points(&[vec![0.0]], MetricKind::L1).unwrap();
        assert_eq!(roap_bruteforce(&one, DEFAULT_CAP).unwrap().best.radius, 0.0);
        assert!(matches!(
            roap_bruteforce(&l, 3),
            Err(RoapError::CapExceeded { n: 4, cap: 3 })
        ));
    }

    #[test]
    fn lambda_examples() {
        let l = line4();
        assert_eq!(lambda_bruteforce(&l, 4).unwrap(), (0.0, 4));
        assert_eq!(lambda_bruteforce(&l, 1).unwrap().0, 3.0);
        assert_eq!(lambda_bruteforce(&cycle8(), 1).unwrap(), (h(4.0), 7));
    }
}
