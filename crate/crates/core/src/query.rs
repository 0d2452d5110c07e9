//! O(log n) radius and center of `G(i, j)` for any pair, after O(n)
//! preprocessing.
//!
//! Each configuration of the center reduces to a handful of binary searches
//! over monotone prefix-sum predicates, plus at most one range-maximum query
//! over path edge lengths for centers opposite a cycle edge.

use crate::error::{Result, RoapError};
use crate::metric::PathInstance;
use crate::scalar::Scalar;
use crate::solver::{Candidate, CaseTag, CenterLocation};

/// Static range-maximum tree over the path edges `1..n-1`.
///
/// Stored as an implicit complete binary tree built bottom-up; each node
/// keeps the index of the longest edge in its span, the smallest index
/// among equal lengths.
#[derive(Debug, Clone)]
pub struct RangeMaxTree<S> {
    edges: usize,
    size: usize,
    /// Edge index per node, 0 for an empty span.
    node: Vec<usize>,
    /// `len[k - 1]` is the length of edge `k`.
    len: Vec<S>,
}

impl<S: Scalar> RangeMaxTree<S> {
    pub fn build(inst: &PathInstance<S>) -> Self {
        let edges = inst.n() - 1;
        let len: Vec<S> = (1..=edges).map(|k| inst.edge(k)).collect();
        let size = edges.next_power_of_two().max(1);
        let mut tree = RangeMaxTree {
            edges,
            size,
            node: vec![0; 2 * size],
            len,
        };
        for k in 1..=edges {
            tree.node[size + k - 1] = k;
        }
        let mut unused = 0;
        for v in (1..size).rev() {
            tree.node[v] = tree.pick(tree.node[2 * v], tree.node[2 * v + 1], &mut unused);
        }
        tree
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// The globally longest edge.
    pub fn root(&self) -> Option<(usize, S)> {
        let k = self.node[1];
        (k != 0).then(|| (k, self.len[k - 1]))
    }

    #[inline]
    fn pick(&self, a: usize, b: usize, cmp: &mut usize) -> usize {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        *cmp += 1;
        let (la, lb) = (self.len[a - 1], self.len[b - 1]);
        if lb > la || (lb == la && b < a) {
            b
        } else {
            a
        }
    }

    /// Longest edge among `lo..=hi`, with its length.
    pub fn query(&self, lo: usize, hi: usize, cmp: &mut usize) -> Option<(usize, S)> {
        if lo == 0 || lo > hi || hi > self.edges {
            return None;
        }
        let mut l = lo - 1 + self.size;
        let mut r = hi + self.size;
        let mut best = 0;
        while l < r {
            if l & 1 == 1 {
                best = self.pick(best, self.node[l], cmp);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = self.pick(best, self.node[r], cmp);
            }
            l >>= 1;
            r >>= 1;
        }
        (best != 0).then(|| (best, self.len[best - 1]))
    }
}

/// Radius and center of one augmented graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryResult<S> {
    pub radius: S,
    pub center: CenterLocation<S>,
    pub case_tag: CaseTag,
    /// Comparisons spent answering the query.
    pub comparisons: usize,
}

/// Preprocessed instance answering per-pair queries.
#[derive(Debug, Clone)]
pub struct QueryStructure<S> {
    inst: PathInstance<S>,
    rev: PathInstance<S>,
    tree: RangeMaxTree<S>,
}

/// Smallest `x` in `[lo, hi]` where a false-then-true predicate holds.
fn first_true(
    lo: usize,
    hi: usize,
    cmp: &mut usize,
    mut pred: impl FnMut(usize) -> bool,
) -> Option<usize> {
    if lo > hi {
        return None;
    }
    let (mut a, mut b) = (lo, hi + 1);
    while a < b {
        let mid = a + (b - a) / 2;
        *cmp += 1;
        if pred(mid) {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    (a <= hi).then_some(a)
}

/// Largest `x` in `[lo, hi]` where a true-then-false predicate holds.
fn last_true(
    lo: usize,
    hi: usize,
    cmp: &mut usize,
    mut pred: impl FnMut(usize) -> bool,
) -> Option<usize> {
    first_true(lo, hi, cmp, |x| !pred(x))
        .map_or(Some(hi), |x| x.checked_sub(1))
        .filter(|&x| x >= lo && lo <= hi)
}

/// One orientation of the instance together with the shared tree.
struct View<'a, S> {
    inst: &'a PathInstance<S>,
    tree: &'a RangeMaxTree<S>,
    mirrored: bool,
    cmp: usize,
}

impl<S: Scalar> View<'_, S> {
    fn longest_edge(&mut self, lo: usize, hi: usize) -> Option<usize> {
        if !self.mirrored {
            return self.tree.query(lo, hi, &mut self.cmp).map(|(k, _)| k);
        }
        let n = self.inst.n();
        self.tree
            .query(n - hi, n - lo, &mut self.cmp)
            .map(|(k, _)| n - k)
    }

    /// `β(i, j)`: the vertex of `C(i, j)` farthest from `v_i` sits next to
    /// the point half way around the cycle.
    fn beta(&mut self, i: usize, j: usize) -> S {
        let inst = self.inst;
        if i == j {
            return S::ZERO;
        }
        let l = inst.d(i, j);
        let cycle = l + inst.p(i, j);
        let k = last_true(i, j, &mut self.cmp, |m| inst.p(i, m).twice() <= cycle).unwrap_or(i);
        if k == j {
            inst.p(i, j)
        } else {
            inst.p(i, k).max_of(l + inst.p(k + 1, j))
        }
    }

    /// Candidates for centers on `P(v_1, v_i)` or in the part of `G(i, j)`
    /// reached from the `v_1` side, in this orientation.
    fn candidates(&mut self, i: usize, j: usize, out: &mut Vec<Candidate<S>>) {
        let inst = self.inst;
        let n = inst.n();
        let a = inst.w(i);
        let b = inst.p(j, n);
        let l = inst.d(i, j);
        let cycle = l + inst.p(i, j);
        let mut emit = |radius: S, center: CenterLocation<S>, case_tag: CaseTag| {
            out.push(Candidate {
                i,
                j,
                radius,
                center,
                case_tag,
            })
        };

        // Center on P(v_1, v_i): everything else hangs off v_i.
        let beta = self.beta(i, j);
        let gamma = if j == n { S::ZERO } else { l + b };
        let alpha = beta.max_of(gamma);
        self.cmp += 1;
        if inst.ge(a, alpha) {
            let r = (a + alpha).half();
            emit(r, CenterLocation::OnPath { arc: r }, CaseTag::Case0);
        }

        // Center on the new edge, v_1 and v_n farthest.
        let r = (a + l + b).half();
        self.cmp += 2;
        if inst.le(a, r) && inst.le(b, r) {
            let reach_i = last_true(i, j, &mut self.cmp, |m| inst.le(inst.p(i, m), a));
            let reach_j = first_true(i, j, &mut self.cmp, |m| inst.le(inst.p(m, j), b));
            if let (Some(ri), Some(rj)) = (reach_i, reach_j) {
                if rj <= ri + 1 {
                    let t = (r - a).max_of(S::ZERO).min_of(l);
                    emit(r, CenterLocation::OnNewEdge { offset: t }, CaseTag::Case11);
                }
            }
        }

        // v_1 and the first cycle vertex v_f that v_i cannot serve within a.
        if let Some(f) = first_true(i, j, &mut self.cmp, |m| inst.lt(a, inst.p(i, m))) {
            let far = inst.p(f, j);
            let r = (a + l + far).half();
            self.cmp += 3;
            if inst.le(a, r) && inst.le(far, r) && inst.ge(far, b) {
                let t = (r - a).max_of(S::ZERO).min_of(l);
                emit(
                    r,
                    CenterLocation::OnNewEdge { offset: t },
                    CaseTag::Case1211,
                );
            }
            self.cmp += 2;
            if inst.le(b, a + l) && inst.le(a + l, r) {
                let arc = (inst.w(j) - (r - a - l))
                    .max_of(inst.w(f))
                    .min_of(inst.w(j));
                emit(r, CenterLocation::OnPath { arc }, CaseTag::Case1212);
            }
        }

        // Center on P(v_i, v_f) with v_1 and v_f farthest; the far part of
        // the cycle and the tail are served through the new edge.
        self.cmp += 1;
        if inst.ge(a, l + b) {
            if let Some(f) = last_true(i, j, &mut self.cmp, |m| inst.lt(a, l + inst.p(m, j))) {
                let r = inst.w(f).half();
                self.cmp += 1;
                if inst.ge(r, a) {
                    emit(r, CenterLocation::OnPath { arc: r }, CaseTag::Case122);
                }
            }
        }

        // Center opposite a cycle edge (v_k, v_{k+1}); the best such edge is
        // the longest one in the feasible index window.
        if j >= i + 2 {
            let lo_tail = first_true(i, j - 1, &mut self.cmp, |k| inst.le(a, inst.p(i, k)));
            let Some(lo_tail) = lo_tail else { return };
            // On the new edge.
            let lo_edge = first_true(i, j - 1, &mut self.cmp, |k| {
                inst.le(inst.p(k + 1, j), l + inst.p(i, k))
            });
            let hi_tail = last_true(i, j - 1, &mut self.cmp, |k| inst.le(b, inst.p(k + 1, j)));
            let hi_edge = last_true(i, j - 1, &mut self.cmp, |k| {
                inst.le(inst.p(i, k), l + inst.p(k + 1, j))
            });
            if let (Some(lo_edge), Some(hi_tail), Some(hi_edge)) = (lo_edge, hi_tail, hi_edge) {
                let (lo, hi) = (lo_tail.max(lo_edge), hi_tail.min(hi_edge));
                if lo <= hi {
                    if let Some(k) = self.longest_edge(lo, hi) {
                        let r = (cycle - inst.edge(k)).half();
                        let t = (r - inst.p(i, k)).max_of(S::ZERO).min_of(l);
                        emit(r, CenterLocation::OnNewEdge { offset: t }, CaseTag::Case31);
                    }
                }
            }
            // On P(v_{k+1}, v_j).
            let lo_right = first_true(i, j - 1, &mut self.cmp, |k| inst.le(b, l + inst.p(i, k)));
            let hi_right = last_true(i, j - 1, &mut self.cmp, |k| {
                inst.le(l + inst.p(i, k), inst.p(k + 1, j))
            });
            if let (Some(lo_right), Some(hi_right)) = (lo_right, hi_right) {
                let (lo, hi) = (lo_tail.max(lo_right), hi_right);
                if lo <= hi {
                    if let Some(k) = self.longest_edge(lo, hi) {
                        let r = (cycle - inst.edge(k)).half();
                        let arc = (inst.w(k + 1) + r).max_of(inst.w(k + 1)).min_of(inst.w(j));
                        emit(r, CenterLocation::OnPath { arc }, CaseTag::Case32);
                    }
                }
            }
        }
    }
}

impl<S: Scalar> QueryStructure<S> {
    /// O(n) preprocessing: the tree over edge lengths. Prefix sums already
    /// live in the instance.
    pub fn preprocess(inst: &PathInstance<S>) -> Self {
        QueryStructure {
            inst: inst.clone(),
            rev: inst.reverse(),
            tree: RangeMaxTree::build(inst),
        }
    }

    pub fn instance(&self) -> &PathInstance<S> {
        &self.inst
    }

    pub fn tree(&self) -> &RangeMaxTree<S> {
        &self.tree
    }

    /// Longest path edge `(v_k, v_{k+1})` with `i <= k < j`.
    pub fn range_max_edge(&self, i: usize, j: usize) -> Result<(usize, S)> {
        self.inst.check_pair(i, i)?;
        self.inst.check_pair(j, j)?;
        if j <= i {
            return Err(RoapError::EmptyRange(i, j));
        }
        let mut unused = 0;
        self.tree
            .query(i, j - 1, &mut unused)
            .ok_or(RoapError::EmptyRange(i, j))
    }

    /// `β(i, j) = max_{k ∈ [i, j]} d_C(v_i, v_k)` by binary search.
    pub fn beta_query(&self, i: usize, j: usize) -> Result<S> {
        self.inst.check_pair(i, j)?;
        let mut view = self.view(false);
        Ok(view.beta(i, j))
    }

    fn view(&self, mirrored: bool) -> View<'_, S> {
        View {
            inst: if mirrored { &self.rev } else { &self.inst },
            tree: &self.tree,
            mirrored,
            cmp: 0,
        }
    }

    /// Every candidate the configurations produce for `(i, j)`, expressed
    /// in the original orientation, and the comparisons spent.
    pub fn query_candidates(&self, i: usize, j: usize) -> Result<(Vec<Candidate<S>>, usize)> {
        self.inst.check_pair(i, j)?;
        let n = self.inst.n();
        let mut all = vec![Candidate::no_edge(&self.inst)];
        if j <= i + 1 {
            return Ok((all, 0));
        }
        let mut fwd = self.view(false);
        fwd.candidates(i, j, &mut all);
        let mut mirrored = Vec::new();
        let mut bwd = self.view(true);
        bwd.candidates(n + 1 - j, n + 1 - i, &mut mirrored);
        all.extend(mirrored.into_iter().map(|c| c.mirror(&self.inst)));
        Ok((all, fwd.cmp + bwd.cmp))
    }

    /// Radius and a center of `G(i, j)`.
    pub fn query(&self, i: usize, j: usize) -> Result<QueryResult<S>> {
        let (cands, mut cmp) = self.query_candidates(i, j)?;
        let mut best = cands[0];
        for c in &cands[1..] {
            cmp += 1;
            if self.inst.lt(c.radius, best.radius) {
                best = *c;
            }
        }
        Ok(QueryResult {
            radius: best.radius,
            center: best.center,
            case_tag: best.case_tag,
            comparisons: cmp,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricKind;
    use crate::scalar::HalfInt;

    fn line(xs: &[f64]) -> PathInstance<f64> {
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        PathInstance::from_points(&pts, MetricKind::Euclidean).unwrap()
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

    #[test]
    fn searches() {
        let mut c = 0;
        assert_eq!(first_true(1, 10, &mut c, |x| x >= 4), Some(4));
        assert_eq!(first_true(1, 10, &mut c, |_| false), None);
        assert_eq!(first_true(3, 2, &mut c, |_| true), None);
        assert_eq!(last_true(1, 10, &mut c, |x| x <= 4), Some(4));
        assert_eq!(last_true(1, 10, &mut c, |_| true), Some(10));
        assert_eq!(last_true(1, 10, &mut c, |_| false), None);
        assert_eq!(last_true(5, 5, &mut c, |_| true), Some(5));
    }

    #[test]
    fn tree_examples() {
        let q = QueryStructure::preprocess(&line(&[0.0, 1.0, 10.0, 11.0]));
        assert_eq!(q.tree().root(), Some((2, 9.0)));
        assert_eq!(q.range_max_edge(1, 4).unwrap(), (2, 9.0));
        assert_eq!(q.range_max_edge(1, 2).unwrap(), (1, 1.0));
        assert_eq!(q.range_max_edge(3, 3), Err(RoapError::EmptyRange(3, 3)));
        let eq = QueryStructure::preprocess(&line(&[0.0, 1.0, 2.0, 3.0]));
        assert_eq!(eq.tree().root(), Some((1, 1.0)));
        let one = QueryStructure::preprocess(&line(&[4.0]));
        assert_eq!(one.tree().root(), None);
    }

    #[test]
    fn cycle_queries() {
        let q = QueryStructure::preprocess(&cycle8());
        assert_eq!(q.beta_query(1, 8).unwrap(), HalfInt::from_int(4));
        assert_eq!(q.beta_query(3, 3).unwrap(), HalfInt(0));
        assert_eq!(q.query(1, 8).unwrap().radius, HalfInt(7));
        let r = q.query(4, 5).unwrap();
        assert_eq!(r.radius, HalfInt(7));
        assert_eq!(r.center, CenterLocation::OnPath { arc: HalfInt(7) });
    }
}
