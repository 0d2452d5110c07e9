//! Linear-time optimal single-edge augmentation.
//!
//! Each configuration of the optimal center and its two farthest vertices
//! has its own O(n) sweep producing candidates. The smallest feasible
//! candidate across all configurations is the optimum.

use crate::metric::PathInstance;
use crate::oracle::dist_point_vertex_unchecked;
use crate::scalar::Scalar;
use crate::scan::{compute_lambda_table, LambdaTable, ScanCounters};

/// Position of a center in `G(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenterLocation<S> {
    /// On the path, at arc length `arc` from `v_1`.
    OnPath { arc: S },
    /// On the new edge `e(v_i, v_j)`, at distance `offset` from `v_i`.
    OnNewEdge { offset: S },
}

impl<S: Scalar> CenterLocation<S> {
    pub fn map<T>(self, f: impl Fn(S) -> T) -> CenterLocation<T> {
        match self {
            CenterLocation::OnPath { arc } => CenterLocation::OnPath { arc: f(arc) },
            CenterLocation::OnNewEdge { offset } => CenterLocation::OnNewEdge { offset: f(offset) },
        }
    }
}

/// Configuration that produced a candidate. The derived order is the final
/// tie-break between candidates with equal radius and pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    NoEdge,
    Case0,
    Case0Mirror,
    Case11,
    Case1211,
    Case1212,
    Case122,
    Case11Mirror,
    Case1211Mirror,
    Case1212Mirror,
    Case122Mirror,
    Case3,
    Case31,
    Case32,
    Case32Mirror,
    Exhaustive,
}

impl CaseTag {
    pub const ALL: [CaseTag; 16] = [
        CaseTag::NoEdge,
        CaseTag::Case0,
        CaseTag::Case0Mirror,
        CaseTag::Case11,
        CaseTag::Case1211,
        CaseTag::Case1212,
        CaseTag::Case122,
        CaseTag::Case11Mirror,
        CaseTag::Case1211Mirror,
        CaseTag::Case1212Mirror,
        CaseTag::Case122Mirror,
        CaseTag::Case3,
        CaseTag::Case31,
        CaseTag::Case32,
        CaseTag::Case32Mirror,
        CaseTag::Exhaustive,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::NoEdge => "no-edge",
            CaseTag::Case0 => "case-0",
            CaseTag::Case0Mirror => "case-0-mirror",
            CaseTag::Case11 => "case-1.1",
            CaseTag::Case1211 => "case-1.2.1.1",
            CaseTag::Case1212 => "case-1.2.1.2",
            CaseTag::Case122 => "case-1.2.2",
            CaseTag::Case11Mirror => "case-2/1.1",
            CaseTag::Case1211Mirror => "case-2/1.2.1.1",
            CaseTag::Case1212Mirror => "case-2/1.2.1.2",
            CaseTag::Case122Mirror => "case-2/1.2.2",
            CaseTag::Case3 => "case-3",
            CaseTag::Case31 => "case-3.1",
            CaseTag::Case32 => "case-3.2",
            CaseTag::Case32Mirror => "case-3.2-mirror",
            CaseTag::Exhaustive => "exhaustive",
        }
    }

    pub fn from_label(s: &str) -> Option<CaseTag> {
        Self::ALL.into_iter().find(|t| t.label() == s)
    }

    /// The tag of the same configuration seen from the other end of the path.
    pub fn mirrored(self) -> CaseTag {
        use CaseTag::*;
        match self {
            Case0 => Case0Mirror,
            Case0Mirror => Case0,
            Case11 => Case11Mirror,
            Case1211 => Case1211Mirror,
            Case1212 => Case1212Mirror,
            Case122 => Case122Mirror,
            Case11Mirror => Case11,
            Case1211Mirror => Case1211,
            Case1212Mirror => Case1212,
            Case122Mirror => Case122,
            Case32 => Case32Mirror,
            Case32Mirror => Case32,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<S> {
    pub i: usize,
    pub j: usize,
    pub radius: S,
    pub center: CenterLocation<S>,
    pub case_tag: CaseTag,
}

impl<S: Scalar> Candidate<S> {
    /// The candidate for the unaugmented path: center at the middle.
    pub fn no_edge(inst: &PathInstance<S>) -> Self {
        let r = inst.total().half();
        Candidate {
            i: 1,
            j: 1,
            radius: r,
            center: CenterLocation::OnPath { arc: r },
            case_tag: CaseTag::NoEdge,
        }
    }

    /// Re-expresses a candidate computed on `inst.reverse()` in the
    /// orientation of `inst`.
    pub fn mirror(self, inst: &PathInstance<S>) -> Self {
        let n = inst.n();
        let (i, j) = (n + 1 - self.j, n + 1 - self.i);
        let center = match self.center {
            CenterLocation::OnPath { arc } => CenterLocation::OnPath {
                arc: inst.total() - arc,
            },
            CenterLocation::OnNewEdge { offset } => CenterLocation::OnNewEdge {
                offset: inst.d(i, j) - offset,
            },
        };
        Candidate {
            i,
            j,
            radius: self.radius,
            center,
            case_tag: self.case_tag.mirrored(),
        }
    }

    /// Pairs with `j <= i + 1` add nothing to the path; they are reported as
    /// the pair `(1, 1)` with tag `NoEdge` and a path center.
    pub fn canonical(self, inst: &PathInstance<S>) -> Self {
        if self.j > self.i + 1 || (self.i, self.j) == (1, 1) && self.case_tag == CaseTag::NoEdge {
            return self;
        }
        let center = match self.center {
            CenterLocation::OnNewEdge { offset } => CenterLocation::OnPath {
                arc: inst.w(self.i) + offset,
            },
            c => c,
        };
        Candidate {
            i: 1,
            j: 1,
            radius: self.radius,
            center,
            case_tag: CaseTag::NoEdge,
        }
    }

    /// Strict preference: smaller radius beyond tolerance, then smaller
    /// pair, then smaller tag.
    pub fn beats(&self, other: &Self, inst: &PathInstance<S>) -> bool {
        if inst.lt(self.radius, other.radius) {
            return true;
        }
        if inst.lt(other.radius, self.radius) {
            return false;
        }
        (self.i, self.j, self.case_tag) < (other.i, other.j, other.case_tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepStat {
    pub case_tag: CaseTag,
    pub advances: usize,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub lambda: ScanCounters,
    pub lambda_reversed: ScanCounters,
    pub sweeps: Vec<SweepStat>,
}

impl SolveStats {
    pub fn max_sweep_advances(&self) -> usize {
        self.sweeps.iter().map(|s| s.advances).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct Solution<S> {
    pub best: Candidate<S>,
    /// Best candidate of each configuration that produced one.
    pub all_candidates: Vec<Candidate<S>>,
    /// Every candidate generated internally, when requested through
    /// [`SolveOptions::audit`].
    pub audit: Vec<Candidate<S>>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Keep every internally generated candidate in [`Solution::audit`].
    pub audit: bool,
    /// Also run the position-filtered variants of the cycle configuration.
    pub filtered_case3: bool,
}

/// Candidates produced by one sweep.
#[derive(Debug, Clone)]
pub struct CaseOutput<S> {
    pub best: Option<Candidate<S>>,
    pub emitted: Vec<Candidate<S>>,
    pub advances: usize,
}

struct Sweep<'a, S> {
    inst: &'a PathInstance<S>,
    audit: bool,
    out: CaseOutput<S>,
}

impl<'a, S: Scalar> Sweep<'a, S> {
    fn new(inst: &'a PathInstance<S>, audit: bool) -> Self {
        Sweep {
            inst,
            audit,
            out: CaseOutput {
                best: None,
                emitted: Vec::new(),
                advances: 0,
            },
        }
    }

    fn offer(&mut self, c: Candidate<S>) {
        if self.audit {
            self.out.emitted.push(c);
        }
        match &self.out.best {
            Some(b) if !c.beats(b, self.inst) => {}
            _ => self.out.best = Some(c),
        }
    }

    fn finish(self) -> CaseOutput<S> {
        self.out
    }
}

fn clamp<S: Scalar>(x: S, lo: S, hi: S) -> S {
    x.max_of(lo).min_of(hi)
}

fn mirror_output<S: Scalar>(inst: &PathInstance<S>, out: CaseOutput<S>) -> CaseOutput<S> {
    CaseOutput {
        best: out.best.map(|c| c.mirror(inst)),
        emitted: out.emitted.into_iter().map(|c| c.mirror(inst)).collect(),
        advances: out.advances,
    }
}

/// Center on `P(v_1, v_i)`: pick `i` with `d_P(v_1, v_i) >= λ_i` minimizing
/// `d_P(v_1, v_i) + λ_i`.
pub fn case0<S: Scalar>(inst: &PathInstance<S>, ltab: &LambdaTable<S>) -> CaseOutput<S> {
    case0_impl(inst, ltab, false)
}

fn case0_impl<S: Scalar>(
    inst: &PathInstance<S>,
    ltab: &LambdaTable<S>,
    audit: bool,
) -> CaseOutput<S> {
    let mut sw = Sweep::new(inst, audit);
    for i in 1..=inst.n() {
        sw.out.advances += 1;
        let a = inst.w(i);
        let lam = ltab.lambda_at(i);
        if inst.ge(a, lam) {
            let r = (a + lam).half();
            sw.offer(Candidate {
                i,
                j: ltab.jopt_at(i),
                radius: r,
                center: CenterLocation::OnPath { arc: r },
                case_tag: CaseTag::Case0,
            });
        }
    }
    sw.finish()
}

/// Case 0 on the reversed path, mapped back. `ltab_rev` must be the table
/// of `inst.reverse()`.
pub fn case0_reversed<S: Scalar>(
    inst: &PathInstance<S>,
    ltab_rev: &LambdaTable<S>,
) -> CaseOutput<S> {
    mirror_output(inst, case0_impl(&inst.reverse(), ltab_rev, false))
}

/// `k(i)`: smallest `k >= i` with `d_P(v_i, v_k) > d_P(v_1, v_i)`, i.e. the
/// first vertex that `v_1` reaches faster through the new edge. Monotone in
/// `i`, so callers keep one pointer.
#[inline]
fn advance_far<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    k: &mut usize,
    advances: &mut usize,
) -> bool {
    let a = inst.w(i);
    if *k < i {
        *k = i;
    }
    while *k <= inst.n() && !inst.gt(inst.p(i, *k), a) {
        *k += 1;
        *advances += 1;
    }
    *k <= inst.n()
}

/// Center on the new edge, farthest vertices `v_1` and `v_n`.
pub fn case11<S: Scalar>(inst: &PathInstance<S>) -> CaseOutput<S> {
    case11_impl(inst, false)
}

fn case11_impl<S: Scalar>(inst: &PathInstance<S>, audit: bool) -> CaseOutput<S> {
    let n = inst.n();
    let mut sw = Sweep::new(inst, audit);
    let (mut k, mut j) = (1, 1);
    let mut adv = 0;
    for i in 1..=n {
        if !advance_far(inst, i, &mut k, &mut adv) {
            break;
        }
        if j < k {
            j = k;
        }
        // largest j >= k with d_P(v_k, v_j) <= d_P(v_j, v_n)
        while j < n && inst.le(inst.p(k, j + 1), inst.p(j + 1, n)) {
            j += 1;
            adv += 1;
        }
        let (a, b, l) = (inst.w(i), inst.p(j, n), inst.d(i, j));
        let r = (a + l + b).half();
        if inst.le(a, r) && inst.le(b, r) {
            sw.offer(Candidate {
                i,
                j,
                radius: r,
                center: CenterLocation::OnNewEdge {
                    offset: clamp(r - a, S::ZERO, l),
                },
                case_tag: CaseTag::Case11,
            });
        }
    }
    sw.out.advances = adv;
    sw.finish()
}

/// Shared sweep of the two configurations whose far side is `v_{k(i)}`.
fn case121_impl<S: Scalar>(inst: &PathInstance<S>, audit: bool, on_edge: bool) -> CaseOutput<S> {
    let n = inst.n();
    let mut sw = Sweep::new(inst, audit);
    let (mut k, mut j) = (1, 1);
    let mut adv = 0;
    for i in 1..=n {
        if !advance_far(inst, i, &mut k, &mut adv) {
            break;
        }
        if j < k {
            j = k;
        }
        // smallest j >= k with d_P(v_k, v_j) > d_P(v_j, v_n)
        while j <= n && !inst.gt(inst.p(k, j), inst.p(j, n)) {
            j += 1;
            adv += 1;
        }
        if j > n {
            break;
        }
        let (a, l, far) = (inst.w(i), inst.d(i, j), inst.p(k, j));
        let r = (a + l + far).half();
        if on_edge {
            if inst.le(a, r) && inst.le(far, r) {
                sw.offer(Candidate {
                    i,
                    j,
                    radius: r,
                    center: CenterLocation::OnNewEdge {
                        offset: clamp(r - a, S::ZERO, l),
                    },
                    case_tag: CaseTag::Case1211,
                });
            }
        } else if inst.le(a + l, r) && inst.le(inst.p(j, n), a + l) {
            // Center on P(v_k, v_j) at distance r - a - l left of v_j, so
            // that v_1 is reached through the new edge in exactly r.
            let arc = clamp(inst.w(j) - (r - a - l), inst.w(k), inst.w(j));
            sw.offer(Candidate {
                i,
                j,
                radius: r,
                center: CenterLocation::OnPath { arc },
                case_tag: CaseTag::Case1212,
            });
        }
    }
    sw.out.advances = adv;
    sw.finish()
}

/// Center on the new edge, farthest vertices `v_1` and `v_{k(i)}`.
pub fn case1211<S: Scalar>(inst: &PathInstance<S>) -> CaseOutput<S> {
    case121_impl(inst, false, true)
}

/// Center on `P(v_{k(i)}, v_{j(i)})`, farthest vertices `v_1` and `v_{k(i)}`.
pub fn case1212<S: Scalar>(inst: &PathInstance<S>) -> CaseOutput<S> {
    case121_impl(inst, false, false)
}

/// Center on `P(v_i, v_{k(i)})` with `v_1` and `v_{k(i)}` farthest, the far
/// end of the path being reached through the new edge. Both pointers move
/// backwards as `i` grows.
pub fn case122<S: Scalar>(inst: &PathInstance<S>) -> CaseOutput<S> {
    case122_impl(inst, false)
}

fn case122_impl<S: Scalar>(inst: &PathInstance<S>, audit: bool) -> CaseOutput<S> {
    let n = inst.n();
    let mut sw = Sweep::new(inst, audit);
    let mut adv = 0;
    // i1: largest i with d_P(v_1, v_i) < d_P(v_i, v_n)
    let Some(i1) = (1..=n).rev().find(|&i| inst.lt(inst.w(i), inst.p(i, n))) else {
        return sw.finish();
    };
    // i2: smallest i with d_P(v_1, v_i) >= |v_i v_n|
    let Some(i2) = (1..=n).find(|&i| inst.ge(inst.w(i), inst.d(i, n))) else {
        return sw.finish();
    };
    if i2 > i1 {
        return sw.finish();
    }
    let reach = |i: usize, j: usize| inst.d(i, j) + inst.p(j, n);
    let mut j = n;
    let mut k = n;
    for i in i2..=i1 {
        let a = inst.w(i);
        // smallest j with a >= |v_i v_j| + d_P(v_j, v_n); non-increasing in i
        while j < n && !inst.ge(a, reach(i, j)) {
            j += 1;
            adv += 1;
        }
        while j > i && inst.ge(a, reach(i, j - 1)) {
            j -= 1;
            adv += 1;
        }
        if !inst.ge(a, reach(i, j)) {
            continue;
        }
        // largest k in [i, j] with a < |v_i v_j| + d_P(v_j, v_k)
        let l = inst.d(i, j);
        if k > j {
            adv += k - j;
            k = j;
        }
        while k >= i && !inst.lt(a, l + inst.p(j, k)) {
            k -= 1;
            adv += 1;
        }
        if k < i {
            k = i;
            continue;
        }
        if inst.lt(a, inst.p(i, k)) {
            let r = inst.w(k).half();
            sw.offer(Candidate {
                i,
                j,
                radius: r,
                center: CenterLocation::OnPath { arc: r },
                case_tag: CaseTag::Case122,
            });
        }
    }
    sw.out.advances = adv;
    sw.finish()
}

/// The four configurations above, run on the reversed path and mapped back.
pub fn case2<S: Scalar>(inst: &PathInstance<S>) -> Vec<CaseOutput<S>> {
    case2_impl(inst, false)
}

fn case2_impl<S: Scalar>(inst: &PathInstance<S>, audit: bool) -> Vec<CaseOutput<S>> {
    let rev = inst.reverse();
    vec![
        mirror_output(inst, case11_impl(&rev, audit)),
        mirror_output(inst, case121_impl(&rev, audit, true)),
        mirror_output(inst, case121_impl(&rev, audit, false)),
        mirror_output(inst, case122_impl(&rev, audit)),
    ]
}

/// Which candidates of the cycle configuration to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case3Variant {
    /// Every `(i(k), j(k))`, with the radius raised to the eccentricity
    /// towards `v_1` and `v_n` when those are farther than `r(k)`.
    Unified,
    /// Only candidates whose center falls on the new edge and whose radius
    /// needs no raising.
    OnEdge,
    /// Only candidates centered on `P(v_{k+1}, v_j)`, radius not raised.
    RightOfCut,
    /// Only candidates centered on `P(v_i, v_k)`, radius not raised.
    LeftOfCut,
}

/// Center on the cycle `C(i, j)`, farthest vertices `v_k` and `v_{k+1}`
/// on opposite sides of the center.
pub fn case3<S: Scalar>(inst: &PathInstance<S>) -> CaseOutput<S> {
    case3_impl(inst, false, Case3Variant::Unified)
}

pub fn case3_variant<S: Scalar>(inst: &PathInstance<S>, variant: Case3Variant) -> CaseOutput<S> {
    case3_impl(inst, false, variant)
}

fn case3_impl<S: Scalar>(
    inst: &PathInstance<S>,
    audit: bool,
    variant: Case3Variant,
) -> CaseOutput<S> {
    let n = inst.n();
    let mut sw = Sweep::new(inst, audit);
    if n < 4 {
        return sw.finish();
    }
    let mut adv = 0;
    let mut i = 1;
    let mut j = 3;
    for k in 2..=n - 2 {
        // largest i <= k with d_P(v_1, v_i) < d_P(v_i, v_k)
        while i < k && inst.lt(inst.w(i + 1), inst.p(i + 1, k)) {
            i += 1;
            adv += 1;
        }
        // smallest j >= k + 1 with d_P(v_j, v_n) < d_P(v_{k+1}, v_j)
        if j < k + 1 {
            j = k + 1;
        }
        while j < n && !inst.lt(inst.p(j, n), inst.p(k + 1, j)) {
            j += 1;
            adv += 1;
        }
        let l = inst.d(i, j);
        let left = inst.p(i, k);
        let r = (left + l + inst.p(k + 1, j)).half();
        let x = r - left;
        let (center, region) = if x < S::ZERO {
            (
                CenterLocation::OnPath {
                    arc: clamp(inst.w(k) - r, inst.w(i), inst.w(k)),
                },
                Case3Variant::LeftOfCut,
            )
        } else if x > l {
            (
                CenterLocation::OnPath {
                    arc: clamp(inst.w(k + 1) + r, inst.w(k + 1), inst.w(j)),
                },
                Case3Variant::RightOfCut,
            )
        } else {
            (
                CenterLocation::OnNewEdge { offset: x },
                Case3Variant::OnEdge,
            )
        };
        let ends = dist_point_vertex_unchecked(inst, i, j, center, 1)
            .max_of(dist_point_vertex_unchecked(inst, i, j, center, n));
        let tag = match region {
            Case3Variant::LeftOfCut | Case3Variant::RightOfCut => CaseTag::Case32,
            _ => CaseTag::Case31,
        };
        let cand = match variant {
            Case3Variant::Unified => Some(Candidate {
                i,
                j,
                radius: r.max_of(ends),
                center,
                case_tag: CaseTag::Case3,
            }),
            v if v == region && inst.le(ends, r) => Some(Candidate {
                i,
                j,
                radius: r,
                center,
                case_tag: tag,
            }),
            _ => None,
        };
        if let Some(c) = cand {
            sw.offer(c);
        }
    }
    sw.out.advances = adv;
    sw.finish()
}

/// Optimal augmentation in O(n).
pub fn solve<S: Scalar>(inst: &PathInstance<S>) -> Solution<S> {
    solve_with(inst, SolveOptions::default())
}

pub fn solve_with<S: Scalar>(inst: &PathInstance<S>, opts: SolveOptions) -> Solution<S> {
    let rev = inst.reverse();
    let ltab = compute_lambda_table(inst);
    let ltab_rev = compute_lambda_table(&rev);
    let audit = opts.audit;

    let no_edge = Candidate::no_edge(inst);
    let mut outputs: Vec<(CaseTag, CaseOutput<S>)> = vec![(
        CaseTag::NoEdge,
        CaseOutput {
            best: Some(no_edge),
            emitted: vec![no_edge],
            advances: 0,
        },
    )];
    if inst.n() >= 2 {
        outputs.push((CaseTag::Case0, case0_impl(inst, &ltab, audit)));
        outputs.push((
            CaseTag::Case0Mirror,
            mirror_output(inst, case0_impl(&rev, &ltab_rev, audit)),
        ));
        outputs.push((CaseTag::Case11, case11_impl(inst, audit)));
        outputs.push((CaseTag::Case1211, case121_impl(inst, audit, true)));
        outputs.push((CaseTag::Case1212, case121_impl(inst, audit, false)));
        outputs.push((CaseTag::Case122, case122_impl(inst, audit)));
        let mirrored = [
            CaseTag::Case11Mirror,
            CaseTag::Case1211Mirror,
            CaseTag::Case1212Mirror,
            CaseTag::Case122Mirror,
        ];
        for (tag, out) in mirrored.into_iter().zip(case2_impl(inst, audit)) {
            outputs.push((tag, out));
        }
        outputs.push((
            CaseTag::Case3,
            case3_impl(inst, audit, Case3Variant::Unified),
        ));
        if opts.filtered_case3 {
            for v in [
                Case3Variant::OnEdge,
                Case3Variant::RightOfCut,
                Case3Variant::LeftOfCut,
            ] {
                let tag = if v == Case3Variant::OnEdge {
                    CaseTag::Case31
                } else {
                    CaseTag::Case32
                };
                outputs.push((tag, case3_impl(inst, audit, v)));
            }
        }
    }

    let mut stats = SolveStats {
        lambda: ltab.counters,
        lambda_reversed: ltab_rev.counters,
        sweeps: Vec::new(),
    };
    let mut all = Vec::new();
    let mut emitted = Vec::new();
    let mut best = no_edge;
    for (tag, out) in outputs {
        stats.sweeps.push(SweepStat {
            case_tag: tag,
            advances: out.advances,
        });
        if let Some(c) = out.best {
            let c = c.canonical(inst);
            if c.beats(&best, inst) {
                best = c;
            }
            all.push(c);
        }
        emitted.extend(out.emitted.into_iter().map(|c| c.canonical(inst)));
    }
    Solution {
        best,
        all_candidates: all,
        audit: emitted,
        stats,
    }
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

    fn cycle(n: i64) -> PathInstance<HalfInt> {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| ((a - b).abs()).min(n - (a - b).abs()) as f64)
                    .collect()
            })
            .collect();
        PathInstance::from_matrix(&rows).unwrap()
    }

    #[test]
    fn line4_optimum() {
        let l = line4();
        let sol = solve(&l);
        assert_eq!(sol.best.radius, 1.5);
        let c0 = case0(&l, &compute_lambda_table(&l)).best.unwrap();
        assert_eq!(c0.radius, 1.5);
        // i = 3 (2 + 1) ties with i = 4 (3 + 0); the smaller pair wins.
        assert_eq!(c0.i, 3);
        assert_eq!(c0.center, CenterLocation::OnPath { arc: 1.5 });
    }

    #[test]
    fn cycle8_radius() {
        let sol = solve(&cycle(8));
        assert_eq!(sol.best.radius, HalfInt(7));
    }

    #[test]
    fn tiny_paths() {
        let one = PathInstance::<f64>::from_points(&[vec![1.0]], MetricKind::L1).unwrap();
        let s = solve(&one);
        assert_eq!(s.best.radius, 0.0);
        assert_eq!(s.best.center, CenterLocation::OnPath { arc: 0.0 });
        let two = PathInstance::<f64>::from_matrix(&[vec![0.0, 7.0], vec![7.0, 0.0]]).unwrap();
        assert_eq!(solve(&two).best.radius, 3.5);
        assert_eq!(case11(&two).best.map(|c| c.radius), Some(3.5));
    }

    #[test]
    fn mirror_is_involution() {
        let c = cycle(8);
        let cand = Candidate {
            i: 2,
            j: 6,
            radius: HalfInt(5),
            center: CenterLocation::OnNewEdge { offset: HalfInt(1) },
            case_tag: CaseTag::Case11,
        };
        let m = cand.mirror(&c);
        assert_eq!((m.i, m.j, m.case_tag), (3, 7, CaseTag::Case11Mirror));
        assert_eq!(m.mirror(&c), cand);
    }

    #[test]
    fn canonical_no_op_edges() {
        let l = line4();
        let c = Candidate {
            i: 2,
            j: 3,
            radius: 1.5,
            center: CenterLocation::OnNewEdge { offset: 0.5 },
            case_tag: CaseTag::Case11,
        };
        let k = c.canonical(&l);
        assert_eq!((k.i, k.j, k.case_tag), (1, 1, CaseTag::NoEdge));
        assert_eq!(k.center, CenterLocation::OnPath { arc: 1.5 });
    }

    #[test]
    fn labels_round_trip() {
        for t in CaseTag::ALL {
            assert_eq!(CaseTag::from_label(t.label()), Some(t));
        }
    }
}
