//! Checks of the fast algorithms against the oracle and of the structural
//! facts they rely on. Every function returns the problems it found; an
//! empty list (or `Ok`) means the instance passed.

use crate::metric::PathInstance;
use crate::oracle::{center_bruteforce, eccentricity, lambda_bruteforce, roap_bruteforce};
use crate::query::QueryStructure;
use crate::scalar::Scalar;
use crate::scan::{
    alpha, beta, compute_lambda_table_checked, cycle_dist, gamma_raw, i_prime, GammaConvention,
};
use crate::solver::{Candidate, Solution};

/// Relative tolerance for comparing results against the oracle.
pub const VERIFY_TOL: f64 = 1e-9;

/// `|a - b| <= VERIFY_TOL * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= VERIFY_TOL * a.abs().max(b.abs()).max(1.0)
}

/// `a <= b` up to [`VERIFY_TOL`].
pub fn at_most(a: f64, b: f64) -> bool {
    a <= b + VERIFY_TOL * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub what: String,
    pub expected: f64,
    pub actual: f64,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: expected {}, got {}",
            self.what, self.expected, self.actual
        )
    }
}

/// Compares a solution's radius with the exhaustive optimum and checks
/// that its center really achieves that radius.
pub fn check_solution<S: Scalar>(
    inst: &PathInstance<S>,
    sol: &Solution<S>,
    cap: usize,
) -> Result<(), Mismatch> {
    let truth = roap_bruteforce(inst, cap).map_err(|e| Mismatch {
        what: format!("oracle failed: {e}"),
        expected: f64::NAN,
        actual: f64::NAN,
    })?;
    let (want, got) = (truth.best.radius.to_f64(), sol.best.radius.to_f64());
    if !close(want, got) {
        return Err(Mismatch {
            what: format!(
                "solver radius (pair ({}, {}), {})",
                sol.best.i,
                sol.best.j,
                sol.best.case_tag.label()
            ),
            expected: want,
            actual: got,
        });
    }
    check_feasible(inst, &sol.best)
}

/// Checks that the candidate's center is within its radius of every vertex.
pub fn check_feasible<S: Scalar>(inst: &PathInstance<S>, c: &Candidate<S>) -> Result<(), Mismatch> {
    let ecc = eccentricity(inst, c.i, c.j, c.center)
        .map_err(|e| Mismatch {
            what: format!(
                "candidate ({}, {}) {} has an invalid center: {e}",
                c.i,
                c.j,
                c.case_tag.label()
            ),
            expected: f64::NAN,
            actual: f64::NAN,
        })?
        .to_f64();
    if !at_most(ecc, c.radius.to_f64()) {
        return Err(Mismatch {
            what: format!(
                "eccentricity of candidate ({}, {}) {} at {:?}",
                c.i,
                c.j,
                c.case_tag.label(),
                c.center.map(S::to_f64)
            ),
            expected: c.radius.to_f64(),
            actual: ecc,
        });
    }
    Ok(())
}

/// Every candidate that fails [`check_feasible`].
pub fn infeasible<S: Scalar>(inst: &PathInstance<S>, cands: &[Candidate<S>]) -> Vec<Mismatch> {
    cands
        .iter()
        .filter_map(|c| check_feasible(inst, c).err())
        .collect()
}

/// Runs the query for every pair and compares radius and center with the
/// exhaustive per-pair center. Returns the number of pairs checked.
pub fn check_queries<S: Scalar>(
    inst: &PathInstance<S>,
    qs: &QueryStructure<S>,
) -> Result<usize, Mismatch> {
    let n = inst.n();
    let mut pairs = 0;
    for i in 1..=n {
        for j in i..=n {
            pairs += 1;
            let q = qs.query(i, j).expect("pair is in range");
            let truth = center_bruteforce(inst, i, j).expect("pair is in range");
            let (want, got) = (truth.radius.to_f64(), q.radius.to_f64());
            if !close(want, got) {
                return Err(Mismatch {
                    what: format!("query ({i}, {j}) radius, {}", q.case_tag.label()),
                    expected: want,
                    actual: got,
                });
            }
            let ecc = eccentricity(inst, i, j, q.center)
                .map_err(|e| Mismatch {
                    what: format!("query ({i}, {j}) center invalid: {e}"),
                    expected: want,
                    actual: f64::NAN,
                })?
                .to_f64();
            if !close(ecc, got) {
                return Err(Mismatch {
                    what: format!(
                        "query ({i}, {j}) center eccentricity, {}",
                        q.case_tag.label()
                    ),
                    expected: got,
                    actual: ecc,
                });
            }
        }
    }
    Ok(pairs)
}

/// Compares the lambda table entrywise with the brute-force definition.
pub fn lambda_violations<S: Scalar>(inst: &PathInstance<S>) -> Vec<String> {
    let mut out = Vec::new();
    let table = match compute_lambda_table_checked(inst) {
        Ok(t) => t,
        Err(e) => return vec![e.to_string()],
    };
    for i in 1..=inst.n() {
        let (want, _) = lambda_bruteforce(inst, i).expect("index in range");
        let got = table.lambda_at(i);
        if !close(want.to_f64(), got.to_f64()) {
            out.push(format!("λ_{i}: brute force {want}, table {got}"));
        }
        let jo = table.jopt_at(i);
        if jo < i || jo > inst.n() {
            out.push(format!("j({i}) = {jo} outside [{i}, n]"));
            continue;
        }
        let at = alpha(inst, i, jo).expect("pair in range");
        if !close(at.to_f64(), got.to_f64()) {
            out.push(format!(
                "α({i}, j({i}) = {jo}) = {at} differs from λ_{i} = {got}"
            ));
        }
    }
    out
}

/// Checks the monotonicity facts the linear sweeps depend on, by fresh
/// computation for every index. O(n^3).
pub fn lemma_violations<S: Scalar>(inst: &PathInstance<S>) -> Vec<String> {
    let n = inst.n();
    let mut out = Vec::new();
    let le = |a: S, b: S| inst.le(a, b);

    // γ(i, j) is non-increasing in j (Formula convention, j < n). This is
    // also the monotonicity of |v_i v_j| + d_P(v_j, v_n) used by the
    // backward sweep.
    for i in 1..=n {
        for j in i..n {
            let (g0, g1) = (
                gamma_raw(inst, i, j, GammaConvention::Formula),
                gamma_raw(inst, i, j + 1, GammaConvention::Formula),
            );
            if !le(g1, g0) {
                out.push(format!("γ({i}, {j}) = {g0} < γ({i}, {}) = {g1}", j + 1));
            }
        }
    }

    // I′ and β.
    let ip = |i: usize, j: usize| i_prime(inst, i, j, i).expect("pair in range");
    for i in 1..=n {
        for j in i..=n {
            let k = ip(i, j);
            if j < n && k > ip(i, j + 1) {
                out.push(format!(
                    "I′({i}, {j}) = {k} > I′({i}, {}) = {}",
                    j + 1,
                    ip(i, j + 1)
                ));
            }
            if i < j && k > ip(i + 1, j) {
                out.push(format!(
                    "I′({i}, {j}) = {k} > I′({}, {j}) = {}",
                    i + 1,
                    ip(i + 1, j)
                ));
            }
            let (b, _) = beta(inst, i, j, i).expect("pair in range");
            let brute = (i..=j)
                .map(|m| cycle_dist(inst, i, j, m))
                .fold(S::ZERO, S::max_of);
            if !inst.approx_eq(b, brute) {
                out.push(format!(
                    "max of d_C(v_{i}, ·) on C({i}, {j}) is {brute}, not at I′ = {k} or I′ - 1 ({b})"
                ));
            }
            if j < n {
                let (b1, _) = beta(inst, i, j + 1, i).expect("pair in range");
                if !le(b, b1) {
                    out.push(format!("β({i}, {j}) = {b} > β({i}, {}) = {b1}", j + 1));
                }
            }
        }
    }

    // j′ and j(i).
    match compute_lambda_table_checked(inst) {
        Ok(t) => {
            for i in 1..=n {
                let (jp, jo) = (t.jprime[i - 1], t.jopt[i - 1]);
                if jo != jp && jo + 1 != jp {
                    out.push(format!(
                        "j({i}) = {jo} is neither j′({i}) = {jp} nor j′({i}) - 1"
                    ));
                }
                if i < n && jp > t.jprime[i] {
                    out.push(format!("j′({i}) = {jp} > j′({}) = {}", i + 1, t.jprime[i]));
                }
            }
        }
        Err(e) => out.push(e.to_string()),
    }

    out.extend(sweep_violations(inst));
    out
}

/// Monotonicity of the pointers of the path-end configurations, computed
/// from scratch for each `i`.
fn sweep_violations<S: Scalar>(inst: &PathInstance<S>) -> Vec<String> {
    let n = inst.n();
    let mut out = Vec::new();
    // k(i): first vertex v_1 reaches faster through the new edge than v_i
    // does along the path.
    let far = |i: usize| (i..=n).find(|&k| inst.gt(inst.p(i, k), inst.w(i)));
    let mut prev: Option<(usize, usize, usize)> = None;
    for i in 1..=n {
        let Some(k) = far(i) else { break };
        let j_le = (k..=n)
            .rev()
            .find(|&j| inst.le(inst.p(k, j), inst.p(j, n)))
            .unwrap_or(k);
        let j_gt = (k..=n)
            .find(|&j| inst.gt(inst.p(k, j), inst.p(j, n)))
            .unwrap_or(n + 1);
        if let Some((pk, pl, pg)) = prev {
            if k < pk || j_le < pl || j_gt < pg {
                out.push(format!(
                    "forward sweep pointers shrink at i = {i}: k {pk} -> {k}, j {pl} -> {j_le}, j {pg} -> {j_gt}"
                ));
            }
        }
        prev = Some((k, j_le, j_gt));
    }

    // Backward sweep over [i2, i1].
    let i1 = (1..=n).rev().find(|&i| inst.lt(inst.w(i), inst.p(i, n)));
    let i2 = (1..=n).find(|&i| inst.ge(inst.w(i), inst.d(i, n)));
    if let (Some(i1), Some(i2)) = (i1, i2) {
        let mut prev: Option<(usize, usize)> = None;
        for i in i2..=i1 {
            let a = inst.w(i);
            let Some(j) = (i..=n).find(|&j| inst.ge(a, inst.d(i, j) + inst.p(j, n))) else {
                out.push(format!("no j(i) for i = {i} inside [{i2}, {i1}]"));
                continue;
            };
            let l = inst.d(i, j);
            let k = (i..=j)
                .rev()
                .find(|&k| inst.lt(a, l + inst.p(j, k)))
                .unwrap_or(0);
            if let Some((pj, pk)) = prev {
                if j > pj || k > pk {
                    out.push(format!(
                        "backward sweep pointers grow at i = {i}: j {pj} -> {j}, k {pk} -> {k}"
                    ));
                }
            }
            prev = Some((j, k));
        }
    }
    out
}
