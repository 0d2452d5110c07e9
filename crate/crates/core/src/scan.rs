//! Linear-time computation of `λ_i` and `j(i)` for every `i`.
//!
//! For a pair `(i, j)` the augmented graph `G(i, j)` contains the cycle
//! `C(i, j)`. From `v_i`, vertices in `[i, j]` are reached around the cycle
//! (farthest distance `β(i, j)`) and vertices beyond `j` through the new edge
//! (farthest distance `γ(i, j)`). `λ_i` is the best achievable
//! `α(i, j) = max(β, γ)` over `j ∈ [i, n]`.

use crate::error::{Result, RoapError};
use crate::metric::PathInstance;
use crate::scalar::Scalar;

/// Which value `γ(i, n)` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaConvention {
    /// `|v_i v_j| + d_P(v_j, v_n)` for every `j`, so `γ(i, n) = |v_i v_n|`.
    Formula,
    /// Same as `Formula` except `γ(i, n) = 0`: no vertex lies beyond `v_n`.
    /// This is the value used inside `α`.
    EmptyTail,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanCounters {
    pub beta_evals: usize,
    pub k_advances: usize,
    pub j_advances: usize,
}

#[derive(Debug, Clone)]
pub struct LambdaTable<S> {
    /// `lambda[i - 1] = λ_i`.
    pub lambda: Vec<S>,
    /// `jopt[i - 1] = j(i)`.
    pub jopt: Vec<usize>,
    /// `jprime[i - 1] = j′(i)`, the smallest `j` with `γ(i, j) <= β(i, j)`.
    pub jprime: Vec<usize>,
    pub counters: ScanCounters,
}

impl<S: Scalar> LambdaTable<S> {
    pub fn lambda_at(&self, i: usize) -> S {
        self.lambda[i - 1]
    }

    pub fn jopt_at(&self, i: usize) -> usize {
        self.jopt[i - 1]
    }
}

/// Sweep positions and the cached values of the current row.
#[derive(Debug, Clone, Copy)]
struct ScanState<S> {
    i: usize,
    j: usize,
    k: usize,
    gamma_prev: Option<S>,
    gamma_cur: S,
    beta_prev: Option<S>,
    beta_cur: S,
}

#[inline]
pub(crate) fn gamma_raw<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    conv: GammaConvention,
) -> S {
    if j == inst.n() && conv == GammaConvention::EmptyTail {
        S::ZERO
    } else {
        inst.d(i, j) + inst.p(j, inst.n())
    }
}

pub fn gamma<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    conv: GammaConvention,
) -> Result<S> {
    inst.check_pair(i, j)?;
    Ok(gamma_raw(inst, i, j, conv))
}

/// `d_C(v_i, v_k)` on the cycle `C(i, j)`.
#[inline]
pub(crate) fn cycle_dist<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize, k: usize) -> S {
    inst.p(i, k).min_of(inst.d(i, j) + inst.p(k, j))
}

/// The defining predicate of `I′(i, j)`.
#[inline]
fn iprime_pred<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize, k: usize) -> bool {
    inst.ge(inst.p(i, k), inst.d(i, j) + inst.p(k, j))
}

/// Walks `k` forward until the `I′` predicate holds. Stops at `j` even if
/// the predicate never holds, which only happens on non-metric input.
#[inline]
fn advance_k<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    mut k: usize,
    advances: &mut usize,
) -> usize {
    while k < j && !iprime_pred(inst, i, j, k) {
        k += 1;
        *advances += 1;
    }
    k
}

#[inline]
fn beta_at<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize, k: usize) -> S {
    let at = cycle_dist(inst, i, j, k);
    if k > i {
        at.max_of(cycle_dist(inst, i, j, k - 1))
    } else {
        at
    }
}

/// `I′(i, j)`: the smallest `k ∈ [i, j]` with
/// `d_P(v_i, v_k) >= |v_i v_j| + d_P(v_k, v_j)`, searched forward from
/// `hint_k`.
///
/// A hint past the true threshold is detected in O(1) (the predicate already
/// holds one step before the hint) and reported as a contract violation.
pub fn i_prime<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    hint_k: usize,
) -> Result<usize> {
    inst.check_pair(i, j)?;
    if hint_k > j {
        return Err(RoapError::ContractViolation(format!(
            "hint {hint_k} lies beyond j = {j}"
        )));
    }
    let start = hint_k.max(i);
    if start > i && iprime_pred(inst, i, j, start - 1) {
        return Err(RoapError::ContractViolation(format!(
            "hint {hint_k} skips past I′({i}, {j})"
        )));
    }
    let mut unused = 0;
    Ok(advance_k(inst, i, j, start, &mut unused))
}

/// `β(i, j) = max_{k ∈ [i, j]} d_C(v_i, v_k)`, attained at `I′` or `I′ - 1`.
/// Returns `β` together with `I′(i, j)` for use as the next hint.
pub fn beta<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
    hint_k: usize,
) -> Result<(S, usize)> {
    let k = i_prime(inst, i, j, hint_k)?;
    Ok((beta_at(inst, i, j, k), k))
}

/// `α(i, j) = max(β(i, j), γ(i, j))` with the empty-tail convention.
pub fn alpha<S: Scalar>(inst: &PathInstance<S>, i: usize, j: usize) -> Result<S> {
    let (b, _) = beta(inst, i, j, i)?;
    Ok(b.max_of(gamma_raw(inst, i, j, GammaConvention::EmptyTail)))
}

/// Computes `λ_i` and `j(i)` for all `i` in O(n).
///
/// The pointers `j` and `k` only move forward. For each row, `j` advances to
/// `j′(i)`, the first index where `γ` drops to `β`; then
/// `λ_i = min(α(i, j′ - 1), α(i, j′))`, where `α(i, j′ - 1) = γ(i, j′ - 1)`
/// and `α(i, j′) = β(i, j′)`.
pub fn compute_lambda_table<S: Scalar>(inst: &PathInstance<S>) -> LambdaTable<S> {
    run_scan(inst, false).expect("unchecked scan cannot fail")
}

/// As [`compute_lambda_table`], but recomputes every `I′` and `j′` from
/// scratch and reports any disagreement with the incremental pointers.
/// Quadratic to cubic time; meant for tests.
pub fn compute_lambda_table_checked<S: Scalar>(inst: &PathInstance<S>) -> Result<LambdaTable<S>> {
    run_scan(inst, true)
}

fn fresh_jprime<S: Scalar>(inst: &PathInstance<S>, i: usize) -> usize {
    let mut unused = 0;
    for j in i..=inst.n() {
        let k = advance_k(inst, i, j, i, &mut unused);
        let b = beta_at(inst, i, j, k);
        if inst.le(gamma_raw(inst, i, j, GammaConvention::EmptyTail), b) {
            return j;
        }
    }
    inst.n()
}

fn run_scan<S: Scalar>(inst: &PathInstance<S>, checked: bool) -> Result<LambdaTable<S>> {
    let n = inst.n();
    let mut table = LambdaTable {
        lambda: Vec::with_capacity(n),
        jopt: Vec::with_capacity(n),
        jprime: Vec::with_capacity(n),
        counters: ScanCounters::default(),
    };
    let mut st = ScanState {
        i: 1,
        j: 1,
        k: 1,
        gamma_prev: None,
        gamma_cur: S::ZERO,
        beta_prev: None,
        beta_cur: S::ZERO,
    };
    let c = &mut table.counters;
    for i in 1..=n {
        st.i = i;
        if st.j < i {
            c.j_advances += i - st.j;
            st.j = i;
        }
        if st.k < i {
            c.k_advances += i - st.k;
            st.k = i;
        }
        st.gamma_prev = None;
        st.beta_prev = None;
        loop {
            let j = st.j;
            st.k = advance_k(inst, i, j, st.k, &mut c.k_advances);
            if checked {
                let mut unused = 0;
                let fresh = advance_k(inst, i, j, i, &mut unused);
                if fresh != st.k {
                    return Err(RoapError::ContractViolation(format!(
                        "incremental I′({i}, {j}) = {} but a fresh scan gives {fresh}",
                        st.k
                    )));
                }
            }
            c.beta_evals += 1;
            st.beta_cur = beta_at(inst, i, j, st.k);
            st.gamma_cur = gamma_raw(inst, i, j, GammaConvention::EmptyTail);
            if inst.le(st.gamma_cur, st.beta_cur) || j == n {
                break;
            }
            st.gamma_prev = Some(st.gamma_cur);
            st.beta_prev = Some(st.beta_cur);
            st.j += 1;
            c.j_advances += 1;
        }
        let jp = st.j;
        if checked {
            let fresh = fresh_jprime(inst, i);
            if fresh != jp {
                return Err(RoapError::ContractViolation(format!(
                    "incremental j′({i}) = {jp} but a fresh scan gives {fresh}"
                )));
            }
        }
        let here = st.beta_cur.max_of(st.gamma_cur);
        let (lam, jo) = if jp > i {
            let before = match (st.gamma_prev, st.beta_prev) {
                (Some(g), Some(b)) => g.max_of(b),
                _ => gamma_raw(inst, i, jp - 1, GammaConvention::EmptyTail),
            };
            if inst.le(before, here) {
                (before.min_of(here), jp - 1)
            } else {
                (here, jp)
            }
        } else {
            (here, jp)
        };
        table.lambda.push(lam);
        table.jopt.push(jo);
        table.jprime.push(jp);
    }
    Ok(table)
}
