//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use roap_cli::{query_budget, RunReport};
use roap_core::audit::{
    check_queries, check_solution, infeasible, lambda_violations, lemma_violations,
};
use roap_core::gen;
use roap_core::io::InstanceData;
use roap_core::solver::{solve_with, SolveOptions};
use roap_core::{
    compute_lambda_table, solve, HalfInt, MetricKind, PathInstance, QueryStructure, Scalar,
};

/// Cycle radius tolerance in float mode.
const CYCLE_TOL: f64 = 1e-12;
const QUERY_TIME_LIMIT: Duration = Duration::from_millis(1);
const RATIO_RANGE: (f64, f64) = (6.0, 14.0);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, ok_detail: String) -> Outcome {
    match problems.first() {
        None => Outcome {
            pass: true,
            detail: ok_detail,
        },
        Some(p) => Outcome {
            pass: false,
            detail: format!("{} problem(s), first: {p}", problems.len()),
        },
    }
}

fn euclid(n: usize, seed: u64) -> PathInstance<f64> {
    gen::random_euclidean(n, 2, seed)
        .build(MetricKind::Euclidean)
        .unwrap()
}

fn closure(n: usize, seed: u64) -> PathInstance<HalfInt> {
    gen::random_metric_closure(n, 100, seed)
        .build(MetricKind::Euclidean)
        .unwrap()
}

fn fastest<T>(reps: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn cycle_reproduction() -> Outcome {
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in [4usize, 8, 16, 64] {
        let data = gen::cycle_metric(n);
        let exact: PathInstance<HalfInt> = data.build(MetricKind::Euclidean).unwrap();
        let q = QueryStructure::preprocess(&exact).query(1, n).unwrap();
        if q.radius.doubled() != n as i64 - 1 {
            problems.push(format!(
                "n = {n}: integer radius {} != {}/2",
                q.radius,
                n - 1
            ));
        }
        let InstanceData::Matrix { values, .. } = data else {
            unreachable!()
        };
        let scaled = InstanceData::Matrix {
            n,
            values: values.iter().map(|v| v / n as f64).collect(),
        };
        let float: PathInstance<f64> = scaled.build(MetricKind::Euclidean).unwrap();
        let qs = QueryStructure::preprocess(&float);
        let r = qs.query(1, n).unwrap().radius;
        let want = (1.0 - 1.0 / n as f64) / 2.0;
        if (r - want).abs() > CYCLE_TOL {
            problems.push(format!("n = {n}: float radius {r} != {want}"));
        }
        let t = fastest(20, || qs.query(1, n).unwrap());
        slowest = slowest.max(t);
        if t >= QUERY_TIME_LIMIT {
            problems.push(format!("n = {n}: query took {t:?}"));
        }
    }
    outcome(
        problems,
        format!("radii (n-1)/2 and (1-1/n)/2 reproduced, slowest query {slowest:?}"),
    )
}

/// Instance list shared by the solver and feasibility criteria.
fn solver_corpus() -> (Vec<PathInstance<f64>>, Vec<PathInstance<HalfInt>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let eu = (0..1000)
        .map(|_| euclid(rng.gen_range(1..=40), rng.gen()))
        .collect();
    let cl = (0..200)
        .map(|_| closure(rng.gen_range(1..=30), rng.gen()))
        .collect();
    (eu, cl)
}

fn solver_checks<S: Scalar>(insts: &[PathInstance<S>]) -> (Vec<String>, Vec<String>, usize) {
    let per: Vec<(Option<String>, Option<String>, usize)> = insts
        .par_iter()
        .enumerate()
        .map(|(k, inst)| {
            let sol = solve_with(
                inst,
                SolveOptions {
                    audit: true,
                    filtered_case3: true,
                },
            );
            let opt = check_solution(inst, &sol, usize::MAX)
                .err()
                .map(|m| format!("instance {k} (n = {}): {m}", inst.n()));
            let feas = infeasible(inst, &sol.audit)
                .first()
                .map(|m| format!("instance {k} (n = {}): {m}", inst.n()));
            (opt, feas, sol.audit.len())
        })
        .collect();
    let mut opt = Vec::new();
    let mut feas = Vec::new();
    let mut count = 0;
    for (a, b, c) in per {
        opt.extend(a);
        feas.extend(b);
        count += c;
    }
    (opt, feas, count)
}

fn query_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let specs: Vec<(bool, usize, u64)> = (0..200)
        .map(|k| (k % 4 == 3, rng.gen_range(1..=60), rng.gen()))
        .collect();
    let res: Vec<Result<usize, String>> = specs
        .par_iter()
        .map(|&(is_closure, n, seed)| {
            let r = if is_closure {
                let inst = closure(n, seed);
                check_queries(&inst, &QueryStructure::preprocess(&inst))
            } else {
                let inst = euclid(n, seed);
                check_queries(&inst, &QueryStructure::preprocess(&inst))
            };
            r.map_err(|m| format!("n = {n}, seed {seed}: {m}"))
        })
        .collect();
    let pairs: usize = res.iter().filter_map(|r| r.as_ref().ok()).sum();
    let problems = res.into_iter().filter_map(Result::err).collect();
    outcome(
        problems,
        format!("200 instances, {pairs} pairs, radius and center eccentricity agree"),
    )
}

fn lemma_corpus() -> Vec<(String, Vec<String>, Vec<String>)> {
    (0..240u64)
        .into_par_iter()
        .map(|k| {
            let n = 1 + (k as usize * 7) % 40;
            match k % 3 {
                0 => {
                    let i = euclid(n, k);
                    (
                        format!("euclidean n={n} seed={k}"),
                        lemma_violations(&i),
                        lambda_violations(&i),
                    )
                }
                1 => {
                    let i = closure(n, k);
                    (
                        format!("closure n={n} seed={k}"),
                        lemma_violations(&i),
                        lambda_violations(&i),
                    )
                }
                _ => {
                    let i: PathInstance<HalfInt> = gen::random_integer_points(n, 2, 7, k)
                        .build(MetricKind::L1)
                        .unwrap();
                    (
                        format!("grid n={n} seed={k}"),
                        lemma_violations(&i),
                        lambda_violations(&i),
                    )
                }
            }
        })
        .collect()
}

fn complexity() -> Outcome {
    let mut problems = Vec::new();
    for n in [10usize, 1000, 100_000, 1_000_000] {
        let inst = euclid(n, n as u64);
        for (label, t) in [
            ("forward", compute_lambda_table(&inst)),
            ("reversed", compute_lambda_table(&inst.reverse())),
        ] {
            let c = t.counters;
            if c.beta_evals > 2 * n || c.k_advances > n {
                problems.push(format!("n = {n} {label}: {c:?}"));
            }
        }
        let qs = QueryStructure::preprocess(&inst);
        let budget = query_budget(n);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst = 0;
        for _ in 0..2000 {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            worst = worst.max(qs.query(a.min(b), a.max(b)).unwrap().comparisons);
        }
        let far = qs.query(1, n).unwrap().comparisons;
        if (worst.max(far) as f64) > budget {
            problems.push(format!(
                "n = {n}: {} comparisons > {budget:.0}",
                worst.max(far)
            ));
        }
    }
    let line =
        |n: usize| -> PathInstance<f64> { gen::line(n).build(MetricKind::Euclidean).unwrap() };
    let (small, big) = (line(100_000), line(1_000_000));
    let ts = fastest(15, || solve(&small).best.radius);
    let tb = fastest(5, || solve(&big).best.radius);
    let ratio = tb.as_secs_f64() / ts.as_secs_f64();
    if !(RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio) {
        problems.push(format!(
            "solve(10^6)/solve(10^5) = {ratio:.2} ({tb:?} / {ts:?})"
        ));
    }
    outcome(
        problems,
        format!("counters within budget up to n = 10^6, time ratio {ratio:.2} ({tb:?} / {ts:?})"),
    )
}

fn strip_time(text: &[u8]) -> Result<RunReport, String> {
    let mut r: RunReport = serde_json::from_slice(text).map_err(|e| e.to_string())?;
    r.wall_time_ms = 0.0;
    Ok(r)
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_roap"))
            .args(["verify", "--random", "--seed", "7", "--count", "100"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let mut problems = Vec::new();
    if !a.status.success() || !b.status.success() {
        problems.push(format!(
            "exit codes {:?} and {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    match (strip_time(&a.stdout), strip_time(&b.stdout)) {
        (Ok(x), Ok(y)) if x == y => {}
        (Ok(_), Ok(_)) => problems.push("reports differ".into()),
        (e1, e2) => problems.push(format!("unparsable report: {:?} {:?}", e1.err(), e2.err())),
    }
    outcome(
        problems,
        "two runs give identical reports apart from wall time".into(),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut timed = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        println!(
            "{} criterion {id} ({name}): {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            el.as_secs_f64()
        );
        results.push((id, name, o, el));
    };

    timed(1, "cycle reproduction", &mut cycle_reproduction);

    let (eu, cl) = solver_corpus();
    let mut feasibility = None;
    timed(2, "solver equals exhaustive optimum", &mut || {
        let (mut opt, mut feas, mut count) = solver_checks(&eu);
        let (o2, f2, c2) = solver_checks(&cl);
        opt.extend(o2);
        feas.extend(f2);
        count += c2;
        feasibility = Some(outcome(feas, format!("{count} candidates from 1200 instances within their radius (audited with criterion 2)")));
        outcome(
            opt,
            "1000 euclidean + 200 metric-closure instances, zero mismatches".into(),
        )
    });

    timed(3, "query equals per-pair center", &mut query_equivalence);

    let mut lambda = None;
    timed(4, "monotonicity facts", &mut || {
        let lemmas = lemma_corpus();
        let count = lemmas.len();
        let mut lem = Vec::new();
        let mut lam = Vec::new();
        for (name, l, t) in lemmas {
            lem.extend(l.into_iter().map(|m| format!("{name}: {m}")));
            lam.extend(t.into_iter().map(|m| format!("{name}: {m}")));
        }
        lambda = Some(outcome(
            lam,
            format!("{count} instances, n <= 40, every entry (computed with criterion 4)"),
        ));
        outcome(
            lem,
            format!("{count} instances, n <= 40, exhaustive, lambda table checked alongside"),
        )
    });
    let lam = lambda.take().expect("criterion 4 ran");
    timed(5, "lambda table equals definition", &mut || Outcome {
        pass: lam.pass,
        detail: lam.detail.clone(),
    });

    timed(6, "operation counts and scaling", &mut complexity);
    let feas = feasibility.take().expect("criterion 2 ran");
    timed(7, "feasibility of every candidate", &mut || Outcome {
        pass: feas.pass,
        detail: feas.detail.clone(),
    });
    timed(8, "determinism of verify", &mut determinism);

    let failed = results.iter().filter(|r| !r.2.pass).count();
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
