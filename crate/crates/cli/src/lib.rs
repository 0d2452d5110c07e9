//! The `roap` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure or exceeded budget,
//! 2 usage or parse error, 3 metric violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use roap_core::audit;
use roap_core::gen::Family;
use roap_core::io::{Format, InstanceData};
use roap_core::solver::{solve_with, SolveOptions};
use roap_core::{
    validate_metric, CenterLocation, HalfInt, MetricKind, PathInstance, QueryStructure, RoapError,
    Scalar, SourceKind, ValidationMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_METRIC: i32 = 3;

/// Instances up to this size get the full cubic triangle check; larger
/// ones are sampled.
const FULL_VALIDATION_MAX_N: usize = 400;
const SAMPLED_TRIPLES: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "roap",
    version,
    about = "Radius-optimal single-edge augmentation of metric paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV where supported (bench).
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the optimal edge to add.
    Solve(InputArgs),
    /// Radius and center after adding one given edge.
    Query {
        #[command(flatten)]
        input: InputArgs,
        i: usize,
        j: usize,
    },
    /// Compare the fast algorithms with brute force.
    Verify(VerifyArgs),
    /// Write a generated instance.
    Gen {
        #[arg(value_enum)]
        family: FamilyArg,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time the solver and certify operation counts.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value = "line")]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs queried per size.
        #[arg(long, default_value_t = 1000)]
        queries: usize,
    },
}

#[derive(Debug, Args, Clone)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "points")]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub metric: MetricArg,
    /// Check the triangle inequality before solving (exit 3 on violation).
    #[arg(long)]
    pub validate: bool,
    /// Use exact integer arithmetic; all numbers must be integers.
    #[arg(long)]
    pub exact_int: bool,
}

#[derive(Debug, Args, Clone)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "points")]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub metric: MetricArg,
    #[arg(long)]
    pub exact_int: bool,
    /// Verify generated instances instead of a file.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Largest generated instance size.
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
    #[arg(long, value_enum, default_value = "mixed")]
    pub family: VerifyFamily,
    /// Test fixture: perturb the solver's answer so verification must fail.
    #[arg(long, hide = true)]
    pub corrupt_solver: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Points,
    Matrix,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Euclidean,
    L1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Line,
    #[value(alias = "cycle_metric")]
    CycleMetric,
    #[value(alias = "random_euclidean")]
    RandomEuclidean,
    #[value(alias = "random_metric_closure")]
    RandomMetricClosure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFamily {
    Euclidean,
    Closure,
    Mixed,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Points => Format::Points,
            FormatArg::Matrix => Format::Matrix,
        }
    }
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => MetricKind::Euclidean,
            MetricArg::L1 => MetricKind::L1,
        }
    }
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Line => Family::Line,
            FamilyArg::CycleMetric => Family::CycleMetric,
            FamilyArg::RandomEuclidean => Family::RandomEuclidean,
            FamilyArg::RandomMetricClosure => Family::RandomMetricClosure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub source: String,
    pub metric: Option<String>,
    pub dim: Option<usize>,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub instance: Option<InstanceSummary>,
    pub result: Value,
    pub counters: Value,
    pub wall_time_ms: f64,
}

/// A failed run: exit code and message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report to print despite the failure.
    pub report: Option<Box<RunReport>>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            report: None,
        }
    }
}

impl From<RoapError> for Failure {
    fn from(e: RoapError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Rounds to 12 significant digits for display.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn num<S: Scalar>(x: S) -> Value {
    json!(round12(x.to_f64()))
}

fn center_json<S: Scalar>(c: CenterLocation<S>) -> Value {
    match c {
        CenterLocation::OnPath { arc } => json!({ "kind": "on_path", "arc": num(arc) }),
        CenterLocation::OnNewEdge { offset } => {
            json!({ "kind": "on_new_edge", "offset": num(offset) })
        }
    }
}

fn summary<S: Scalar>(inst: &PathInstance<S>) -> InstanceSummary {
    let (source, metric, dim) = match inst.source_kind() {
        SourceKind::Points { dim, metric } => {
            ("points", Some(metric.name().to_string()), Some(dim))
        }
        SourceKind::Matrix => ("matrix", None, None),
    };
    InstanceSummary {
        n: inst.n(),
        source: source.to_string(),
        metric,
        dim,
        exact: S::EXACT,
    }
}

/// Relative tolerance from `ROAP_TOLERANCE`, if set.
fn env_tolerance() -> Result<Option<f64>, Failure> {
    match std::env::var("ROAP_TOLERANCE") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(Some(x)),
            _ => Err(Failure::usage(format!(
                "ROAP_TOLERANCE=`{s}` is not a nonnegative number"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn build<S: Scalar>(
    data: &InstanceData,
    metric: MetricKind,
    tol: Option<f64>,
) -> Result<PathInstance<S>, Failure> {
    let inst = data.build::<S>(metric)?;
    Ok(match tol {
        Some(t) => inst.with_tolerance(t),
        None => inst,
    })
}

fn read_input(path: &PathBuf, format: FormatArg) -> Result<InstanceData, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(InstanceData::parse(&text, format.into())?)
}

fn check_metric<S: Scalar>(inst: &PathInstance<S>) -> Result<(), Failure> {
    let mode = if inst.n() <= FULL_VALIDATION_MAX_N {
        ValidationMode::FullCubic
    } else {
        ValidationMode::Sampled {
            triples: SAMPLED_TRIPLES,
            seed: 0,
        }
    };
    let rep = validate_metric(inst, mode);
    if rep.valid {
        return Ok(());
    }
    let detail = match (rep.violations.first(), rep.duplicate_pairs.first()) {
        (Some(&(i, k, j, s)), _) => format!(
            "triangle inequality fails for ({i}, {k}, {j}) with slack {s}; {} violations",
            rep.violation_count
        ),
        (None, Some(&(i, j))) => format!("vertices {i} and {j} coincide"),
        _ => "invalid metric".to_string(),
    };
    Err(Failure {
        code: EXIT_METRIC,
        message: detail,
        report: None,
    })
}

fn solve_payload<S: Scalar>(inst: &PathInstance<S>) -> (Value, Value) {
    let sol = solve_with(inst, SolveOptions::default());
    let b = sol.best;
    let candidates: Vec<Value> = sol
        .all_candidates
        .iter()
        .map(|c| json!({ "case": c.case_tag.label(), "i": c.i, "j": c.j, "radius": num(c.radius) }))
        .collect();
    let result = json!({
        "i": b.i,
        "j": b.j,
        "radius": num(b.radius),
        "center": center_json(b.center),
        "case": b.case_tag.label(),
        "candidates": candidates,
    });
    let s = &sol.stats;
    let counters = json!({
        "beta_evals": s.lambda.beta_evals,
        "k_advances": s.lambda.k_advances,
        "j_advances": s.lambda.j_advances,
        "beta_evals_reversed": s.lambda_reversed.beta_evals,
        "k_advances_reversed": s.lambda_reversed.k_advances,
        "j_advances_reversed": s.lambda_reversed.j_advances,
        "max_sweep_advances": s.max_sweep_advances(),
    });
    (result, counters)
}

fn query_payload<S: Scalar>(
    inst: &PathInstance<S>,
    i: usize,
    j: usize,
) -> Result<(Value, Value), Failure> {
    let qs = QueryStructure::preprocess(inst);
    let q = qs.query(i, j)?;
    Ok((
        json!({
            "i": i,
            "j": j,
            "radius": num(q.radius),
            "center": center_json(q.center),
            "case": q.case_tag.label(),
        }),
        json!({ "comparisons": q.comparisons }),
    ))
}

macro_rules! dispatch {
    ($exact:expr, $data:expr, $metric:expr, $tol:expr, |$inst:ident| $body:expr) => {
        if $exact {
            let $inst = build::<HalfInt>($data, $metric, $tol)?;
            $body
        } else {
            let $inst = build::<f64>($data, $metric, $tol)?;
            $body
        }
    };
}

fn cmd_solve(args: &InputArgs) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let data = read_input(&args.input, args.format)?;
    let tol = env_tolerance()?;
    let (instance, result, counters) =
        dispatch!(args.exact_int, &data, args.metric.into(), tol, |inst| {
            if args.validate {
                check_metric(&inst)?;
            }
            let (r, c) = solve_payload(&inst);
            (summary(&inst), r, c)
        });
    Ok(RunReport {
        command: "solve".into(),
        instance: Some(instance),
        result,
        counters,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn cmd_query(args: &InputArgs, i: usize, j: usize) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let data = read_input(&args.input, args.format)?;
    let tol = env_tolerance()?;
    let (instance, result, counters) =
        dispatch!(args.exact_int, &data, args.metric.into(), tol, |inst| {
            if args.validate {
                check_metric(&inst)?;
            }
            let (r, c) = query_payload(&inst, i, j)?;
            (summary(&inst), r, c)
        });
    Ok(RunReport {
        command: "query".into(),
        instance: Some(instance),
        result,
        counters,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Outcome of verifying one instance.
struct Checked {
    pairs: usize,
    candidates: usize,
    mismatch: Option<String>,
}

fn verify_one<S: Scalar>(inst: &PathInstance<S>, corrupt: bool) -> Checked {
    let mut sol = solve_with(
        inst,
        SolveOptions {
            audit: true,
            filtered_case3: false,
        },
    );
    if corrupt {
        let bump = S::from_input(1.0).unwrap_or(S::ZERO);
        sol.best.radius = sol.best.radius + bump;
    }
    let mut out = Checked {
        pairs: 0,
        candidates: sol.audit.len(),
        mismatch: None,
    };
    if let Err(m) = audit::check_solution(inst, &sol, usize::MAX) {
        out.mismatch = Some(format!("solver: {m}"));
        return out;
    }
    if let Some(m) = audit::infeasible(inst, &sol.audit).first() {
        out.mismatch = Some(format!("candidate audit: {m}"));
        return out;
    }
    let qs = QueryStructure::preprocess(inst);
    match audit::check_queries(inst, &qs) {
        Ok(p) => out.pairs = p,
        Err(m) => out.mismatch = Some(format!("query: {m}")),
    }
    out
}

/// The `index`-th instance of a random verification run.
pub fn verify_instance_data(
    seed: u64,
    index: usize,
    nmax: usize,
    family: VerifyFamily,
) -> (String, InstanceData) {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let closure = match family {
        VerifyFamily::Euclidean => false,
        VerifyFamily::Closure => true,
        VerifyFamily::Mixed => index % 2 == 1,
    };
    let n = rng.gen_range(1..=nmax.max(1));
    let inner: u64 = rng.gen();
    if closure {
        (
            "random_metric_closure".into(),
            roap_core::gen::random_metric_closure(n, 100, inner),
        )
    } else {
        (
            "random_euclidean".into(),
            roap_core::gen::random_euclidean(n, 2, inner),
        )
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let tol = env_tolerance()?;
    let jobs: Vec<(String, InstanceData, bool, MetricKind)> = if let Some(path) = &args.input {
        vec![(
            "input".into(),
            read_input(path, args.format)?,
            args.exact_int,
            args.metric.into(),
        )]
    } else if args.random {
        if args.count == 0 || args.nmax == 0 {
            return Err(Failure::usage("--count and --nmax must be positive"));
        }
        (0..args.count)
            .map(|k| {
                let (name, data) = verify_instance_data(args.seed, k, args.nmax, args.family);
                let exact = name == "random_metric_closure";
                (name, data, exact, MetricKind::Euclidean)
            })
            .collect()
    } else {
        return Err(Failure::usage("verify needs --input FILE or --random"));
    };

    let results: Vec<Result<Checked, Failure>> = jobs
        .par_iter()
        .map(|(_, data, exact, metric)| -> Result<Checked, Failure> {
            Ok(dispatch!(*exact, data, *metric, tol, |inst| verify_one(
                &inst,
                args.corrupt_solver
            )))
        })
        .collect();

    let mut pairs = 0;
    let mut candidates = 0;
    let mut first_mismatch = None;
    let mut mismatches = 0;
    for ((name, data, _, _), res) in jobs.iter().zip(results) {
        let c = res?;
        pairs += c.pairs;
        candidates += c.candidates;
        if let Some(m) = c.mismatch {
            mismatches += 1;
            if first_mismatch.is_none() {
                first_mismatch = Some(json!({
                    "family": name,
                    "n": data.n(),
                    "detail": m,
                    "instance": data.to_text(),
                }));
            }
        }
    }
    let report = RunReport {
        command: "verify".into(),
        instance: None,
        result: json!({
            "instances": jobs.len(),
            "mismatches": mismatches,
            "first_mismatch": first_mismatch,
        }),
        counters: json!({ "pairs_checked": pairs, "candidates_audited": candidates }),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if mismatches > 0 {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!(
                "{mismatches} of {} instances failed verification",
                jobs.len()
            ),
            report: Some(Box::new(report)),
        });
    }
    Ok(report)
}

fn cmd_gen(
    family: FamilyArg,
    n: usize,
    seed: u64,
    output: Option<&PathBuf>,
) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::usage("n must be at least 1"));
    }
    let text = Family::from(family).generate(n, seed).to_text();
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub family: String,
    pub solve_ms: f64,
    pub beta_evals: usize,
    pub k_advances: usize,
    pub j_advances: usize,
    pub max_sweep_advances: usize,
    pub queries: usize,
    pub max_query_comparisons: usize,
    pub query_budget: f64,
    pub within_budget: bool,
}

pub const BENCH_CSV_HEADER: &str = "n,family,solve_ms,beta_evals,k_advances,j_advances,max_sweep_advances,queries,max_query_comparisons,query_budget,within_budget";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{:.3},{},{},{},{},{},{},{:.1},{}",
            self.n,
            self.family,
            self.solve_ms,
            self.beta_evals,
            self.k_advances,
            self.j_advances,
            self.max_sweep_advances,
            self.queries,
            self.max_query_comparisons,
            self.query_budget,
            self.within_budget
        )
    }
}

/// Per-query comparison budget for an instance of size `n`.
pub fn query_budget(n: usize) -> f64 {
    64.0 * ((n + 2) as f64).log2()
}

fn bench_one<S: Scalar>(
    inst: &PathInstance<S>,
    family: &str,
    seed: u64,
    queries: usize,
) -> BenchRow {
    let n = inst.n();
    let start = Instant::now();
    let sol = solve_with(inst, SolveOptions::default());
    let solve_ms = start.elapsed().as_secs_f64() * 1e3;
    let st = &sol.stats;
    let qs = QueryStructure::preprocess(inst);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_cmp = 0;
    for _ in 0..queries {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        let q = qs.query(a.min(b), a.max(b)).expect("pair in range");
        max_cmp = max_cmp.max(q.comparisons);
    }
    let beta = st.lambda.beta_evals.max(st.lambda_reversed.beta_evals);
    let kadv = st.lambda.k_advances.max(st.lambda_reversed.k_advances);
    let jadv = st.lambda.j_advances.max(st.lambda_reversed.j_advances);
    let budget = query_budget(n);
    BenchRow {
        n,
        family: family.to_string(),
        solve_ms,
        beta_evals: beta,
        k_advances: kadv,
        j_advances: jadv,
        max_sweep_advances: st.max_sweep_advances(),
        queries,
        max_query_comparisons: max_cmp,
        query_budget: budget,
        within_budget: beta <= 2 * n && kadv <= n && jadv <= n && (max_cmp as f64) <= budget,
    }
}

fn cmd_bench(
    ns: &[usize],
    family: FamilyArg,
    seed: u64,
    queries: usize,
) -> Result<(Vec<BenchRow>, f64), Failure> {
    let start = Instant::now();
    if ns.is_empty() {
        return Err(Failure::usage("bench needs at least one size in --n"));
    }
    let fam = Family::from(family);
    let tol = env_tolerance()?;
    let mut rows = Vec::new();
    for &n in ns {
        if n == 0 {
            return Err(Failure::usage("sizes must be positive"));
        }
        if matches!(fam, Family::CycleMetric | Family::RandomMetricClosure) && n > 3000 {
            return Err(Failure::usage(format!(
                "{} stores an n×n matrix; n = {n} is too large",
                fam.name()
            )));
        }
        let data = fam.generate(n, seed);
        let exact = matches!(
            fam,
            Family::Line | Family::CycleMetric | Family::RandomMetricClosure
        );
        let row = dispatch!(exact, &data, MetricKind::Euclidean, tol, |inst| bench_one(
            &inst,
            fam.name(),
            seed,
            queries
        ));
        rows.push(row);
    }
    Ok((rows, start.elapsed().as_secs_f64() * 1e3))
}

/// Parses arguments, runs the command and writes output. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let emit = |out: &mut dyn Write, report: &RunReport| {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    };
    let result: Result<(), Failure> = match &cli.command {
        Command::Solve(a) => cmd_solve(a).map(|r| emit(out, &r)),
        Command::Query { input, i, j } => cmd_query(input, *i, *j).map(|r| emit(out, &r)),
        Command::Verify(a) => cmd_verify(a).map(|r| emit(out, &r)),
        Command::Gen {
            family,
            n,
            seed,
            output,
        } => cmd_gen(*family, *n, *seed, output.as_ref()).map(|text| {
            let _ = write!(out, "{text}");
        }),
        Command::Bench {
            n,
            family,
            seed,
            queries,
        } => cmd_bench(n, *family, *seed, *queries).and_then(|(rows, ms)| {
            if cli.csv {
                let _ = writeln!(out, "{BENCH_CSV_HEADER}");
                for r in &rows {
                    let _ = writeln!(out, "{}", r.csv());
                }
            } else {
                emit(
                    out,
                    &RunReport {
                        command: "bench".into(),
                        instance: None,
                        result: serde_json::to_value(&rows).expect("rows serialize"),
                        counters: json!({}),
                        wall_time_ms: ms,
                    },
                );
            }
            match rows.iter().find(|r| !r.within_budget) {
                Some(r) => Err(Failure {
                    code: EXIT_VERIFY,
                    message: format!("operation budget exceeded at n = {}", r.n),
                    report: None,
                }),
                None => Ok(()),
            }
        }),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Some(r) = &f.report {
                emit(out, r);
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
