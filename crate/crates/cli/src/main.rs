use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cutbranch::report::Status;
use cutbranch::suites::{run_suite, SuiteParams};
use cutbranch::{exit_code, read_instance};
use cutbranch_core::hierarchy::{apply, l_split_certificate, Operator};
use cutbranch_core::instances::{self, Graph, Instance};
use cutbranch_core::polytope::{equals_integer_hull, HullComparison};
use cutbranch_core::tree::{greedy_integral_tree, nogood_tree, skewed_k_tree};
use cutbranch_core::{Direction, Error, Limits, LpStatus, RVector, Rational, Scalar, Vector};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cutbranch", version, about = "Branch-and-bound trees versus lift-and-project relaxations, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args, Clone)]
struct Budget {
    /// Maximum number of vertices per enumeration.
    #[arg(long, global = true)]
    budget_vertices: Option<usize>,
    /// Maximum candidate subsets (vertex/facet search, tree enumeration).
    #[arg(long, global = true)]
    budget_subsets: Option<usize>,
    /// Maximum intermediate rows during projection.
    #[arg(long, global = true)]
    budget_fm_rows: Option<usize>,
    /// Maximum variables in a lifted operator result.
    #[arg(long, global = true)]
    budget_lifted_vars: Option<usize>,
    /// Maximum affine dimension for facet synthesis.
    #[arg(long, global = true)]
    budget_facet_dim: Option<usize>,
}

impl Budget {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_vertices: self.budget_vertices.unwrap_or(d.max_vertices),
            max_subsets: self.budget_subsets.unwrap_or(d.max_subsets),
            max_fm_rows: self.budget_fm_rows.unwrap_or(d.max_fm_rows),
            max_lifted_vars: self.budget_lifted_vars.unwrap_or(d.max_lifted_vars),
            max_facet_dim: self.budget_facet_dim.unwrap_or(d.max_facet_dim),
            ..d
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file.
    Generate(GenerateArgs),
    /// Build a branch-and-bound tree for an instance.
    Tree(TreeArgs),
    /// Apply a lift-and-project operator to an instance.
    Relax(RelaxArgs),
    /// Run a reproduction suite.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    StableSet,
    Clique,
    Knapsack,
    Nogood,
    Triangles,
    R3,
    Remark64,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Matching,
    Triangles,
    Path,
    Cycle,
    Complete,
}

#[derive(Args)]
struct GenerateArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Row count for random instances.
    #[arg(long)]
    rows: Option<usize>,
    /// Graph for the clique family.
    #[arg(long, value_enum, default_value = "matching")]
    graph: GraphKind,
    /// Excluded 0/1 points for the no-good family, e.g. `000,011`.
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    Skewed,
    Nogood,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

#[derive(Args)]
struct TreeArgs {
    builder: Builder,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    /// Variable order for skewed trees, 1-based, e.g. `2,1,3`.
    #[arg(long)]
    perm: Option<String>,
    /// Excluded points for no-good trees; defaults to the instance metadata.
    #[arg(long)]
    points: Option<String>,
    /// Node cap for greedy trees.
    #[arg(long, default_value_t = 1000)]
    max_size: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: TreeFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Sa,
    L,
    Bk,
    Tk,
}

#[derive(Args)]
struct RelaxArgs {
    operator: Op,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Compute an explicit description through vertices.
    #[arg(long)]
    explicit: bool,
    /// Point to test, comma separated rationals.
    #[arg(long)]
    member: Option<String>,
    /// Objective to maximize and minimize, comma separated rationals.
    #[arg(long)]
    objective: Option<String>,
    /// Compare the result with the integer hull.
    #[arg(long)]
    hull: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ReproArgs {
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances or LP cases per suite.
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Core(Error),
    Claim(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn write_out(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_vector(s: &str) -> Result<RVector, Failure> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    Vector::parse_text(&items).map_err(|e| usage(e.to_string()))
}

fn parse_points(s: &str) -> Result<Vec<Vec<bool>>, Failure> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim()
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(usage(format!("bad 0/1 point {p:?}"))),
                })
                .collect()
        })
        .collect()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn load(path: &Path) -> Result<Instance<Rational>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(read_instance(&text)?)
}

fn generate(a: GenerateArgs) -> Outcome {
    let inst: Instance<Rational> = match a.family {
        Family::StableSet => instances::stable_set_fractional(need(a.n, "n")?)?,
        Family::Clique => {
            let n = need(a.n, "n")?;
            let g = match a.graph {
                GraphKind::Matching => Graph::perfect_matching(n)?,
                GraphKind::Triangles if n % 3 == 0 => Graph::disjoint_triangles(n / 3),
                GraphKind::Triangles => return Err(usage("disjoint triangles need n divisible by 3")),
                GraphKind::Path => Graph::path(n),
                GraphKind::Cycle => Graph::cycle(n),
                GraphKind::Complete => Graph::complete(n),
            };
            instances::clique_fractional(&g)?
        }
        Family::Knapsack => instances::knapsack_uniform(need(a.n, "n")?, a.q.unwrap_or(3))?,
        Family::Nogood => {
            let n = need(a.n, "n")?;
            let s = match &a.points {
                Some(p) => parse_points(p)?,
                None => vec![vec![false; n]],
            };
            instances::nogood(n, &s)?
        }
        Family::Triangles => instances::triangles_limit(a.n.unwrap_or(7))?,
        Family::R3 => instances::r3_example()?,
        Family::Remark64 => instances::remark64(need(a.n, "n")?, need(a.k, "k")?)?,
        Family::Random => {
            let n = need(a.n, "n")?;
            instances::random(n, a.rows.unwrap_or(n + 1), a.seed)?
        }
    };
    let text = cutbranch_core::json::to_string(&inst)? + "\n";
    match &a.out {
        Some(path) => write_out(path, &text),
        None => {
            emit(&text);
            Ok(())
        }
    }
}

fn tree(a: TreeArgs, limits: &Limits) -> Outcome {
    let inst = load(&a.instance)?;
    let p = &inst.polytope;
    let n = p.n;
    let t = match a.builder {
        Builder::Skewed => {
            let perm = match &a.perm {
                Some(s) => s
                    .split(',')
                    .map(|v| v.trim().parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| usage("bad --perm"))?,
                None => (0..n).collect(),
            };
            skewed_k_tree(n, need(a.k, "k")?, &perm)?
        }
        Builder::Nogood => {
            let s = match &a.points {
                Some(p) => parse_points(p)?,
                None => {
                    let listed = inst.metadata.get("S").and_then(Value::as_array).ok_or_else(|| usage("instance has no S; pass --points"))?;
                    let joined = listed.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(",");
                    parse_points(&joined)?
                }
            };
            nogood_tree(n, &s)?
        }
        Builder::Greedy => greedy_integral_tree(p, a.max_size, limits)?,
    };
    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    for v in t.leaves() {
        *census.entry(t.labels(v).j1.len()).or_default() += 1;
    }
    let equals_hull = match inst.hull(limits) {
        Ok(h) => match equals_integer_hull(&t.relaxation_pruned(p)?, &h) {
            Ok(c) => json!(c.is_equal()),
            Err(Error::Budget(_)) => json!("undecided"),
            Err(e) => return Err(e.into()),
        },
        Err(Error::Budget(_)) => json!("undecided"),
        Err(e) => return Err(e.into()),
    };
    let rendered = match a.format {
        TreeFormat::Json => t.to_json()?,
        TreeFormat::Dot => t.to_dot(),
    };
    let mut stats = json!({
        "size": t.size(),
        "height": t.height(),
        "leaves": t.leaf_count(),
        "j1_census": census,
        "equals_integer_hull": equals_hull,
        "formulation": t.size_report(p)?,
    });
    match &a.out {
        Some(path) => write_out(path, &(rendered + "\n"))?,
        None if a.format == TreeFormat::Json => stats["tree"] = serde_json::from_str(&rendered).map_err(Error::from)?,
        None => stats["dot"] = json!(rendered),
    }
    emit(&(serde_json::to_string_pretty(&stats).map_err(Error::from)? + "\n"));
    Ok(())
}

fn hull_verdict(c: HullComparison<Rational>) -> Value {
    match c {
        HullComparison::Equal => json!(true),
        HullComparison::OutsideHull(w) | HullComparison::MissingVertex(w) => json!({"equal": false, "witness": w.to_text()}),
    }
}

fn relax(a: RelaxArgs, limits: &Limits) -> Outcome {
    let inst = load(&a.instance)?;
    let (op, level) = match a.operator {
        Op::Sa => (Operator::Sa, need(a.t.or(a.k), "t")?),
        Op::L => (Operator::L, need(a.k, "k")?),
        Op::Bk => (Operator::B, need(a.k, "k")?),
        Op::Tk => (Operator::Tk, need(a.k, "k")?),
    };
    let mut report = json!({ "instance": inst.name });
    let result = match apply(op, &inst.polytope, level, a.explicit, limits) {
        Ok(r) => r,
        Err(Error::Budget(msg)) => {
            report["status"] = json!("undecided");
            report["detail"] = json!(msg);
            emit(&(serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let r = &result.polytope;
    report["provenance"] = serde_json::to_value(&result.provenance).map_err(Error::from)?;
    report["variables"] = json!(r.total_dim());
    report["rows"] = json!(r.row_count());
    if let Some(x) = &a.member {
        let x = parse_vector(x)?;
        report["member"] = json!(r.is_member(&x)?);
    }
    if let Some(c) = &a.objective {
        let c = parse_vector(c)?;
        for (key, dir) in [("max", Direction::Max), ("min", Direction::Min)] {
            let o = r.optimize(&c, dir)?;
            report[key] = match o.status {
                LpStatus::Optimal => json!({
                    "value": o.value.map(|v| v.to_text()),
                    "point": o.point.map(|p| p.to_text()),
                }),
                LpStatus::Infeasible => json!("empty"),
                LpStatus::Unbounded => json!("unbounded"),
            };
        }
    }
    if a.hull {
        let verdict = match inst.hull(limits) {
            Ok(h) if op == Operator::L && !r.is_explicit() && level >= 1 => match l_split_certificate(&inst.polytope, level, &h, limits) {
                Ok(Some(c)) => json!({"equal": true, "split_var": c.var + 1}),
                Ok(None) if r.total_dim() <= 1000 => hull_verdict(equals_integer_hull(r, &h)?),
                Ok(None) | Err(Error::Budget(_)) => json!("undecided"),
                Err(e) => return Err(e.into()),
            },
            Ok(h) if r.total_dim() <= 1000 || r.is_explicit() => hull_verdict(equals_integer_hull(r, &h)?),
            Ok(_) | Err(Error::Budget(_)) => json!("undecided"),
            Err(e) => return Err(e.into()),
        };
        report["equal_to_hull"] = verdict;
    }
    if let Some(path) = &a.out {
        write_out(path, &(cutbranch_core::json::to_string(&result)? + "\n"))?;
    }
    emit(&(serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"));
    Ok(())
}

fn repro(a: ReproArgs, limits: &Limits) -> Outcome {
    let params = SuiteParams { n: a.n, k: a.k.or(a.t), q: a.q, seed: a.seed, cases: a.cases, limits: limits.clone() };
    let report = run_suite(&a.suite, &params).map_err(Failure::Usage)?;
    emit(&report.summary());
    if let Some(path) = &a.out {
        let body = match a.format {
            ReportFormat::Json => report.to_json().map_err(Error::from)? + "\n",
            ReportFormat::Csv => report.to_csv().map_err(|e| Failure::Io(e.to_string()))?,
        };
        write_out(path, &body)?;
    }
    if report.passed() {
        return Ok(());
    }
    for c in report.failures() {
        let record = serde_json::to_string(c).map_err(Error::from)?;
        eprintln!("{}: {record}", if c.status == Status::Undecided { "undecided" } else { "failed" });
    }
    Err(Failure::Claim(format!("{} check(s) did not pass", report.failures().count())))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CUTBRANCH_THREADS") else {
        return Ok(());
    };
    let threads: usize = v.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| usage(format!("CUTBRANCH_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| Failure::Io(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let limits = cli.budget.limits();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Generate(a) => generate(a),
        Command::Tree(a) => tree(a, &limits),
        Command::Relax(a) => relax(a, &limits),
        Command::Repro(a) => repro(a, &limits),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Claim(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
