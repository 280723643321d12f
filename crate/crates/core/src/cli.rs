//! Command-line front end. Every subcommand is a thin wrapper over a library
//! operation; `run` maps errors to exit codes and never panics on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::check::{run_checks, CheckLevel, CheckReport};
use crate::error::{Error, Result};
use crate::exact::rational::{display, label_factor};
use crate::exact::{IntMatrix, Rational, RationalJson};
use crate::oracle::{enumerate_types, evaluate_type, oracle_invariant, PointConfig};
use crate::ragrug::{
    count_rag_rugs, enumerate_labelled_paths, rug_reports, LabelledPath, PathMultiplicity,
    RugReport, Sign,
};
use crate::wdvv::{BaseSource, Engine, InvariantQuery, MemoCache};

pub const SCHEMA: &str = "tropgw/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tropgw",
    version,
    about = "Exact tropical descendant invariants of the plane"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute ⟨τ₀(0)^l τ₀(1)^m ∏ τ_r(2)⟩_d by string, divisor and WDVV reduction.
    Invariant(InvariantArgs),
    /// Count rag rugs of a degree and form.
    Ragrug(RagrugArgs),
    /// Run the cross-engine agreement suite.
    Check(CheckArgs),
    /// Count curves by enumerating combinatorial types through random points.
    Oracle(OracleArgs),
    /// List full labelled paths with their upper and lower multiplicities.
    Paths(PathsArgs),
    /// Compare the lattice weight at the origin with |det| of a matrix.
    Detkernel(DetkernelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Ragrug,
    Table,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    #[arg(long)]
    pub degree: u32,
    /// Psi powers of the point conditions, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub psi: Vec<u32>,
    /// Number of line conditions τ₀(1).
    #[arg(long, default_value_t = 0)]
    pub lines: u32,
    /// Number of unconstrained marked ends τ₀(0).
    #[arg(long, default_value_t = 0)]
    pub free: u32,
    #[arg(long, value_enum, default_value_t = BaseArg::Ragrug)]
    pub base: BaseArg,
    /// Persistent invariant cache.
    #[arg(long, env = "TROPGW_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RagrugArgs {
    #[arg(long)]
    pub degree: u32,
    /// Ordered psi powers of the rug polygons, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub form: Vec<u32>,
    /// Emit every contributing rug.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = CheckLevel::Quick)]
    pub level: CheckLevel,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub psi: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Include the determinant of every type at the first configuration.
    #[arg(long)]
    pub dump_types: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    #[arg(long)]
    pub degree: u32,
    /// Only paths with a nonzero multiplicity on some side.
    #[arg(long)]
    pub nonzero: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DetkernelArgs {
    /// Rows separated by `;`, entries by `,`, e.g. `1,2;3,4`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long)]
    pub json: bool,
}

/// JSON envelope shared by all subcommands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandResult<T> {
    pub schema: String,
    pub command: String,
    pub elapsed_ms: u64,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub degree: u32,
    pub free: u32,
    pub lines: u32,
    pub psi: Vec<u32>,
}

impl QueryEcho {
    fn of(q: &InvariantQuery) -> Self {
        QueryEcho {
            degree: q.d,
            free: q.l,
            lines: q.m,
            psi: q.rs().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantOutput {
    pub query: QueryEcho,
    pub value: RationalJson,
    pub labelled_value: RationalJson,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RagrugOutput {
    pub degree: u32,
    pub form: Vec<u32>,
    pub value: RationalJson,
    pub labelled_value: RationalJson,
    pub total: RationalJson,
    pub reducible: RationalJson,
    pub rugs: usize,
    pub contributing_rugs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub list: Option<Vec<RugReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeWeight {
    pub adjacency: Vec<Vec<usize>>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleOutput {
    pub degree: u32,
    pub psi: Vec<u32>,
    pub value: RationalJson,
    pub labelled_value: RationalJson,
    pub types: usize,
    pub seeds: (u64, u64),
    pub attempts: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PointConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_weights: Option<Vec<TypeWeight>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathEntry {
    pub path: LabelledPath,
    pub upper: RationalJson,
    pub lower: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathsOutput {
    pub degree: u32,
    pub paths: Vec<PathEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetkernelOutput {
    pub rows: usize,
    pub det: String,
    pub weight_at_origin: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ErrorOutput {
    error: String,
    exit_code: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_) | Error::Io { .. } => EXIT_USAGE,
        Error::DimensionMismatch { .. }
        | Error::InvalidDegree(_)
        | Error::Precondition(_)
        | Error::Budget(_) => EXIT_INVALID,
        Error::SeedDisagreement { .. } | Error::Internal(_) => EXIT_CHECK_FAILED,
    }
}

fn labelled(d: u32, v: &Rational) -> RationalJson {
    RationalJson::from(&(v * Rational::from_integer(label_factor(d))))
}

struct Ctx<'a> {
    command: &'static str,
    json: bool,
    started: Instant,
    out: &'a mut dyn Write,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&mut self, body: T, text: impl FnOnce() -> String) -> Result<()> {
        let write_err = |e: std::io::Error| Error::Io {
            path: "<stdout>".into(),
            source: e,
        };
        if self.json {
            let result = CommandResult {
                schema: SCHEMA.to_string(),
                command: self.command.to_string(),
                elapsed_ms: self.started.elapsed().as_millis() as u64,
                warnings: std::mem::take(&mut self.warnings),
                body,
            };
            let s = serde_json::to_string_pretty(&result)
                .map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(self.out, "{s}").map_err(write_err)
        } else {
            for w in &self.warnings {
                writeln!(self.out, "warning: {w}").map_err(write_err)?;
            }
            write!(self.out, "{}", text()).map_err(write_err)
        }
    }
}

fn cmd_invariant(a: &InvariantArgs, ctx: &mut Ctx) -> Result<i32> {
    let q = InvariantQuery::new(a.degree, a.free, a.lines, a.psi.clone());
    q.validate()?;
    let cache = match &a.cache {
        Some(path) => MemoCache::open(path)?,
        None => MemoCache::in_memory(),
    };
    let base = match a.base {
        BaseArg::Ragrug => BaseSource::RagRug,
        BaseArg::Table => BaseSource::Table,
    };
    let mut engine = Engine::new(cache, base);
    let v = engine.compute_invariant(&q)?;
    engine.cache_mut().insert(q.clone(), v.value.clone())?;
    engine.cache_mut().save()?;
    let body = InvariantOutput {
        query: QueryEcho::of(&q),
        value: RationalJson::from(&v.value),
        labelled_value: RationalJson::from(&v.labelled_value),
        method: v.method.to_string(),
    };
    ctx.emit(body, || {
        format!(
            "{q}\nvalue = {}\nlabelled value = {}\nmethod = {}\n",
            display(&v.value),
            display(&v.labelled_value),
            v.method
        )
    })?;
    Ok(EXIT_OK)
}

fn cmd_ragrug(a: &RagrugArgs, ctx: &mut Ctx) -> Result<i32> {
    let count = count_rag_rugs(a.degree, &a.form)?;
    let list = if a.list {
        Some(rug_reports(a.degree, &a.form)?)
    } else {
        None
    };
    let text = || {
        let mut s = format!(
            "degree {} form {:?}\nirreducible = {}\ntotal = {}\nreducible = {}\nrugs = {} ({} contributing)\n",
            a.degree,
            a.form,
            display(&count.irreducible),
            display(&count.total),
            display(&count.reducible),
            count.rugs,
            count.contributing_rugs
        );
        for (i, r) in list.iter().flatten().enumerate() {
            let polys: Vec<String> = r
                .rug
                .pieces
                .iter()
                .map(|p| format!("{:?}^{}", p.polygon.vertices(), p.psi))
                .collect();
            s += &format!(
                "rug {i}: mu = {}, reducible correction = {}: {}\n",
                display(&r.multiplicity),
                display(&r.reducible()),
                polys.join(" ")
            );
        }
        s
    };
    let text = text();
    let body = RagrugOutput {
        degree: a.degree,
        form: a.form.clone(),
        value: RationalJson::from(&count.irreducible),
        labelled_value: labelled(a.degree, &count.irreducible),
        total: RationalJson::from(&count.total),
        reducible: RationalJson::from(&count.reducible),
        rugs: count.rugs,
        contributing_rugs: count.contributing_rugs,
        list,
    };
    ctx.emit(body, || text)?;
    Ok(EXIT_OK)
}

/// The check suite against any provider, so that a deliberately broken
/// engine can be run through the same command path.
pub fn cmd_check_with(
    a: &CheckArgs,
    provider: &mut dyn crate::check::InvariantProvider,
    out: &mut dyn Write,
) -> i32 {
    let mut ctx = Ctx {
        command: "check",
        json: a.json,
        started: Instant::now(),
        out,
        warnings: Vec::new(),
    };
    let report: CheckReport = run_checks(a.level, provider, a.seed);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    let text = || {
        let mut s = String::new();
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            s += &format!("{mark} {}", c.name);
            if !c.passed {
                s += &format!(": expected {}, got {}", c.expected, c.actual);
            }
            s.push('\n');
        }
        let failed = report.failures().count();
        s += &format!("{} checks, {} failed\n", report.checks.len(), failed);
        s
    };
    let text = text();
    match ctx.emit(&report, || text) {
        Ok(()) => code,
        Err(e) => exit_code(&e),
    }
}

fn cmd_oracle(a: &OracleArgs, ctx: &mut Ctx) -> Result<i32> {
    let r = oracle_invariant(a.degree, &a.psi, a.seed)?;
    let (points, type_weights) = if a.dump_types {
        let cfg = PointConfig::random(a.psi.len(), r.seeds.0);
        let weights = enumerate_types(a.degree, &a.psi)?
            .into_iter()
            .map(|t| {
                Ok(TypeWeight {
                    weight: evaluate_type(&t, &cfg)?.to_string(),
                    adjacency: t.adjacency,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        (Some(cfg), Some(weights))
    } else {
        (None, None)
    };
    if r.attempts > 1 {
        ctx.warnings.push(format!(
            "configurations disagreed {} time(s) before agreeing",
            r.attempts - 1
        ));
    }
    let text = format!(
        "degree {} psi {:?}\nvalue = {}\ntypes = {}\nseeds = {}, {}\n",
        a.degree,
        a.psi,
        display(&r.value),
        r.types,
        r.seeds.0,
        r.seeds.1
    );
    let body = OracleOutput {
        degree: a.degree,
        psi: a.psi.clone(),
        value: RationalJson::from(&r.value),
        labelled_value: labelled(a.degree, &r.value),
        types: r.types,
        seeds: r.seeds,
        attempts: r.attempts,
        points,
        type_weights,
    };
    ctx.emit(body, || text)?;
    Ok(EXIT_OK)
}

fn cmd_paths(a: &PathsArgs, ctx: &mut Ctx) -> Result<i32> {
    if a.degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut memo = PathMultiplicity::new(a.degree);
    let mut paths = Vec::new();
    for p in enumerate_labelled_paths(a.degree) {
        if !p.is_full(a.degree) {
            continue;
        }
        let upper = memo.multiplicity(&p, Sign::Plus)?;
        let lower = memo.multiplicity(&p, Sign::Minus)?;
        if a.nonzero
            && upper == Rational::from_integer(0.into())
            && lower == Rational::from_integer(0.into())
        {
            continue;
        }
        paths.push(PathEntry {
            path: p,
            upper: RationalJson::from(&upper),
            lower: RationalJson::from(&lower),
        });
    }
    let mut text = String::new();
    for e in &paths {
        let show = |j: &RationalJson| display(&j.to_rational().unwrap_or_default());
        text += &format!(
            "{:?}  upper {}  lower {}\n",
            e.path,
            show(&e.upper),
            show(&e.lower)
        );
    }
    text += &format!("{} paths\n", paths.len());
    ctx.emit(
        PathsOutput {
            degree: a.degree,
            paths,
        },
        || text,
    )?;
    Ok(EXIT_OK)
}

fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim().parse().map_err(|_| {
                        Error::Malformed(format!("matrix entry {v:?} is not an integer"))
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(&rows)
}

fn cmd_detkernel(a: &DetkernelArgs, ctx: &mut Ctx) -> Result<i32> {
    let m = parse_matrix(&a.matrix)?;
    let det = m.det_exact()?;
    let weight = m.weight_at_origin()?;
    let agree = weight == num_traits::Signed::abs(&det);
    let text = format!("det = {det}\nweight at origin = {weight}\n|det| agrees: {agree}\n");
    let body = DetkernelOutput {
        rows: m.rows(),
        det: det.to_string(),
        weight_at_origin: weight.to_string(),
        agree,
    };
    ctx.emit(body, || text)?;
    Ok(if agree { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
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
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    if let Command::Check(a) = &cli.command {
        let mut engine = Engine::default();
        return cmd_check_with(a, &mut engine, out);
    }
    let (command, json) = match &cli.command {
        Command::Invariant(a) => ("invariant", a.json),
        Command::Ragrug(a) => ("ragrug", a.json),
        Command::Check(a) => ("check", a.json),
        Command::Oracle(a) => ("oracle", a.json),
        Command::Paths(a) => ("paths", a.json),
        Command::Detkernel(a) => ("detkernel", a.json),
    };
    let mut ctx = Ctx {
        command,
        json,
        started: Instant::now(),
        out,
        warnings: Vec::new(),
    };
    let result = match &cli.command {
        Command::Invariant(a) => cmd_invariant(a, &mut ctx),
        Command::Ragrug(a) => cmd_ragrug(a, &mut ctx),
        Command::Oracle(a) => cmd_oracle(a, &mut ctx),
        Command::Paths(a) => cmd_paths(a, &mut ctx),
        Command::Detkernel(a) => cmd_detkernel(a, &mut ctx),
        Command::Check(_) => unreachable!("handled above"),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            if json {
                let body = ErrorOutput {
                    error: e.to_string(),
                    exit_code: code,
                };
                let _ = ctx.emit(body, String::new);
            }
            code
        }
    }
}
