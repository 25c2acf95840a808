//! Argument parsing and dispatch for `fe`.
//!
//! Every command prints one JSON document on standard output. Exit codes:
//! 0 on success, 1 when a verification fails (the JSON carries the
//! witnesses), 2 on bad input.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use montel::algebra::parse_point;
use montel::algebra::rational::{format_rational, parse_rational};
use montel::diff::{delta_power, mixed_delta};
use montel::gallery::{self, Gate};
use montel::interp::{is_correct_interpolation_set, tensor_interpolate, vandermonde_oracle, VANDERMONDE_CAP};
use montel::json::{self, FunctionDoc, GeneratorsDoc, GridDoc, PointsDoc, PolyDoc, ThetaDoc};
use montel::lattice::{density_check, kronecker_density_check, GeneratorSet, Verdict};
use montel::montel::{build_interpolant, verify_extension, verify_montel_bound, IntBox, NODE_CAP};
use montel::popoviciu::{
    cauchy_root_bound_rational, decompose, default_interpolation_set, stability_radius_rational,
    verify_popoviciu_instance,
};
use montel::{Point, SampledFunction, SymReal, SymbolTable, VerificationReport};
use serde::Serialize;
use serde_json::json;

use crate::selftest;

pub const NODE_CAP_VAR: &str = "FE_NODE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "fe",
    version,
    about = "Exact checks for Montel and Montel-Popoviciu type theorems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolate grid values by a polynomial of per-axis degree ≤ nodes − 1.
    Interp(InterpArgs),
    /// Test whether a point set is a correct interpolation set for Π_{m,max}.
    Checkset(ChecksetArgs),
    /// Evaluate an iterated or mixed difference of a sampled function.
    Delta(DeltaArgs),
    /// Decide density of a finitely generated subgroup of ℝ^d.
    Density(DensityArgs),
    #[command(subcommand)]
    Montel(MontelCommand),
    /// Split a polynomial along the strip map for θ.
    Decompose(DecomposeArgs),
    /// Cauchy root bound, or the stability radius under a coefficient perturbation.
    Rootbound(RootboundArgs),
    #[command(subcommand)]
    Popoviciu(PopoviciuCommand),
    #[command(subcommand)]
    Gallery(GalleryCommand),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long)]
    pub values: PathBuf,
    /// Also write the polynomial here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Solve the dense Vandermonde system instead of the tensor scheme.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ChecksetArgs {
    #[arg(long)]
    pub points: PathBuf,
    /// Per-axis degrees, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub func: PathBuf,
    /// Step, e.g. `1,theta1`.
    #[arg(long, required_unless_present = "mixed", conflicts_with = "mixed")]
    pub h: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    /// Steps of a mixed difference separated by `;`.
    #[arg(long)]
    pub mixed: Option<String>,
    #[arg(long)]
    pub at: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DensitySource {
    #[arg(long)]
    pub generators: Option<PathBuf>,
    /// θ for the Kronecker group ℤ^d + θℤ.
    #[arg(long)]
    pub theta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub source: DensitySource,
}

#[derive(Debug, Subcommand)]
pub enum MontelCommand {
    /// Interpolate on the lattice and verify the extension over a box.
    Verify(MontelVerifyArgs),
    /// Check the total-degree bound sm on sampled interpolants.
    Bound(MontelBoundArgs),
}

#[derive(Debug, Args)]
pub struct MontelVerifyArgs {
    #[arg(long)]
    pub func: PathBuf,
    #[arg(long)]
    pub generators: PathBuf,
    #[arg(long)]
    pub m: usize,
    /// `lo..hi` for every axis or `lo..hi,lo..hi,…`; defaults to `-3..m+3`.
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bounds: Option<String>,
    /// Base point of the lattice; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
}

#[derive(Debug, Args)]
pub struct MontelBoundArgs {
    #[arg(long)]
    pub func: PathBuf,
    #[arg(long)]
    pub generators: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub coeff_box: String,
    /// Sample points separated by `;`; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub theta: PathBuf,
}

#[derive(Debug, Args)]
pub struct RootboundArgs {
    /// Coefficients `a_0,…,a_N` in ascending order.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Coefficient perturbation δ with `0 ≤ δ < |a_N|/2`.
    #[arg(long)]
    pub perturbation: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PopoviciuCommand {
    /// Run the decomposition pipeline on a sampled function.
    Verify(PopoviciuVerifyArgs),
}

#[derive(Debug, Args)]
pub struct PopoviciuVerifyArgs {
    #[arg(long)]
    pub func: PathBuf,
    #[arg(long)]
    pub theta: PathBuf,
    #[arg(long)]
    pub m: usize,
    /// Interpolation set for Π_{dm,max}; defaults to `{0,…,dm}^d`.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bounds: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GateArg {
    Theta,
    ThetaAndIntegers,
}

impl From<GateArg> for Gate {
    fn from(g: GateArg) -> Gate {
        match g {
            GateArg::Theta => Gate::Theta,
            GateArg::ThetaAndIntegers => Gate::ThetaAndIntegers,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GalleryCommand {
    /// The one-variable counterexample on a Kronecker lattice.
    Popoviciu1d {
        #[arg(long)]
        m: usize,
    },
    /// The sharp instance for the degree bound sm.
    MontelOpt {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: usize,
    },
    /// The multivariate counterexample.
    Multivariate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = GateArg::Theta)]
        gate: GateArg,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Print the results as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Run criteria on this many threads.
    #[arg(long)]
    pub parallel: Option<usize>,
    /// Write per-criterion results and gallery exhibits to this directory.
    #[arg(long)]
    pub artifacts: Option<PathBuf>,
    /// Only these criteria, e.g. `1,9`.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: json::render(&json!({ "error": msg.to_string() })),
            stderr: String::new(),
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(Outcome::input_error)
}

pub fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Interp(a) => interp(a),
        Command::Checkset(a) => checkset(a),
        Command::Delta(a) => delta(a),
        Command::Density(a) => density(a),
        Command::Montel(MontelCommand::Verify(a)) => montel_verify(a),
        Command::Montel(MontelCommand::Bound(a)) => montel_bound(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Rootbound(a) => rootbound(a),
        Command::Popoviciu(PopoviciuCommand::Verify(a)) => popoviciu_verify(a),
        Command::Gallery(g) => gallery_cmd(g),
        Command::Selftest(a) => selftest_cmd(a),
    }
}

/// The verification node cap, overridable through `FE_NODE_CAP`.
pub fn node_cap() -> Result<usize, String> {
    parse_node_cap(std::env::var(NODE_CAP_VAR).ok().as_deref())
}

fn parse_node_cap(value: Option<&str>) -> Result<usize, String> {
    match value {
        None => Ok(NODE_CAP),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{NODE_CAP_VAR} must be a positive integer, got {v:?}")),
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(err)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = read_input(path)?;
    json::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_function(path: &Path) -> Result<SampledFunction, String> {
    json::function_from_doc(&load::<FunctionDoc>(path)?).map_err(err)
}

fn load_generators(path: &Path, table: &Arc<SymbolTable>) -> Result<GeneratorSet, String> {
    let g = json::generators_from_doc(&load::<GeneratorsDoc>(path)?).map_err(err)?;
    g.rehome(table).map_err(err)
}

/// θ and the table both it and `table` embed into: `table` itself when it
/// already names every symbol of θ, otherwise θ's own table.
fn load_theta(path: &Path, table: &Arc<SymbolTable>) -> Result<(Arc<SymbolTable>, Vec<SymReal>), String> {
    let theta = json::theta_from_doc(&load::<ThetaDoc>(path)?).map_err(err)?;
    let Some(first) = theta.first() else {
        return Err("theta is empty".into());
    };
    match theta
        .iter()
        .map(|t| t.rehome(table))
        .collect::<montel::Result<Vec<_>>>()
    {
        Ok(t) => Ok((table.clone(), t)),
        Err(_) => Ok((first.table().clone(), theta)),
    }
}

fn points(table: &Arc<SymbolTable>, text: &str) -> Result<Vec<Point>, String> {
    text.split(';').map(|p| parse_point(table, p).map_err(err)).collect()
}

fn origin(table: &Arc<SymbolTable>, d: usize) -> Point {
    vec![SymReal::zero(table); d]
}

fn check_arity(p: &[SymReal], d: usize, what: &str) -> Result<(), String> {
    if p.len() == d {
        Ok(())
    } else {
        Err(format!("{what} has {} coordinates, expected {d}", p.len()))
    }
}

fn report_outcome(report: &VerificationReport) -> CmdResult {
    Ok(Outcome::verdict(report.pass, json::render(report)))
}

fn interp(a: InterpArgs) -> CmdResult {
    let data = json::grid_from_doc(&load::<GridDoc>(&a.values)?).map_err(err)?;
    let poly = if a.oracle {
        vandermonde_oracle(&data, VANDERMONDE_CAP)
    } else {
        tensor_interpolate(&data)
    }
    .map_err(err)?;
    let text = json::render(&json::poly_doc(&poly));
    if let Some(out) = &a.out {
        fs::write(out, &text).map_err(|e| format!("{}: {e}", out.display()))?;
    }
    Ok(Outcome::ok(text))
}

fn checkset(a: ChecksetArgs) -> CmdResult {
    let pts = json::points_from_doc(&load::<PointsDoc>(&a.points)?).map_err(err)?;
    if let Some(bad) = pts.iter().find(|p| p.len() != a.degrees.len()) {
        return Err(format!(
            "point has {} coordinates, expected {}",
            bad.len(),
            a.degrees.len()
        ));
    }
    let cert = is_correct_interpolation_set(&pts, &a.degrees).map_err(err)?;
    let doc = json!({
        "correct": cert.correct,
        "determinant": cert.determinant.to_string(),
    });
    Ok(Outcome::verdict(cert.correct, json::render(&doc)))
}

fn delta(a: DeltaArgs) -> CmdResult {
    let f = load_function(&a.func)?;
    let table = f.table().clone();
    let x = parse_point(&table, &a.at).map_err(err)?;
    check_arity(&x, f.dim(), "--at")?;
    let (value, nodes) = match (&a.h, &a.mixed) {
        (_, Some(mixed)) => {
            let hs = points(&table, mixed)?;
            for h in &hs {
                check_arity(h, f.dim(), "step")?;
            }
            (mixed_delta(&f, &hs, &x).map_err(err)?, 1usize << hs.len())
        }
        (Some(h), None) => {
            let h = parse_point(&table, h).map_err(err)?;
            check_arity(&h, f.dim(), "--h")?;
            (delta_power(&f, &h, a.power, &x).map_err(err)?, a.power as usize + 1)
        }
        (None, None) => return Err("one of --h or --mixed is required".into()),
    };
    let doc = json!({ "value": value.to_string(), "nodes_evaluated": nodes });
    Ok(Outcome::ok(json::render(&doc)))
}

fn density(a: DensityArgs) -> CmdResult {
    let cert = match (&a.source.generators, &a.source.theta) {
        (Some(path), _) => {
            let g = json::generators_from_doc(&load::<GeneratorsDoc>(path)?).map_err(err)?;
            density_check(&g)
        }
        (None, Some(path)) => kronecker_density_check(&json::theta_from_doc(&load::<ThetaDoc>(path)?).map_err(err)?),
        (None, None) => return Err("one of --generators or --theta is required".into()),
    }
    .map_err(err)?;
    let decided = cert.verdict != Verdict::Undecided;
    Ok(Outcome::verdict(decided, json::render(&json::certificate_doc(&cert))))
}

fn montel_verify(a: MontelVerifyArgs) -> CmdResult {
    let cap = node_cap()?;
    let f = load_function(&a.func)?;
    let table = f.table().clone();
    let gamma = load_generators(&a.generators, &table)?;
    let base = match &a.base {
        Some(b) => parse_point(&table, b).map_err(err)?,
        None => origin(&table, f.dim()),
    };
    check_arity(&base, f.dim(), "--base")?;
    let bounds = match &a.bounds {
        Some(b) => b.parse::<IntBox>().and_then(|b| b.broadcast(gamma.s())).map_err(err)?,
        None => IntBox::default_for(gamma.s(), a.m),
    };
    let ip = build_interpolant(&f, &base, &gamma, a.m).map_err(err)?;
    let mut report = verify_extension(&ip, &f, &bounds, cap).map_err(err)?;
    report.fact("interpolant", &ip.poly);
    report_outcome(&report)
}

fn montel_bound(a: MontelBoundArgs) -> CmdResult {
    let cap = node_cap()?;
    let f = load_function(&a.func)?;
    let table = f.table().clone();
    let gamma = load_generators(&a.generators, &table)?;
    let samples = match &a.at {
        Some(text) => points(&table, text)?,
        None => vec![origin(&table, f.dim())],
    };
    for x in &samples {
        check_arity(x, f.dim(), "sample")?;
    }
    let coeff_box = a.coeff_box.parse::<IntBox>().map_err(err)?;
    let report = verify_montel_bound(&f, &gamma, a.m, &coeff_box, &samples, cap).map_err(err)?;
    report_outcome(&report)
}

#[derive(Serialize)]
struct DecompositionDoc {
    theta: ThetaDoc,
    n: usize,
    components: Vec<PolyDoc>,
}

fn decompose_cmd(a: DecomposeArgs) -> CmdResult {
    let p = json::poly_from_doc(&load::<PolyDoc>(&a.poly)?).map_err(err)?;
    let (table, theta) = load_theta(&a.theta, p.table())?;
    let p = p.rehome(&table).map_err(err)?;
    let dec = decompose(&p, &theta).map_err(err)?;
    let doc = DecompositionDoc {
        theta: json::theta_doc(p.table(), &dec.theta),
        n: dec.n(),
        components: dec.components.iter().map(json::poly_doc).collect(),
    };
    Ok(Outcome::ok(json::render(&doc)))
}

fn rootbound(a: RootboundArgs) -> CmdResult {
    let coeffs = a
        .coeffs
        .split(',')
        .map(|c| parse_rational(c.trim()).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    let doc = match &a.perturbation {
        None => json!({ "bound": format_rational(&cauchy_root_bound_rational(&coeffs).map_err(err)?) }),
        Some(p) => {
            let delta = parse_rational(p.trim()).map_err(err)?;
            let radius = stability_radius_rational(&coeffs, &delta).map_err(err)?;
            json!({ "bound": format_rational(&radius), "perturbation": format_rational(&delta) })
        }
    };
    Ok(Outcome::ok(json::render(&doc)))
}

fn popoviciu_verify(a: PopoviciuVerifyArgs) -> CmdResult {
    let f = load_function(&a.func)?;
    let (table, theta) = load_theta(&a.theta, f.table())?;
    let f = f.rehome(&table).map_err(err)?;
    let w = match &a.points {
        Some(path) => {
            let pts = json::points_from_doc(&load::<PointsDoc>(path)?).map_err(err)?;
            pts.iter()
                .map(|p| p.iter().map(|c| c.rehome(&table)).collect::<montel::Result<Point>>())
                .collect::<montel::Result<Vec<_>>>()
                .map_err(err)?
        }
        None => default_interpolation_set(&table, f.dim(), a.m).map_err(err)?,
    };
    let s = f.dim() + 1;
    let bounds = match &a.bounds {
        Some(b) => b.parse::<IntBox>().and_then(|b| b.broadcast(s)).map_err(err)?,
        None => IntBox::default_for(s, a.m),
    };
    let report = verify_popoviciu_instance(&f, &theta, a.m, &w, &bounds).map_err(err)?;
    report_outcome(&report)
}

fn exhibit_doc(ex: &gallery::Exhibit) -> serde_json::Value {
    json!({ "function": json::function_doc(&ex.function), "report": ex.report })
}

fn optimality_doc(inst: &gallery::OptimalityInstance) -> serde_json::Value {
    json!({
        "function": json::function_doc(&inst.function),
        "generators": json::generators_doc(&inst.generators),
        "certificate": json::certificate_doc(&inst.certificate),
        "report": inst.report,
    })
}

fn kronecker_gamma() -> GeneratorSet {
    let table = SymbolTable::thetas(1, montel::IndependenceMode::Algebraic);
    GeneratorSet::kronecker(&[SymReal::symbol_at(&table, 0)]).expect("one symbol")
}

fn thetas(d: usize) -> Vec<SymReal> {
    let table = SymbolTable::thetas(d, montel::IndependenceMode::Algebraic);
    (0..d).map(|k| SymReal::symbol_at(&table, k)).collect()
}

fn gallery_cmd(g: GalleryCommand) -> CmdResult {
    let (pass, doc) = match g {
        GalleryCommand::Popoviciu1d { m } => {
            let ex = gallery::popoviciu_counterexample_1d(m, &kronecker_gamma()).map_err(err)?;
            (ex.report.pass, exhibit_doc(&ex))
        }
        GalleryCommand::MontelOpt { d, s, m } => {
            let inst = gallery::montel_optimality_instance(d, s, m).map_err(err)?;
            (inst.report.pass, optimality_doc(&inst))
        }
        GalleryCommand::Multivariate { d, m, gate } => {
            if d == 0 {
                return Err("d must be at least 1".into());
            }
            let ex = gallery::multivariate_counterexample_with_gate(d, m, &thetas(d), gate.into()).map_err(err)?;
            (ex.report.pass, exhibit_doc(&ex))
        }
    };
    Ok(Outcome::verdict(pass, json::render(&doc)))
}

/// Writes every criterion result plus the gallery exhibits behind
/// criteria 1 and 9.
fn write_artifacts(dir: &Path, results: &[selftest::CriterionResult]) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let write = |name: String, value: &serde_json::Value| {
        let path = dir.join(name);
        fs::write(&path, json::render(value)).map_err(|e| format!("{}: {e}", path.display()))
    };
    for r in results {
        write(
            format!("criterion-{:02}.json", r.id),
            &serde_json::to_value(r).map_err(err)?,
        )?;
    }
    for (d, s, m) in [(1, 2, 1), (1, 2, 2), (2, 3, 1), (2, 3, 2)] {
        let inst = gallery::montel_optimality_instance(d, s, m).map_err(err)?;
        write(format!("montel-opt-d{d}-s{s}-m{m}.json"), &optimality_doc(&inst))?;
    }
    for m in 1..=4 {
        let ex = gallery::popoviciu_counterexample_1d(m, &kronecker_gamma()).map_err(err)?;
        write(format!("popoviciu1d-m{m}.json"), &exhibit_doc(&ex))?;
    }
    for d in 1..=3 {
        for m in 1..=3 {
            for (gate, tag) in [(Gate::Theta, "theta"), (Gate::ThetaAndIntegers, "theta-and-integers")] {
                let ex = gallery::multivariate_counterexample_with_gate(d, m, &thetas(d), gate).map_err(err)?;
                write(format!("multivariate-d{d}-m{m}-{tag}.json"), &exhibit_doc(&ex))?;
            }
        }
    }
    Ok(())
}

fn selftest_cmd(a: SelftestArgs) -> CmdResult {
    if a.parallel == Some(0) {
        return Err("--parallel must be at least 1".into());
    }
    if let Some(bad) = a.only.iter().find(|&&id| !(1..=10).contains(&id)) {
        return Err(format!("no criterion {bad}"));
    }
    let results = selftest::run_all(&a.only, a.parallel);
    if let Some(dir) = &a.artifacts {
        write_artifacts(dir, &results)?;
    }
    let pass = results.iter().all(|r| r.pass);
    let stdout = if a.json {
        json::render(&results)
    } else {
        selftest::summary_table(&results)
    };
    Ok(Outcome::verdict(pass, stdout))
}
