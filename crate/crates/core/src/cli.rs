//! The `brigade` command line.
//!
//! Every command renders its whole output to a string before writing it,
//! so identical arguments give byte-identical files. Exit codes: 0 when
//! all checks pass, 1 for usage or configuration errors, 2 when a
//! mathematical check fails.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycle::{
    certify_cycle, certificate_to_json, find_certified_cycle, read_certificate, search_cycle_of_period,
    CellItinerary, CycleCertificate, FloatMap, ParamsRecord, PeriodSearchOptions, FULL_STATES_LIMIT,
    SCOUT_PRECISION,
};
use crate::error::{Error, Result};
use crate::fixed_point::scan_fixed_points;
use crate::line::{
    denom_cap_from_env, iterate, read_config, trajectory_csv, BrigadeConfig, IterationStatus, ResetState,
};
use crate::numerics::{float_to_f64, Rational};
use crate::par::par_map;
use crate::three_worker::{
    classify_region3, derived_constants, p_star, region2_two_cycle, region3_hypothesis, standard_cycle,
    sigma_invariance_check, AsymptoticBehavior, Cell, Point, Region, SigmaSet, ThreeWorkerParams,
};

#[derive(Debug, Parser)]
#[command(name = "brigade", version, about = "Exact simulation and analysis of bucket-brigade lines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the reset map and write the trajectory.
    Simulate(SimulateArgs),
    /// Scan Δ for fixed points of the reset map.
    FixedPoint(FixedPointArgs),
    /// Classify the long-run behavior of one three-worker orbit.
    Classify(ClassifyArgs),
    /// Certify, search for, or verify a periodic orbit.
    Cycle(CycleArgs),
    /// Classify every point of a grid of initial states or of parameters.
    Sweep(SweepArgs),
    /// Check the invariant set Σ.
    Sigma(SigmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Three-worker speeds, as velocities or as ratios.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Velocities v1,v2,v3 (p/q, integers or exact decimals).
    #[arg(long = "v", value_name = "V1,V2,V3", conflicts_with_all = ["r1", "r2"])]
    pub velocities: Option<String>,
    #[arg(long, value_name = "P/Q", requires = "r2")]
    pub r1: Option<String>,
    #[arg(long, value_name = "P/Q", requires = "r1")]
    pub r2: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    /// Constant velocities v1,…,vn.
    #[arg(long = "v", value_name = "V1,..,VN", conflicts_with = "config")]
    pub velocities: Option<String>,
    /// JSON line description with piecewise-constant profiles.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub line: LineArgs,
    /// Post-reset coordinates x2,…,xn.
    #[arg(long, value_name = "X2,..,XN")]
    pub init: String,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FixedPointArgs {
    #[command(flatten)]
    pub line: LineArgs,
    /// Grid spacing 1/N.
    #[arg(long, default_value = "1/100")]
    pub resolution: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_name = "X,Y")]
    pub init: String,
    /// Map iterations available to the classifier.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CycleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Replay a stored certificate.
    #[arg(long, value_name = "CERT_PATH", conflicts_with_all = ["itinerary", "init", "period"])]
    pub verify: Option<PathBuf>,
    /// Certify this itinerary, e.g. "C3,C2,C4" or "C2^3 C4".
    #[arg(long, conflicts_with_all = ["init", "period"])]
    pub itinerary: Option<String>,
    /// Scout and certify the cycle attracting this state.
    #[arg(long, value_name = "X,Y", conflicts_with = "period")]
    pub init: Option<String>,
    /// Search a grid of starts for a cycle of exactly this period.
    #[arg(long)]
    pub period: Option<usize>,
    /// Grid of starts for --period, NxN.
    #[arg(long, default_value = "200")]
    pub grid: String,
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepSpace {
    /// Initial states `(i/N, j/M)` of Δ at fixed parameters.
    States,
    /// Parameters `(r1, r2)` on a rectangle at a fixed initial state.
    Params,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "states")]
    pub space: SweepSpace,
    /// Grid size NxM (or N for NxN).
    #[arg(long, default_value = "50")]
    pub grid: String,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Also iterate each orbit this many times in 128-bit floats and
    /// record its distance to p*.
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    /// Initial state for a parameter sweep.
    #[arg(long, value_name = "X,Y")]
    pub init: Option<String>,
    #[arg(long, value_name = "LO,HI", default_value = "1/10,3")]
    pub r1_range: String,
    #[arg(long, value_name = "LO,HI", default_value = "1/10,3")]
    pub r2_range: String,
    /// Keep only states in Σ and record whether their image stays in Σ.
    #[arg(long)]
    pub in_sigma: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// What a command produced and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub checks_passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, checks_passed: true }
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    Ok(Rational::parse(text)?)
}

pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn parse_point(text: &str) -> Result<Point> {
    match parse_list(text)?.as_slice() {
        [x, y] => {
            let p = Point::new(x.clone(), y.clone());
            if !p.in_simplex() {
                return Err(Error::Config(format!("initial state {p} is not in Δ (need 0 ≤ x ≤ y ≤ 1)")));
            }
            Ok(p)
        }
        other => Err(Error::Config(format!("expected X,Y, got {} values", other.len()))),
    }
}

fn parse_range(text: &str) -> Result<(Rational, Rational)> {
    match parse_list(text)?.as_slice() {
        [lo, hi] if lo <= hi => Ok((lo.clone(), hi.clone())),
        _ => Err(Error::Config(format!("expected LO,HI with LO ≤ HI, got {text}"))),
    }
}

/// `NxM` or `N`.
pub fn parse_grid(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Config(format!("grid must be N or NxM with positive integers, got {text}"));
    let parse = |s: &str| s.trim().parse::<i64>().ok().filter(|&n| n > 0).ok_or_else(bad);
    match text.split_once(['x', 'X', '×']) {
        Some((n, m)) => Ok((parse(n)?, parse(m)?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

/// Accepts `C3,C2,C4`, `C3 C2 C4` and run-length forms like `C2^3 C4`.
pub fn parse_itinerary(text: &str) -> Result<CellItinerary> {
    let mut cells = Vec::new();
    for token in text.split([',', ' ']).filter(|t| !t.is_empty()) {
        let (name, count) = match token.split_once('^') {
            Some((c, k)) => (c, k.parse::<usize>().map_err(|_| Error::Config(format!("bad run length in {token}")))?),
            None => (token, 1),
        };
        let cell: Cell = name.parse().map_err(|_| Error::Config(format!("unknown cell {name}")))?;
        cells.extend(std::iter::repeat_n(cell, count));
    }
    Ok(CellItinerary::new(cells)?)
}

fn params_from(args: &ParamArgs) -> Result<ThreeWorkerParams> {
    match (&args.velocities, &args.r1, &args.r2) {
        (Some(v), _, _) => match parse_list(v)?.as_slice() {
            [v1, v2, v3] => ThreeWorkerParams::from_velocities(v1, v2, v3),
            other => Err(Error::Config(format!("expected three velocities, got {}", other.len()))),
        },
        (None, Some(r1), Some(r2)) => ThreeWorkerParams::new(parse_rational(r1)?, parse_rational(r2)?),
        _ => Err(Error::Config("give --v v1,v2,v3 or --r1 and --r2".into())),
    }
}

fn line_from(args: &LineArgs) -> Result<BrigadeConfig> {
    match (&args.velocities, &args.config) {
        (Some(v), _) => BrigadeConfig::constant(&parse_list(v)?),
        (None, Some(path)) => read_config(path),
        (None, None) => Err(Error::Config("give --v v1,..,vn or --config PATH".into())),
    }
}

fn params_json(p: &ThreeWorkerParams) -> Value {
    json!(ParamsRecord::from(p))
}

/// Region-3 orbits with `r1 > r2 ≥ 1` go through the exact trichotomy;
/// everything else is scouted and certified.
pub fn classify(p: &ThreeWorkerParams, s0: &Point, budget: usize) -> Result<AsymptoticBehavior> {
    if region3_hypothesis(p) {
        classify_region3(p, s0, budget)
    } else {
        Ok(find_certified_cycle(p, s0, budget))
    }
}

/// Exact states of the limit set named by `b`; long certified cycles are
/// represented by their seed alone (second value `true`).
pub fn witness_states(p: &ThreeWorkerParams, b: &AsymptoticBehavior) -> (Vec<Point>, bool) {
    match b {
        AsymptoticBehavior::FixedPoint => (vec![p_star(p)], false),
        AsymptoticBehavior::StandardThreeCycle => (standard_cycle().to_vec(), false),
        AsymptoticBehavior::OtherThreeCycle => {
            let dc = derived_constants(p);
            match (dc.theta(), dc.phi()) {
                (Ok(t), Ok(f)) => {
                    let (z, o) = (Rational::zero(), Rational::one());
                    (vec![Point::new(z, t.clone()), Point::new(f.clone(), f.clone()), Point::new(t.clone(), o)], false)
                }
                _ => (Vec::new(), false),
            }
        }
        AsymptoticBehavior::TwoCycle => match region2_two_cycle(p) {
            Ok((a, b)) => (vec![a, b], false),
            Err(_) => (Vec::new(), false),
        },
        AsymptoticBehavior::CertifiedCycle { certificate, .. } => {
            if certificate.period <= FULL_STATES_LIMIT {
                (certificate.states(), false)
            } else {
                (vec![certificate.seed.clone()], true)
            }
        }
        AsymptoticBehavior::Unresolved { .. } => (Vec::new(), false),
    }
}

fn behavior_json(b: &AsymptoticBehavior) -> Value {
    let mut v = json!({ "kind": b.name(), "period": b.period() });
    match b {
        AsymptoticBehavior::CertifiedCycle { transient, certificate, .. } => {
            v["transient"] = json!(transient);
            v["itinerary"] = json!(certificate.itinerary);
        }
        AsymptoticBehavior::Unresolved { budget } => v["budget"] = json!(budget),
        _ => {}
    }
    v
}

pub fn classification_record(p: &ThreeWorkerParams, s0: &Point, b: &AsymptoticBehavior) -> Value {
    let (states, truncated) = witness_states(p, b);
    let mut v = json!({
        "params": params_json(p),
        "region": p.region(),
        "initial": s0,
        "behavior": behavior_json(b),
        "witness_states": states,
    });
    if truncated {
        v["witness_states_truncated"] = json!(true);
    }
    v
}

fn to_json_string<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Outcome> {
    let cfg = line_from(&a.line)?;
    let s0 = ResetState::new(parse_list(&a.init)?)?;
    if s0.dim() + 1 != cfg.n() {
        return Err(Error::Config(format!("--init has {} coordinates, the line needs {}", s0.dim(), cfg.n() - 1)));
    }
    let cap = denom_cap_from_env();
    let tr = iterate(&cfg, &s0, a.steps, cap);
    let output = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => trajectory_csv(&tr),
        Format::Json => to_json_string(&json!({
            "states": tr.states.iter().map(|s| s.coordinates().to_vec()).collect::<Vec<_>>(),
            "reset_times": tr.reset_times,
        }))?,
    };
    if let IterationStatus::Truncated { step, bits, cap } = tr.status {
        write_output(&a.output, &output)?;
        eprintln!("stopped before step {step}: denominator of {bits} bits exceeds the cap");
        return Err(Error::DenominatorCap { bits, cap });
    }
    Ok(Outcome::ok(output))
}

fn cmd_fixed_point(a: &FixedPointArgs) -> Result<Outcome> {
    let cfg = line_from(&a.line)?;
    let resolution = parse_rational(&a.resolution)?;
    let report = scan_fixed_points(&cfg, &resolution, denom_cap_from_env())?;
    let unique = report.verified().count() == 1;
    Ok(Outcome { output: report.to_json()? + "\n", checks_passed: unique })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Outcome> {
    let p = params_from(&a.params)?;
    let s0 = parse_point(&a.init)?;
    let b = classify(&p, &s0, a.budget)?;
    Ok(Outcome::ok(to_json_string(&classification_record(&p, &s0, &b))?))
}

fn certificate_output(cert: &CycleCertificate) -> Result<String> {
    Ok(certificate_to_json(cert)? + "\n")
}

fn cmd_cycle(a: &CycleArgs) -> Result<Outcome> {
    if let Some(path) = &a.verify {
        let cert = read_certificate(path)?;
        let result = cert.verify();
        let record = json!({
            "params": params_json(&cert.params),
            "period": cert.period,
            "verified": result.is_ok(),
            "error": result.as_ref().err().map(ToString::to_string),
        });
        return Ok(Outcome { output: to_json_string(&record)?, checks_passed: result.is_ok() });
    }
    let p = params_from(&a.params)?;
    if let Some(text) = &a.itinerary {
        let cert = certify_cycle(&p, &parse_itinerary(text)?)?;
        return Ok(Outcome::ok(certificate_output(&cert)?));
    }
    if let Some(init) = &a.init {
        let s0 = parse_point(init)?;
        return match find_certified_cycle(&p, &s0, a.budget) {
            AsymptoticBehavior::CertifiedCycle { certificate, .. } => Ok(Outcome::ok(certificate_output(&certificate)?)),
            other => Ok(Outcome { output: to_json_string(&classification_record(&p, &s0, &other))?, checks_passed: false }),
        };
    }
    if let Some(period) = a.period {
        let (n, _) = parse_grid(&a.grid)?;
        let mut opts = PeriodSearchOptions::new(period);
        opts.grid = n;
        let out = search_cycle_of_period(&p, &opts);
        return match (out.certificate, out.start) {
            (Some(mut cert), Some(start)) => {
                eprintln!("certified from grid start {start} after {} starts", out.starts_visited);
                cert.transient_bound = None;
                Ok(Outcome::ok(certificate_output(&cert)?))
            }
            _ => {
                let record = json!({
                    "params": params_json(&p),
                    "period": period,
                    "found": false,
                    "starts_visited": out.starts_visited,
                    "searches": out.searches,
                    "rejected_windows": out.rejected.len(),
                });
                Ok(Outcome { output: to_json_string(&record)?, checks_passed: false })
            }
        };
    }
    Err(Error::Config("cycle needs one of --verify, --itinerary, --init or --period".into()))
}

#[derive(Clone, Debug, Serialize)]
struct SweepRecord {
    r1: Rational,
    r2: Rational,
    region: Region,
    x: Rational,
    y: Rational,
    behavior: &'static str,
    period: Option<usize>,
    transient: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_to_p_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image_in_sigma: Option<bool>,
}

/// Max-norm distance to p* after `steps` iterations in binary floats.
fn float_distance_to_p_star(p: &ThreeWorkerParams, s0: &Point, steps: usize) -> f64 {
    let map = FloatMap::new(p, SCOUT_PRECISION);
    let mut s = map.point(s0);
    for _ in 0..steps {
        s = map.step(&s).1;
    }
    let target = map.point(&p_star(p));
    let dx = float_to_f64(&(&s.0 - &target.0)).abs();
    let dy = float_to_f64(&(&s.1 - &target.1)).abs();
    dx.max(dy)
}

fn sweep_point(p: &ThreeWorkerParams, s0: &Point, a: &SweepArgs, sigma: Option<&SigmaSet>) -> Result<SweepRecord> {
    let b = classify(p, s0, a.budget)?;
    let transient = match &b {
        AsymptoticBehavior::CertifiedCycle { transient, .. } => Some(*transient),
        _ => None,
    };
    Ok(SweepRecord {
        r1: p.r1().clone(),
        r2: p.r2().clone(),
        region: p.region(),
        x: s0.x.clone(),
        y: s0.y.clone(),
        behavior: b.name(),
        period: b.period(),
        transient,
        distance_to_p_star: (a.steps > 0).then(|| float_distance_to_p_star(p, s0, a.steps)),
        image_in_sigma: sigma.map(|sig| sig.contains(&crate::three_worker::reset_map3(p, s0))),
    })
}

fn grid_values(lo: &Rational, hi: &Rational, n: i64) -> Vec<Rational> {
    let width = hi - lo;
    (0..=n).map(|i| lo + &(&width * &Rational::new(i, n))).collect()
}

fn sweep_csv(records: &[SweepRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let optional = |v: Option<String>| v.unwrap_or_default();
    w.write_record([
        "r1", "r2", "region", "x", "y", "x_dec12", "y_dec12", "behavior", "period", "transient",
        "distance_to_p_star", "image_in_sigma",
    ])
    .map_err(csv_error)?;
    for r in records {
        w.write_record([
            r.r1.to_string(),
            r.r2.to_string(),
            r.region.to_string(),
            r.x.to_string(),
            r.y.to_string(),
            r.x.to_decimal(12),
            r.y.to_decimal(12),
            r.behavior.to_string(),
            optional(r.period.map(|v| v.to_string())),
            optional(r.transient.map(|v| v.to_string())),
            optional(r.distance_to_p_star.map(|v| format!("{v:e}"))),
            optional(r.image_in_sigma.map(|v| v.to_string())),
        ])
        .map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome> {
    let (n, m) = parse_grid(&a.grid)?;
    let records: Vec<SweepRecord> = match a.space {
        SweepSpace::States => {
            let p = params_from(&a.params)?;
            let sigma = if a.in_sigma { Some(SigmaSet::new(&p)?) } else { None };
            let mut points = Vec::new();
            for i in 0..=n {
                for j in 0..=m {
                    let s = Point::new(Rational::new(i, n), Rational::new(j, m));
                    if s.in_simplex() && sigma.as_ref().is_none_or(|sig| sig.contains(&s)) {
                        points.push(s);
                    }
                }
            }
            par_map(&points, |s| sweep_point(&p, s, a, sigma.as_ref())).into_iter().collect::<Result<_>>()?
        }
        SweepSpace::Params => {
            if a.in_sigma {
                return Err(Error::Config("--in-sigma applies to state sweeps".into()));
            }
            let s0 = parse_point(a.init.as_deref().ok_or_else(|| Error::Config("parameter sweep needs --init".into()))?)?;
            let (r1_lo, r1_hi) = parse_range(&a.r1_range)?;
            let (r2_lo, r2_hi) = parse_range(&a.r2_range)?;
            let mut params = Vec::new();
            for r1 in grid_values(&r1_lo, &r1_hi, n) {
                for r2 in grid_values(&r2_lo, &r2_hi, m) {
                    params.push(ThreeWorkerParams::new(r1.clone(), r2)?);
                }
            }
            par_map(&params, |p| sweep_point(p, &s0, a, None)).into_iter().collect::<Result<_>>()?
        }
    };
    let left_sigma = records.iter().filter(|r| r.image_in_sigma == Some(false)).count();
    if left_sigma > 0 {
        eprintln!("{left_sigma} of {} Σ points map outside Σ", records.len());
    }
    let output = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => sweep_csv(&records)?,
        Format::Json => to_json_string(&records)?,
    };
    Ok(Outcome { output, checks_passed: left_sigma == 0 })
}

fn cmd_sigma(a: &SigmaArgs) -> Result<Outcome> {
    let p = params_from(&a.params)?;
    let report = sigma_invariance_check(&p, a.samples, a.seed)?;
    let passed = report.passed();
    let output = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json_string(&report)?,
        Format::Csv => {
            let mut s = String::from("vertex,x,y,x_dec12,y_dec12\n");
            for (name, v) in report.sigma.vertices() {
                let _ = writeln!(s, "{name},{},{},{},{}", v.x, v.y, v.x.to_decimal(12), v.y.to_decimal(12));
            }
            s
        }
    };
    if !passed {
        for r in report.relations.iter().filter(|r| !r.holds) {
            eprintln!("relation {} fails: image {}", r.relation, r.image);
        }
        eprintln!("{} of {} samples map outside Σ", report.violations, report.samples);
    }
    Ok(Outcome { output, checks_passed: passed })
}

fn output_args(c: &Command) -> &OutputArgs {
    match c {
        Command::Simulate(a) => &a.output,
        Command::FixedPoint(a) => &a.output,
        Command::Classify(a) => &a.output,
        Command::Cycle(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Sigma(a) => &a.output,
    }
}

fn write_output(o: &OutputArgs, text: &str) -> Result<()> {
    match &o.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            // A closed reader (e.g. `| head`) ends output without an error.
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Runs one command; the caller writes `output`.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Simulate(a) => cmd_simulate(a),
        Command::FixedPoint(a) => cmd_fixed_point(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Cycle(a) => cmd_cycle(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Sigma(a) => cmd_sigma(a),
    }
}

/// Parses `args`, runs the command, writes its output and maps the
/// result to the exit-code contract.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = execute(&cli.command).and_then(|out| {
        write_output(output_args(&cli.command), &out.output)?;
        Ok(out.checks_passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
