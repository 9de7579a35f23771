//! Command-line front end: validate samples, emit moduli, metrize, check
//! action families, and generate test matrices.
//!
//! Exit codes: 0 when every requested check passed, 1 when the mathematics
//! failed (axiom violations, missing roots, continuity or metrization
//! failure), 2 for unusable input or parameters. Reports go to stdout as
//! stable JSON (or to `--out`); a one-line human summary goes to stderr.

mod json;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use metric_forge::{
    check_baction_axioms, check_point_axioms, equivalence_check,
    exhaustive_chain_metric, expected_failures, gen_baction, gen_power_line,
    gen_random_b_metric_with_points, matrix_to_csv_string, metrize_b, minimal_relaxation_constant,
    read_matrix_csv, sample_effective_relaxation, snowflake, verify_b_metric, verify_theta_metric,
    ActionParams, AxiomReport, BAction, DistanceMatrix, Error as ForgeError, MetrizeOptions,
    RegularityModulus, Tolerances, DEFAULT_GRID_N,
};

const SCHEMA_VERSION: u32 = 1;
const MAX_N_ENV: &str = "METRIC_FORGE_MAX_N";
const DEFAULT_MAX_N: usize = 2000;
/// Point count up to which metrize results are cross-checked against the
/// exhaustive chain oracle.
const ORACLE_MAX_N: usize = 8;

#[derive(Parser)]
#[command(
    name = "metric-forge",
    version,
    about = "Axiom checks, regularity moduli, and constructive metrization for finite distance samples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute slack before an axiom comparison counts as violated
    #[arg(long, global = true, value_name = "TOL")]
    tol_abs: Option<f64>,

    /// Relative stability threshold for iterative searches
    #[arg(long, global = true, value_name = "TOL")]
    tol_rel: Option<f64>,

    /// Residual factor for root solving
    #[arg(long, global = true, value_name = "TOL")]
    tol_root: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the point axioms plus a relaxed or action-bounded triangle inequality
    Validate(ValidateArgs),
    /// Emit a uniform-regularity modulus table over an epsilon grid
    Modulus(ModulusArgs),
    /// Construct an equivalent metric with distortion certificates
    Metrize(MetrizeArgs),
    /// Check the four axioms of a named action family on a sampling grid
    BactionCheck(BactionCheckArgs),
    /// Generate distance samples with known relaxation constants
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// relaxed triangle inequality with constant S
    B,
    /// triangle inequality bounded by a named action
    Theta,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::B => "b",
            Mode::Theta => "theta",
        }
    }
}

#[derive(Args)]
struct ValidateArgs {
    /// Distance matrix CSV: a label row, then the full square matrix
    matrix: PathBuf,

    #[arg(long, value_enum)]
    mode: Mode,

    /// Relaxation constant (mode b)
    #[arg(long = "S", value_name = "S")]
    s: Option<f64>,

    /// Action family name (mode theta)
    #[arg(long, value_name = "FAMILY")]
    theta: Option<String>,

    /// Action parameter override, repeatable: range=R or budget=B
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModulusArgs {
    #[arg(long, value_enum)]
    mode: Mode,

    /// Relaxation constant (mode b)
    #[arg(long = "S", value_name = "S")]
    s: Option<f64>,

    /// Action family name (mode theta)
    #[arg(long, value_name = "FAMILY")]
    theta: Option<String>,

    /// Action parameter override, repeatable: range=R or budget=B
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Epsilon value, repeatable; the table covers all of them
    #[arg(long = "eps", value_name = "EPS", required = true)]
    eps: Vec<f64>,

    /// Starting side resolution for continuity sampling (mode theta)
    #[arg(long, value_name = "N")]
    grid_n: Option<u32>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MetrizeArgs {
    /// Distance matrix CSV: a label row, then the full square matrix
    matrix: PathBuf,

    #[arg(long, value_enum)]
    mode: Mode,

    /// Relaxation constant (mode b)
    #[arg(long = "S", value_name = "S")]
    s: Option<f64>,

    /// Action family name (mode theta)
    #[arg(long, value_name = "FAMILY")]
    theta: Option<String>,

    /// Action parameter override, repeatable: range=R or budget=B
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Include one optimal chain witness per point pair in the report
    #[arg(long)]
    chains: bool,

    /// Cap on the maximal distortion before the exponent is retried
    #[arg(long, value_name = "CAP")]
    distortion_cap: Option<f64>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write the constructed metric CSV here (default: input path with a
    /// .metric.csv extension)
    #[arg(long, value_name = "PATH")]
    metric_out: Option<PathBuf>,
}

#[derive(Args)]
struct BactionCheckArgs {
    /// Action family name
    #[arg(long, value_name = "FAMILY", required = true)]
    theta: String,

    /// Action parameter override, repeatable: range=R or budget=B
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,

    /// Side resolution of the axiom grid
    #[arg(long, value_name = "N")]
    grid_n: Option<usize>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFamily {
    /// distances |x_i - x_j|^q over given line coordinates
    PowerLine,
    /// distances |P_i - P_j|^q over seeded uniform points in the unit square
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: GenFamily,

    /// Comma-separated line coordinates (power-line)
    #[arg(long, value_delimiter = ',', value_name = "X,..", allow_hyphen_values = true)]
    points: Vec<f64>,

    /// Number of random points (random)
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// RNG seed (random)
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    seed: u64,

    /// Distance exponent, q >= 1
    #[arg(long, value_name = "Q", default_value_t = 2.0)]
    q: f64,

    /// Write the matrix CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write the provenance JSON here (default: stdout when --out is given,
    /// otherwise suppressed to keep stdout valid CSV)
    #[arg(long)]
    provenance: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tolerances {
        tol_abs: cli.tol_abs.unwrap_or(metric_forge::tolerances::DEFAULT_TOL_ABS),
        tol_rel: cli.tol_rel.unwrap_or(metric_forge::tolerances::DEFAULT_TOL_REL),
        tol_root: cli.tol_root.unwrap_or(metric_forge::tolerances::DEFAULT_TOL_ROOT),
        delta_floor: metric_forge::tolerances::DEFAULT_DELTA_FLOOR,
    };
    let outcome = match cli.command {
        Command::Validate(args) => run_validate(args, &tol),
        Command::Modulus(args) => run_modulus(args, &tol),
        Command::Metrize(args) => run_metrize(args, &tol),
        Command::BactionCheck(args) => run_baction_check(args, &tol),
        Command::Gen(args) => run_gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("metric-forge: {err:#}");
            exit_code_for(&err)
        }
    }
}

/// Mathematical failures exit 1; everything else that errors is a usage or
/// input problem and exits 2.
fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    match err.downcast_ref::<ForgeError>() {
        Some(
            ForgeError::NoRoot { .. }
            | ForgeError::RootStalled { .. }
            | ForgeError::ContinuityFailure { .. }
            | ForgeError::MetrizationFailure { .. },
        ) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn pass_code(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn max_points() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(raw) => {
            let n: usize = raw
                .trim()
                .parse()
                .with_context(|| format!("{MAX_N_ENV} must be a positive integer, got `{raw}`"))?;
            if n == 0 {
                bail!("{MAX_N_ENV} must be at least 1");
            }
            Ok(n)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_N),
        Err(e) => Err(e).context(format!("{MAX_N_ENV} is not valid unicode")),
    }
}

fn load_matrix(path: &Path, tol: &Tolerances) -> Result<DistanceMatrix> {
    let cap = max_points()?;
    let d = read_matrix_csv(path, tol).with_context(|| format!("reading {}", path.display()))?;
    if d.n() > cap {
        bail!(
            "matrix has {} points, above the cap of {cap}; set {MAX_N_ENV} to raise it",
            d.n()
        );
    }
    Ok(d)
}

fn parse_action_params(pairs: &[String]) -> Result<ActionParams> {
    let mut params = ActionParams::default();
    for pair in pairs {
        let (key, value) = pair
            .split_once('=')
            .with_context(|| format!("--param expects KEY=VALUE, got `{pair}`"))?;
        match key {
            "range" => {
                params.range =
                    Some(value.parse().with_context(|| format!("bad range `{value}`"))?);
            }
            "budget" => {
                params.budget =
                    Some(value.parse().with_context(|| format!("bad budget `{value}`"))?);
            }
            other => bail!("unknown action parameter `{other}`; known parameters: range, budget"),
        }
    }
    Ok(params)
}

fn action_for(theta: &Option<String>, params: &[String]) -> Result<BAction> {
    let name = theta
        .as_deref()
        .context("mode theta requires --theta with an action family name")?;
    let params = parse_action_params(params)?;
    Ok(gen_baction(name, &params)?)
}

fn require_s(s: Option<f64>) -> Result<f64> {
    s.context("mode b requires --S with a relaxation constant")
}

fn reject_cross_mode(mode: Mode, s: Option<f64>, theta: &Option<String>) -> Result<()> {
    match mode {
        Mode::B if theta.is_some() => bail!("--theta does not apply to mode b"),
        Mode::Theta if s.is_some() => bail!("--S does not apply to mode theta"),
        _ => Ok(()),
    }
}

/// Write the report JSON to `out` or stdout, newline-terminated.
fn emit(doc: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = json::to_stable_json(doc)?;
    match out {
        Some(path) => fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn summarize(report: &AxiomReport) -> String {
    if report.passed {
        "no violations".to_owned()
    } else {
        let tags: Vec<String> =
            report.violated_axioms().iter().map(|t| t.to_string()).collect();
        format!("{} violation(s): {}", report.violations.len(), tags.join(", "))
    }
}

fn run_validate(args: ValidateArgs, tol: &Tolerances) -> Result<ExitCode> {
    reject_cross_mode(args.mode, args.s, &args.theta)?;
    let d = load_matrix(&args.matrix, tol)?;
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "command": "validate",
        "matrix": args.matrix.display().to_string(),
        "mode": args.mode.as_str(),
        "n": d.n(),
        "tolerances": serde_json::to_value(tol)?,
    });
    let report = match args.mode {
        Mode::B => {
            let s = require_s(args.s)?;
            doc["s"] = json!(s);
            verify_b_metric(&d, s, tol)?
        }
        Mode::Theta => {
            let action = action_for(&args.theta, &args.params)?;
            doc["theta"] = json!(action.name());
            let mut report = check_point_axioms(&d, tol);
            report.absorb(verify_theta_metric(&d, &action, tol)?);
            report
        }
    };
    doc["passed"] = json!(report.passed);
    doc["violation_count"] = json!(report.violations.len());
    doc["violations"] = serde_json::to_value(&report.violations)?;
    emit(&doc, args.out.as_deref())?;
    eprintln!(
        "validate: {} {} ({})",
        if report.passed { "PASS" } else { "FAIL" },
        args.matrix.display(),
        summarize(&report)
    );
    Ok(pass_code(report.passed))
}

fn run_modulus(args: ModulusArgs, tol: &Tolerances) -> Result<ExitCode> {
    reject_cross_mode(args.mode, args.s, &args.theta)?;
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "command": "modulus",
        "mode": args.mode.as_str(),
    });
    let modulus = match args.mode {
        Mode::B => {
            let s = require_s(args.s)?;
            doc["s"] = json!(s);
            RegularityModulus::b_metric(s, &args.eps)?
        }
        Mode::Theta => {
            let action = action_for(&args.theta, &args.params)?;
            let resolution = args.grid_n.unwrap_or(DEFAULT_GRID_N as u32);
            doc["theta"] = json!(action.name());
            doc["grid_n"] = json!(resolution);
            RegularityModulus::theta(&action, &args.eps, resolution, tol)?
        }
    };
    doc["modulus"] = serde_json::to_value(&modulus)?;
    emit(&doc, args.out.as_deref())?;
    eprintln!("modulus: {} entries (mode {})", modulus.table().len(), args.mode.as_str());
    Ok(ExitCode::SUCCESS)
}

fn run_metrize(args: MetrizeArgs, tol: &Tolerances) -> Result<ExitCode> {
    reject_cross_mode(args.mode, args.s, &args.theta)?;
    let d = load_matrix(&args.matrix, tol)?;
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "command": "metrize",
        "matrix": args.matrix.display().to_string(),
        "mode": args.mode.as_str(),
        "n": d.n(),
    });

    // validation fails fast: metrization constants mean nothing for samples
    // that are not what they claim to be
    let (validation, s_used) = match args.mode {
        Mode::B => {
            let s = require_s(args.s)?;
            doc["s"] = json!(s);
            (verify_b_metric(&d, s, tol)?, s)
        }
        Mode::Theta => {
            let action = action_for(&args.theta, &args.params)?;
            doc["theta"] = json!(action.name());
            let mut report = check_point_axioms(&d, tol);
            report.absorb(verify_theta_metric(&d, &action, tol)?);
            let s_eff =
                sample_effective_relaxation(&d, &action)?.max(minimal_relaxation_constant(&d));
            (report, s_eff)
        }
    };
    doc["validation"] = json!({
        "passed": validation.passed,
        "violation_count": validation.violations.len(),
        "violations": serde_json::to_value(&validation.violations)?,
    });
    if !validation.passed {
        doc["passed"] = json!(false);
        emit(&doc, args.out.as_deref())?;
        eprintln!(
            "metrize: FAIL {} (validation: {})",
            args.matrix.display(),
            summarize(&validation)
        );
        return Ok(ExitCode::from(1));
    }
    doc["s_used"] = json!(s_used);

    let opts = MetrizeOptions {
        tolerances: *tol,
        distortion_cap: args
            .distortion_cap
            .unwrap_or(metric_forge::metrization::DEFAULT_DISTORTION_CAP),
        chains: args.chains,
        ..Default::default()
    };
    let result = match metrize_b(&d, s_used, &opts) {
        Ok(result) => result,
        Err(err @ ForgeError::MetrizationFailure { .. }) => {
            if let ForgeError::MetrizationFailure { cap, attempts, ref best } = err {
                doc["passed"] = json!(false);
                doc["failure"] = json!({
                    "kind": "metrization-failure",
                    "cap": cap,
                    "attempts": attempts,
                    "best": {
                        "p": best.p,
                        "distortion": serde_json::to_value(best.distortion)?,
                    },
                });
                emit(&doc, args.out.as_deref())?;
            }
            return Err(err.into());
        }
        Err(err) => return Err(err.into()),
    };

    let equivalence = equivalence_check(&d, &result, tol)?;
    let oracle = if d.n() <= ORACLE_MAX_N {
        let flaked = snowflake(&d, result.p)?;
        let slow = exhaustive_chain_metric(&flaked)?;
        let max_abs_diff = result
            .metric
            .entries()
            .iter()
            .zip(slow.entries())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        Some((max_abs_diff, max_abs_diff <= 1e-12))
    } else {
        None
    };

    let metric_path = args
        .metric_out
        .clone()
        .unwrap_or_else(|| args.matrix.with_extension("metric.csv"));
    fs::write(&metric_path, matrix_to_csv_string(&result.metric))
        .with_context(|| format!("writing {}", metric_path.display()))?;

    let passed = equivalence.passed && oracle.is_none_or(|(_, agrees)| agrees);
    doc["p"] = json!(result.p);
    doc["distortion"] = serde_json::to_value(result.distortion)?;
    doc["metric_csv"] = json!(metric_path.display().to_string());
    doc["equivalence"] = json!({
        "passed": equivalence.passed,
        "violation_count": equivalence.violations.len(),
        "violations": serde_json::to_value(&equivalence.violations)?,
    });
    if let Some((max_abs_diff, agrees)) = oracle {
        doc["oracle"] = json!({ "max_abs_diff": max_abs_diff, "agrees": agrees });
    }
    if let Some(chains) = &result.chains {
        doc["chains"] = serde_json::to_value(chains)?;
    }
    doc["passed"] = json!(passed);
    emit(&doc, args.out.as_deref())?;
    eprintln!(
        "metrize: {} {} (p = {:.6}, distortion max = {:.6}, metric -> {})",
        if passed { "PASS" } else { "FAIL" },
        args.matrix.display(),
        result.p,
        result.distortion.max,
        metric_path.display()
    );
    Ok(pass_code(passed))
}

fn run_baction_check(args: BactionCheckArgs, tol: &Tolerances) -> Result<ExitCode> {
    let action = gen_baction(&args.theta, &parse_action_params(&args.params)?)?;
    let grid_n = args.grid_n.unwrap_or(DEFAULT_GRID_N);
    let report = check_baction_axioms(&action, grid_n, tol)?;
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "command": "baction-check",
        "theta": action.name(),
        "range": action.range(),
        "budget": action.budget(),
        "grid_n": grid_n,
        "passed": report.passed,
        "violated_axioms": serde_json::to_value(report.violated_axioms())?,
        "violation_count": report.violations.len(),
        "violations": serde_json::to_value(&report.violations)?,
    });
    if let Some(expected) = expected_failures(action.name()) {
        doc["expected_failures"] = serde_json::to_value(expected)?;
    }
    emit(&doc, args.out.as_deref())?;
    eprintln!(
        "baction-check: {} {} ({})",
        if report.passed { "PASS" } else { "FAIL" },
        action.name(),
        summarize(&report)
    );
    Ok(pass_code(report.passed))
}

fn run_gen(args: GenArgs) -> Result<ExitCode> {
    let cap = max_points()?;
    let (matrix, provenance) = match args.family {
        GenFamily::PowerLine => {
            if args.points.is_empty() {
                bail!("gen power-line requires --points with at least one coordinate");
            }
            if args.n.is_some() {
                bail!("--n does not apply to power-line; the point list fixes n");
            }
            if args.points.len() > cap {
                bail!("{} points exceed the cap of {cap}", args.points.len());
            }
            let (matrix, s_claim) = gen_power_line(&args.points, args.q)?;
            let provenance = json!({
                "schema": SCHEMA_VERSION,
                "command": "gen",
                "generator": "power-line",
                "n": matrix.n(),
                "q": args.q,
                "s_claim": s_claim,
                "points": args.points,
            });
            (matrix, provenance)
        }
        GenFamily::Random => {
            let n = args.n.context("gen random requires --n")?;
            if !args.points.is_empty() {
                bail!("--points does not apply to random; use --n and --seed");
            }
            if n > cap {
                bail!("{n} points exceed the cap of {cap}; set {MAX_N_ENV} to raise it");
            }
            let (matrix, coords) = gen_random_b_metric_with_points(n, args.seed, args.q)?;
            let s_claim = if args.q == 1.0 { 1.0 } else { 2.0f64.powf(args.q - 1.0) };
            let provenance = json!({
                "schema": SCHEMA_VERSION,
                "command": "gen",
                "generator": "random",
                "n": n,
                "seed": args.seed,
                "rng": "chacha8",
                "q": args.q,
                "s_claim": s_claim,
                "points": coords,
            });
            (matrix, provenance)
        }
    };

    let csv = matrix_to_csv_string(&matrix);
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            match &args.provenance {
                Some(p) => fs::write(p, json::to_stable_json(&provenance)? + "\n")
                    .with_context(|| format!("writing {}", p.display()))?,
                None => println!("{}", json::to_stable_json(&provenance)?),
            }
        }
        None => {
            // stdout carries the CSV; provenance only goes to a file
            print!("{csv}");
            if let Some(p) = &args.provenance {
                fs::write(p, json::to_stable_json(&provenance)? + "\n")
                    .with_context(|| format!("writing {}", p.display()))?;
            }
        }
    }
    eprintln!(
        "gen: {} n={} q={}{}",
        match args.family {
            GenFamily::PowerLine => "power-line",
            GenFamily::Random => "random",
        },
        matrix.n(),
        args.q,
        args.out
            .as_deref()
            .map(|p| format!(" -> {}", p.display()))
            .unwrap_or_default()
    );
    Ok(ExitCode::SUCCESS)
}
