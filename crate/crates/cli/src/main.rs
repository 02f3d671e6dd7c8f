//! `hpdiv`: compute divergences between HPD matrices, generate random test matrices,
//! and run the metric verification suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hpdiv_core::divergence::{is_unit_trace, DivergenceSpec};
use hpdiv_core::hpd::io::{matrix_from_json, read_matrix, write_matrix};
use hpdiv_core::hpd::random::{random_hpd, HpdGenConfig};
use hpdiv_core::integral::QuadratureConfig;
use hpdiv_core::metric::suites::DEFAULT_LIMIT_EPS;
use hpdiv_core::metric::{
    axioms_suite, cm_transform_suite, cnd_predicates, cnd_theorem_suite, integral_suite,
    limit_suite, mat3_from_hermitian, reduction_suite, triangle_suite, IntegralRep, SuiteConfig,
    VerificationReport,
};
use hpdiv_core::numfmt::Sig17;
use hpdiv_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "hpdiv",
    version,
    about = "Symmetric divergences on Hermitian positive definite matrices"
)]
struct Cli {
    /// JSON-lines diagnostics on stderr.
    #[arg(long, global = true)]
    verbose: bool,

    /// Worker threads for suites (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one divergence between two matrix files.
    Compute(ComputeArgs),
    /// Write a seeded random HPD matrix.
    Gen(GenArgs),
    /// Run a verification suite; writes CSV rows and a JSON summary.
    Verify(VerifyArgs),
    /// Check a 3×3 symmetric matrix for conditional negative definiteness.
    Cnd { matrix: PathBuf },
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    alpha: Option<f64>,
    /// Generator for `jensen`, e.g. `square`, `xlogx`, `neglog`, `power-low:0.5`.
    #[arg(long)]
    fkind: Option<String>,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    log_eig_min: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    log_eig_max: f64,
    #[arg(long)]
    unit_trace: bool,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long, default_value = "sdiv")]
    kind: Kind,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    fkind: Option<String>,
    /// Inclusive dimension range `a:b`, or a single size.
    #[arg(long, default_value = "2:6", value_parser = parse_dims)]
    dims: Dims,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Suite tolerance (default depends on the suite).
    #[arg(long)]
    tol: Option<f64>,
    /// Representation checked by `integral`.
    #[arg(long, default_value = "power-low")]
    rep: Rep,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Sdiv,
    Qjsd,
    QjsdAlpha,
    Qjrd,
    DeltaAlpha,
    BregmanVn,
    BregmanLogdet,
    BregmanFrob,
    Jensen,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Triangle,
    Axioms,
    Integral,
    Limit,
    CndTheorem,
    CmTransform,
    Reduction,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Rep {
    PowerLow,
    PowerHigh,
    Log,
    Decomposition,
    Renyi,
}

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let bad = || format!("expected a:b or n, got '{s}'");
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("dimension range {lo}:{hi} is empty or contains 0"));
    }
    Ok(Dims((lo..=hi).collect()))
}

/// Failure of a command, mapped onto the process exit code.
enum Failure {
    Violations,
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("cannot write {}: {e}", path.display()))
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Sdiv => "sdiv",
        Kind::Qjsd => "qjsd",
        Kind::QjsdAlpha => "qjsd-alpha",
        Kind::Qjrd => "qjrd",
        Kind::DeltaAlpha => "delta-alpha",
        Kind::BregmanVn => "bregman-vn",
        Kind::BregmanLogdet => "bregman-logdet",
        Kind::BregmanFrob => "bregman-frob",
        Kind::Jensen => "jensen",
    }
}

fn spec_of(kind: Kind, alpha: Option<f64>, fkind: Option<&str>) -> Result<DivergenceSpec, Error> {
    DivergenceSpec::parse(kind_name(kind), alpha, fkind)?.validate()
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let spec = spec_of(args.kind, args.alpha, args.fkind.as_deref())?;
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    tracing::info!(kind = %spec, dim_a = a.dim(), dim_b = b.dim(), "compute");
    let value = spec.evaluate_checked(&a, &b)?;
    let out = json!({
        "kind": kind_name(args.kind),
        "params": { "alpha": args.alpha.map(Sig17), "fkind": args.fkind },
        "value": Sig17(value),
        "dims": [a.dim(), b.dim()],
        "unitTrace": { "a": is_unit_trace(&a), "b": is_unit_trace(&b) },
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn gen(args: &GenArgs) -> Result<(), Failure> {
    let cfg = HpdGenConfig::new(args.dim, args.seed)
        .with_log_range(args.log_eig_min, args.log_eig_max)
        .with_unit_trace(args.unit_trace);
    let x = random_hpd(&cfg)?;
    write_matrix(&args.output, &x).map_err(|e| io_failure(&args.output, e))?;
    tracing::info!(dim = args.dim, seed = args.seed, path = %args.output.display(), "generated");
    Ok(())
}

fn default_tol(suite: Suite) -> f64 {
    match suite {
        Suite::Integral => 1e-6,
        Suite::Reduction | Suite::CndTheorem => 1e-10,
        _ => 1e-9,
    }
}

fn run_suite(args: &VerifyArgs) -> Result<VerificationReport, Error> {
    let cfg = SuiteConfig::new(args.dims.0.clone(), args.trials, args.seed)
        .with_tol(args.tol.unwrap_or(default_tol(args.suite)));
    let alphas: Vec<f64> = args.alpha.into_iter().collect();
    match args.suite {
        Suite::Triangle => triangle_suite(
            &spec_of(args.kind, args.alpha, args.fkind.as_deref())?,
            &cfg,
        ),
        Suite::Axioms => axioms_suite(
            &spec_of(args.kind, args.alpha, args.fkind.as_deref())?,
            &cfg,
        ),
        Suite::Integral => {
            let rep = match args.rep {
                Rep::PowerLow => IntegralRep::PowerLow,
                Rep::PowerHigh => IntegralRep::PowerHigh,
                Rep::Log => IntegralRep::Log,
                Rep::Decomposition => IntegralRep::Decomposition,
                Rep::Renyi => IntegralRep::Renyi,
            };
            integral_suite(rep, &alphas, &cfg, &QuadratureConfig::default())
        }
        Suite::Limit => limit_suite(&DEFAULT_LIMIT_EPS, &cfg),
        Suite::CndTheorem => cnd_theorem_suite(&cfg),
        Suite::CmTransform => cm_transform_suite(&alphas, &[], &cfg),
        Suite::Reduction => reduction_suite(&alphas, &cfg),
    }
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    tracing::info!(suite = ?args.suite, trials = args.trials, seed = args.seed, "verify");
    let report = run_suite(args)?;
    let (csv, json) = report
        .write(&args.output)
        .map_err(|e| io_failure(&args.output, e))?;
    tracing::info!(csv = %csv.display(), json = %json.display(), violations = report.violations, "report written");
    for r in report.records.iter().filter(|r| r.error.is_some()) {
        tracing::warn!(
            trial = r.trial,
            error = r.error.as_deref().unwrap_or(""),
            "trial failed"
        );
    }
    println!("{}", report.summary_json());
    if report.errors > 0 {
        Err(Failure::Numerical(format!(
            "{} trial(s) failed to evaluate",
            report.errors
        )))
    } else if report.violations > 0 {
        Err(Failure::Violations)
    } else {
        Ok(())
    }
}

fn cnd(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let m = mat3_from_hermitian(&matrix_from_json(&text)?)?;
    let p = cnd_predicates(&m, 1e-10)?;
    let out = json!({ "cnd": p.cnd, "nonneg": p.nonneg, "sqrtTriangle": p.sqrt_triangle });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn init_logging(verbose: bool) {
    if verbose {
        tracing_subscriber::fmt()
            .json()
            .with_writer(std::io::stderr)
            .with_max_level(tracing::Level::DEBUG)
            .init();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.verbose);
    if let Some(n) = cli.threads {
        if n == 0
            || rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .is_err()
        {
            eprintln!("error: invalid thread count {n}");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Cnd { matrix } => cnd(matrix),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
