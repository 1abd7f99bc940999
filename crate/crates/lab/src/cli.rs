//! Command-line front end. Exit codes: 0 for a passing or report-only
//! verdict, 1 for a failing verdict, 2 for a usage error (bad flag, missing
//! or unparsable file), 3 for a numerical-infrastructure error. Artifacts are
//! written atomically (temp file + rename); a fixed seed yields byte-identical
//! artifacts apart from measured runtimes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use fconlab_core::{
    admissibility_audit, check_f_concave, check_f_concave_with_floor, f_mean, fd_evolve,
    first_eigenpair, gaussian_screen, parse_transform, Domain, Field, Interval, ProbeOutcome,
    Transform,
};

use crate::formats::{
    atomic_write, field_from_csv, field_to_csv, CheckReport, DomainDescriptor, JsonReal,
};
use crate::harness::{self, Config, ExperimentVerdict};

#[derive(Parser)]
#[command(
    name = "fconlab",
    version,
    about = "Generalized-concavity laboratory: certification, heat flow, screens, experiments",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a sampled field for F-concavity and emit a JSON report
    Check {
        /// Transform spec string, e.g. power:p=0 or affine:A=2,B=1(power:p=0)
        #[arg(long)]
        transform: String,
        /// Field CSV (header `x,value` or `x,y,value`)
        #[arg(long)]
        field: PathBuf,
        /// Domain descriptor JSON (required for 2D fields)
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Skip triples containing values below this floor
        #[arg(long = "value-floor")]
        value_floor: Option<f64>,
        /// Report path (standard output when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the F-mean `F^{-1}((1-mu) F(a) + mu F(b))`
    Mean {
        a: f64,
        b: f64,
        mu: f64,
        #[arg(long)]
        transform: String,
    },
    /// Evolve an initial field under the Dirichlet heat flow and save snapshots
    Evolve {
        /// Initial field CSV
        #[arg(long)]
        field: PathBuf,
        /// Domain descriptor JSON (required for 2D fields)
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Target time; repeat for several snapshots
        #[arg(long = "t", required = true)]
        t: Vec<f64>,
        /// Output directory for per-time CSV + JSON sidecars (default `.`)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First Dirichlet eigenpair of the discrete Laplacian
    Eigen {
        /// Domain descriptor JSON (default: unit interval with step --h)
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Also write the sup-normalized eigenfunction as field CSV here
        #[arg(long)]
        field: Option<PathBuf>,
        /// Report path (standard output when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gaussian screen: midpoint concavity of s -> F(k e^{-s^2}) per k
    Screen {
        #[arg(long)]
        transform: String,
        /// Gaussian amplitude; repeat for several k
        #[arg(long = "k", required = true)]
        k: Vec<f64>,
        /// Grid step in s
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Registered experiments
    Harness {
        #[command(subcommand)]
        action: HarnessCmd,
    },
    /// Monotonicity and inverse-roundtrip audit of a transform
    Audit {
        #[arg(long)]
        transform: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

// one value of this type exists for the life of the process; the size gap
// between `List` and `Run` is irrelevant
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand)]
enum HarnessCmd {
    /// List experiment ids with their anchors
    List,
    /// Run one experiment by id
    Run {
        id: String,
        #[arg(long)]
        transform: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long = "t")]
        t: Vec<f64>,
        #[arg(long = "k")]
        k: Vec<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "value-floor")]
        value_floor: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        /// JSON config merged before flags (flags win)
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad flag value or unreadable/unparsable input file (exit 2).
    Usage(String),
    /// The computation itself failed (exit 3).
    Numerical(String),
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parse arguments, dispatch, and return the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success; keep that
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            3
        }
    }
}

fn dispatch(cmd: Cmd) -> CliResult<i32> {
    match cmd {
        Cmd::Check {
            transform,
            field,
            domain,
            tolerance,
            value_floor,
            out,
        } => run_check(&transform, &field, domain.as_deref(), tolerance, value_floor, out.as_deref()),
        Cmd::Mean { a, b, mu, transform } => run_mean(&transform, a, b, mu),
        Cmd::Evolve { field, domain, dt, t, out } => {
            run_evolve(&field, domain.as_deref(), dt, &t, out.as_deref())
        }
        Cmd::Eigen { domain, h, tolerance, field, out } => {
            run_eigen(domain.as_deref(), h, tolerance, field.as_deref(), out.as_deref())
        }
        Cmd::Screen { transform, k, h, tolerance, out } => {
            run_screen(&transform, &k, h, tolerance, out.as_deref())
        }
        Cmd::Harness { action } => match action {
            HarnessCmd::List => run_harness_list(),
            HarnessCmd::Run {
                id,
                transform,
                tolerance,
                h,
                dt,
                t,
                k,
                seed,
                value_floor,
                samples,
                config,
                out,
            } => {
                let flags = Config {
                    transform,
                    tolerance,
                    h,
                    dt,
                    t: if t.is_empty() { None } else { Some(t) },
                    k: if k.is_empty() { None } else { Some(k) },
                    seed,
                    value_floor,
                    samples,
                };
                run_harness_run(&id, flags, config.as_deref(), out.as_deref())
            }
        },
        Cmd::Audit { transform, samples, out } => {
            run_audit(&transform, samples, out.as_deref())
        }
    }
}

// ---------------------------------------------------------------------------
// shared IO helpers

fn parse_transform_flag(spec: &str) -> CliResult<Transform> {
    parse_transform(spec).map_err(|e| usage(format!("--transform {spec}: {e}")))
}

fn read_domain(path: &Path) -> CliResult<Arc<Domain>> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("--domain {}: {e}", path.display())))?;
    let descriptor: DomainDescriptor = serde_json::from_str(&text)
        .map_err(|e| usage(format!("--domain {}: {e}", path.display())))?;
    descriptor
        .build()
        .map_err(|e| usage(format!("--domain {}: {e}", path.display())))
}

fn read_field(path: &Path, domain: Option<&Path>, range: Interval) -> CliResult<Field> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("--field {}: {e}", path.display())))?;
    let domain = domain.map(read_domain).transpose()?;
    field_from_csv(&text, domain, range)
        .map_err(|e| usage(format!("--field {}: {e}", path.display())))
}

/// Emit a text artifact: atomically to `--out` when given, else to stdout.
fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => atomic_write(path, text.as_bytes())
            .map_err(|e| usage(format!("--out {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON serialization");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// subcommands

fn run_check(
    spec: &str,
    field_path: &Path,
    domain: Option<&Path>,
    tolerance: f64,
    value_floor: Option<f64>,
    out: Option<&Path>,
) -> CliResult<i32> {
    let f = parse_transform_flag(spec)?;
    let field = read_field(field_path, domain, *f.interval())?;
    let report = match value_floor {
        Some(floor) => check_f_concave_with_floor(&f, &field, tolerance, floor),
        None => check_f_concave(&f, &field, tolerance),
    }
    .map_err(|e| CliError::Numerical(e.to_string()))?;
    let certified = report.certified();
    emit(out, &pretty(&CheckReport::new(&report, field.domain().is_1d())))?;
    Ok(i32::from(!certified))
}

fn run_mean(spec: &str, a: f64, b: f64, mu: f64) -> CliResult<i32> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(usage(format!("MU must lie in [0, 1], got {mu}")));
    }
    let f = parse_transform_flag(spec)?;
    for (name, v) in [("A", a), ("B", b)] {
        if !f.interval().contains(v) {
            return Err(usage(format!(
                "{name} = {v} lies outside the transform interval {}",
                f.interval()
            )));
        }
    }
    let m = f_mean(&f, a, b, mu).map_err(|e| CliError::Numerical(e.to_string()))?;
    println!("{m}");
    Ok(0)
}

fn run_evolve(
    field_path: &Path,
    domain: Option<&Path>,
    dt: f64,
    targets: &[f64],
    out: Option<&Path>,
) -> CliResult<i32> {
    let all_reals = Interval::open(f64::NEG_INFINITY, f64::INFINITY);
    let initial = read_field(field_path, domain, all_reals)?;
    let states = fd_evolve(initial.domain(), &initial, targets, dt)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let dir = out.unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(|e| usage(format!("--out {}: {e}", dir.display())))?;
    for state in &states {
        let stem = format!("evolve_t{}", state.time);
        let d = &state.diagnostics;
        let sidecar = serde_json::json!({
            "time": state.time,
            "mass": d.mass,
            "max": d.max_value,
            "scheme": d.scheme,
            "h": d.h,
            "dt": d.dt,
        });
        let csv_path = dir.join(format!("{stem}.csv"));
        atomic_write(&csv_path, field_to_csv(&state.field).as_bytes())
            .map_err(|e| usage(format!("--out {}: {e}", csv_path.display())))?;
        let json_path = dir.join(format!("{stem}.json"));
        atomic_write(&json_path, pretty(&sidecar).as_bytes())
            .map_err(|e| usage(format!("--out {}: {e}", json_path.display())))?;
    }
    Ok(0)
}

fn run_eigen(
    domain: Option<&Path>,
    h: f64,
    tolerance: f64,
    field_out: Option<&Path>,
    out: Option<&Path>,
) -> CliResult<i32> {
    let domain = match domain {
        Some(path) => read_domain(path)?,
        None => Arc::new(
            Domain::interval(0.0, 1.0, h).map_err(|e| usage(format!("--h {h}: {e}")))?,
        ),
    };
    let pair =
        first_eigenpair(&domain, tolerance).map_err(|e| CliError::Numerical(e.to_string()))?;
    let report = serde_json::json!({
        "eigenvalue": pair.eigenvalue,
        "residual": pair.residual,
        "h": domain.h(),
        "domain": DomainDescriptor::of(&domain),
    });
    emit(out, &pretty(&report))?;
    if let Some(path) = field_out {
        atomic_write(path, field_to_csv(&pair.eigenfunction).as_bytes())
            .map_err(|e| usage(format!("--field {}: {e}", path.display())))?;
    }
    Ok(0)
}

fn run_screen(
    spec: &str,
    k: &[f64],
    ds: f64,
    tolerance: f64,
    out: Option<&Path>,
) -> CliResult<i32> {
    if !(ds > 0.0) {
        return Err(usage(format!("--h must be positive, got {ds}")));
    }
    if k.iter().any(|&v| !(v > 0.0)) {
        return Err(usage("--k values must be positive".to_string()));
    }
    let f = parse_transform_flag(spec)?;
    let outcomes = gaussian_screen(&f, k, 3.0, ds, tolerance)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut all_certified = true;
    let rows: Vec<serde_json::Value> = outcomes
        .iter()
        .map(|(k, o)| match o {
            ProbeOutcome::Report(r) => {
                all_certified &= r.certified();
                serde_json::json!({
                    "k": k,
                    "outcome": if r.certified() { "certified_on_samples" } else { "violated" },
                    "min_slack": JsonReal(r.min_slack.to_f64()),
                })
            }
            ProbeOutcome::RangeExit { value, .. } => {
                all_certified = false;
                serde_json::json!({ "k": k, "outcome": "range_exit", "value": value })
            }
        })
        .collect();
    emit(out, &pretty(&serde_json::json!({ "transform": spec, "screen": rows })))?;
    Ok(i32::from(!all_certified))
}

fn run_harness_list() -> CliResult<i32> {
    let mut text = String::new();
    for info in harness::registry() {
        writeln!(text, "{:<10} {}", info.id, info.anchor).expect("string write");
    }
    print!("{text}");
    Ok(0)
}

fn run_harness_run(
    id: &str,
    flags: Config,
    config_path: Option<&Path>,
    out: Option<&Path>,
) -> CliResult<i32> {
    let base = match config_path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
            serde_json::from_str::<Config>(&text)
                .map_err(|e| usage(format!("--config {}: {e}", path.display())))?
        }
        None => Config::default(),
    };
    let cfg = base.merged(&flags);
    let report = harness::run(id, &cfg).map_err(|e| {
        if e.to_string().contains("unknown experiment id") {
            usage(format!("{e:#}"))
        } else {
            CliError::Numerical(format!("{e:#}"))
        }
    })?;
    let failed = report.verdict == ExperimentVerdict::Fail;
    emit(out, &report.to_json())?;
    Ok(i32::from(failed))
}

fn run_audit(spec: &str, samples: usize, out: Option<&Path>) -> CliResult<i32> {
    if samples < 2 {
        return Err(usage(format!("--samples must be at least 2, got {samples}")));
    }
    let f = parse_transform_flag(spec)?;
    let audit = admissibility_audit(&f, samples);
    let report = serde_json::json!({
        "transform": spec,
        "passed": audit.passed(),
        "n_samples": audit.n_samples,
        "monotonicity_failures": audit.monotonicity_failures,
        "inverse_failures": audit.inverse_failures,
    });
    emit(out, &pretty(&report))?;
    Ok(i32::from(!audit.passed()))
}
