//! Command-line front end: evaluation of catalog entries and engines,
//! verification suites, canonical forms and parameter sweeps.
//!
//! Complex numbers are written `RE,IM` (or a bare real `RE`). Exit codes:
//!
//! ```text
//!   0  success / identity holds
//!   1  identity fails (including a detected divergence)
//!   2  usage or parameter error
//!   3  numeric degeneracy (ill-conditioned residue system)
//! ```

use crate::bundles::{canonical_cusp, canonical_nodal};
use crate::catalog::{self, CatalogParams, RSolution};
use crate::linalg::CMat;
use crate::rmatrix::{engine_solution, EngineSpec};
use crate::verify::{self, DunklConfig, LimitConfig, SampleConfig, DEFAULT_SEED};
use crate::{Error, Result, C64};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable overriding the default sampling seed.
pub const SEED_ENV: &str = "RMX_SEED";

/// Exit code: success.
pub const EXIT_PASS: i32 = 0;
/// Exit code: an identity failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit code: usage or parameter error.
pub const EXIT_USAGE: i32 = 2;
/// Exit code: numeric degeneracy.
pub const EXIT_DEGENERATE: i32 = 3;

/// Parses `RE,IM` or `RE` into a complex number.
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    match parts.as_slice() {
        [r] => Ok(C64::new(num(r)?, 0.0)),
        [r, i] => Ok(C64::new(num(r)?, num(i)?)),
        _ => Err(format!("expected RE,IM, got `{s}`")),
    }
}

fn parse_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect()
}

/// Top-level arguments.
#[derive(Debug, Parser)]
#[command(name = "aybe", version, about = "Geometric associative r-matrices on Weierstrass cubics")]
pub struct Cli {
    /// Print the tensor layout and leg conventions and exit.
    #[arg(long, global = true)]
    pub conventions: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Curve families accepted by `eval --curve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveArg {
    Elliptic,
    Nodal,
    Cusp,
    /// Semistable rank-two degree-zero bundles on the nodal cubic.
    Semistable,
}

/// Identities accepted by `verify --identity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    Aybe,
    Dual,
    Unitarity,
    Cybe,
    Qybe,
    Limit,
    Laurent,
    Casimir,
    Degeneration,
    Dunkl,
}

/// Canonical-form families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CanonType {
    Nodal,
    Cusp,
}

/// Sweep kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Columns `t,error`: `max_y |(1/t) cherednik(y/t) − yang(y)|` on y ∈ {0.3, 0.7, 1.1}.
    Degeneration,
    /// Columns `v,i1,j1,i2,j2,re,im`: entries of `(pr⊗pr) r(v; y1, y2)`.
    Limit,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a catalog entry or an engine at one parameter point.
    Eval(EvalArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Print a canonical gluing matrix.
    Canon(CanonArgs),
    /// Print a CSV table over a parameter grid.
    #[command(after_help = "CSV columns:\n  degeneration: t,error\n  limit: v,i1,j1,i2,j2,re,im  (1-based indices of e_{i1 j1} ⊗ e_{i2 j2})")]
    Sweep(SweepArgs),
}

/// Arguments of `eval`.
#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["solution", "curve"])))]
pub struct EvalArgs {
    /// Catalog name (see `verify --help` for the list).
    #[arg(long)]
    pub solution: Option<String>,
    /// Engine curve type.
    #[arg(long, value_enum)]
    pub curve: Option<CurveArg>,
    /// Rank `n` for the nodal/cuspidal engines.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Degree `d` for the nodal/cuspidal engines.
    #[arg(long, default_value_t = 1)]
    pub deg: usize,
    /// Modular parameter of elliptic entries.
    #[arg(long, value_parser = parse_complex, default_value = "0,1.1")]
    pub tau: C64,
    #[arg(long, value_parser = parse_complex)]
    pub v: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub y: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub v1: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub v2: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub y1: Option<C64>,
    #[arg(long, value_parser = parse_complex)]
    pub y2: Option<C64>,
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Arguments of `verify`.
#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: IdentityArg,
    /// Catalog name or engine descriptor `engine:elliptic`, `engine:nodal:N:D`,
    /// `engine:cusp:N:D`, `engine:semistable`.
    #[arg(long)]
    pub solution: String,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sampling seed (defaults to $RMX_SEED, then a fixed value).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Modular parameter of elliptic entries.
    #[arg(long, value_parser = parse_complex, default_value = "0,1.1")]
    pub tau: C64,
    /// Fixed spectral parameter for `qybe`.
    #[arg(long, value_parser = parse_complex, default_value = "0.4")]
    pub v0: C64,
    /// Level for `dunkl`.
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    /// First spectral point for `limit`, `laurent` and `casimir`.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub y1: C64,
    /// Second spectral point for `limit` and `laurent`.
    #[arg(long, value_parser = parse_complex, default_value = "0.7,0.1")]
    pub y2: C64,
    /// Circle radius for `laurent` and `casimir`.
    #[arg(long, default_value_t = 0.1)]
    pub radius: f64,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json"])]
    pub out: String,
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Arguments of `canon`.
#[derive(Debug, clap::Args)]
pub struct CanonArgs {
    #[arg(long = "type", value_enum)]
    pub kind: CanonType,
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
    #[arg(long, value_parser = parse_complex)]
    pub lambda: C64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Arguments of `sweep`.
#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: SweepKind,
    /// Comma-separated grid of `t` (degeneration) or `v` (limit) values.
    #[arg(long)]
    pub grid: String,
    /// Solution for `limit`.
    #[arg(long, default_value = "trg21")]
    pub solution: String,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub y1: C64,
    #[arg(long, value_parser = parse_complex, default_value = "0.7,0.1")]
    pub y2: C64,
    #[arg(long, value_parser = parse_complex, default_value = "0,1.1")]
    pub tau: C64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Tensor layout and leg conventions.
pub fn conventions() -> Value {
    json!({
        "complex": "[re, im] pairs in JSON, RE,IM on the command line",
        "tensor2": "n²×n² row-major Kronecker matrix K with K[(i1-1)*n+(i2-1)][(j1-1)*n+(j2-1)] = coefficient of e_{i1 j1} ⊗ e_{i2 j2}",
        "legs": {
            "12": "r ⊗ 𝟙",
            "23": "𝟙 ⊗ r",
            "13": "P₂₃ (r ⊗ 𝟙) P₂₃ with P₂₃ the flip of the second and third factors"
        },
        "lifting": {
            "difference": "r(v; y) at (v2 - v1, y2 - y1)",
            "spectral": "r(v; y1, y2) at (v2 - v1, y1, y2)",
            "full": "r(v1, v2; y1, y2)",
            "classical": "r(y) at y2 - y1",
            "classical2": "r(y1, y2)"
        },
        "basis": "h = e11 - e22, sigma = i(e21 - e12), gamma = e12 + e21, Omega = h⊗h/2 + e12⊗e21 + e21⊗e12"
    })
}

/// Error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IllConditioned { .. } => EXIT_DEGENERATE,
            Error::Divergence(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.into() }
}

/// Maps short aliases to catalog names.
fn canonical_name(name: &str) -> &str {
    match name {
        "trg20" => "trg20_semistable",
        other => other,
    }
}

/// Resolves a catalog name or an engine descriptor.
pub fn resolve_solution(desc: &str, tau: C64) -> Result<RSolution> {
    if let Some(rest) = desc.strip_prefix("engine:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let nd = |p: &[&str]| -> Result<(usize, usize)> {
            match p {
                [n, d] => Ok((
                    n.parse().map_err(|_| Error::InvalidParameter(format!("bad rank `{n}`")))?,
                    d.parse().map_err(|_| Error::InvalidParameter(format!("bad degree `{d}`")))?,
                )),
                [] => Ok((2, 1)),
                _ => Err(Error::InvalidParameter(format!("bad engine descriptor `{desc}`"))),
            }
        };
        let spec = match parts[0] {
            "elliptic" => EngineSpec::Elliptic { tau },
            "nodal" => {
                let (n, d) = nd(&parts[1..])?;
                EngineSpec::Nodal { n, d }
            }
            "cusp" | "cuspidal" => {
                let (n, d) = nd(&parts[1..])?;
                EngineSpec::Cusp { n, d }
            }
            "semistable" => EngineSpec::SemistableNodal,
            other => return Err(Error::InvalidParameter(format!("unknown engine `{other}`"))),
        };
        return engine_solution(spec);
    }
    catalog::get_with(canonical_name(desc), &CatalogParams { tau })
}

fn pairs(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|w| [w.re, w.im]).collect()
}

fn matrix_json(m: &CMat) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
    json!(rows)
}

/// Evaluates the requested solution; returns the JSON document.
pub fn cmd_eval(a: &EvalArgs) -> std::result::Result<Value, CliError> {
    let sol = match (&a.solution, a.curve) {
        (Some(name), None) => resolve_solution(name, a.tau)?,
        (None, Some(curve)) => {
            let spec = match curve {
                CurveArg::Elliptic => EngineSpec::Elliptic { tau: a.tau },
                CurveArg::Nodal => EngineSpec::Nodal { n: a.rank, d: a.deg },
                CurveArg::Cusp => EngineSpec::Cusp { n: a.rank, d: a.deg },
                CurveArg::Semistable => EngineSpec::SemistableNodal,
            };
            engine_solution(spec)?
        }
        _ => return Err(usage("give exactly one of --solution and --curve")),
    };
    let need = |z: Option<C64>, what: &str| z.ok_or_else(|| usage(format!("`{}` needs --{what}", sol.name())));
    let zero = C64::new(0.0, 0.0);
    let v = || -> std::result::Result<C64, CliError> {
        match a.v {
            Some(v) => Ok(v),
            None => Ok(need(a.v2, "v or --v2")? - a.v1.unwrap_or(zero)),
        }
    };
    let y = || -> std::result::Result<C64, CliError> {
        match a.y {
            Some(y) => Ok(y),
            None => Ok(need(a.y2, "y or --y2")? - a.y1.unwrap_or(zero)),
        }
    };
    use crate::catalog::Arity;
    let args: Vec<C64> = match sol.arity() {
        Arity::Difference => vec![v()?, y()?],
        Arity::Spectral => vec![v()?, need(a.y1, "y1")?, need(a.y2, "y2")?],
        Arity::Full => vec![need(a.v1, "v1")?, need(a.v2, "v2")?, need(a.y1, "y1")?, need(a.y2, "y2")?],
        Arity::Classical => vec![y()?],
        Arity::Classical2 => vec![need(a.y1, "y1")?, need(a.y2, "y2")?],
    };
    let t = sol.eval(&args)?;
    Ok(json!({
        "solution": sol.name(),
        "arity": format!("{:?}", sol.arity()).to_lowercase(),
        "n": sol.n(),
        "rank": a.curve.map(|_| a.rank),
        "degree": a.curve.map(|_| a.deg),
        "tau": [a.tau.re, a.tau.im],
        "arguments": pairs(&args),
        "poles": sol.poles(),
        "tensor": t,
        "conventions": conventions(),
    }))
}

/// Result of `verify`: a JSON document and the pass flag.
pub struct VerifyOutcome {
    pub document: Value,
    pub pass: bool,
}

fn resolve_seed(seed: Option<u64>) -> std::result::Result<u64, CliError> {
    match seed {
        Some(s) => Ok(s),
        None => match std::env::var(SEED_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| usage(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
            Err(_) => Ok(DEFAULT_SEED),
        },
    }
}

fn report_json<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Runs the requested verification.
pub fn cmd_verify(a: &VerifyArgs) -> std::result::Result<VerifyOutcome, CliError> {
    let seed = resolve_seed(a.seed)?;
    let cfg = SampleConfig::new(a.samples, a.tol).with_seed(seed);
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    if a.identity == IdentityArg::Degeneration {
        let ys = [C64::new(0.3, 0.0), C64::new(0.7, 0.0), C64::new(1.1, 0.0)];
        let rep = verify::degeneration_trg_to_rat(&[1e3, 1e4, 1e5], &ys, a.tol)?;
        let pass = rep.pass && rep.monotone;
        return Ok(VerifyOutcome { document: json!({"identity": "degeneration", "report": report_json(&rep), "pass": pass}), pass });
    }
    let sol = resolve_solution(&a.solution, a.tau)?;
    let simple = |r: verify::ResidualReport| VerifyOutcome { pass: r.pass, document: report_json(&r) };
    let out = match a.identity {
        IdentityArg::Aybe => simple(verify::aybe(&sol, &cfg)?),
        IdentityArg::Dual => simple(verify::aybe_dual(&sol, &cfg)?),
        IdentityArg::Unitarity => simple(verify::unitarity(&sol, &cfg)?),
        IdentityArg::Cybe => simple(verify::cybe(&sol, &cfg)?),
        IdentityArg::Qybe => simple(verify::qybe(&sol, a.v0, &cfg)?),
        IdentityArg::Dunkl => {
            let f = verify::polynomial_test_function(sol.n(), 3, seed);
            simple(verify::dunkl_commutator(&sol, &DunklConfig::three_sites(a.kappa), &f, &cfg)?)
        }
        IdentityArg::Limit => {
            let lim = verify::classical_limit(&sol, &[(a.y1, a.y2)], &LimitConfig::default())?;
            let mut doc = json!({
                "identity": "limit",
                "solution": sol.name(),
                "y": pairs(&[a.y1, a.y2]),
                "value": lim.values[0],
                "error_estimate": lim.error_estimates[0],
            });
            let mut pass = lim.error_estimates[0] < a.tol.max(1e-7);
            match catalog::classical_of_with(sol.name(), &CatalogParams { tau: a.tau }) {
                Ok(partner) => {
                    let dev = lim.max_deviation(&partner)?;
                    doc["partner"] = json!(partner.name());
                    doc["deviation"] = json!(dev);
                    pass = dev < a.tol.max(1e-7);
                }
                Err(Error::NoClassicalLimit(_)) | Err(Error::UnknownSolution(_)) => {}
                Err(e) => return Err(e.into()),
            }
            doc["pass"] = json!(pass);
            VerifyOutcome { document: doc, pass }
        }
        IdentityArg::Laurent => {
            let l = verify::laurent_v(&sol, a.y1, a.y2, a.radius)?;
            let (alpha, defect) = l.identity_component(-1)?;
            let order = l.pole_order(1e-8);
            let pass = order <= 1 && defect < a.tol.max(1e-7);
            let coeffs: Vec<Value> = (l.min_order..l.min_order + l.coeffs.len() as i32)
                .map(|m| json!({"order": m, "max_abs": l.coeff(m).map(|t| t.max_abs()).unwrap_or(0.0)}))
                .collect();
            let doc = json!({
                "identity": "laurent",
                "solution": sol.name(),
                "radius": a.radius,
                "pole_order": order,
                "residue_identity_coefficient": [alpha.re, alpha.im],
                "residue_defect": defect,
                "coefficients": coeffs,
                "pass": pass,
            });
            VerifyOutcome { document: doc, pass }
        }
        IdentityArg::Casimir => {
            let r = verify::casimir_residue(&sol, a.y1, a.radius)?;
            let pass = r.defect < a.tol.max(1e-8);
            let doc = json!({
                "identity": "casimir",
                "solution": sol.name(),
                "alpha": [r.alpha.re, r.alpha.im],
                "defect": r.defect,
                "pass": pass,
            });
            VerifyOutcome { document: doc, pass }
        }
        IdentityArg::Degeneration => unreachable!("handled above"),
    };
    Ok(out)
}

/// Canonical gluing data as JSON.
pub fn cmd_canon(a: &CanonArgs) -> std::result::Result<Value, CliError> {
    Ok(match a.kind {
        CanonType::Nodal => {
            let t = canonical_nodal(a.n1, a.n2, a.lambda)?;
            json!({"type": "nodal", "n1": a.n1, "n2": a.n2, "lambda": [a.lambda.re, a.lambda.im],
                   "m0": matrix_json(&t.m0), "minf": matrix_json(&t.minf)})
        }
        CanonType::Cusp => {
            let t = canonical_cusp(a.n1, a.n2, a.lambda)?;
            json!({"type": "cusp", "n1": a.n1, "n2": a.n2, "lambda": [a.lambda.re, a.lambda.im],
                   "meps": matrix_json(&t.meps)})
        }
    })
}

/// CSV table for the sweep.
pub fn cmd_sweep(a: &SweepArgs) -> std::result::Result<String, CliError> {
    let grid = parse_grid(&a.grid).map_err(usage)?;
    if grid.is_empty() {
        return Err(usage("empty grid"));
    }
    let mut out = String::new();
    match a.kind {
        SweepKind::Degeneration => {
            let ys = [C64::new(0.3, 0.0), C64::new(0.7, 0.0), C64::new(1.1, 0.0)];
            let rep = verify::degeneration_trg_to_rat(&grid, &ys, f64::INFINITY)?;
            out.push_str("t,error\n");
            for r in rep.rows {
                out.push_str(&format!("{:e},{:e}\n", r.t, r.error));
            }
        }
        SweepKind::Limit => {
            let sol = resolve_solution(&a.solution, a.tau)?;
            out.push_str("v,i1,j1,i2,j2,re,im\n");
            let n = sol.n();
            for &v in &grid {
                let t = sol.eval_spectral(C64::new(v, 0.0), a.y1, a.y2)?.project_sl();
                for i1 in 1..=n {
                    for j1 in 1..=n {
                        for i2 in 1..=n {
                            for j2 in 1..=n {
                                let z = t.coeff(i1, j1, i2, j2);
                                out.push_str(&format!("{v:e},{i1},{j1},{i2},{j2},{:e},{:e}\n", z.re, z.im));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Writes `text` to `path` via a temporary file and rename, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => {
            let tmp = p.with_extension("tmp");
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, p)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs the parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    if cli.conventions {
        return match emit(&pretty(&conventions()), None) {
            Ok(()) => EXIT_PASS,
            Err(_) => EXIT_USAGE,
        };
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (eval, verify, canon, sweep)");
        return EXIT_USAGE;
    };
    let result: std::result::Result<(String, Option<PathBuf>, bool), CliError> = match &command {
        Command::Eval(a) => cmd_eval(a).map(|v| (pretty(&v), a.output.clone(), true)),
        Command::Verify(a) => cmd_verify(a).map(|o| (pretty(&o.document), a.output.clone(), o.pass)),
        Command::Canon(a) => cmd_canon(a).map(|v| (pretty(&v), a.output.clone(), true)),
        Command::Sweep(a) => cmd_sweep(a).map(|s| (s, a.output.clone(), true)),
    };
    match result {
        Ok((text, path, pass)) => {
            if let Err(e) = emit(&text, path.as_deref()) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Parses `std::env::args` and runs; clap usage errors map to exit code 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}
