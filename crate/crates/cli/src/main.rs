//! `symrank`: JSON front end for the symrank library.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails,
//! 2 for malformed input or I/O errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use symrank::canonical::{
    build_jordan, jordan_to_frobenius, min_poly_degree, min_poly_degree_numeric, min_poly_krylov,
    FrobeniusSpec, JordanSpec,
};
use symrank::jacobian::{jacobian_exact, rank_exact, rank_numeric, verify_theorem, verify_theorem_float};
use symrank::matpoly::{symmetrize, AnyMatrix};
use symrank::proofs::{
    confluent_vandermonde_det, nullspace_basis, order_of_vanishing_all, tangent_construction,
    verify_annihilation, CurveSpec,
};
use symrank::scalars::{Field, GaussianRational};
use symrank::sweep::{random_linear_curve, run_sweep, Mode, SweepConfig};

#[derive(Parser)]
#[command(name = "symrank", version, about = "Rank of the symmetrization Jacobian versus minimal-polynomial degree")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Arithmetic field; defaults to the input's own field, or exact.
    #[arg(long, global = true, env = "SYMRANK_FIELD")]
    field: Option<Field>,
    /// Singular-value threshold for float rank decisions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random conjugations and curves; default 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

/// Inputs are a file path, `-` for stdin, or inline JSON.
#[derive(Subcommand)]
enum Command {
    /// Jordan spec -> matrix.
    Gen { spec: String },
    /// Matrix -> (σ₁, …, σₙ).
    Pi { matrix: String },
    /// Matrix -> Jacobian of π at that matrix.
    Jacobian { matrix: String },
    /// Matrix -> rank of the Jacobian.
    Rank { matrix: String },
    /// Matrix -> minimal polynomial and its degree.
    Minpoly { matrix: String },
    /// Jordan spec -> rank versus minimal-polynomial degree.
    Verify { spec: String },
    /// Jordan spec -> null-space certificate.
    Nullspace { spec: String },
    /// Jordan or Frobenius spec -> tangent-image certificate.
    Tangent { spec: String },
    /// Jordan spec -> confluent Vandermonde determinant check.
    Vandermonde { spec: String },
    /// Jordan spec and curve -> order-of-vanishing report. Without a curve,
    /// a random linear curve is drawn from `--seed`.
    Ord { spec: String, curve: Option<String> },
    /// Exhaustive sweep; flags override the optional config.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    config: Option<String>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Comma-separated exact scalars, e.g. `0,1,-1,i,2`.
    #[arg(long, value_delimiter = ',')]
    pool: Option<Vec<GaussianRational>>,
    /// Comma-separated modes; an empty value disables all.
    #[arg(long, value_delimiter = ',')]
    modes: Option<Vec<String>>,
    #[arg(long)]
    parallelism: Option<usize>,
}

enum CliError {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Check(String),
}

type CliResult<T> = Result<T, CliError>;

fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read_source(src: &str) -> CliResult<(String, String)> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(("<inline>".into(), src.to_string()));
    }
    if src == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
        return Ok(("<stdin>".into(), buf));
    }
    let text = fs::read_to_string(src).map_err(|e| CliError::Input(format!("{src}: {e}")))?;
    Ok((src.to_string(), text))
}

fn parse<T: DeserializeOwned>(src: &str) -> CliResult<T> {
    let (name, text) = read_source(src)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{name}: line {} column {}: {e}", e.line(), e.column())))
}

fn parse_matrix(src: &str, field: Option<Field>) -> CliResult<AnyMatrix> {
    let m: AnyMatrix = parse(src)?;
    Ok(match field {
        Some(f) => m.into_field(f),
        None => m,
    })
}

/// Jordan specs carry `blocks`; anything with `invariant_factors` is Frobenius.
fn parse_frobenius_or_jordan(src: &str) -> CliResult<FrobeniusSpec> {
    let value: serde_json::Value = parse(src)?;
    if value.get("invariant_factors").is_some() {
        serde_json::from_value(value).map_err(input_error)
    } else {
        let spec: JordanSpec = serde_json::from_value(value).map_err(input_error)?;
        Ok(jordan_to_frobenius(&spec))
    }
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn writer(&self) -> CliResult<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn json<T: Serialize>(&self, value: &T) -> CliResult<()> {
        let mut w = self.writer()?;
        serde_json::to_writer_pretty(&mut w, value).map_err(input_error)?;
        writeln!(w).and_then(|_| w.flush()).map_err(input_error)
    }
}

fn check(passed: bool, what: &str) -> CliResult<()> {
    if passed {
        Ok(())
    } else {
        Err(CliError::Check(format!("{what} check failed")))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    let out = Output { path: g.out.clone() };
    match &cli.command {
        Command::Gen { spec } => {
            let spec: JordanSpec = parse(spec)?;
            let m = AnyMatrix::Exact(build_jordan(&spec)).into_field(g.field.unwrap_or(Field::Exact));
            out.json(&m)
        }
        Command::Pi { matrix } => match parse_matrix(matrix, g.field)? {
            AnyMatrix::Exact(m) => out.json(&symmetrize(&m).map_err(input_error)?),
            AnyMatrix::Float(m) => out.json(&symmetrize(&m).map_err(input_error)?),
        },
        Command::Jacobian { matrix } => match parse_matrix(matrix, g.field)? {
            AnyMatrix::Exact(m) => out.json(&jacobian_exact(&m).map_err(input_error)?),
            AnyMatrix::Float(m) => out.json(&jacobian_exact(&m).map_err(input_error)?),
        },
        Command::Rank { matrix } => match parse_matrix(matrix, g.field)? {
            AnyMatrix::Exact(m) => {
                let jac = jacobian_exact(&m).map_err(input_error)?;
                out.json(&json!({ "field": Field::Exact, "rank": rank_exact(&jac.entries) }))
            }
            AnyMatrix::Float(m) => {
                let jac = jacobian_exact(&m).map_err(input_error)?;
                let d = rank_numeric(&jac.entries, g.tol).map_err(input_error)?;
                out.json(&json!({
                    "field": Field::Float,
                    "rank": d.rank,
                    "threshold": d.threshold,
                    "gap": d.gap,
                    "singular_values": d.singular_values,
                }))
            }
        },
        Command::Minpoly { matrix } => match parse_matrix(matrix, g.field)? {
            AnyMatrix::Exact(m) => {
                let p = min_poly_krylov(&m);
                out.json(&json!({ "field": Field::Exact, "degree": p.degree(), "polynomial": p }))
            }
            AnyMatrix::Float(m) => {
                let d = min_poly_degree_numeric(&m, g.tol).map_err(input_error)?;
                out.json(&json!({ "field": Field::Float, "degree": d }))
            }
        },
        Command::Verify { spec } => {
            let spec: JordanSpec = parse(spec)?;
            let report = match g.field.unwrap_or(Field::Exact) {
                Field::Exact => verify_theorem(&spec, g.seed.unwrap_or(0)),
                Field::Float => verify_theorem_float(&spec, g.tol),
            }
            .map_err(input_error)?;
            out.json(&report)?;
            check(report.passed(), "theorem")
        }
        Command::Nullspace { spec } => {
            let spec: JordanSpec = parse(spec)?;
            let cert = nullspace_basis(&spec);
            let annihilates = verify_annihilation(&cert, &build_jordan(&spec)).map_err(input_error)?;
            let expected = spec.n() - min_poly_degree(&spec);
            let passed = annihilates && cert.len() == expected && cert.rank() == expected;
            out.json(&json!({
                "expected": expected,
                "count": cert.len(),
                "rank": cert.rank(),
                "annihilates": annihilates,
                "passed": passed,
                "certificate": cert,
            }))?;
            check(passed, "null-space")
        }
        Command::Tangent { spec } => {
            let fspec = parse_frobenius_or_jordan(spec)?;
            let cert = tangent_construction(&fspec).map_err(input_error)?;
            out.json(&cert)?;
            check(cert.passed, "tangent")
        }
        Command::Vandermonde { spec } => {
            let spec: JordanSpec = parse(spec)?;
            let clusters: Vec<_> =
                spec.blocks().iter().map(|b| (b.eigenvalue.clone(), b.multiplicity())).collect();
            let report = confluent_vandermonde_det(&clusters).map_err(input_error)?;
            out.json(&report)?;
            check(report.abs_equal, "vandermonde")
        }
        Command::Ord { spec, curve } => {
            let spec: JordanSpec = parse(spec)?;
            let curve: CurveSpec = match curve {
                Some(c) => parse(c)?,
                None => random_linear_curve(&spec, g.seed.unwrap_or(0)),
            };
            let reports = order_of_vanishing_all(&spec, &curve).map_err(input_error)?;
            let passed = reports.iter().all(|r| r.pass);
            out.json(&json!({ "curve": curve, "reports": reports, "passed": passed }))?;
            check(passed, "order-of-vanishing")
        }
        Command::Sweep(args) => {
            let mut config: SweepConfig = match &args.config {
                Some(c) => parse(c)?,
                None => SweepConfig::default(),
            };
            if let Some(n) = args.n_max {
                config.n_max = n;
            }
            if let Some(pool) = &args.pool {
                config.eigenvalue_pool = pool.clone();
            }
            if let Some(modes) = &args.modes {
                config.modes = modes
                    .iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.parse::<Mode>())
                    .collect::<Result<_, _>>()
                    .map_err(CliError::Input)?;
            }
            if let Some(p) = args.parallelism {
                config.parallelism = p;
            }
            if let Some(seed) = g.seed {
                config.seed = seed;
            }
            let report = run_sweep(&config).map_err(input_error)?;
            let mut w = out.writer()?;
            report.write_jsonl(&mut w).map_err(input_error)?;
            w.flush().map_err(input_error)?;
            check(report.passed(), "sweep")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("symrank: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("symrank: error: {msg}");
            ExitCode::from(2)
        }
    }
}
