// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit status: 0 for NCGD (or success), 2 for CGD, 3 for an inconclusive
//! sampled check, 1 for any error. Output is assembled in memory and only
//! written once the command has succeeded.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{load_example, ExampleParams, Generator, EXAMPLES};
use crate::certify::{classify_qubit, ncgd_time_dependent_sampled, ncgd_time_independent, Verdict};
use crate::dynamics::witness_curve_from;
use crate::lindblad::qubit_coefficients_in_frame;
use crate::schema::{generator_to_json, load_generator};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CGD: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

const UNITS: &str =
    "Built-in qubit examples use H = ωσ₃ with ω = 1: all times and rates are in units of ω \
(times are ωt, rates are γ/ω). Paulis are normalized, tr σᵢσⱼ = δᵢⱼ.";

#[derive(Debug, Parser)]
#[command(
    name = "ncgd",
    version,
    about = "Certify coherence generation and detection of open-system generators"
)]
#[command(after_help = UNITS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide NCGD / CGD and print a JSON certificate.
    ///
    /// Exit status 0 for NCGD, 2 for CGD, 3 when a time-dependent sampled
    /// check finds no violation but cannot prove NCGD, 1 on error.
    #[command(after_help = UNITS)]
    Certify(CertifyArgs),
    /// Trace-distance witness as a function of the intermediate time t2.
    #[command(after_help = UNITS)]
    WitnessCurve(CurveArgs),
    /// Qubit flags: non-generating, non-activating, orthogonal NCGD.
    ///
    /// Exit status mirrors `certify`: 0 for NCGD, 2 for CGD, 1 on error.
    #[command(after_help = UNITS)]
    ClassifyQubit(ClassifyArgs),
    /// List the built-in examples, or print one as a generator file.
    #[command(after_help = UNITS)]
    Examples(ExamplesArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Generator file (JSON).
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Name of a built-in example, see `ncgd examples`.
    #[arg(long, value_name = "NAME")]
    pub example: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Knobs {
    /// Dephasing rate γ/ω of the Ramsey examples.
    #[arg(
        long,
        default_value_t = 1.0,
        value_name = "X",
        allow_hyphen_values = true
    )]
    pub gamma: f64,
    /// Rates γ₁₁=γ₂₂,γ₃₃,γ₁₂,γ₁₃,γ₂₃ (units of ω) for the `fig2` example.
    #[arg(long, value_name = "a,b,c,d,e", value_parser = parse_rates, allow_hyphen_values = true)]
    pub rates: Option<[f64; 5]>,
    /// Absolute tolerance, scaled by the norms of the tested products.
    #[arg(long, default_value_t = crate::DEFAULT_TOLERANCE, value_parser = parse_positive, value_name = "X", allow_hyphen_values = true)]
    pub tolerance: f64,
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub knobs: Knobs,
    /// Largest sample time (units of 1/ω) for time-dependent generators.
    #[arg(
        long,
        default_value_t = 3.0,
        value_name = "X",
        allow_hyphen_values = true
    )]
    pub grid_max: f64,
    /// Number of uniformly spaced sample times in [0, grid-max].
    #[arg(long, default_value_t = 8, value_name = "N")]
    pub grid_points: usize,
    /// Longest chain product checked for time-dependent generators.
    #[arg(long, default_value_t = 3, value_name = "N")]
    pub nmax: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dat,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub knobs: Knobs,
    /// Preparation time ωt1.
    #[arg(
        long,
        default_value_t = 0.0,
        value_name = "X",
        allow_hyphen_values = true
    )]
    pub t1: f64,
    /// Final measurement time ωt3.
    #[arg(
        long,
        default_value_t = 3.0,
        value_name = "X",
        allow_hyphen_values = true
    )]
    pub t3: f64,
    /// Number of t2 samples in [t1, t3], endpoints included.
    #[arg(long, default_value_t = 301, value_name = "N")]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Dat)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub knobs: Knobs,
}

#[derive(Debug, Clone, Args)]
pub struct ExamplesArgs {
    /// Print this example as a generator file.
    #[arg(long, value_name = "NAME")]
    pub show: Option<String>,
    #[arg(
        long,
        default_value_t = 1.0,
        value_name = "X",
        allow_hyphen_values = true
    )]
    pub gamma: f64,
    #[arg(long, value_name = "a,b,c,d,e", value_parser = parse_rates, allow_hyphen_values = true)]
    pub rates: Option<[f64; 5]>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}

fn parse_rates(s: &str) -> std::result::Result<[f64; 5], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!(
            "expected 5 comma-separated rates, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; 5];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

/// Result of a successful command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub body: String,
    pub out: Option<PathBuf>,
}

fn params(gamma: f64, rates: Option<[f64; 5]>) -> ExampleParams {
    let mut p = ExampleParams {
        gamma,
        ..ExampleParams::default()
    };
    if let Some(r) = rates {
        p.rates = r;
    }
    p
}

fn load(source: &Source, knobs: &Knobs) -> Result<(String, Generator)> {
    match (&source.input, &source.example) {
        (Some(path), None) => Ok((
            path.display().to_string(),
            Generator::Constant(load_generator(path)?),
        )),
        (None, Some(name)) => Ok((
            name.clone(),
            load_example(name, &params(knobs.gamma, knobs.rates))?,
        )),
        _ => Err(Error::InvalidArgument(
            "give exactly one of --input or --example".into(),
        )),
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Ncgd => EXIT_OK,
        Verdict::Cgd => EXIT_CGD,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn certify(args: &CertifyArgs) -> Result<Report> {
    let (_, generator) = load(&args.source, &args.knobs)?;
    let tol = args.knobs.tolerance;
    let cert = match generator {
        Generator::Constant(spec) => ncgd_time_independent(&spec.build()?, tol)?,
        Generator::TimeDependent(gen) => {
            if !(args.grid_max >= 0.0) || !args.grid_max.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "--grid-max must be non-negative, got {}",
                    args.grid_max
                )));
            }
            if args.grid_points == 0 {
                return Err(Error::InvalidArgument(
                    "--grid-points must be at least 1".into(),
                ));
            }
            let n = args.grid_points;
            let grid: Vec<f64> = (0..n)
                .map(|k| {
                    if n == 1 {
                        0.0
                    } else {
                        args.grid_max * k as f64 / (n - 1) as f64
                    }
                })
                .collect();
            ncgd_time_dependent_sampled(&gen, &grid, args.nmax, tol)?
        }
    };
    Ok(Report {
        code: verdict_code(cert.verdict),
        body: cert.to_json(),
        out: args.knobs.out.clone(),
    })
}

fn witness_curve(args: &CurveArgs) -> Result<Report> {
    let (name, generator) = load(&args.source, &args.knobs)?;
    let spec = match generator {
        Generator::Constant(spec) => spec,
        Generator::TimeDependent(_) => {
            return Err(Error::Unsupported(format!(
                "witness-curve needs a time-independent generator, `{name}` is not"
            )))
        }
    };
    if !(args.t3 > 0.0) {
        return Err(Error::InvalidTime(format!(
            "--t3 must be positive, got {}",
            args.t3
        )));
    }
    if args.t1 > args.t3 {
        return Err(Error::InvalidTime(format!(
            "--t1 {} exceeds --t3 {}",
            args.t1, args.t3
        )));
    }
    let mut curve = witness_curve_from(&spec.build()?, args.t1, args.t3, args.samples)?;
    curve.generator = name;
    let body = match args.format {
        Format::Dat => curve.to_dat(),
        Format::Csv => curve.to_csv(),
        Format::Json => curve.to_json(),
    };
    Ok(Report {
        code: EXIT_OK,
        body,
        out: args.knobs.out.clone(),
    })
}

fn classify(args: &ClassifyArgs) -> Result<Report> {
    let (name, generator) = load(&args.source, &args.knobs)?;
    let spec = match generator {
        Generator::Constant(spec) => spec,
        Generator::TimeDependent(_) => {
            return Err(Error::Unsupported(format!(
                "classify-qubit needs a time-independent generator, `{name}` is not"
            )))
        }
    };
    if spec.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "classify-qubit needs dimension 2, got {}",
            spec.dim()
        )));
    }
    spec.build()?;
    let l = qubit_coefficients_in_frame(&spec)?;
    let class = classify_qubit(&l, args.knobs.tolerance)?;
    let mut body = serde_json::to_string_pretty(&class)?;
    body.push('\n');
    Ok(Report {
        code: verdict_code(class.overall),
        body,
        out: args.knobs.out.clone(),
    })
}

fn examples(args: &ExamplesArgs) -> Result<Report> {
    let body = match &args.show {
        None => {
            let width = EXAMPLES.iter().map(|e| e.name.len()).max().unwrap_or(0);
            EXAMPLES
                .iter()
                .map(|e| format!("{:width$}  {}\n", e.name, e.description))
                .collect()
        }
        Some(name) => match load_example(name, &params(args.gamma, args.rates))? {
            Generator::Constant(spec) => generator_to_json(&spec)?,
            Generator::TimeDependent(_) => {
                return Err(Error::Unsupported(format!(
                    "`{name}` is time-dependent and has no generator file"
                )))
            }
        },
    };
    Ok(Report {
        code: EXIT_OK,
        body,
        out: args.out.clone(),
    })
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Certify(a) => certify(a),
        Command::WitnessCurve(a) => witness_curve(a),
        Command::ClassifyQubit(a) => classify(a),
        Command::Examples(a) => examples(a),
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let written = match &report.out {
        Some(path) => std::fs::write(path, &report.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(report.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    };
    match written {
        Ok(()) => report.code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}
