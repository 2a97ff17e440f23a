//! Command-line frontend.
//!
//! Every subcommand reads one operator (a JSON spec or a named family),
//! computes one artifact and writes it as JSON or CSV to `--output` or
//! standard output. Failures map to [`Error::exit_code`].

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::connection::{
    connection_dense_coeffs, structured_from_coefficients, Coefficients, DenseUpperTriangular,
};
use crate::error::{Error, Result};
use crate::operators::{
    jacobi_family, legendre, schrodinger_random, truncate, ultraspherical, JacobiOperator,
};
use crate::scalar::Scalar;
use crate::spectral::{spectral_measure, Resolvent, SpectralMeasure};
use crate::validated::validated_spectrum;

/// Environment variable read for the size of the grid thread pool.
pub const THREADS_ENV: &str = "JACOBI_SPECTRA_THREADS";

#[derive(Debug, Clone, Parser)]
#[command(name = "jacobi-spectra", version, about = "Spectra, measures and resolvents of Jacobi operators")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Essential spectrum and eigenvalues with their weights.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Certified eigenvalue enclosures of radius at most `--eps`.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = positive)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// p_C coefficients, atoms and density samples.
    Measure {
        #[command(flatten)]
        input: Input,
        /// Number of density samples.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Principal resolvent G(λ) on a grid in the λ-plane.
    Resolvent {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// −c_μ(z)/c(z) on a grid in the z-plane.
    DiscResolvent {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Connection coefficients to Δ, structured or as a dense block.
    Connection {
        #[command(flatten)]
        input: Input,
        /// Emit the principal block of this size instead of the structured form.
        #[arg(long)]
        dense: Option<usize>,
        /// Rational arithmetic; entries are written as "p/q" strings.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Density, mass and atoms of the truncations J^[m].
    TruncateSweep {
        #[command(flatten)]
        input: Input,
        /// Truncation sizes, comma separated.
        #[arg(long = "m", value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Point at which the density is sampled.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sample: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Free,
    Gamma,
    Basic1,
    Basic2,
    Legendre,
    Ultraspherical,
    Jacobi,
    SchrodingerRandom,
}

/// Where the operator comes from.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Operator spec JSON file.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// First Jacobi parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Second Jacobi parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Recurrence coefficients kept for the infinite families.
    #[arg(long, default_value_t = 20)]
    pub rows: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A rectangular sample grid; points are visited row by row, real part fastest.
#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Real range as `lo,hi`.
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    pub re: (f64, f64),
    /// Imaginary range as `lo,hi`.
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    pub im: (f64, f64),
    /// Points per axis, `n` or `nre,nim`.
    #[arg(long, value_parser = resolution, default_value = "101")]
    pub res: (usize, usize),
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn resolution(s: &str) -> std::result::Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad count {t:?}"));
    let (nx, ny) = match s.split_once(',') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => (parse(s)?, parse(s)?),
    };
    if nx == 0 || ny == 0 {
        return Err("resolution must be positive".into());
    }
    Ok((nx, ny))
}

impl Grid {
    fn axis((lo, hi): (f64, f64), count: usize) -> Vec<f64> {
        if count == 1 {
            return vec![lo];
        }
        (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect()
    }

    pub fn points(&self) -> Vec<Complex64> {
        let xs = Self::axis(self.re, self.res.0);
        let ys = Self::axis(self.im, self.res.1);
        ys.iter()
            .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
            .collect()
    }
}

impl Input {
    fn need(&self, value: Option<f64>, name: &str, family: Family) -> Result<f64> {
        value.ok_or_else(|| {
            Error::InvalidArgument(format!("family {family:?} needs --{name}").to_lowercase())
        })
    }

    pub fn operator(&self) -> Result<JacobiOperator> {
        if let Some(path) = &self.spec {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return JacobiOperator::from_json(&text);
        }
        let family = self
            .family
            .ok_or_else(|| Error::InvalidArgument("give --spec or --family".into()))?;
        match family {
            Family::Free => Ok(JacobiOperator::free()),
            Family::Gamma => Ok(JacobiOperator::gamma()),
            Family::Basic1 => JacobiOperator::basic1(self.need(self.alpha, "alpha", family)?),
            Family::Basic2 => JacobiOperator::basic2(self.need(self.beta, "beta", family)?),
            Family::Legendre => legendre(self.rows),
            Family::Ultraspherical => {
                ultraspherical(self.need(self.gamma, "gamma", family)?, self.rows)
            }
            Family::Jacobi => jacobi_family(
                self.need(self.a, "a", family)?,
                self.need(self.b, "b", family)?,
                self.rows,
            ),
            Family::SchrodingerRandom => Ok(schrodinger_random(self.seed, self.rows)),
        }
    }
}

/// Runs one command, writing its artifact.
pub fn run(config: &RunConfig) -> Result<()> {
    match &config.command {
        Command::Spectrum { input, output } => {
            let m = checked_measure(&input.operator()?)?;
            let (lo, hi) = m.continuous_support();
            let atoms: Vec<Value> = m
                .atoms()
                .iter()
                .map(|a| json!({"lambda": a.lambda, "weight": a.weight}))
                .collect();
            emit_json(output, &json!({"continuous": [lo, hi], "atoms": atoms}))
        }
        Command::Validate { input, eps, output } => {
            let enclosures = validated_spectrum(&input.operator()?, *eps)?;
            let records: Vec<Value> = enclosures
                .iter()
                .map(|e| {
                    let r = e.record();
                    json!({
                        "display": format!("{:.17e} ± {:.3e}", r.midpoint, r.radius),
                        "midpoint": r.midpoint,
                        "radius": r.radius,
                        "lo": r.lo,
                        "hi": r.hi,
                        "z_lo": r.z_lo,
                        "z_hi": r.z_hi,
                    })
                })
                .collect();
            if output.output.is_some() {
                let mut out = io::stdout().lock();
                for e in &enclosures {
                    writeln!(out, "{:.17e} ± {:.3e}", e.midpoint(), e.certified_radius)
                        .map_err(io_error)?;
                }
            }
            emit_json(output, &json!({"epsilon": eps, "enclosures": records}))
        }
        Command::Measure {
            input,
            samples,
            output,
        } => {
            let m = checked_measure(&input.operator()?)?;
            let atoms: Vec<Value> = m
                .atoms()
                .iter()
                .map(|a| json!({"lambda": a.lambda, "weight": a.weight, "z": a.z}))
                .collect();
            let samples: Vec<[f64; 2]> =
                m.density_samples(*samples).into_iter().map(|(s, r)| [s, r]).collect();
            let map = m.back_map();
            emit_json(
                output,
                &json!({
                    "pC_coeffs": m.pc().coeffs(),
                    "scale": map.scale,
                    "shift": map.shift,
                    "atoms": atoms,
                    "density_samples": samples,
                }),
            )
        }
        Command::Resolvent {
            input,
            grid,
            output,
        } => {
            let r = Resolvent::new(&input.operator()?)?;
            let values = evaluate_grid(grid, |lam| r.eval(lam))?;
            emit_grid(output, grid, &values)
        }
        Command::DiscResolvent {
            input,
            grid,
            output,
        } => {
            let r = Resolvent::new(&input.operator()?)?;
            let values = evaluate_grid(grid, |z| r.eval_disc(z))?;
            let outside = grid.points().iter().filter(|z| z.norm() >= 1.0).count();
            if outside > 0 {
                eprintln!("note: {outside} grid points with |z| >= 1 are analytic continuation, not resolvent values");
            }
            emit_grid(output, grid, &values)
        }
        Command::Connection {
            input,
            dense,
            exact,
            output,
        } => {
            let op = input.operator()?;
            let value = if *exact {
                connection_json::<num_rational::BigRational>(&op, *dense)?
            } else {
                connection_json::<f64>(&op, *dense)?
            };
            emit_json(output, &value)
        }
        Command::TruncateSweep {
            input,
            m,
            sample,
            output,
        } => {
            let op = input.operator()?;
            let mut rows = Vec::with_capacity(m.len());
            for &k in m {
                let measure = checked_measure(&truncate(&op, k))?;
                rows.push(SweepRow {
                    m: k,
                    density: measure.density_at(*sample)?,
                    mass: measure.total_mass(),
                    atoms: measure.atoms().iter().map(|a| a.lambda).collect(),
                });
            }
            match output.format.unwrap_or(Format::Json) {
                Format::Json => emit_json(output, &json!({"sample": sample, "sweep": rows})),
                Format::Csv => {
                    let mut text = String::from("m,density,mass\n");
                    for r in &rows {
                        text.push_str(&format!("{},{:.16e},{:.16e}\n", r.m, r.density, r.mass));
                    }
                    emit(output, &text)
                }
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct SweepRow {
    m: usize,
    density: f64,
    mass: f64,
    atoms: Vec<f64>,
}

fn checked_measure(op: &JacobiOperator) -> Result<SpectralMeasure> {
    let m = spectral_measure(op)?;
    m.check_invariants()?;
    for d in m.diagnostics() {
        eprintln!("warning: {d}");
    }
    Ok(m)
}

fn entry_json<T: Scalar>(x: &T) -> Value {
    if T::is_exact() {
        Value::String(x.to_string())
    } else {
        json!(x.to_f64())
    }
}

fn matrix_json<T: Scalar>(rows: &[Vec<T>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(entry_json).collect()))
            .collect(),
    )
}

fn connection_json<T: Scalar>(op: &JacobiOperator, dense: Option<usize>) -> Result<Value> {
    let coeffs = Coefficients::<T>::normalized(op);
    if let Some(size) = dense {
        let free = Coefficients::<T>::from_operator(&JacobiOperator::free());
        let block: DenseUpperTriangular<T> = connection_dense_coeffs(&coeffs, &free, size);
        return Ok(json!({"size": size, "dense": matrix_json(&block.rows())}));
    }
    let c = structured_from_coefficients(&coeffs)?;
    Ok(json!({
        "n": c.n(),
        "symbol": c.toeplitz_coeffs().iter().map(entry_json).collect::<Vec<_>>(),
        "finite": matrix_json(c.finite()),
    }))
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={v:?} is not a count")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Evaluates `f` at every grid point in parallel; the result is in grid order.
pub fn evaluate_grid<F>(grid: &Grid, f: F) -> Result<Vec<(Complex64, Complex64)>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let points = grid.points();
    thread_pool()?.install(|| {
        points
            .par_iter()
            .map(|&p| f(p).map(|v| (p, v)))
            .collect::<Result<Vec<_>>>()
    })
}

fn emit_grid(output: &Output, _grid: &Grid, values: &[(Complex64, Complex64)]) -> Result<()> {
    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from("re,im,abs,arg\n");
            for (p, v) in values {
                text.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    p.re,
                    p.im,
                    v.norm(),
                    v.arg()
                ));
            }
            emit(output, &text)
        }
        Format::Json => {
            let rows: Vec<Value> = values
                .iter()
                .map(|(p, v)| json!({"re": p.re, "im": p.im, "abs": v.norm(), "arg": v.arg()}))
                .collect();
            emit_json(output, &Value::Array(rows))
        }
    }
}

fn emit_json(output: &Output, value: &Value) -> Result<()> {
    if output.format == Some(Format::Csv) {
        return Err(Error::InvalidArgument("this command writes JSON only".into()));
    }
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidArgument(format!("serialisation: {e}")))?;
    text.push('\n');
    emit(output, &text)
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.output {
        Some(path) => fs::write(path, text).map_err(io_error),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(io_error),
    }
}

fn io_error(e: io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
