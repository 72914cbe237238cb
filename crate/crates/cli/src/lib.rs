//! Command-line front end for `fock-core`: measure files in, CSV and text
//! reports out.

pub mod error;
pub mod function_arg;
pub mod measure_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fock_core::carleson::{classify_infty_q, classify_p_infty, equivalence_crosscheck, CarlesonReport, Regime};
use fock_core::lattice::make_lattice;
use fock_core::norms::{norm, NormParams};
use fock_core::toeplitz::{boundedness_estimate, compactness_probe, toeplitz_matrix};
use fock_core::transforms::{ball_field, berezin_field};
use fock_core::{Exponent, Growth, Measure, QuadratureSpec, Verdict};

pub use error::CliError;
pub use function_arg::parse_function;
pub use measure_file::{AtomSpec, Defaults, MeasureKind, MeasureSpecFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_DIVERGENT: u8 = 2;

/// Field radius when neither `--radius` nor `defaults.grid_radius` is given.
pub const DEFAULT_FIELD_RADIUS: f64 = 4.0;
pub const DEFAULT_T: f64 = 2.0;
pub const DEFAULT_LATTICE_R: f64 = 1.0;

#[derive(Debug, Parser)]
#[command(name = "fock", version, about = "Fock space diagnostics for positive measures")]
pub struct Cli {
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    /// Minimum grid cells per unit length.
    #[arg(long, global = true)]
    pub cells: Option<u32>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Truncation radius; also the outer probe radius of growth tests.
    #[arg(long, global = true)]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Infq,
    Pinf,
    Pq,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the t-Berezin transform on a square grid.
    Berezin {
        file: PathBuf,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 0.25)]
        spacing: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample z -> mu(B(z, delta)) on a square grid.
    Ballmap {
        file: PathBuf,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 0.25)]
        spacing: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norms of one function over a list of exponents.
    Norms {
        file: PathBuf,
        #[arg(long)]
        function: String,
        /// Comma-separated exponents; `inf` is allowed.
        #[arg(long, value_delimiter = ',', value_parser = parse_exponent, required = true)]
        p: Vec<Exponent>,
        /// Use the Fock norm instead of the norm over the file's measure.
        #[arg(long)]
        fock: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fock-Carleson classification report.
    Carleson {
        file: PathBuf,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        /// Berezin parameter for the pq regime.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Toeplitz operator matrix and diagnostics.
    Toeplitz {
        file: PathBuf,
        #[command(flatten)]
        mode: ToeplitzMode,
        /// Grid radius of the boundedness proxies.
        #[arg(long)]
        radius: Option<f64>,
        /// Ring radii of the compactness probe.
        #[arg(long, value_delimiter = ',', default_value = "0,2,4,8")]
        rings: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the closed-form oracle suite.
    Verify,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ToeplitzMode {
    /// Matrix size in the orthonormal monomial basis.
    #[arg(long)]
    pub matrix: Option<usize>,
    #[arg(long)]
    pub bound: bool,
    #[arg(long)]
    pub compact: bool,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    let p = match s.trim() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"))?,
    };
    if p.is_nan() {
        return Err("NaN is not an exponent".into());
    }
    Exponent::new(p).map_err(|e| e.to_string())
}

/// Parses arguments and runs one subcommand. Help and version requests exit
/// with 0, argument errors with 1.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn quadrature_spec(args: &QuadratureArgs, defaults: Option<&Defaults>) -> Result<QuadratureSpec, CliError> {
    let base = QuadratureSpec::default();
    let cutoff = args
        .cutoff
        .or(defaults.and_then(|d| d.grid_radius))
        .unwrap_or(base.cutoff_radius);
    Ok(QuadratureSpec::new(
        cutoff,
        args.cells.unwrap_or(base.cells_per_unit),
        args.tolerance.unwrap_or(base.tolerance),
        base.auto_cutoff,
    )?)
}

fn load(path: &Path) -> Result<(MeasureSpecFile, Measure), CliError> {
    let file = MeasureSpecFile::load(path)?;
    let mu = file.to_measure()?;
    Ok((file, mu))
}

fn emit(buf: Vec<u8>, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, buf).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => Ok(out.write_all(&buf)?),
    }
}

/// Shortest round-trip decimal, with `-0` printed as `0`.
pub fn num(x: f64) -> String {
    (x + 0.0).to_string()
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>, CliError> {
    w.into_inner().map_err(|e| CliError::Output(e.into_error()))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Berezin {
            file,
            t,
            radius,
            spacing,
            out: path,
        } => {
            let (spec_file, mu) = load(file)?;
            let d = &spec_file.defaults;
            let spec = quadrature_spec(&cli.quadrature, Some(d))?;
            let t = t.or(d.t).unwrap_or(DEFAULT_T);
            let radius = radius.or(d.grid_radius).unwrap_or(DEFAULT_FIELD_RADIUS);
            let field = berezin_field(&mu, t, spec_file.weight()?, radius, *spacing, &spec)?;
            let mut w = csv_writer();
            w.write_record(["re", "im", "berezin"])?;
            for (z, v) in &field.samples {
                w.write_record([num(z.re), num(z.im), num(*v)])?;
            }
            emit(finish(w)?, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Ballmap {
            file,
            delta,
            radius,
            spacing,
            out: path,
        } => {
            let (spec_file, mu) = load(file)?;
            let d = &spec_file.defaults;
            let spec = quadrature_spec(&cli.quadrature, Some(d))?;
            let delta = delta.or(d.lattice_r).unwrap_or(DEFAULT_LATTICE_R);
            let radius = radius.or(d.grid_radius).unwrap_or(DEFAULT_FIELD_RADIUS);
            let field = ball_field(&mu, delta, radius, *spacing, &spec)?;
            let mut w = csv_writer();
            w.write_record(["re", "im", "ball_measure"])?;
            for (z, v) in &field.samples {
                w.write_record([num(z.re), num(z.im), num(*v)])?;
            }
            emit(finish(w)?, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Norms {
            file,
            function,
            p,
            fock,
            out: path,
        } => {
            let (spec_file, mu) = load(file)?;
            let spec = quadrature_spec(&cli.quadrature, Some(&spec_file.defaults))?;
            let f = parse_function(function)?;
            let weight = spec_file.weight()?;
            let mut w = csv_writer();
            w.write_record(["p", "norm", "growth"])?;
            let mut diverging = false;
            for &pe in p {
                let params = NormParams {
                    p: pe,
                    weight,
                    measure: if *fock { None } else { Some(mu.clone()) },
                };
                let v = norm(&f, &params, &spec)?;
                diverging |= v.growth == Growth::Diverging;
                w.write_record([pe.to_string(), num(v.value), v.growth.to_string()])?;
            }
            emit(finish(w)?, path.as_deref(), out)?;
            Ok(if diverging { EXIT_DIVERGENT } else { EXIT_OK })
        }
        Command::Carleson {
            file,
            regime,
            q,
            p,
            t,
            out: path,
        } => {
            let (spec_file, mu) = load(file)?;
            let d = &spec_file.defaults;
            let spec = quadrature_spec(&cli.quadrature, Some(d))?;
            let weight = spec_file.weight()?;
            let lat = make_lattice(d.lattice_r.unwrap_or(DEFAULT_LATTICE_R), spec.cutoff_radius)?;
            let q = q.or(d.q);
            let p = p.or(d.p);
            let require = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::field(name, "required for this regime"));
            let report = match regime {
                RegimeArg::Infq => classify_infty_q(&mu, require(q, "q")?, weight, &lat, &spec)?,
                RegimeArg::Pinf => classify_p_infty(&mu, require(p, "p")?, weight, &lat, &spec)?,
                RegimeArg::Pq => {
                    let pe = Exponent::new(require(p, "p")?)?;
                    let t = t.or(d.t).unwrap_or(DEFAULT_T);
                    equivalence_crosscheck(&mu, pe, t, lat.r, &lat, Some(require(q, "q")?), weight, &spec)?
                }
            };
            writeln!(out, "{report}")?;
            writeln!(out, "{}", summary(&report))?;
            if let Some(path) = path {
                emit(report_csv(&report)?, Some(path), out)?;
            }
            Ok(if report.has_failures() { EXIT_DIVERGENT } else { EXIT_OK })
        }
        Command::Toeplitz {
            file,
            mode,
            radius,
            rings,
            out: path,
        } => {
            let (spec_file, mu) = load(file)?;
            let d = &spec_file.defaults;
            let spec = quadrature_spec(&cli.quadrature, Some(d))?;
            let weight = spec_file.weight()?;
            let mut w = csv_writer();
            let verdict = if let Some(n) = mode.matrix {
                if n == 0 {
                    return Err(CliError::field("matrix", "must be >= 1"));
                }
                let m = toeplitz_matrix(&mu, n, weight, &spec)?;
                w.write_record(["row", "col", "re", "im"])?;
                for r in 0..n {
                    for c in 0..n {
                        let v = m.get(r, c);
                        w.write_record([r.to_string(), c.to_string(), num(v.re), num(v.im)])?;
                    }
                }
                m.verdict
            } else if mode.bound {
                let radius = radius.or(d.grid_radius).unwrap_or(DEFAULT_FIELD_RADIUS);
                let b = boundedness_estimate(&mu, weight, radius, &spec)?;
                w.write_record(["upper_proxy", "lower_proxy", "growth", "verdict", "normalization"])?;
                w.write_record([
                    num(b.upper_proxy),
                    num(b.lower_proxy),
                    b.growth.to_string(),
                    b.verdict.to_string(),
                    b.normalization.to_string(),
                ])?;
                writeln!(out, "bounded on F^inf: {}", b.verdict)?;
                b.verdict
            } else {
                let probe = compactness_probe(&mu, weight, rings, &spec)?;
                w.write_record(["radius", "ring_max"])?;
                for (r, v) in &probe.ring_maxima {
                    w.write_record([num(*r), num(*v)])?;
                }
                let sv: Vec<String> = probe.singular_values.iter().map(|s| format!("{s:.6e}")).collect();
                writeln!(out, "ring maxima: {}", probe.decay)?;
                writeln!(out, "singular values: {}", sv.join(" "))?;
                writeln!(out, "compact: {}", probe.verdict())?;
                probe.verdict()
            };
            emit(finish(w)?, path.as_deref(), out)?;
            Ok(if verdict == Verdict::Fails { EXIT_DIVERGENT } else { EXIT_OK })
        }
        Command::Verify => {
            let spec = quadrature_spec(&cli.quadrature, None)?;
            let outcomes = fock_core::verify::run_all(&spec)?;
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(out, "{} of {} criteria passed", outcomes.len() - failed, outcomes.len())?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_DIVERGENT })
        }
    }
}

fn regime_label(regime: &Regime) -> String {
    let e = |x: f64| if x.is_infinite() { "∞".to_string() } else { num(x) };
    match regime {
        Regime::InfinityQ { q } => format!("(∞,{})", e(*q)),
        Regime::PInfinity { p } => format!("({},∞)", e(*p)),
        Regime::PQ { p, q } => format!("({},{})", e(p.value()), e(q.value())),
    }
}

/// One-line conclusion, e.g. `not (∞,2)-Carleson`.
pub fn summary(report: &CarlesonReport) -> String {
    let label = regime_label(&report.regime);
    match report.verdict() {
        Verdict::Holds => format!("{label}-Carleson"),
        Verdict::Fails => format!("not {label}-Carleson"),
        Verdict::Inconclusive => format!("{label}-Carleson: inconclusive"),
    }
}

/// Columns: `regime,test,value,verdict,equivalent,note`.
pub fn report_csv(report: &CarlesonReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv_writer();
    w.write_record(["regime", "test", "value", "verdict", "equivalent", "note"])?;
    let regime = report.regime.to_string();
    for e in &report.entries {
        w.write_record([
            regime.as_str(),
            &e.name,
            &num(e.value),
            e.verdict.as_str(),
            if e.equivalent { "yes" } else { "no" },
            e.note.as_deref().unwrap_or(""),
        ])?;
    }
    finish(w)
}
