//! `sdirac`: spectra, characteristic polynomials and invariant checks for the
//! reduced symplectic Dirac operators on CP¹.

mod kspec;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use symplectic_dirac::dirac_cp1::charpoly_exact;
use symplectic_dirac::report::{spectrum_report, ReportOptions};
use symplectic_dirac::verify::{run_checks, Check, Mode, Tolerances};

#[derive(Parser, Debug)]
#[command(name = "sdirac", version, about = "Symplectic Dirac operators on CP1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues, kernel, determinant and consistency checks per k.
    Spectrum(RunArgs),
    /// Exact characteristic polynomial coefficients, lowest degree first.
    Charpoly(RunArgs),
    /// Run invariant checks, one PASS/FAIL line per check and k.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Odd k values: `5`, `1,3,7` or the inclusive range `1..31` (evens skipped).
    #[arg(
        short = 'k',
        long = "k",
        value_name = "RANGE|LIST",
        allow_hyphen_values = true
    )]
    k: String,
    /// Output format; json for spectrum and charpoly, table for verify by default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value_t = ModeArg::Float)]
    mode: ModeArg,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Eigenvalue comparison tolerance [default: 1e-10].
    #[arg(long, value_parser = positive)]
    tol_eig: Option<f64>,
    /// Float tolerance between the two assembly routes [default: 1e-12].
    #[arg(long, value_parser = positive)]
    tol_match: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Restrict to the named check; repeatable. Defaults to every check.
    #[arg(long = "check", value_name = "NAME", value_parser = parse_check)]
    checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Float,
    Exact,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Both => Mode::Both,
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        Ok(_) => Err(format!("tolerance must be a positive real, got {s}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

enum Failure {
    Internal(String),
    Input(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::Verification => 3,
        }
    }
}

impl From<symplectic_dirac::Error> for Failure {
    fn from(e: symplectic_dirac::Error) -> Self {
        match e {
            symplectic_dirac::Error::EvenDegree(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

struct Config {
    ks: Vec<u32>,
    format: Format,
    mode: Mode,
    out: Option<PathBuf>,
    jobs: usize,
    tol: Tolerances,
}

impl Config {
    fn from_args(args: RunArgs, default_format: Format) -> Result<Config, Failure> {
        let ks = kspec::parse_k(&args.k).map_err(|e| Failure::Input(e.to_string()))?;
        let defaults = Tolerances::default();
        Ok(Config {
            ks,
            format: args.format.unwrap_or(default_format),
            mode: args.mode.into(),
            out: args.out,
            jobs: args.jobs,
            tol: Tolerances {
                eig: args.tol_eig.unwrap_or(defaults.eig),
                matching: args.tol_match.unwrap_or(defaults.matching),
            },
        })
    }

    /// Maps `f` over the k values on a worker pool; results come back in k order.
    fn map_k<T, F>(&self, f: F) -> Result<Vec<T>, Failure>
    where
        T: Send,
        F: Fn(u32) -> symplectic_dirac::Result<T> + Sync,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?;
        pool.install(|| {
            self.ks
                .par_iter()
                .map(|&k| f(k))
                .collect::<Result<Vec<T>, _>>()
        })
        .map_err(Failure::from)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        let result = match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| e.to_string())
            }
        };
        result.map_err(Failure::Internal)
    }
}

fn lines<I: IntoIterator<Item = String>>(header: Option<&str>, rows: I) -> String {
    let mut out = String::new();
    for line in header.map(str::to_string).into_iter().chain(rows) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn cmd_spectrum(cfg: &Config) -> Result<(), Failure> {
    let opts = ReportOptions {
        mode: cfg.mode,
        tol: cfg.tol,
    };
    let reports = cfg.map_k(|k| spectrum_report(k, &opts))?;
    let text = match cfg.format {
        Format::Json => lines(None, reports.iter().map(render::report_json)),
        Format::Csv => lines(
            Some(render::REPORT_CSV_HEADER),
            reports.iter().map(render::report_csv_row),
        ),
        Format::Table => render::report_table(&reports),
    };
    cfg.emit(&text)
}

fn cmd_charpoly(cfg: &Config) -> Result<(), Failure> {
    let polys = cfg.map_k(charpoly_exact)?;
    let text = match cfg.format {
        Format::Json => lines(None, polys.iter().map(render::charpoly_json)),
        Format::Csv => lines(
            Some(render::CHARPOLY_CSV_HEADER),
            polys.iter().map(render::charpoly_csv_row),
        ),
        Format::Table => lines(None, polys.iter().map(render::charpoly_table_row)),
    };
    cfg.emit(&text)
}

fn cmd_verify(cfg: &Config, checks: &[Check]) -> Result<(), Failure> {
    let checks = if checks.is_empty() {
        &Check::ALL[..]
    } else {
        checks
    };
    let outcomes: Vec<_> = cfg
        .map_k(|k| run_checks(k, checks, cfg.mode, &cfg.tol))?
        .concat();
    let text = match cfg.format {
        Format::Json => lines(None, outcomes.iter().map(render::outcome_json)),
        Format::Csv => lines(
            Some(render::OUTCOME_CSV_HEADER),
            outcomes.iter().map(render::outcome_csv_row),
        ),
        Format::Table => lines(None, outcomes.iter().map(ToString::to_string)),
    };
    cfg.emit(&text)?;
    if outcomes.iter().all(|o| o.measurement.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(&Config::from_args(args, Format::Json)?),
        Command::Charpoly(args) => cmd_charpoly(&Config::from_args(args, Format::Json)?),
        Command::Verify(args) => {
            let cfg = Config::from_args(args.run, Format::Table)?;
            cmd_verify(&cfg, &args.checks)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Internal(msg) | Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
