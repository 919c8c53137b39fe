use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use xx_entropy::{EntropyKind, Error, ModelParams, QuadratureConfig};
use xx_entropy_cli::{
    exit_code, run_compute, run_scan, run_validate, write_csv, write_json, Level, OutputKind,
    OutputRow, ScanSpec, EXIT_VALIDATION_FAILED,
};

/// Block entanglement entropy of the XX spin chain.
#[derive(Parser)]
#[command(name = "xx-entropy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact entropy and asymptotic prediction at one point
    Compute {
        /// Transverse magnetic field
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        /// Block length
        #[arg(short = 'L', long)]
        length: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Entropy kind; defaults to vn at alpha = 1 and renyi otherwise
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[command(flatten)]
        sink: Sink,
    },
    /// Cartesian scan over lengths, fields and alphas
    Scan {
        /// Comma-separated fields
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        h: Vec<f64>,
        /// Comma-separated block lengths
        #[arg(short = 'L', long, value_delimiter = ',', required = true)]
        length: Vec<usize>,
        /// Comma-separated Rényi indices
        #[arg(long, value_delimiter = ',', default_value = "1")]
        alpha: Vec<f64>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Columns to fill: exact, asymptotic, small_block, residual
        #[arg(long, value_delimiter = ',', default_value = "exact,asymptotic,small_block,residual")]
        outputs: Vec<String>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        sink: Sink,
    },
    /// Run the cross-check suites
    Validate {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
}

#[derive(clap::Args)]
struct Sink {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vn,
    Renyi,
    Tsallis,
}

impl From<Kind> for EntropyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Vn => EntropyKind::VonNeumann,
            Kind::Renyi => EntropyKind::Renyi,
            Kind::Tsallis => EntropyKind::Tsallis,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

fn quadrature_config() -> Result<QuadratureConfig, Error> {
    let mut config = QuadratureConfig::default();
    if let Ok(raw) = std::env::var("ENTROPY_QUAD_TOL") {
        config.abs_tol = raw
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("ENTROPY_QUAD_TOL is not a number: '{raw}'")))?;
        config.validate()?;
    }
    Ok(config)
}

fn emit(rows: &[OutputRow], sink: &Sink) -> Result<(), Error> {
    let io_err = |e: io::Error| Error::Computational(format!("write failed: {e}"));
    let writer: Box<dyn Write> = match &sink.out {
        Some(path) => Box::new(File::create(path).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = BufWriter::new(writer);
    match sink.format {
        Format::Csv => write_csv(rows, &mut writer)
            .map_err(|e| Error::Computational(format!("write failed: {e}")))?,
        Format::Json => write_json(rows, &mut writer).map_err(io_err)?,
    }
    writer.flush().map_err(io_err)
}

fn report_error(err: &Error) -> ExitCode {
    let payload = serde_json::json!({ "error": err.kind(), "message": err.to_string() });
    eprintln!("{payload}");
    ExitCode::from(exit_code(err) as u8)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let config = quadrature_config()?;
    match cli.command {
        Command::Compute {
            h,
            length,
            alpha,
            kind,
            sink,
        } => {
            let params = ModelParams::new(h, length)?;
            let row = run_compute(&params, alpha, kind.map(Into::into), &config)?;
            emit(&[row], &sink)?;
        }
        Command::Scan {
            h,
            length,
            alpha,
            kind,
            outputs,
            threads,
            sink,
        } => {
            let outputs = outputs
                .iter()
                .map(|s| OutputKind::parse(s))
                .collect::<Result<_, _>>()?;
            let spec = ScanSpec {
                lengths: length,
                fields_h: h,
                alphas: alpha,
                outputs,
                kind: kind.map(Into::into),
            };
            let rows = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Computational(format!("thread pool: {e}")))?
                    .install(|| run_scan(&spec, &config))?,
                None => run_scan(&spec, &config)?,
            };
            for row in rows.iter().filter(|r| r.error.is_some()) {
                log::error!(
                    "L={} h={} alpha={}: {}",
                    row.length,
                    row.h,
                    row.alpha,
                    row.error.as_deref().unwrap_or_default()
                );
            }
            emit(&rows, &sink)?;
        }
        Command::Validate { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = run_validate(level, &config);
            for c in &report.checks {
                println!("{c}");
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(EXIT_VALIDATION_FAILED as u8));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}
