use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffskit_cli::bench::{
    self, Convolve2dConfig, Interp1dConfig, Interp2dConfig, DEFAULT_FRACTIONS_1D,
    DEFAULT_FRACTIONS_2D, DEFAULT_M_1D, DEFAULT_REPS, DEFAULT_SIZES_2D,
};
use ffskit_cli::optics::{self, OpticsConfig};
use ffskit_cli::verify::{self, VerifyConfig};
use ffskit_cli::{write_csv, BenchRecord, CliError, CliResult, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "ffskit",
    version,
    about = "Fast Fourier series benchmarks, verification and demos"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time 1-D interpolation: chirp-Z path against zero-padding.
    #[command(name = "bench-interp-1d")]
    BenchInterp1d(Interp1dArgs),
    /// Time 2-D interpolation: chirp-Z path against zero-padding.
    #[command(name = "bench-interp-2d")]
    BenchInterp2d(Interp2dArgs),
    /// Time 2-D circular convolution: FS coefficients against direct summation.
    #[command(name = "bench-convolve-2d")]
    BenchConvolve2d(Convolve2dArgs),
    /// Propagate a circular aperture and write the intensity on a zoomed window.
    DemoOptics(OpticsArgs),
    /// Compare every routine against its direct counterpart on random cases.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Repetitions per timing (at least 3).
    #[arg(long, default_value_t = DEFAULT_REPS)]
    reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Interp1dArgs {
    #[arg(long = "n-fs", default_value_t = 127)]
    n_fs: usize,
    #[arg(long = "n-s", default_value_t = 128)]
    n_s: usize,
    /// Comma-separated fractions of the period covered by the output.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_FRACTIONS_1D)]
    fractions: Vec<f64>,
    /// Comma-separated output sizes.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_M_1D)]
    m: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Interp2dArgs {
    /// Bandwidth per axis, one value for both or two comma-separated.
    #[arg(long = "n-fs", value_delimiter = ',', default_values_t = [255])]
    n_fs: Vec<usize>,
    #[arg(long = "n-s", value_delimiter = ',', default_values_t = [256])]
    n_s: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_FRACTIONS_2D)]
    fractions: Vec<f64>,
    /// Output size per axis, one value for both or two comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [64])]
    m: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Convolve2dArgs {
    /// Comma-separated samples per axis.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES_2D)]
    sizes: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct OpticsArgs {
    /// Aperture plane samples per axis.
    #[arg(long, default_value_t = 128)]
    n: usize,
    /// Aperture plane side in meters.
    #[arg(long, default_value_t = 1e-3)]
    side: f64,
    #[arg(long, default_value_t = 2e-4)]
    radius: f64,
    #[arg(long, default_value_t = 633e-9)]
    wavelength: f64,
    /// Propagation distance in meters.
    #[arg(long, default_value_t = 0.05)]
    distance: f64,
    /// Output window `a,b` in meters, used on both axes.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [-2.5e-4, 2.5e-4], allow_hyphen_values = true)]
    region: Vec<f64>,
    /// Output samples per axis.
    #[arg(long, default_value_t = 256)]
    m: usize,
    /// CSV of raw intensities; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional PGM image of the normalized intensity.
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// dft, ffs, czt, interp, convolve or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = verify::DEFAULT_CASES)]
    cases: usize,
    /// Corrupt every result to confirm failures are reported.
    #[arg(long)]
    perturb: bool,
}

fn per_axis(values: &[usize], name: &str) -> CliResult<[usize; 2]> {
    match values {
        [v] => Ok([*v, *v]),
        [a, b] => Ok([*a, *b]),
        _ => Err(CliError::Usage(format!("{name} takes one or two values"))),
    }
}

fn open_out(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(records: &[BenchRecord], out: Option<&Path>) -> CliResult<()> {
    write_csv(records, open_out(out)?)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::BenchInterp1d(a) => {
            eprintln!("seed: {}", a.common.seed);
            let cfg = Interp1dConfig {
                n_fs: a.n_fs,
                n_s: a.n_s,
                fractions: a.fractions,
                m_values: a.m,
                reps: a.common.reps,
                seed: a.common.seed,
            };
            emit(&bench::bench_interp_1d(&cfg)?, a.common.out.as_deref())
        }
        Command::BenchInterp2d(a) => {
            eprintln!("seed: {}", a.common.seed);
            let cfg = Interp2dConfig {
                n_fs: per_axis(&a.n_fs, "--n-fs")?,
                n_s: per_axis(&a.n_s, "--n-s")?,
                fractions: a.fractions,
                m: per_axis(&a.m, "--m")?,
                reps: a.common.reps,
                seed: a.common.seed,
            };
            emit(&bench::bench_interp_2d(&cfg)?, a.common.out.as_deref())
        }
        Command::BenchConvolve2d(a) => {
            eprintln!("seed: {}", a.common.seed);
            let cfg = Convolve2dConfig {
                sizes: a.sizes,
                reps: a.common.reps,
                seed: a.common.seed,
            };
            emit(&bench::bench_convolve_2d(&cfg)?, a.common.out.as_deref())
        }
        Command::DemoOptics(a) => {
            let cfg = OpticsConfig {
                n: a.n,
                side: a.side,
                radius: a.radius,
                wavelength: a.wavelength,
                distance: a.distance,
                region: (a.region[0], a.region[1]),
                m: a.m,
            };
            let result = optics::run_demo(&cfg)?;
            eprintln!("spectral energy ratio: {:.6}", result.energy_ratio);
            if let Some(p) = &a.pgm {
                optics::write_pgm(&result.intensity, BufWriter::new(File::create(p)?))?;
            }
            optics::write_intensity_csv(&result, open_out(a.out.as_deref())?)
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                suites: verify::parse_selector(&a.suite)?,
                seed: a.seed,
                cases: a.cases,
                perturb: a.perturb,
                threads: verify::threads_from_env()?,
            };
            println!("seed: {}", cfg.seed);
            let reports = verify::run(&cfg)?;
            for r in &reports {
                println!("{r}");
            }
            if let Some(bad) = reports.iter().find(|r| !r.passed()) {
                return Err(CliError::Check(format!("suite {} failed", bad.suite)));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
