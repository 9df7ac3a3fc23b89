//! Randomized comparison of every library routine against its direct
//! (slow, obviously correct) counterpart.

use std::fmt;
use std::str::FromStr;

use ffskit::spectral::dft;
use ffskit::{
    convolve, czt, ffs, fs_interp, iffs, Complex64, ConvolveOptions, ConvolveScale, CztParams,
    DimSpec, FsCoefficients, InterpRequest, PeriodicGrid, SampleOrder, SampleTensor,
};
use ffskit_oracle as oracle;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{usage, CliError, CliResult};
use crate::{random_vec, rng};

/// Environment variable capping the number of verification threads.
pub const THREADS_ENV: &str = "FFSKIT_THREADS";
pub const DEFAULT_CASES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Dft,
    Ffs,
    Czt,
    Interp,
    Convolve,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Dft,
        Suite::Ffs,
        Suite::Czt,
        Suite::Interp,
        Suite::Convolve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dft => "dft",
            Suite::Ffs => "ffs",
            Suite::Czt => "czt",
            Suite::Interp => "interp",
            Suite::Convolve => "convolve",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Dft => 1e-12,
            Suite::Ffs | Suite::Czt | Suite::Interp => 1e-10,
            Suite::Convolve => 1e-6,
        }
    }

    fn stream(self) -> u64 {
        (self as u64 + 1) << 32
    }

    fn run_case(self, r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
        match self {
            Suite::Dft => dft_case(r),
            Suite::Ffs => ffs_case(r),
            Suite::Czt => czt_case(r),
            Suite::Interp => interp_case(r),
            Suite::Convolve => convolve_case(r),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses one suite name or `all`.
pub fn parse_selector(s: &str) -> CliResult<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .into_iter()
        .find(|suite| suite.name() == s)
        .map(|suite| vec![suite])
        .ok_or_else(|| {
            usage(format!(
                "unknown suite {s:?}; expected dft, ffs, czt, interp, convolve or all"
            ))
        })
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match parse_selector(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(usage("expected a single suite")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub cases: usize,
    /// Deliberately corrupts every library result so the harness itself
    /// can be checked for catching failures.
    pub perturb: bool,
    pub threads: Option<usize>,
}

/// Parallelism cap from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Library result, direct result and a description of the inputs.
struct Case {
    actual: Vec<Complex64>,
    expected: Vec<Complex64>,
    description: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseFailure {
    pub case: usize,
    pub description: String,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub first_failure: Option<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, max relative error {:.3e} (tolerance {:.0e}) {}",
            self.suite,
            self.cases,
            self.max_error,
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        if let Some(fail) = &self.first_failure {
            write!(
                f,
                "\n  first failure: case {} with error {:.3e}: {}",
                fail.case, fail.error, fail.description
            )?;
        }
        Ok(())
    }
}

pub fn run(cfg: &VerifyConfig) -> CliResult<Vec<SuiteReport>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Check(format!("could not start worker threads: {e}")))?;
    pool.install(|| cfg.suites.iter().map(|&s| run_suite(s, cfg)).collect())
}

fn run_suite(suite: Suite, cfg: &VerifyConfig) -> CliResult<SuiteReport> {
    let tolerance = suite.tolerance();
    let results = (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(cfg.seed);
            r.set_stream(suite.stream() | i as u64);
            let mut case = suite.run_case(&mut r)?;
            if cfg.perturb {
                let scale = case
                    .expected
                    .iter()
                    .map(|v| v.norm())
                    .fold(1e-300, f64::max);
                case.actual[0] += 1e-3 * scale;
            }
            Ok((
                oracle::rel_err(&case.actual, &case.expected),
                case.description,
            ))
        })
        .collect::<ffskit::Result<Vec<_>>>()?;

    let max_error = results.iter().map(|(e, _)| *e).fold(0.0, f64::max);
    let first_failure = results
        .into_iter()
        .enumerate()
        .find(|(_, (e, _))| e.is_nan() || *e > tolerance)
        .map(|(case, (error, description))| CaseFailure {
            case,
            description,
            error,
        });
    Ok(SuiteReport {
        suite,
        cases: cfg.cases,
        max_error,
        tolerance,
        first_failure,
    })
}

fn odd_up_to(r: &mut ChaCha8Rng, max: usize) -> usize {
    2 * r.random_range(0..=max / 2) + 1
}

fn dft_case(r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
    let n = r.random_range(1..=256);
    let x = random_vec(r, n);
    Ok(Case {
        actual: dft(&x)?,
        expected: oracle::dft(&x),
        description: format!("N = {n}"),
    })
}

fn ffs_case(r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
    let n_fs = odd_up_to(r, 33);
    let n_s = n_fs + r.random_range(0..=8);
    let period = r.random_range(0.1..10.0);
    let center = r.random_range(-10.0..10.0);
    let dim = DimSpec::new(period, center, n_fs, n_s)?;
    let x = random_vec(r, n_s);
    let t = oracle::ffs_timestamps(period, center, n_s);
    let actual = ffs(
        &SampleTensor::from_vec(x.clone(), SampleOrder::Ffs),
        &PeriodicGrid::from_dim(dim),
    )?;
    Ok(Case {
        actual: actual.trimmed_vec(),
        expected: oracle::fs_unitary_solve(&x, &t, period, n_fs),
        description: format!("N_FS = {n_fs}, N_s = {n_s}, T = {period}, T_c = {center}"),
    })
}

fn czt_case(r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
    let n = r.random_range(1..=128);
    let m = r.random_range(1..=128);
    let start = r.random_range(0.0..std::f64::consts::TAU);
    let step = r.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let x = random_vec(r, n);
    let params = CztParams::on_unit_circle(start, step, m)?;
    Ok(Case {
        actual: czt(&x, &params)?,
        expected: oracle::czt(&x, params.a(), params.w(), m),
        description: format!("N = {n}, M = {m}, arg A = {start}, arg W = {step}"),
    })
}

fn interp_case(r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
    let n_fs = odd_up_to(r, 31);
    let m = r.random_range(2..=64);
    let period = r.random_range(0.1..10.0);
    let a = r.random_range(-period..period);
    let b = a + r.random_range(0.001..1.0) * period;
    let coeffs = random_vec(r, n_fs);
    let req = InterpRequest::new(a, b, m)?;
    Ok(Case {
        actual: fs_interp(&coeffs, period, &req)?,
        expected: oracle::fs_synthesis(&coeffs, period, &req.timestamps()),
        description: format!("N_FS = {n_fs}, M = {m}, T = {period}, [a, b] = [{a}, {b}]"),
    })
}

fn convolve_case(r: &mut ChaCha8Rng) -> ffskit::Result<Case> {
    let n_fs = odd_up_to(r, 15);
    let n_s = n_fs + r.random_range(0..=8);
    let period = r.random_range(0.1..10.0);
    let center = r.random_range(-1.0..1.0);
    let grid = PeriodicGrid::from_dim(DimSpec::new(period, center, n_fs, n_s)?);
    let fc = random_vec(r, n_fs);
    let hc = random_vec(r, n_fs);
    let synth = |c: &[Complex64]| -> ffskit::Result<SampleTensor> {
        let trimmed =
            ndarray::ArrayD::from_shape_vec(vec![n_fs], c.to_vec()).expect("length matches shape");
        iffs(&FsCoefficients::from_trimmed(grid.clone(), &trimmed)?)
    };
    let opts = ConvolveOptions {
        scale: ConvolveScale::Integral,
    };
    let g = convolve(&synth(&fc)?, &synth(&hc)?, &grid, opts)?;
    let t = oracle::ffs_timestamps(period, center, n_s);
    Ok(Case {
        actual: g.data().iter().copied().collect(),
        expected: oracle::periodic_convolution(&fc, &hc, period, &t, 4096),
        description: format!("N_FS = {n_fs}, N_s = {n_s}, T = {period}, T_c = {center}"),
    })
}
