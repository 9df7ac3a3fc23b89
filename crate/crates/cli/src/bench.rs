//! Timing studies: chirp-Z interpolation against zero-padding, and FS
//! coefficient-product convolution against direct spatial summation.
//!
//! Every study cross-checks the competing methods on its own inputs before
//! any timing and aborts when they disagree by more than
//! [`CROSS_CHECK_TOL`].

use std::hint::black_box;
use std::time::Instant;

use ffskit::{
    convolve, ffs, ffsn, fs_interp, fs_interp_zero_pad, fs_interpn, fs_interpn_zero_pad, iffsn,
    Complex64, ConvolveOptions, DimSpec, FsCoefficients, InterpRequest, PeriodicGrid, SampleTensor,
};
use ffskit_oracle::{circular_convolve_2d, rel_err};
use ndarray::ArrayD;

use crate::error::{usage, CliError, CliResult};
use crate::record::{mean_std, BenchRecord};
use crate::{random_array, rng, DEFAULT_SEED};

pub const CROSS_CHECK_TOL: f64 = 1e-8;

/// Largest zero-padded output (in samples) a study may request.
pub const MAX_ZERO_PAD_POINTS: usize = 1 << 27;

pub const DEFAULT_FRACTIONS_1D: [f64; 7] = [0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0];
pub const DEFAULT_FRACTIONS_2D: [f64; 4] = [0.02, 0.05, 0.1, 0.2];
pub const DEFAULT_M_1D: [usize; 4] = [128, 256, 512, 1024];
pub const DEFAULT_SIZES_2D: [usize; 4] = [16, 32, 64, 128];
pub const DEFAULT_REPS: usize = 10;

/// Runs `f` once to warm up, then `reps` timed times on a monotonic clock.
/// Returns mean and sample standard deviation in seconds.
pub fn time_reps<T>(reps: usize, mut f: impl FnMut() -> T) -> CliResult<(f64, f64)> {
    if reps < 3 {
        return Err(usage(format!(
            "at least 3 repetitions are required, got {reps}"
        )));
    }
    black_box(f());
    let samples: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed().as_secs_f64()
        })
        .collect();
    mean_std(&samples)
}

/// Zero-pad length whose uniform grid has the CZT step for `m` points
/// spanning `fraction` of a period: `ceil((m - 1) / fraction)`.
pub fn matched_target(m: usize, fraction: f64) -> CliResult<usize> {
    if m < 2 {
        return Err(usage(format!("M must be at least 2, got {m}")));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(usage(format!(
            "region fraction must lie in (0, 1], got {fraction}"
        )));
    }
    // The small offset keeps exact quotients such as 511 / 0.01 from
    // rounding up past the intended integer.
    Ok(((m - 1) as f64 / fraction - 1e-9).ceil() as usize)
}

fn cross_check(label: &str, actual: &[Complex64], expected: &[Complex64]) -> CliResult<()> {
    let err = rel_err(actual, expected);
    if err > CROSS_CHECK_TOL {
        return Err(CliError::Check(format!(
            "{label}: methods disagree by {err:e} (tolerance {CROSS_CHECK_TOL:e})"
        )));
    }
    Ok(())
}

fn random_signal(grid: &PeriodicGrid, seed: u64) -> CliResult<SampleTensor> {
    let mut r = rng(seed);
    let coeffs = random_array(&mut r, &grid.bandwidth());
    Ok(iffsn(&FsCoefficients::from_trimmed(
        grid.clone(),
        &coeffs,
    )?)?)
}

#[derive(Debug, Clone)]
pub struct Interp1dConfig {
    pub n_fs: usize,
    pub n_s: usize,
    pub fractions: Vec<f64>,
    pub m_values: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
}

impl Default for Interp1dConfig {
    fn default() -> Self {
        Interp1dConfig {
            n_fs: 127,
            n_s: 128,
            fractions: DEFAULT_FRACTIONS_1D.to_vec(),
            m_values: DEFAULT_M_1D.to_vec(),
            reps: DEFAULT_REPS,
            seed: DEFAULT_SEED,
        }
    }
}

/// Times `samples -> coefficients -> M points on [0, (M - 1) T / N_target]`
/// through the CZT path (`czt`) and the zero-pad path (`zero_pad`), with
/// `N_target` from [`matched_target`]. The signal has period 1.
pub fn bench_interp_1d(cfg: &Interp1dConfig) -> CliResult<Vec<BenchRecord>> {
    let grid = PeriodicGrid::from_dim(DimSpec::new(1.0, 0.0, cfg.n_fs, cfg.n_s).map_err(to_usage)?);
    let cases = cfg
        .m_values
        .iter()
        .flat_map(|&m| cfg.fractions.iter().map(move |&f| (m, f)))
        .map(|(m, f)| {
            let nt = matched_target(m, f)?;
            check_target(&[nt], &[cfg.n_fs])?;
            let req = InterpRequest::new(0.0, (m - 1) as f64 / nt as f64, m).map_err(to_usage)?;
            Ok((m, f, nt, req))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if cfg.reps < 3 {
        return Err(usage(format!(
            "at least 3 repetitions are required, got {}",
            cfg.reps
        )));
    }

    let samples = random_signal(&grid, cfg.seed)?;
    let run_czt = |req: &InterpRequest| -> CliResult<Vec<Complex64>> {
        let c = ffs(&samples, &grid)?.trimmed_vec();
        Ok(fs_interp(&c, 1.0, req)?)
    };
    let run_zero_pad = |nt: usize| -> CliResult<Vec<Complex64>> {
        let c = ffs(&samples, &grid)?.trimmed_vec();
        Ok(fs_interp_zero_pad(&c, 1.0, nt)?)
    };

    let mut records = Vec::new();
    for (m, f, nt, req) in cases {
        let a = run_czt(&req)?;
        let b = run_zero_pad(nt)?;
        let wrapped: Vec<Complex64> = (0..m).map(|i| b[i % nt]).collect();
        cross_check(&format!("M = {m}, fraction = {f}"), &a, &wrapped)?;

        let record = |method: &str, (mean, std): (f64, f64)| BenchRecord {
            method: method.into(),
            n_fs: vec![cfg.n_fs],
            n_s: vec![cfg.n_s],
            m: Some(vec![m]),
            region_fraction: Some(f),
            reps: cfg.reps,
            seconds_mean: mean,
            seconds_std: std,
        };
        records.push(record("czt", time_reps(cfg.reps, || run_czt(&req))?));
        records.push(record(
            "zero_pad",
            time_reps(cfg.reps, || run_zero_pad(nt))?,
        ));
    }
    Ok(records)
}

#[derive(Debug, Clone)]
pub struct Interp2dConfig {
    pub n_fs: [usize; 2],
    pub n_s: [usize; 2],
    pub fractions: Vec<f64>,
    pub m: [usize; 2],
    pub reps: usize,
    pub seed: u64,
}

impl Default for Interp2dConfig {
    fn default() -> Self {
        Interp2dConfig {
            n_fs: [255, 255],
            n_s: [256, 256],
            fractions: DEFAULT_FRACTIONS_2D.to_vec(),
            m: [64, 64],
            reps: DEFAULT_REPS,
            seed: DEFAULT_SEED,
        }
    }
}

/// 2-D analogue of [`bench_interp_1d`]: the same fraction of the period
/// on both axes, unit periods.
pub fn bench_interp_2d(cfg: &Interp2dConfig) -> CliResult<Vec<BenchRecord>> {
    let dims = (0..2)
        .map(|i| DimSpec::new(1.0, 0.0, cfg.n_fs[i], cfg.n_s[i]))
        .collect::<ffskit::Result<Vec<_>>>()
        .map_err(to_usage)?;
    let grid = PeriodicGrid::new(dims).map_err(to_usage)?;
    let cases = cfg
        .fractions
        .iter()
        .map(|&f| {
            let nt = [matched_target(cfg.m[0], f)?, matched_target(cfg.m[1], f)?];
            check_target(&nt, &cfg.n_fs)?;
            let reqs = (0..2)
                .map(|i| InterpRequest::new(0.0, (cfg.m[i] - 1) as f64 / nt[i] as f64, cfg.m[i]))
                .collect::<ffskit::Result<Vec<_>>>()
                .map_err(to_usage)?;
            Ok((f, nt, reqs))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if cfg.reps < 3 {
        return Err(usage(format!(
            "at least 3 repetitions are required, got {}",
            cfg.reps
        )));
    }

    let samples = random_signal(&grid, cfg.seed)?;
    let periods = [1.0, 1.0];
    let run_czt = |reqs: &[InterpRequest]| -> CliResult<ArrayD<Complex64>> {
        let c = ffsn(&samples, &grid)?.trim();
        Ok(fs_interpn(&c, &periods, reqs)?)
    };
    let run_zero_pad = |nt: &[usize]| -> CliResult<ArrayD<Complex64>> {
        let c = ffsn(&samples, &grid)?.trim();
        Ok(fs_interpn_zero_pad(&c, &periods, nt)?)
    };

    let mut records = Vec::new();
    for (f, nt, reqs) in cases {
        let a: Vec<Complex64> = run_czt(&reqs)?.iter().copied().collect();
        let b = run_zero_pad(&nt)?;
        let wrapped: Vec<Complex64> = (0..cfg.m[0])
            .flat_map(|i| (0..cfg.m[1]).map(move |j| (i, j)))
            .map(|(i, j)| b[[i % nt[0], j % nt[1]]])
            .collect();
        cross_check(&format!("fraction = {f}"), &a, &wrapped)?;

        let record = |method: &str, (mean, std): (f64, f64)| BenchRecord {
            method: method.into(),
            n_fs: cfg.n_fs.to_vec(),
            n_s: cfg.n_s.to_vec(),
            m: Some(cfg.m.to_vec()),
            region_fraction: Some(f),
            reps: cfg.reps,
            seconds_mean: mean,
            seconds_std: std,
        };
        records.push(record("czt", time_reps(cfg.reps, || run_czt(&reqs))?));
        records.push(record(
            "zero_pad",
            time_reps(cfg.reps, || run_zero_pad(&nt))?,
        ));
    }
    Ok(records)
}

#[derive(Debug, Clone)]
pub struct Convolve2dConfig {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
}

impl Default for Convolve2dConfig {
    fn default() -> Self {
        Convolve2dConfig {
            sizes: DEFAULT_SIZES_2D.to_vec(),
            reps: DEFAULT_REPS,
            seed: DEFAULT_SEED,
        }
    }
}

/// Grid on which sample `n` of each axis sits at `t = n T / N_s` (unit
/// period), so circular index arithmetic matches time differences. The
/// bandwidth is the largest odd value not above `n`.
pub fn convolution_grid(n: usize) -> CliResult<PeriodicGrid> {
    let (center, n_fs) = if n.is_multiple_of(2) {
        (-0.5 / n as f64, n - 1)
    } else {
        (0.0, n)
    };
    let dim = DimSpec::new(1.0, center, n_fs, n).map_err(to_usage)?;
    Ok(PeriodicGrid::new(vec![dim, dim])?)
}

/// Times circular convolution of two random bandlimited `n x n` signals
/// through FS coefficients (`ffs`) and by direct summation (`naive`).
pub fn bench_convolve_2d(cfg: &Convolve2dConfig) -> CliResult<Vec<BenchRecord>> {
    if let Some(&n) = cfg.sizes.iter().find(|&&n| n < 4) {
        return Err(usage(format!("sizes must be at least 4, got {n}")));
    }
    if cfg.reps < 3 {
        return Err(usage(format!(
            "at least 3 repetitions are required, got {}",
            cfg.reps
        )));
    }
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        let grid = convolution_grid(n)?;
        let f = random_signal(&grid, cfg.seed)?;
        let h = random_signal(&grid, cfg.seed.wrapping_add(1))?;
        let f_flat: Vec<Complex64> = f.data().iter().copied().collect();
        let h_flat: Vec<Complex64> = h.data().iter().copied().collect();
        let run_ffs = || convolve(&f, &h, &grid, ConvolveOptions::default());
        let run_naive = || circular_convolve_2d(&f_flat, &h_flat, n);

        let a: Vec<Complex64> = run_ffs()?.data().iter().copied().collect();
        cross_check(&format!("size {n}"), &a, &run_naive())?;

        let n_fs = grid.bandwidth();
        let record = |method: &str, (mean, std): (f64, f64)| BenchRecord {
            method: method.into(),
            n_fs: n_fs.clone(),
            n_s: vec![n, n],
            m: None,
            region_fraction: None,
            reps: cfg.reps,
            seconds_mean: mean,
            seconds_std: std,
        };
        records.push(record("ffs", time_reps(cfg.reps, run_ffs)?));
        records.push(record("naive", time_reps(cfg.reps, run_naive)?));
    }
    Ok(records)
}

fn check_target(targets: &[usize], n_fs: &[usize]) -> CliResult<()> {
    for (&nt, &nf) in targets.iter().zip(n_fs) {
        if nt < nf {
            return Err(usage(format!(
                "matched zero-pad length {nt} is below the bandwidth {nf}; use a larger M or a smaller fraction"
            )));
        }
    }
    if targets.iter().product::<usize>() > MAX_ZERO_PAD_POINTS {
        return Err(usage(format!(
            "zero-pad output of {} samples exceeds the limit of {MAX_ZERO_PAD_POINTS}",
            targets
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join("x")
        )));
    }
    Ok(())
}

fn to_usage(e: ffskit::Error) -> CliError {
    CliError::Usage(e.to_string())
}
