//! Bandlimited interpolation from Fourier series coefficients.
//!
//! [`fs_interp`] evaluates `x(t) = sum_{k=-N}^{N} X_k exp(j 2 pi k t / T)`
//! at `M` equispaced points `t_n = a + n (b - a) / (M - 1)` of a closed
//! interval through one chirp Z-transform:
//!
//! ```text
//! x = A^N CZT(X) . W^(-N E),   A = exp(-j 2 pi a / T),
//!                              W = exp(j 2 pi (b - a) / (T (M - 1)))
//! ```
//!
//! Cost is `O((M + N_FS) log(M + N_FS))` regardless of how narrow the
//! interval is. The zero-padding baseline ([`fs_interp_zero_pad`]) instead
//! resynthesizes the whole period at the target resolution.

use std::f64::consts::PI;

use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;

use crate::czt::{CztParams, CztPlan};
use crate::error::{invalid, Result};
use crate::spectral::{for_each_lane, map_lanes, plan, Direction};

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Closed interval `[start, end]` sampled at `m >= 2` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpRequest {
    start: f64,
    end: f64,
    m: usize,
}

impl InterpRequest {
    pub fn new(start: f64, end: f64, m: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(invalid("interval end-points must be finite"));
        }
        if start >= end {
            return Err(invalid(format!(
                "interval start {start} must be below its end {end}"
            )));
        }
        if m < 2 {
            return Err(invalid(format!(
                "need at least 2 interpolation points, got {m}"
            )));
        }
        Ok(InterpRequest { start, end, m })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.m - 1) as f64
    }

    pub fn timestamps(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.m).map(|n| self.start + n as f64 * step).collect()
    }
}

fn check_bandwidth(n_fs: usize) -> Result<()> {
    if n_fs == 0 || n_fs.is_multiple_of(2) {
        return Err(invalid(format!(
            "coefficient count must be odd (N_FS = 2N + 1), got {n_fs}"
        )));
    }
    Ok(())
}

fn check_period(period: f64) -> Result<()> {
    if !(period.is_finite() && period > 0.0) {
        return Err(invalid(format!(
            "period must be positive and finite, got {period}"
        )));
    }
    Ok(())
}

/// CZT plan plus output modulation for one axis.
struct AxisInterp {
    czt: CztPlan,
    post: Vec<Complex64>,
}

impl AxisInterp {
    fn new(n_fs: usize, period: f64, req: &InterpRequest) -> Result<Self> {
        check_bandwidth(n_fs)?;
        check_period(period)?;
        let n = (n_fs / 2) as f64;
        // Start reduced modulo one period; the function is T-periodic.
        let start_turns = (req.start / period).rem_euclid(1.0);
        let step_turns = req.step() / period;
        let params =
            CztParams::on_unit_circle(-2.0 * PI * start_turns, 2.0 * PI * step_turns, req.m)?;
        // A^N W^{-N n} = exp(-j 2 pi N (start_turns + n step_turns))
        let post = (0..req.m)
            .map(|i| {
                let turns = (n * (start_turns + i as f64 * step_turns)).rem_euclid(1.0);
                cis(-2.0 * PI * turns)
            })
            .collect();
        Ok(AxisInterp {
            czt: CztPlan::new(n_fs, &params)?,
            post,
        })
    }

    fn apply(&self, coeffs: &[Complex64], out: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        self.czt.process_with_scratch(coeffs, out, scratch);
        out.iter_mut().zip(&self.post).for_each(|(o, p)| *o *= p);
    }
}

/// Interpolates `X_{-N} .. X_N` (period `period`) on `req`.
pub fn fs_interp(coeffs: &[Complex64], period: f64, req: &InterpRequest) -> Result<Vec<Complex64>> {
    let axis = AxisInterp::new(coeffs.len(), period, req)?;
    let mut out = vec![Complex64::new(0.0, 0.0); req.m];
    axis.apply(coeffs, &mut out, &mut Vec::new());
    Ok(out)
}

/// N-D interpolation: [`fs_interp`] along every axis of a trimmed
/// coefficient block (`N_FS` per axis, ascending `k`).
pub fn fs_interpn(
    coeffs: &ArrayD<Complex64>,
    periods: &[f64],
    reqs: &[InterpRequest],
) -> Result<ArrayD<Complex64>> {
    let d = coeffs.ndim();
    if d == 0 || periods.len() != d || reqs.len() != d {
        return Err(invalid(format!(
            "rank {d} coefficients need {d} periods and requests, got {} and {}",
            periods.len(),
            reqs.len()
        )));
    }
    let axes = (0..d)
        .map(|i| AxisInterp::new(coeffs.shape()[i], periods[i], &reqs[i]))
        .collect::<Result<Vec<_>>>()?;
    let mut out = coeffs.clone();
    let mut scratch = Vec::new();
    for (i, axis) in axes.iter().enumerate() {
        out = map_lanes(&out, i, reqs[i].m, |src, dst| {
            axis.apply(src, dst, &mut scratch)
        });
    }
    Ok(out)
}

/// Zero-padding baseline: synthesizes the full period at `n_target`
/// uniform points `t_n = n T / n_target`, `n = 0 .. n_target - 1`.
///
/// Each `X_k` is placed at bin `k mod n_target` and one unnormalized
/// inverse DFT of length `n_target` is taken. No aliasing occurs as long as
/// `n_target >= N_FS`, for either parity of `n_target`. For odd `n_target`
/// the output coincides with [`crate::ffs::iffs`] on a grid with `T_c = 0`
/// and `N_s = n_target`.
pub fn fs_interp_zero_pad(
    coeffs: &[Complex64],
    period: f64,
    n_target: usize,
) -> Result<Vec<Complex64>> {
    let block = ArrayD::from_shape_vec(IxDyn(&[coeffs.len()]), coeffs.to_vec())
        .expect("1-D shape always matches");
    let out = fs_interpn_zero_pad(&block, &[period], &[n_target])?;
    Ok(out.into_raw_vec_and_offset().0)
}

/// N-D zero-padding baseline; axis `i` is resampled at `n_targets[i]`
/// points over its full period.
pub fn fs_interpn_zero_pad(
    coeffs: &ArrayD<Complex64>,
    periods: &[f64],
    n_targets: &[usize],
) -> Result<ArrayD<Complex64>> {
    let d = coeffs.ndim();
    if d == 0 || periods.len() != d || n_targets.len() != d {
        return Err(invalid(format!(
            "rank {d} coefficients need {d} periods and targets, got {} and {}",
            periods.len(),
            n_targets.len()
        )));
    }
    for i in 0..d {
        let n_fs = coeffs.shape()[i];
        check_bandwidth(n_fs)?;
        check_period(periods[i])?;
        if n_targets[i] < n_fs {
            return Err(invalid(format!(
                "target resolution {} is below the bandwidth {n_fs}",
                n_targets[i]
            )));
        }
    }

    let mut out = ArrayD::zeros(IxDyn(n_targets));
    let bins: Vec<Vec<usize>> = (0..d)
        .map(|i| {
            let n_fs = coeffs.shape()[i] as i64;
            let nt = n_targets[i] as i64;
            (0..n_fs)
                .map(|j| (j - n_fs / 2).rem_euclid(nt) as usize)
                .collect()
        })
        .collect();
    let mut target = vec![0usize; d];
    for (ix, v) in coeffs.indexed_iter() {
        for (axis, slot) in target.iter_mut().enumerate() {
            *slot = bins[axis][ix[axis]];
        }
        out[IxDyn(&target)] = *v;
    }
    for (axis, &nt) in n_targets.iter().enumerate() {
        let fft = plan(nt, Direction::Inverse);
        for_each_lane(&mut out, axis, |lane| fft.process(lane));
    }
    Ok(out)
}
