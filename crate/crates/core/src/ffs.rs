//! Fast Fourier series analysis and synthesis.
//!
//! For a `T`-periodic function of bandwidth `N_FS = 2N + 1` sampled on the
//! grid of [`crate::grid::sample_points`], the coefficients `X_{-N} .. X_N`
//! are a modulated, scaled DFT of the modulated samples:
//!
//! ```text
//! X = (1/N_s) DFT(x . B2^(-N E2)) . B1^(-E1)
//! x = N_s IDFT(X . B1^E1) . B2^(N E2)
//! ```
//!
//! with `B2 = exp(-j 2 pi / N_s)`, `E2` the signed ffs-order sample indices,
//! `E1 = [-N .. N, 0 ..]`, and `B1 = exp(j 2 pi T_c / T)` for odd `N_s` or
//! `exp(j (2 pi / T)(T_c + T / (2 N_s)))` for even `N_s`.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::{ArrayD, IxDyn, SliceInfoElem};
use num_complex::Complex64;
use rustfft::Fft;

use crate::error::{check_shape, invalid, Result};
use crate::grid::{DimSpec, PeriodicGrid, SampleOrder, SampleTensor};
use crate::spectral::{for_each_lane, plan, Direction};

fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Fourier series coefficients tied to the grid they were computed on.
///
/// Each axis has length `N_s`: the first `N_FS` entries hold `X_{-N} .. X_N`
/// in ascending `k`, the trailing `Q` entries are padding. Analysis of a
/// bandlimited input leaves the padding at (numerically) zero; synthesis
/// ignores it.
#[derive(Debug, Clone, PartialEq)]
pub struct FsCoefficients {
    grid: PeriodicGrid,
    coeffs: ArrayD<Complex64>,
}

impl FsCoefficients {
    /// Wraps a padded coefficient tensor. The shape must equal the grid's
    /// sample shape.
    pub fn new(grid: PeriodicGrid, coeffs: ArrayD<Complex64>) -> Result<Self> {
        check_shape(&grid.shape(), coeffs.shape())?;
        Ok(FsCoefficients { grid, coeffs })
    }

    /// Builds padded coefficients from a `N_FS`-per-axis block.
    pub fn from_trimmed(grid: PeriodicGrid, trimmed: &ArrayD<Complex64>) -> Result<Self> {
        check_shape(&grid.bandwidth(), trimmed.shape())?;
        let mut coeffs = ArrayD::zeros(IxDyn(&grid.shape()));
        coeffs
            .slice_mut(block(&grid.bandwidth()).as_slice())
            .assign(trimmed);
        Ok(FsCoefficients { grid, coeffs })
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    /// Padded coefficients, `N_s` per axis.
    pub fn coeffs(&self) -> &ArrayD<Complex64> {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> ArrayD<Complex64> {
        self.coeffs
    }

    /// The `N_FS`-per-axis block `X_{-N} .. X_N`.
    pub fn trim(&self) -> ArrayD<Complex64> {
        self.coeffs
            .slice(block(&self.grid.bandwidth()).as_slice())
            .to_owned()
    }

    /// 1-D convenience: `X_{-N} .. X_N` as a vector.
    pub fn trimmed_vec(&self) -> Vec<Complex64> {
        self.trim().iter().copied().collect()
    }
}

fn block(lens: &[usize]) -> Vec<SliceInfoElem> {
    lens.iter()
        .map(|&n| SliceInfoElem::Slice {
            start: 0,
            end: Some(n as isize),
            step: 1,
        })
        .collect()
}

/// Precomputed modulation vectors and transforms for one axis.
struct AxisPlan {
    n_fs: usize,
    /// `B2^(-N E2)`, applied to samples before the forward DFT.
    sample_mod: Vec<Complex64>,
    /// `B1^(-E1)` over the `N_FS` block, applied after the forward DFT.
    coeff_mod: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl AxisPlan {
    fn new(dim: &DimSpec) -> Self {
        let n_s = dim.n_s();
        let n = dim.half_bandwidth() as i64;

        // Exact integer reduction of N * E2 modulo N_s keeps the phase exact.
        let sample_mod = dim
            .ffs_indices()
            .into_iter()
            .map(|e| {
                let r = (n * e).rem_euclid(n_s as i64);
                cis(2.0 * PI * r as f64 / n_s as f64)
            })
            .collect();

        let center_turns = (dim.center() / dim.period()).rem_euclid(1.0);
        let mut base = 2.0 * PI * center_turns;
        if dim.has_even_samples() {
            base += PI / n_s as f64;
        }
        let coeff_mod = (-n..=n).map(|k| cis(-base * k as f64)).collect();

        AxisPlan {
            n_fs: dim.n_fs(),
            sample_mod,
            coeff_mod,
            forward: plan(n_s, Direction::Forward),
            inverse: plan(n_s, Direction::Inverse),
        }
    }

    fn analyze(&self, lane: &mut [Complex64]) {
        let scale = 1.0 / lane.len() as f64;
        lane.iter_mut()
            .zip(&self.sample_mod)
            .for_each(|(v, m)| *v *= m);
        self.forward.process(lane);
        lane.iter_mut()
            .zip(&self.coeff_mod)
            .for_each(|(v, m)| *v *= m * scale);
        lane[self.n_fs..].iter_mut().for_each(|v| *v *= scale);
    }

    fn synthesize(&self, lane: &mut [Complex64]) {
        lane.iter_mut()
            .zip(&self.coeff_mod)
            .for_each(|(v, m)| *v *= m.conj());
        lane[self.n_fs..]
            .iter_mut()
            .for_each(|v| *v = Complex64::new(0.0, 0.0));
        self.inverse.process(lane);
        lane.iter_mut()
            .zip(&self.sample_mod)
            .for_each(|(v, m)| *v *= m.conj());
    }
}

/// Reusable analysis/synthesis plan for one grid.
///
/// Immutable after construction, so one plan can serve any number of
/// threads.
pub struct FfsPlan {
    grid: PeriodicGrid,
    axes: Vec<AxisPlan>,
}

impl FfsPlan {
    pub fn new(grid: &PeriodicGrid) -> Self {
        FfsPlan {
            grid: grid.clone(),
            axes: grid.dims().iter().map(AxisPlan::new).collect(),
        }
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    /// Coefficients from ffs-ordered samples.
    pub fn analyze(&self, x: &SampleTensor) -> Result<FsCoefficients> {
        x.expect_order(SampleOrder::Ffs)?;
        check_shape(&self.grid.shape(), x.shape())?;
        let mut data = x.data().to_owned();
        for (axis, ap) in self.axes.iter().enumerate() {
            for_each_lane(&mut data, axis, |lane| ap.analyze(lane));
        }
        Ok(FsCoefficients {
            grid: self.grid.clone(),
            coeffs: data,
        })
    }

    /// ffs-ordered samples from coefficients. Padding entries are treated
    /// as zero.
    pub fn synthesize(&self, coeffs: &FsCoefficients) -> Result<SampleTensor> {
        if coeffs.grid() != &self.grid {
            return Err(invalid("coefficients belong to a different grid"));
        }
        let mut data = coeffs.coeffs().to_owned();
        for (axis, ap) in self.axes.iter().enumerate() {
            for_each_lane(&mut data, axis, |lane| ap.synthesize(lane));
        }
        Ok(SampleTensor::ffs(data))
    }
}

fn require_1d(x: &SampleTensor, grid: &PeriodicGrid) -> Result<()> {
    if grid.ndim() != 1 || x.shape().len() != 1 {
        return Err(invalid(format!(
            "1-D transform needs a 1-D grid and vector, got grid rank {} and tensor rank {}",
            grid.ndim(),
            x.shape().len()
        )));
    }
    Ok(())
}

/// 1-D analysis. `x` must be in ffs order.
pub fn ffs(x: &SampleTensor, grid: &PeriodicGrid) -> Result<FsCoefficients> {
    require_1d(x, grid)?;
    FfsPlan::new(grid).analyze(x)
}

/// 1-D synthesis; returns samples in ffs order.
pub fn iffs(coeffs: &FsCoefficients) -> Result<SampleTensor> {
    if coeffs.grid().ndim() != 1 {
        return Err(invalid("1-D synthesis needs a 1-D grid"));
    }
    FfsPlan::new(coeffs.grid()).synthesize(coeffs)
}

/// N-D analysis, one axis at a time.
pub fn ffsn(x: &SampleTensor, grid: &PeriodicGrid) -> Result<FsCoefficients> {
    FfsPlan::new(grid).analyze(x)
}

/// N-D synthesis; returns samples in ffs order.
pub fn iffsn(coeffs: &FsCoefficients) -> Result<SampleTensor> {
    FfsPlan::new(coeffs.grid()).synthesize(coeffs)
}
