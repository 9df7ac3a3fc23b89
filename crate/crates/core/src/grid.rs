//! Periodic sampling grids and sample orderings.
//!
//! The fast transforms expect samples in "ffs order": the sample at the
//! period center (or just after it, for an even count) first, then the
//! remaining non-negative offsets, then the negative offsets in increasing
//! order. "Natural" order is plain ascending time.

use std::fmt;

use ndarray::{ArrayD, Axis, IxDyn};
use num_complex::Complex64;

use crate::error::{check_shape, invalid, Error, Result};

/// One axis of a periodic grid.
///
/// Holds the period `T`, the period center `T_c`, the bandwidth
/// `N_FS = 2N + 1` and the sample count `N_s >= N_FS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimSpec {
    period: f64,
    center: f64,
    n_fs: usize,
    n_s: usize,
}

impl DimSpec {
    pub fn new(period: f64, center: f64, n_fs: usize, n_s: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(invalid(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if !center.is_finite() {
            return Err(invalid(format!("center must be finite, got {center}")));
        }
        if n_fs == 0 || n_fs.is_multiple_of(2) {
            return Err(invalid(format!(
                "bandwidth N_FS must be odd and positive, got {n_fs}"
            )));
        }
        if n_s < n_fs {
            return Err(invalid(format!(
                "sample count N_s = {n_s} is below the bandwidth N_FS = {n_fs}"
            )));
        }
        // Odd N_s needs even padding and even N_s needs odd padding. With odd
        // N_FS this always holds, but keep the rule explicit.
        let q = n_s - n_fs;
        if (n_s % 2 == 1) != q.is_multiple_of(2) {
            return Err(invalid(format!(
                "padding Q = {q} has the wrong parity for N_s = {n_s}"
            )));
        }
        Ok(DimSpec {
            period,
            center,
            n_fs,
            n_s,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn n_fs(&self) -> usize {
        self.n_fs
    }

    pub fn n_s(&self) -> usize {
        self.n_s
    }

    /// `N` in `N_FS = 2N + 1`.
    pub fn half_bandwidth(&self) -> usize {
        self.n_fs / 2
    }

    /// Zero-padding amount `Q = N_s - N_FS`.
    pub fn padding(&self) -> usize {
        self.n_s - self.n_fs
    }

    pub fn has_even_samples(&self) -> bool {
        self.n_s.is_multiple_of(2)
    }

    /// Signed sample indices in ffs order:
    /// `[0, .., M, -M, .., -1]` for odd `N_s` and `[0, .., M-1, -M, .., -1]`
    /// for even `N_s`.
    pub fn ffs_indices(&self) -> Vec<i64> {
        let n_s = self.n_s as i64;
        let positive = (self.n_s - self.n_s / 2) as i64;
        (0..n_s)
            .map(|i| if i < positive { i } else { i - n_s })
            .collect()
    }

    /// Sample time for signed index `n`.
    pub fn timestamp(&self, n: i64) -> f64 {
        let offset = if self.has_even_samples() { 0.5 } else { 0.0 };
        self.center + self.period / self.n_s as f64 * (n as f64 + offset)
    }

    /// Permutation taking natural order to ffs order:
    /// `ffs[i] = natural[perm[i]]`.
    pub fn natural_to_ffs(&self) -> Vec<usize> {
        let half = self.n_s / 2;
        (0..self.n_s).map(|i| (i + half) % self.n_s).collect()
    }

    /// Inverse of [`DimSpec::natural_to_ffs`]: `natural[j] = ffs[perm[j]]`.
    pub fn ffs_to_natural(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n_s];
        for (i, j) in self.natural_to_ffs().into_iter().enumerate() {
            inv[j] = i;
        }
        inv
    }
}

/// Sample times of one axis in ffs order, plus the reordering permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoints {
    pub timestamps: Vec<f64>,
    /// `ffs[i] = natural[natural_to_ffs[i]]`
    pub natural_to_ffs: Vec<usize>,
}

pub fn sample_points(dim: &DimSpec) -> SamplePoints {
    SamplePoints {
        timestamps: dim
            .ffs_indices()
            .into_iter()
            .map(|n| dim.timestamp(n))
            .collect(),
        natural_to_ffs: dim.natural_to_ffs(),
    }
}

/// Sample times of `dim` in ascending order.
pub fn natural_timestamps(dim: &DimSpec) -> Vec<f64> {
    let n_s = dim.n_s() as i64;
    let first = -(n_s / 2);
    (first..first + n_s).map(|n| dim.timestamp(n)).collect()
}

/// A D-dimensional periodic grid, one [`DimSpec`] per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGrid {
    dims: Vec<DimSpec>,
}

impl PeriodicGrid {
    pub fn new(dims: Vec<DimSpec>) -> Result<Self> {
        if dims.is_empty() {
            return Err(invalid("a grid needs at least one dimension"));
        }
        Ok(PeriodicGrid { dims })
    }

    pub fn from_dim(dim: DimSpec) -> Self {
        PeriodicGrid { dims: vec![dim] }
    }

    pub fn dims(&self) -> &[DimSpec] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    /// Per-axis sample counts.
    pub fn shape(&self) -> Vec<usize> {
        self.dims.iter().map(DimSpec::n_s).collect()
    }

    /// Per-axis bandwidths.
    pub fn bandwidth(&self) -> Vec<usize> {
        self.dims.iter().map(DimSpec::n_fs).collect()
    }

    pub fn periods(&self) -> Vec<f64> {
        self.dims.iter().map(DimSpec::period).collect()
    }

    pub fn sample_points(&self) -> Vec<SamplePoints> {
        self.dims.iter().map(sample_points).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleOrder {
    Natural,
    Ffs,
}

impl SampleOrder {
    pub(crate) fn name(self) -> &'static str {
        match self {
            SampleOrder::Natural => "natural",
            SampleOrder::Ffs => "ffs",
        }
    }
}

impl fmt::Display for SampleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Complex samples tagged with their ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTensor {
    data: ArrayD<Complex64>,
    order: SampleOrder,
}

impl SampleTensor {
    pub fn new(data: ArrayD<Complex64>, order: SampleOrder) -> Self {
        SampleTensor { data, order }
    }

    pub fn natural(data: ArrayD<Complex64>) -> Self {
        Self::new(data, SampleOrder::Natural)
    }

    pub fn ffs(data: ArrayD<Complex64>) -> Self {
        Self::new(data, SampleOrder::Ffs)
    }

    /// One-dimensional tensor from a vector.
    pub fn from_vec(data: Vec<Complex64>, order: SampleOrder) -> Self {
        let len = data.len();
        let data = ArrayD::from_shape_vec(IxDyn(&[len]), data).expect("1-D shape always matches");
        Self::new(data, order)
    }

    pub fn data(&self) -> &ArrayD<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> ArrayD<Complex64> {
        self.data
    }

    pub fn order(&self) -> SampleOrder {
        self.order
    }

    pub fn shape(&self) -> &[usize] {
        self.data.shape()
    }

    pub(crate) fn expect_order(&self, expected: SampleOrder) -> Result<()> {
        if self.order == expected {
            Ok(())
        } else {
            Err(Error::WrongOrder {
                expected: expected.name(),
                found: self.order.name(),
            })
        }
    }
}

fn permute_axes(
    data: &ArrayD<Complex64>,
    grid: &PeriodicGrid,
    perm: impl Fn(&DimSpec) -> Vec<usize>,
) -> Result<ArrayD<Complex64>> {
    check_shape(&grid.shape(), data.shape())?;
    let mut out = data.to_owned();
    for (axis, dim) in grid.dims().iter().enumerate() {
        out = out.select(Axis(axis), &perm(dim));
    }
    Ok(out)
}

/// Reorders natural-order samples into ffs order, axis by axis.
pub fn to_ffs_order(x: &SampleTensor, grid: &PeriodicGrid) -> Result<SampleTensor> {
    x.expect_order(SampleOrder::Natural)?;
    let data = permute_axes(x.data(), grid, DimSpec::natural_to_ffs)?;
    Ok(SampleTensor::ffs(data))
}

/// Inverse of [`to_ffs_order`].
pub fn from_ffs_order(x: &SampleTensor, grid: &PeriodicGrid) -> Result<SampleTensor> {
    x.expect_order(SampleOrder::Ffs)?;
    let data = permute_axes(x.data(), grid, DimSpec::ffs_to_natural)?;
    Ok(SampleTensor::natural(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array;

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-15, "{a:?} != {b:?}");
        }
    }

    #[test]
    fn odd_timestamps() {
        let dim = DimSpec::new(1.0, 0.0, 3, 5).unwrap();
        assert_close(
            &sample_points(&dim).timestamps,
            &[0.0, 0.2, 0.4, -0.4, -0.2],
        );
    }

    #[test]
    fn even_timestamps() {
        let dim = DimSpec::new(1.0, 0.0, 3, 4).unwrap();
        assert_close(
            &sample_points(&dim).timestamps,
            &[0.125, 0.375, -0.375, -0.125],
        );
    }

    #[test]
    fn shifted_odd_timestamps() {
        let dim = DimSpec::new(2.0, 1.0, 3, 3).unwrap();
        assert_close(
            &sample_points(&dim).timestamps,
            &[1.0, 1.0 + 2.0 / 3.0, 1.0 - 2.0 / 3.0],
        );
    }

    #[test]
    fn rejects_invalid_dims() {
        assert!(DimSpec::new(0.0, 0.0, 3, 3).is_err());
        assert!(DimSpec::new(-1.0, 0.0, 3, 3).is_err());
        assert!(DimSpec::new(1.0, f64::NAN, 3, 3).is_err());
        assert!(DimSpec::new(1.0, 0.0, 4, 5).is_err());
        assert!(DimSpec::new(1.0, 0.0, 0, 5).is_err());
        assert!(DimSpec::new(1.0, 0.0, 5, 4).is_err());
        assert!(PeriodicGrid::new(vec![]).is_err());
    }

    #[test]
    fn both_sample_parities_accepted() {
        for n_s in 5..12 {
            DimSpec::new(1.0, 0.0, 5, n_s).unwrap();
        }
    }

    #[test]
    fn odd_reorder_is_rotation() {
        let dim = DimSpec::new(1.0, 0.0, 5, 5).unwrap();
        let grid = PeriodicGrid::from_dim(dim);
        let natural: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let x = SampleTensor::from_vec(natural.clone(), SampleOrder::Natural);
        let y = to_ffs_order(&x, &grid).unwrap();
        let got: Vec<f64> = y.data().iter().map(|v| v.re).collect();
        assert_eq!(got, vec![2.0, 3.0, 4.0, 0.0, 1.0]);
        let back = from_ffs_order(&y, &grid).unwrap();
        assert_eq!(back.data().as_slice().unwrap(), natural.as_slice());
    }

    #[test]
    fn length_one_axis_unchanged() {
        let grid = PeriodicGrid::from_dim(DimSpec::new(1.0, 0.0, 1, 1).unwrap());
        let x = SampleTensor::from_vec(vec![Complex64::new(3.0, 1.0)], SampleOrder::Natural);
        assert_eq!(to_ffs_order(&x, &grid).unwrap().data(), x.data());
    }

    #[test]
    fn reorder_matches_natural_timestamps() {
        for n_s in [4, 5, 8, 9] {
            let dim = DimSpec::new(3.0, 0.7, 3, n_s).unwrap();
            let natural = natural_timestamps(&dim);
            let pts = sample_points(&dim);
            for (i, &j) in pts.natural_to_ffs.iter().enumerate() {
                assert_eq!(pts.timestamps[i], natural[j]);
            }
        }
    }

    #[test]
    fn two_dim_reorder_is_axis_order_independent() {
        let grid = PeriodicGrid::new(vec![
            DimSpec::new(1.0, 0.0, 3, 3).unwrap(),
            DimSpec::new(1.0, 0.0, 3, 4).unwrap(),
        ])
        .unwrap();
        let data = Array::from_shape_fn(IxDyn(&[3, 4]), |ix| {
            Complex64::new((ix[0] * 10 + ix[1]) as f64, 0.0)
        });
        let x = SampleTensor::natural(data.clone());
        let y = to_ffs_order(&x, &grid).unwrap();

        let rows = grid.dims()[0].natural_to_ffs();
        let cols = grid.dims()[1].natural_to_ffs();
        let rows_first = data.select(Axis(0), &rows).select(Axis(1), &cols);
        let cols_first = data.select(Axis(1), &cols).select(Axis(0), &rows);
        assert_eq!(y.data(), &rows_first);
        assert_eq!(y.data(), &cols_first);
    }

    #[test]
    fn shape_and_order_errors() {
        let grid = PeriodicGrid::from_dim(DimSpec::new(1.0, 0.0, 3, 5).unwrap());
        let x = SampleTensor::from_vec(vec![Complex64::new(0.0, 0.0); 4], SampleOrder::Natural);
        assert!(matches!(
            to_ffs_order(&x, &grid),
            Err(Error::ShapeMismatch { .. })
        ));
        let x = SampleTensor::from_vec(vec![Complex64::new(0.0, 0.0); 5], SampleOrder::Ffs);
        assert!(matches!(
            to_ffs_order(&x, &grid),
            Err(Error::WrongOrder { .. })
        ));
    }
}
