#![allow(dead_code)]

use ffskit::{DimSpec, PeriodicGrid, SampleOrder, SampleTensor};
use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use ffskit_oracle::rel_err;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| random_complex(rng)).collect()
}

pub fn random_array(rng: &mut impl Rng, shape: &[usize]) -> ArrayD<Complex64> {
    ArrayD::from_shape_simple_fn(IxDyn(shape), || random_complex(rng))
}

pub fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

pub fn grid_1d(period: f64, center: f64, n_fs: usize, n_s: usize) -> PeriodicGrid {
    PeriodicGrid::from_dim(DimSpec::new(period, center, n_fs, n_s).unwrap())
}

pub fn ffs_vec(data: Vec<Complex64>) -> SampleTensor {
    SampleTensor::from_vec(data, SampleOrder::Ffs)
}

pub fn flat(a: &ArrayD<Complex64>) -> Vec<Complex64> {
    a.iter().copied().collect()
}

/// Samples of the bandlimited function with coefficients `coeffs` on the
/// ffs-ordered grid of `dim`, computed by direct summation.
pub fn synthesize_on_grid(coeffs: &[Complex64], dim: &DimSpec) -> Vec<Complex64> {
    let t = ffskit_oracle::ffs_timestamps(dim.period(), dim.center(), dim.n_s());
    ffskit_oracle::fs_synthesis(coeffs, dim.period(), &t)
}
