//! Benchmarks, oracle verification and a Fourier optics demo built on
//! [`ffskit`]. The `ffskit` binary is a thin wrapper over this crate.

pub mod bench;
pub mod error;
pub mod optics;
pub mod record;
pub mod verify;

use ffskit::Complex64;
use ndarray::{ArrayD, IxDyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use error::{CliError, CliResult};
pub use record::{write_csv, BenchRecord};

pub const DEFAULT_SEED: u64 = 2718;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_vec(r: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
        .collect()
}

pub(crate) fn random_array(r: &mut impl Rng, shape: &[usize]) -> ArrayD<Complex64> {
    let n = shape.iter().product();
    ArrayD::from_shape_vec(IxDyn(shape), random_vec(r, n)).expect("length matches shape")
}
