//! Fourier series tools for periodic, bandlimited signals.
//!
//! * [`grid`]: sampling grids, sample times and the ffs reordering.
//! * [`spectral`]: DFT backend of arbitrary length.
//! * [`ffs`]: Fourier series coefficients from samples and back, 1-D and N-D.
//! * [`czt`]: chirp Z-transform (Bluestein).
//! * [`interp`]: bandlimited zoom interpolation and the zero-padding baseline.
//! * [`convolve`]: circular convolution through coefficient products.
//! * [`funcs`]: Dirichlet kernels and a Tukey taper.
//!
//! ```
//! use ffskit::{ffs, funcs, grid};
//!
//! let dim = grid::DimSpec::new(1.0, 0.0, 5, 8).unwrap();
//! let g = grid::PeriodicGrid::from_dim(dim);
//! let pts = grid::sample_points(&dim);
//! let spec = funcs::DirichletSpec::new(1.0, 0.0, 5).unwrap();
//! let x = grid::SampleTensor::from_vec(
//!     funcs::dirichlet(&pts.timestamps, &spec),
//!     grid::SampleOrder::Ffs,
//! );
//! let coeffs = ffs::ffs(&x, &g).unwrap();
//! for c in coeffs.trimmed_vec() {
//!     assert!((c.re - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12);
//! }
//! ```

pub mod convolve;
pub mod czt;
mod error;
pub mod ffs;
pub mod funcs;
pub mod grid;
pub mod interp;
pub mod spectral;

pub use convolve::{convolve, ConvolveOptions, ConvolveScale};
pub use czt::{czt, cztn, CztParams, CztPlan};
pub use error::{Error, Result};
pub use ffs::{ffs, ffsn, iffs, iffsn, FfsPlan, FsCoefficients};
pub use grid::{DimSpec, PeriodicGrid, SampleOrder, SampleTensor};
pub use interp::{fs_interp, fs_interp_zero_pad, fs_interpn, fs_interpn_zero_pad, InterpRequest};
pub use num_complex::Complex64;
