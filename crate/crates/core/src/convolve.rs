//! Circular convolution of periodic bandlimited signals through their
//! Fourier series coefficients.

use ndarray::Zip;

use crate::error::{check_shape, invalid, Result};
use crate::ffs::{FfsPlan, FsCoefficients};
use crate::grid::{from_ffs_order, to_ffs_order, PeriodicGrid, SampleOrder, SampleTensor};

/// How output coefficients relate to the input coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvolveScale {
    /// `G_k = F_k H_k`. This is the normalized convolution
    /// `(1/T) int_T f(tau) h(t - tau) d tau` per axis.
    #[default]
    CoefficientProduct,
    /// `G_k = T F_k H_k` per axis: the plain integral
    /// `int_T f(tau) h(t - tau) d tau`.
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConvolveOptions {
    pub scale: ConvolveScale,
}

/// Convolves two signals sampled on the same grid.
///
/// Both inputs must carry the same [`SampleOrder`]; natural-order inputs
/// are reordered internally and the output comes back in the inputs'
/// order.
pub fn convolve(
    f: &SampleTensor,
    h: &SampleTensor,
    grid: &PeriodicGrid,
    opts: ConvolveOptions,
) -> Result<SampleTensor> {
    check_shape(&grid.shape(), f.shape())?;
    check_shape(&grid.shape(), h.shape())?;
    if f.order() != h.order() {
        return Err(invalid(format!(
            "inputs use different orderings ({} and {})",
            f.order(),
            h.order()
        )));
    }
    let natural = f.order() == SampleOrder::Natural;
    let (f, h) = if natural {
        (to_ffs_order(f, grid)?, to_ffs_order(h, grid)?)
    } else {
        (f.clone(), h.clone())
    };

    let plan = FfsPlan::new(grid);
    let f_coeffs = plan.analyze(&f)?;
    let h_coeffs = plan.analyze(&h)?;
    let scale = match opts.scale {
        ConvolveScale::CoefficientProduct => 1.0,
        ConvolveScale::Integral => grid.periods().iter().product(),
    };
    let mut product = f_coeffs.into_coeffs();
    Zip::from(&mut product)
        .and(h_coeffs.coeffs())
        .for_each(|g, h| *g *= h * scale);

    let out = plan.synthesize(&FsCoefficients::new(grid.clone(), product)?)?;
    if natural {
        from_ffs_order(&out, grid)
    } else {
        Ok(out)
    }
}
