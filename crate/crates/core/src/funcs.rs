//! Analytic test signals and a tapering window.

use std::f64::consts::PI;
use std::ops::Mul;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Period, center and (odd) bandwidth of a Dirichlet kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletSpec {
    period: f64,
    center: f64,
    n_fs: usize,
}

impl DirichletSpec {
    pub fn new(period: f64, center: f64, n_fs: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(invalid(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if !center.is_finite() {
            return Err(invalid("center must be finite"));
        }
        if n_fs == 0 || n_fs.is_multiple_of(2) {
            return Err(invalid(format!(
                "bandwidth must be odd and positive, got {n_fs}"
            )));
        }
        Ok(DirichletSpec {
            period,
            center,
            n_fs,
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
}

/// Below this `|sin(pi u / T)|` the closed form is replaced by the sum.
const SINGULAR_BAND: f64 = 1e-9;

fn dirichlet_at(t: f64, spec: &DirichletSpec) -> f64 {
    // The kernel has period 1 in u for odd N_FS; reducing first keeps the
    // closed form accurate next to every peak, not just the central one.
    let u = (t - spec.center) / spec.period;
    let u = u - u.round();
    let denom = (PI * u).sin();
    if denom.abs() < SINGULAR_BAND {
        let n = (spec.n_fs / 2) as i64;
        (-n..=n).map(|k| (2.0 * PI * k as f64 * u).cos()).sum()
    } else {
        (spec.n_fs as f64 * PI * u).sin() / denom
    }
}

/// Dirichlet kernel `sum_{k=-N}^{N} exp(j 2 pi k (t - T_c) / T)`, which is
/// real and equals `sin(N_FS pi u / T) / sin(pi u / T)` with `u = t - T_c`.
pub fn dirichlet(t: &[f64], spec: &DirichletSpec) -> Vec<Complex64> {
    t.iter()
        .map(|&ti| Complex64::new(dirichlet_at(ti, spec), 0.0))
        .collect()
}

/// Separable 2-D Dirichlet kernel on the tensor grid `x` by `y`.
/// Entry `(i, j)` is `phi_x(x[i]) phi_y(y[j])`.
pub fn dirichlet_2d(
    x: &[f64],
    y: &[f64],
    spec_x: &DirichletSpec,
    spec_y: &DirichletSpec,
) -> Array2<Complex64> {
    let dx = dirichlet(x, spec_x);
    let dy = dirichlet(y, spec_y);
    Array2::from_shape_fn((x.len(), y.len()), |(i, j)| dx[i] * dy[j])
}

/// Tukey window of `len` points with taper fraction `alpha`.
///
/// `alpha = 0` is rectangular and `alpha = 1` is a Hann window. For
/// `alpha > 0` both end-points are zero.
pub fn tukey(len: usize, alpha: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!(
            "taper fraction must lie in [0, 1], got {alpha}"
        )));
    }
    if alpha == 0.0 || len <= 1 {
        return Ok(vec![1.0; len]);
    }
    let last = (len - 1) as f64;
    let width = (alpha * last / 2.0).floor() as usize;
    Ok((0..len)
        .map(|n| {
            let nf = n as f64;
            if n <= width {
                0.5 * (1.0 + (PI * (-1.0 + 2.0 * nf / (alpha * last))).cos())
            } else if n < len - width - 1 {
                1.0
            } else {
                0.5 * (1.0 + (PI * (-2.0 / alpha + 1.0 + 2.0 * nf / (alpha * last))).cos())
            }
        })
        .collect())
}

/// Multiplies natural-order samples by a Tukey window.
pub fn apply_taper<T>(x: &[T], alpha: f64) -> Result<Vec<T>>
where
    T: Copy + Mul<f64, Output = T>,
{
    let w = tukey(x.len(), alpha)?;
    Ok(x.iter().zip(w).map(|(&v, w)| v * w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_and_first_zero() {
        let spec = DirichletSpec::new(2.0, 0.3, 7).unwrap();
        let v = dirichlet(&[0.3, 0.3 + 2.0 / 7.0, 2.3], &spec);
        assert!((v[0].re - 7.0).abs() < 1e-12);
        assert!(v[1].norm() < 1e-12);
        assert!((v[2].re - 7.0).abs() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        assert!(DirichletSpec::new(1.0, 0.0, 4).is_err());
        assert!(DirichletSpec::new(0.0, 0.0, 3).is_err());
        assert!(DirichletSpec::new(1.0, f64::INFINITY, 3).is_err());
    }

    #[test]
    fn two_dim_peak_and_rows() {
        let sx = DirichletSpec::new(1.0, 0.1, 3).unwrap();
        let sy = DirichletSpec::new(2.0, -0.2, 5).unwrap();
        let x = [0.1, 0.25, 0.4];
        let y = [-0.2, 0.0, 0.3, 0.9];
        let grid = dirichlet_2d(&x, &y, &sx, &sy);
        assert!((grid[[0, 0]].re - 15.0).abs() < 1e-12);
        let profile = dirichlet(&y, &sy);
        for i in 0..x.len() {
            let row_scale = grid[[i, 0]] / profile[0];
            for j in 0..y.len() {
                assert!((grid[[i, j]] - profile[j] * row_scale).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn taper_identity_and_center() {
        let x: Vec<f64> = (0..11).map(|i| i as f64 + 1.0).collect();
        assert_eq!(apply_taper(&x, 0.0).unwrap(), x);
        let hann = apply_taper(&x, 1.0).unwrap();
        assert_eq!(hann[5], x[5]);
        assert_eq!(hann[0], 0.0);
        assert!(hann[10].abs() < 1e-15);
    }

    #[test]
    fn taper_half_plateau() {
        let x = vec![Complex64::new(2.0, -1.0); 100];
        let y = apply_taper(&x, 0.5).unwrap();
        assert_eq!(y[0], Complex64::new(0.0, 0.0));
        assert!(y[99].norm() < 1e-15);
        for (i, v) in y.iter().enumerate() {
            if (25..=74).contains(&i) {
                assert_eq!(*v, x[i], "index {i}");
            } else {
                assert!(v.norm() < x[i].norm(), "index {i}");
            }
        }
    }

    #[test]
    fn taper_rejects_bad_fraction() {
        assert!(tukey(10, -0.1).is_err());
        assert!(tukey(10, 1.5).is_err());
        assert!(tukey(10, f64::NAN).is_err());
    }
}
