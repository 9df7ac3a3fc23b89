//! Discrete Fourier transform backend.
//!
//! Forward transforms are unnormalized, inverse transforms carry the `1/N`
//! factor. Any length is accepted; plans come from a process-wide
//! [`rustfft::FftPlanner`] so repeated lengths reuse twiddles.

use std::sync::{Arc, LazyLock, Mutex};

use ndarray::{ArrayD, Axis, Zip};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{invalid, Result};

static PLANNER: LazyLock<Mutex<FftPlanner<f64>>> = LazyLock::new(|| Mutex::new(FftPlanner::new()));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

/// Returns a cached plan. Inverse plans are unnormalized.
pub(crate) fn plan(len: usize, direction: Direction) -> Arc<dyn Fft<f64>> {
    let mut planner = PLANNER.lock().unwrap_or_else(|e| e.into_inner());
    match direction {
        Direction::Forward => planner.plan_fft_forward(len),
        Direction::Inverse => planner.plan_fft_inverse(len),
    }
}

fn check_input(x: &[Complex64]) -> Result<()> {
    check_values(x.len(), x.iter())
}

fn check_values<'a>(len: usize, mut values: impl Iterator<Item = &'a Complex64>) -> Result<()> {
    if len == 0 {
        return Err(invalid("transform input must be non-empty"));
    }
    if values.any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(invalid("transform input contains NaN or infinite values"));
    }
    Ok(())
}

/// `X_k = sum_n x_n exp(-j 2 pi n k / N)`.
pub fn dft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    check_input(x)?;
    let mut buf = x.to_vec();
    plan(buf.len(), Direction::Forward).process(&mut buf);
    Ok(buf)
}

/// `x_n = (1/N) sum_k X_k exp(j 2 pi n k / N)`.
pub fn idft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    check_input(x)?;
    let mut buf = x.to_vec();
    plan(buf.len(), Direction::Inverse).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    Ok(buf)
}

/// N-dimensional forward DFT, one axis at a time.
pub fn dftn(x: &ArrayD<Complex64>) -> Result<ArrayD<Complex64>> {
    transform_nd(x, Direction::Forward)
}

/// N-dimensional inverse DFT with `1/prod(N_i)` scaling.
pub fn idftn(x: &ArrayD<Complex64>) -> Result<ArrayD<Complex64>> {
    let mut out = transform_nd(x, Direction::Inverse)?;
    let scale = 1.0 / out.len() as f64;
    out.mapv_inplace(|v| v * scale);
    Ok(out)
}

fn transform_nd(x: &ArrayD<Complex64>, direction: Direction) -> Result<ArrayD<Complex64>> {
    if x.ndim() == 0 {
        return Err(invalid("transform input must have at least one axis"));
    }
    check_values(x.len(), x.iter())?;
    let mut out = x.to_owned();
    for axis in 0..out.ndim() {
        let fft = plan(out.shape()[axis], direction);
        for_each_lane(&mut out, axis, |lane| fft.process(lane));
    }
    Ok(out)
}

/// Smallest `m >= n` whose only prime factors are 2, 3 and 5.
pub fn next_fast_len(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}

/// Runs `f` on every 1-D lane of `data` along `axis`, in place.
pub(crate) fn for_each_lane(
    data: &mut ArrayD<Complex64>,
    axis: usize,
    mut f: impl FnMut(&mut [Complex64]),
) {
    let len = data.shape()[axis];
    let mut scratch = vec![Complex64::new(0.0, 0.0); len];
    for mut lane in data.lanes_mut(Axis(axis)) {
        if let Some(slice) = lane.as_slice_mut() {
            f(slice);
        } else {
            scratch
                .iter_mut()
                .zip(lane.iter())
                .for_each(|(s, v)| *s = *v);
            f(&mut scratch);
            lane.iter_mut().zip(&scratch).for_each(|(v, s)| *v = *s);
        }
    }
}

/// Maps every lane along `axis` to a lane of length `out_len`, producing a
/// new array whose other axes are unchanged.
pub(crate) fn map_lanes(
    input: &ArrayD<Complex64>,
    axis: usize,
    out_len: usize,
    mut f: impl FnMut(&[Complex64], &mut [Complex64]),
) -> ArrayD<Complex64> {
    let mut shape = input.shape().to_vec();
    shape[axis] = out_len;
    let mut output = ArrayD::zeros(shape);
    let mut src = vec![Complex64::new(0.0, 0.0); input.shape()[axis]];
    let mut dst = vec![Complex64::new(0.0, 0.0); out_len];
    Zip::from(input.lanes(Axis(axis)))
        .and(output.lanes_mut(Axis(axis)))
        .for_each(|lane_in, mut lane_out| {
            src.iter_mut()
                .zip(lane_in.iter())
                .for_each(|(s, v)| *s = *v);
            f(&src, &mut dst);
            lane_out.iter_mut().zip(&dst).for_each(|(v, d)| *v = *d);
        });
    output
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_transforms_to_ones() {
        let out = dft(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        for v in out {
            assert_eq!(v, c(1.0, 0.0));
        }
    }

    #[test]
    fn constant_transforms_to_scaled_dc() {
        let k = c(0.5, -2.0);
        let out = dft(&[k; 6]).unwrap();
        assert!((out[0] - k * 6.0).norm() < 1e-14);
        for v in &out[1..] {
            assert!(v.norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_of_scaled_dc_is_ones() {
        let mut x = vec![c(0.0, 0.0); 5];
        x[0] = c(5.0, 0.0);
        for v in idft(&x).unwrap() {
            assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(dft(&[]).is_err());
        assert!(idft(&[]).is_err());
        assert!(dft(&[c(f64::NAN, 0.0)]).is_err());
        assert!(idft(&[c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn fast_lengths() {
        assert_eq!(next_fast_len(1), 1);
        assert_eq!(next_fast_len(7), 8);
        assert_eq!(next_fast_len(97), 100);
        assert_eq!(next_fast_len(0), 1);
    }

    #[test]
    fn fast_len_matches_enumeration() {
        // Enumerate 5-smooth numbers directly and compare.
        let mut smooth = Vec::new();
        let mut a = 1usize;
        while a <= 4096 {
            let mut b = a;
            while b <= 4096 {
                let mut c = b;
                while c <= 4096 {
                    smooth.push(c);
                    c *= 5;
                }
                b *= 3;
            }
            a *= 2;
        }
        smooth.sort_unstable();
        for n in 1..=4000 {
            let expected = *smooth.iter().find(|&&s| s >= n).unwrap();
            assert_eq!(next_fast_len(n), expected, "n = {n}");
        }
    }
}
