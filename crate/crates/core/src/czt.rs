//! Chirp Z-transform via Bluestein's algorithm.
//!
//! `y_k = sum_{n=0}^{N-1} x_n A^{-n} W^{nk}` for `k = 0 .. M-1`.
//!
//! Using `nk = (n^2 + k^2 - (k - n)^2) / 2` the sum becomes a linear
//! convolution of `x_n A^{-n} W^{n^2/2}` with the chirp `W^{-m^2/2}`,
//! evaluated with transforms of length `L = next_fast_len(N + M - 1)`.
//!
//! Powers are taken through the complex logarithm, `W^p = exp(p ln W)`,
//! with the exponent formed from the exact integer `n^2` for every index.
//! Nothing is accumulated by repeated multiplication. For `|W| != 1` large
//! exponents overflow; that is not guarded.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::ArrayD;
use num_complex::Complex64;
use rustfft::Fft;

use crate::error::{invalid, Result};
use crate::spectral::{map_lanes, next_fast_len, plan, Direction};

/// Contour parameters: start point `A`, ratio `W`, output length `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CztParams {
    log_a: Complex64,
    log_w: Complex64,
    m: usize,
}

impl CztParams {
    pub fn new(a: Complex64, w: Complex64, m: usize) -> Result<Self> {
        if a.norm() == 0.0 || !a.re.is_finite() || !a.im.is_finite() {
            return Err(invalid(format!(
                "CZT start point A must be nonzero and finite, got {a}"
            )));
        }
        if w.norm() == 0.0 || !w.re.is_finite() || !w.im.is_finite() {
            return Err(invalid(format!(
                "CZT ratio W must be nonzero and finite, got {w}"
            )));
        }
        Self::from_logs(a.ln(), w.ln(), m)
    }

    /// Unit-circle contour `A = exp(j start)`, `W = exp(j step)`, given by
    /// angles in radians. Avoids the round trip through `ln`.
    pub fn on_unit_circle(start: f64, step: f64, m: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() {
            return Err(invalid("CZT angles must be finite"));
        }
        Self::from_logs(Complex64::new(0.0, start), Complex64::new(0.0, step), m)
    }

    /// Parameters under which the CZT of a length-`n` input is its DFT.
    pub fn dft(n: usize) -> Result<Self> {
        Self::on_unit_circle(0.0, -2.0 * PI / n as f64, n)
    }

    fn from_logs(log_a: Complex64, log_w: Complex64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("CZT output length M must be at least 1"));
        }
        Ok(CztParams { log_a, log_w, m })
    }

    pub fn a(&self) -> Complex64 {
        self.log_a.exp()
    }

    pub fn w(&self) -> Complex64 {
        self.log_w.exp()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `W^(p / 2)` for integer `p`.
    fn w_half_pow(&self, p: i128) -> Complex64 {
        (self.log_w * (p as f64 * 0.5)).exp()
    }
}

/// Bluestein plan for a fixed input length and contour.
pub struct CztPlan {
    n: usize,
    m: usize,
    /// `A^{-n} W^{n^2/2}`, length `N`.
    input_chirp: Vec<Complex64>,
    /// `W^{k^2/2}`, length `M`.
    output_chirp: Vec<Complex64>,
    /// DFT of the wrapped `W^{-m^2/2}` kernel, pre-scaled by `1/L`.
    kernel_spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl CztPlan {
    pub fn new(n: usize, params: &CztParams) -> Result<Self> {
        if n == 0 {
            return Err(invalid("CZT input length must be at least 1"));
        }
        let m = params.m;
        let l = next_fast_len(n + m - 1);

        let input_chirp = (0..n)
            .map(|i| {
                let i = i as i128;
                (-params.log_a * i as f64 + params.log_w * ((i * i) as f64 * 0.5)).exp()
            })
            .collect();
        let output_chirp = (0..m)
            .map(|k| params.w_half_pow((k as i128) * (k as i128)))
            .collect();

        let zero = Complex64::new(0.0, 0.0);
        let mut kernel = vec![zero; l];
        for (k, slot) in kernel.iter_mut().enumerate().take(m) {
            *slot = params.w_half_pow(-((k as i128) * (k as i128)));
        }
        for i in 1..n {
            kernel[l - i] = params.w_half_pow(-((i as i128) * (i as i128)));
        }
        let forward = plan(l, Direction::Forward);
        let inverse = plan(l, Direction::Inverse);
        forward.process(&mut kernel);
        let scale = 1.0 / l as f64;
        kernel.iter_mut().for_each(|v| *v *= scale);

        Ok(CztPlan {
            n,
            m,
            input_chirp,
            output_chirp,
            kernel_spectrum: kernel,
            forward,
            inverse,
        })
    }

    pub fn input_len(&self) -> usize {
        self.n
    }

    pub fn output_len(&self) -> usize {
        self.m
    }

    /// Internal transform length `L`.
    pub fn transform_len(&self) -> usize {
        self.kernel_spectrum.len()
    }

    /// Writes the transform of `x` into `out`. `scratch` is resized to `L`.
    pub fn process_with_scratch(
        &self,
        x: &[Complex64],
        out: &mut [Complex64],
        scratch: &mut Vec<Complex64>,
    ) {
        assert_eq!(x.len(), self.n, "CZT input length");
        assert_eq!(out.len(), self.m, "CZT output length");
        let zero = Complex64::new(0.0, 0.0);
        scratch.clear();
        scratch.resize(self.kernel_spectrum.len(), zero);
        for ((s, v), c) in scratch.iter_mut().zip(x).zip(&self.input_chirp) {
            *s = v * c;
        }
        self.forward.process(scratch);
        scratch
            .iter_mut()
            .zip(&self.kernel_spectrum)
            .for_each(|(s, k)| *s *= k);
        self.inverse.process(scratch);
        for ((o, s), c) in out.iter_mut().zip(scratch.iter()).zip(&self.output_chirp) {
            *o = s * c;
        }
    }

    pub fn process(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(invalid(format!(
                "CZT plan expects {} inputs, got {}",
                self.n,
                x.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        let mut scratch = Vec::new();
        self.process_with_scratch(x, &mut out, &mut scratch);
        Ok(out)
    }
}

/// One-shot 1-D chirp Z-transform.
pub fn czt(x: &[Complex64], params: &CztParams) -> Result<Vec<Complex64>> {
    CztPlan::new(x.len(), params)?.process(x)
}

/// Applies a 1-D CZT along every axis in turn, axis `i` using `params[i]`.
pub fn cztn(x: &ArrayD<Complex64>, params: &[CztParams]) -> Result<ArrayD<Complex64>> {
    if x.ndim() != params.len() || x.ndim() == 0 {
        return Err(invalid(format!(
            "tensor rank {} does not match {} CZT parameter sets",
            x.ndim(),
            params.len()
        )));
    }
    let mut out = x.clone();
    for (axis, p) in params.iter().enumerate() {
        out = czt_along(&out, axis, p)?;
    }
    Ok(out)
}

/// CZT along a single axis; other axes are untouched.
pub fn czt_along(
    x: &ArrayD<Complex64>,
    axis: usize,
    params: &CztParams,
) -> Result<ArrayD<Complex64>> {
    if axis >= x.ndim() {
        return Err(invalid(format!(
            "axis {axis} out of range for rank {}",
            x.ndim()
        )));
    }
    let plan = CztPlan::new(x.shape()[axis], params)?;
    let mut scratch = Vec::new();
    Ok(map_lanes(x, axis, params.m, |src, dst| {
        plan.process_with_scratch(src, dst, &mut scratch)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_input_is_replicated() {
        let v = Complex64::new(1.5, -0.5);
        let p = CztParams::new(Complex64::new(0.3, 0.9), Complex64::new(1.1, 0.2), 7).unwrap();
        for y in czt(&[v], &p).unwrap() {
            assert!((y - v).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(CztParams::new(zero, one, 3).is_err());
        assert!(CztParams::new(one, zero, 3).is_err());
        assert!(CztParams::new(one, one, 0).is_err());
        assert!(czt(&[], &CztParams::new(one, one, 2).unwrap()).is_err());
    }

    #[test]
    fn accessors_round_trip() {
        let a = Complex64::new(0.6, 0.8);
        let w = Complex64::new(0.0, 1.0);
        let p = CztParams::new(a, w, 4).unwrap();
        assert!((p.a() - a).norm() < 1e-15);
        assert!((p.w() - w).norm() < 1e-15);
        assert_eq!(p.m(), 4);
    }

    #[test]
    fn transform_length_covers_linear_convolution() {
        for (n, m) in [(1, 1), (5, 3), (7, 11), (97, 1)] {
            let p = CztParams::on_unit_circle(0.1, 0.2, m).unwrap();
            let plan = CztPlan::new(n, &p).unwrap();
            assert!(plan.transform_len() >= n + m - 1);
            assert_eq!(plan.transform_len(), next_fast_len(n + m - 1));
        }
    }
}
