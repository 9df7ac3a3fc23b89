//! Slow, direct-summation reference implementations.
//!
//! Everything here is written straight from the defining sums with no
//! reuse of the fast paths in `ffskit`, so it can serve as an independent
//! oracle in tests and in the `verify` command. Costs are quadratic (or
//! worse); keep inputs small.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `exp(j * theta)`
fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Max-norm relative error of `actual` against `expected`.
///
/// Returns the absolute error when `expected` is identically zero.
pub fn rel_err(actual: &[Complex64], expected: &[Complex64]) -> f64 {
    assert_eq!(actual.len(), expected.len(), "length mismatch");
    let scale = expected.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diff = actual
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).norm())
        .fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Unnormalized forward DFT by direct summation.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, v)| v * cis(-2.0 * PI * ((i * k) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}

/// Inverse DFT with `1/N` scaling by direct summation.
pub fn idft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, v)| v * cis(2.0 * PI * ((i * k) % n) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// `sum_n x_n a^{-n} w^{nk}` for `k in 0..m`, with powers taken by `powi`.
pub fn czt(x: &[Complex64], a: Complex64, w: Complex64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(n, v)| v * a.powi(-(n as i32)) * w.powi((n * k) as i32))
                .sum()
        })
        .collect()
}

/// Sample times of the analysis grid, in the order the fast transform
/// expects them: non-negative indices first, then the negative ones.
pub fn ffs_timestamps(period: f64, center: f64, n_s: usize) -> Vec<f64> {
    let half = (n_s / 2) as i64;
    let n_s_i = n_s as i64;
    let positive_count = if n_s % 2 == 1 { half + 1 } else { half };
    let offset = if n_s % 2 == 1 { 0.0 } else { 0.5 };
    (0..n_s_i)
        .map(|i| if i < positive_count { i } else { i - n_s_i })
        .map(|n| center + period / n_s as f64 * (n as f64 + offset))
        .collect()
}

/// Evaluates `sum_{k=-N}^{N} X_k exp(j 2 pi k t / T)` at each `t`.
/// `coeffs` holds `X_{-N} .. X_N`.
pub fn fs_synthesis(coeffs: &[Complex64], period: f64, t: &[f64]) -> Vec<Complex64> {
    let n = (coeffs.len() / 2) as i64;
    t.iter()
        .map(|&ti| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * cis(2.0 * PI * (i as i64 - n) as f64 * ti / period))
                .sum()
        })
        .collect()
}

/// Two-dimensional synthesis. `coeffs` is row-major with shape
/// `(n_fs_x, n_fs_y)`; the output is row-major `(tx.len(), ty.len())`.
pub fn fs_synthesis_2d(
    coeffs: &[Complex64],
    shape: (usize, usize),
    periods: (f64, f64),
    tx: &[f64],
    ty: &[f64],
) -> Vec<Complex64> {
    let (nx, ny) = shape;
    assert_eq!(coeffs.len(), nx * ny);
    let hx = (nx / 2) as i64;
    let hy = (ny / 2) as i64;
    let mut out = Vec::with_capacity(tx.len() * ty.len());
    for &x in tx {
        for &y in ty {
            let mut acc = Complex64::new(0.0, 0.0);
            for kx in 0..nx {
                for ky in 0..ny {
                    let phase = 2.0 * PI * (kx as i64 - hx) as f64 * x / periods.0
                        + 2.0 * PI * (ky as i64 - hy) as f64 * y / periods.1;
                    acc += coeffs[kx * ny + ky] * cis(phase);
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Recovers `X_{-N} .. X_N` from samples `x` taken at `t` by applying the
/// conjugate transpose of the synthesis matrix `A[n, k] = exp(j 2 pi k t_n / T)`
/// and dividing by the sample count. The columns of `A` are orthogonal
/// with squared norm `N_s` whenever `N_s >= N_FS` and the samples are
/// uniformly spaced over one period.
pub fn fs_unitary_solve(x: &[Complex64], t: &[f64], period: f64, n_fs: usize) -> Vec<Complex64> {
    assert_eq!(x.len(), t.len());
    let n = (n_fs / 2) as i64;
    let n_s = x.len() as f64;
    (-n..=n)
        .map(|k| {
            x.iter()
                .zip(t)
                .map(|(v, &ti)| v * cis(-2.0 * PI * k as f64 * ti / period))
                .sum::<Complex64>()
                / n_s
        })
        .collect()
}

/// Riemann-sum quadrature of the periodic convolution
/// `int_{period} f(tau) h(t - tau) d tau` with `n_quad` nodes, where `f`
/// and `h` are given by their coefficient vectors.
pub fn periodic_convolution(
    f_coeffs: &[Complex64],
    h_coeffs: &[Complex64],
    period: f64,
    t: &[f64],
    n_quad: usize,
) -> Vec<Complex64> {
    let dtau = period / n_quad as f64;
    let tau: Vec<f64> = (0..n_quad).map(|i| i as f64 * dtau).collect();
    let f_vals = fs_synthesis(f_coeffs, period, &tau);
    t.iter()
        .map(|&ti| {
            let shifted: Vec<f64> = tau.iter().map(|s| ti - s).collect();
            let h_vals = fs_synthesis(h_coeffs, period, &shifted);
            f_vals
                .iter()
                .zip(&h_vals)
                .map(|(a, b)| a * b)
                .sum::<Complex64>()
                * dtau
        })
        .collect()
}

/// Dirichlet kernel by its defining sum over `k = -N..N`.
pub fn dirichlet_sum(t: &[f64], period: f64, center: f64, n_fs: usize) -> Vec<Complex64> {
    let n = (n_fs / 2) as i64;
    t.iter()
        .map(|&ti| {
            (-n..=n)
                .map(|k| cis(2.0 * PI / period * k as f64 * (ti - center)))
                .sum()
        })
        .collect()
}

/// Circular 2-D convolution of row-major `n x n` arrays by direct
/// summation, scaled by `1 / n^2`. Cost is `O(n^4)`.
pub fn circular_convolve_2d(f: &[Complex64], h: &[Complex64], n: usize) -> Vec<Complex64> {
    assert_eq!(f.len(), n * n);
    assert_eq!(h.len(), n * n);
    let scale = 1.0 / (n * n) as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..n {
                let hi = (i + n - p) % n;
                let f_row = &f[p * n..(p + 1) * n];
                let h_row = &h[hi * n..(hi + 1) * n];
                for q in 0..n {
                    acc += f_row[q] * h_row[(j + n - q) % n];
                }
            }
            out[i * n + j] = acc * scale;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_of_delta_is_flat() {
        let mut x = vec![Complex64::new(0.0, 0.0); 4];
        x[0] = Complex64::new(1.0, 0.0);
        for v in dft(&x) {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn timestamps_match_hand_values() {
        let odd = ffs_timestamps(1.0, 0.0, 5);
        let expect = [0.0, 0.2, 0.4, -0.4, -0.2];
        for (a, b) in odd.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let even = ffs_timestamps(1.0, 0.0, 4);
        let expect = [0.125, 0.375, -0.375, -0.125];
        for (a, b) in even.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn synthesis_then_solve_recovers_coefficients() {
        let coeffs: Vec<Complex64> = (0..5)
            .map(|i| Complex64::new(i as f64, 1.0 - i as f64))
            .collect();
        let t = ffs_timestamps(2.0, 0.3, 8);
        let x = fs_synthesis(&coeffs, 2.0, &t);
        let back = fs_unitary_solve(&x, &t, 2.0, 5);
        assert!(rel_err(&back, &coeffs) < 1e-13);
    }
}
