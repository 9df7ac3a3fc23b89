//! Free-space propagation of a circular aperture with the angular
//! spectrum transfer function, evaluated on a zoomed output window.

use std::f64::consts::PI;
use std::io::Write;

use ffskit::grid::{natural_timestamps, to_ffs_order};
use ffskit::{ffsn, fs_interpn, Complex64, DimSpec, InterpRequest, PeriodicGrid, SampleTensor};
use ndarray::{s, Array2, ArrayD, Ix2};

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct OpticsConfig {
    /// Samples per axis of the aperture plane.
    pub n: usize,
    /// Side length of the aperture plane in meters.
    pub side: f64,
    /// Aperture radius in meters.
    pub radius: f64,
    pub wavelength: f64,
    /// Propagation distance in meters.
    pub distance: f64,
    /// Output window `[a, b]` used on both axes.
    pub region: (f64, f64),
    /// Output samples per axis.
    pub m: usize,
}

impl Default for OpticsConfig {
    fn default() -> Self {
        OpticsConfig {
            n: 128,
            side: 1e-3,
            radius: 2e-4,
            wavelength: 633e-9,
            distance: 0.05,
            region: (-2.5e-4, 2.5e-4),
            m: 256,
        }
    }
}

impl OpticsConfig {
    /// The aperture plane is zero-padded to twice its side, so one period
    /// is `[-side, side)`.
    pub fn period(&self) -> f64 {
        2.0 * self.side
    }

    fn validate(&self) -> CliResult<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if self.n < 2 {
            return Err(usage(format!(
                "aperture plane needs at least 2 samples, got {}",
                self.n
            )));
        }
        if !(positive(self.side) && positive(self.radius) && positive(self.wavelength)) {
            return Err(usage("side, radius and wavelength must be positive"));
        }
        if !(self.distance.is_finite() && self.distance >= 0.0) {
            return Err(usage("distance must be non-negative"));
        }
        if self.radius > self.side / 2.0 {
            return Err(usage("aperture radius exceeds half the plane side"));
        }
        let (a, b) = self.region;
        if !(a.is_finite() && b.is_finite() && -self.side <= a && a < b && b <= self.side) {
            return Err(usage(format!(
                "output region [{a}, {b}] must be increasing and lie within one period [{}, {}]",
                -self.side, self.side
            )));
        }
        if self.m < 2 {
            return Err(usage(format!("M must be at least 2, got {}", self.m)));
        }
        Ok(())
    }
}

/// FS coefficients of the padded aperture before and after propagation.
#[derive(Debug, Clone)]
pub struct Propagation {
    pub period: f64,
    pub input: ArrayD<Complex64>,
    pub output: ArrayD<Complex64>,
}

/// Angular spectrum transfer function `exp(j 2 pi z sqrt(1/lambda^2 - fx^2 - fy^2))`,
/// zero for evanescent frequencies.
pub fn transfer(fx: f64, fy: f64, wavelength: f64, distance: f64) -> Complex64 {
    let arg = wavelength.powi(-2) - fx * fx - fy * fy;
    if arg < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * distance * arg.sqrt())
    }
}

pub fn propagate(cfg: &OpticsConfig) -> CliResult<Propagation> {
    cfg.validate()?;
    let period = cfg.period();
    let n_s = 2 * cfg.n;
    let dim = DimSpec::new(period, 0.0, n_s - 1, n_s)?;
    let grid = PeriodicGrid::new(vec![dim, dim])?;

    let t = natural_timestamps(&dim);
    let half = cfg.side / 2.0;
    let inside = |x: f64, y: f64| {
        x.abs() <= half && y.abs() <= half && x * x + y * y <= cfg.radius * cfg.radius
    };
    let aperture = ArrayD::from_shape_fn(vec![n_s, n_s], |ix| {
        Complex64::new(if inside(t[ix[0]], t[ix[1]]) { 1.0 } else { 0.0 }, 0.0)
    });
    let samples = to_ffs_order(&SampleTensor::natural(aperture), &grid)?;
    let input = ffsn(&samples, &grid)?.trim();

    let half_band = (dim.n_fs() / 2) as f64;
    let freq = |i: usize| (i as f64 - half_band) / period;
    let mut output = input.clone();
    for (ix, g) in output.indexed_iter_mut() {
        *g *= transfer(freq(ix[0]), freq(ix[1]), cfg.wavelength, cfg.distance);
    }
    Ok(Propagation {
        period,
        input,
        output,
    })
}

fn energy(x: &ArrayD<Complex64>) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum()
}

fn to_2d(x: ArrayD<Complex64>) -> CliResult<Array2<Complex64>> {
    x.into_dimensionality::<Ix2>()
        .map_err(|e| CliError::Check(format!("expected a 2-D field: {e}")))
}

impl Propagation {
    /// Spectral energy after propagation divided by energy before.
    pub fn energy_ratio(&self) -> f64 {
        energy(&self.output) / energy(&self.input)
    }

    fn interp(
        coeffs: &ArrayD<Complex64>,
        period: f64,
        reqs: [InterpRequest; 2],
    ) -> CliResult<Array2<Complex64>> {
        to_2d(fs_interpn(coeffs, &[period, period], &reqs)?)
    }

    /// Input field on an `m x m` grid over `region` on both axes.
    pub fn input_field(&self, region: (f64, f64), m: usize) -> CliResult<Array2<Complex64>> {
        let req = InterpRequest::new(region.0, region.1, m)?;
        Self::interp(&self.input, self.period, [req, req])
    }

    /// Propagated field on an `m x m` grid over `region` on both axes.
    pub fn field(&self, region: (f64, f64), m: usize) -> CliResult<Array2<Complex64>> {
        let req = InterpRequest::new(region.0, region.1, m)?;
        Self::interp(&self.output, self.period, [req, req])
    }

    /// Same grid as [`Propagation::field`], computed as four independent
    /// tiles. Needs `m >= 4`.
    pub fn field_tiled(&self, region: (f64, f64), m: usize) -> CliResult<Array2<Complex64>> {
        if m < 4 {
            return Err(usage(format!("tiling needs M of at least 4, got {m}")));
        }
        let (a, b) = region;
        let step = (b - a) / (m - 1) as f64;
        let h = m / 2;
        let halves = [
            InterpRequest::new(a, a + (h - 1) as f64 * step, h)?,
            InterpRequest::new(a + h as f64 * step, b, m - h)?,
        ];
        let offsets = [0, h];
        let mut out = Array2::zeros((m, m));
        for (i, rx) in halves.iter().enumerate() {
            for (j, ry) in halves.iter().enumerate() {
                let tile = Self::interp(&self.output, self.period, [*rx, *ry])?;
                let (oi, oj) = (offsets[i], offsets[j]);
                out.slice_mut(s![oi..oi + rx.m(), oj..oj + ry.m()])
                    .assign(&tile);
            }
        }
        Ok(out)
    }
}

/// Output of [`run_demo`]: sample coordinates and the intensity map.
#[derive(Debug, Clone)]
pub struct OpticsResult {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub intensity: Array2<f64>,
    pub energy_ratio: f64,
}

pub fn run_demo(cfg: &OpticsConfig) -> CliResult<OpticsResult> {
    let prop = propagate(cfg)?;
    let field = prop.field(cfg.region, cfg.m)?;
    let t = InterpRequest::new(cfg.region.0, cfg.region.1, cfg.m)?.timestamps();
    Ok(OpticsResult {
        x: t.clone(),
        y: t,
        intensity: field.mapv(|v| v.norm_sqr()),
        energy_ratio: prop.energy_ratio(),
    })
}

/// Plain PGM (P2), 8-bit. Rows follow axis 0 (x), columns axis 1 (y);
/// values are `round(255 I / max I)`.
pub fn write_pgm<W: Write>(intensity: &Array2<f64>, mut out: W) -> CliResult<()> {
    let (rows, cols) = intensity.dim();
    let peak = intensity.iter().copied().fold(0.0, f64::max);
    writeln!(out, "P2")?;
    writeln!(out, "{cols} {rows}")?;
    writeln!(out, "255")?;
    for row in intensity.rows() {
        let line: Vec<String> = row
            .iter()
            .map(|&v| {
                let level = if peak > 0.0 {
                    (255.0 * v / peak).round()
                } else {
                    0.0
                };
                (level as u8).to_string()
            })
            .collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

/// CSV with header `x,y,intensity`, one row per sample, x outermost.
pub fn write_intensity_csv<W: Write>(result: &OpticsResult, out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "intensity"])?;
    for (i, x) in result.x.iter().enumerate() {
        for (j, y) in result.y.iter().enumerate() {
            w.write_record([
                x.to_string(),
                y.to_string(),
                result.intensity[[i, j]].to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> OpticsConfig {
        OpticsConfig {
            n: 32,
            m: 24,
            ..Default::default()
        }
    }

    #[test]
    fn transfer_is_unit_modulus_or_zero() {
        let t = transfer(1e5, 2e5, 633e-9, 0.1);
        assert!((t.norm() - 1.0).abs() < 1e-15);
        assert_eq!(transfer(2e6, 0.0, 633e-9, 0.1), Complex64::new(0.0, 0.0));
        assert_eq!(transfer(3e5, 1e5, 633e-9, 0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn energy_is_conserved_for_propagating_waves() {
        let prop = propagate(&small()).unwrap();
        assert!((prop.energy_ratio() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evanescent_components_are_removed() {
        // A sub-wavelength plane pushes the spectrum past 1 / lambda.
        let cfg = OpticsConfig {
            side: 4e-6,
            radius: 1e-6,
            region: (-1e-6, 1e-6),
            ..small()
        };
        assert!(propagate(&cfg).unwrap().energy_ratio() < 0.99);
    }

    #[test]
    fn region_outside_period_rejected() {
        let cfg = OpticsConfig {
            region: (-2e-3, 0.0),
            ..small()
        };
        assert!(matches!(propagate(&cfg), Err(CliError::Usage(_))));
        let cfg = OpticsConfig {
            region: (1e-4, -1e-4),
            ..small()
        };
        assert!(matches!(propagate(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn pgm_layout() {
        let img = Array2::from_shape_vec((2, 3), vec![0.0, 1.0, 2.0, 0.5, 4.0, 3.0]).unwrap();
        let mut buf = Vec::new();
        write_pgm(&img, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "P2\n3 2\n255\n0 64 128\n32 255 191\n");
    }

    #[test]
    fn intensity_csv_layout() {
        let result = OpticsResult {
            x: vec![0.0, 0.5],
            y: vec![-1.0, 1.0],
            intensity: Array2::from_shape_vec((2, 2), vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
            energy_ratio: 1.0,
        };
        let mut buf = Vec::new();
        write_intensity_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,y,intensity\n0,-1,1\n0,1,2\n0.5,-1,3\n0.5,1,4\n");
    }
}
