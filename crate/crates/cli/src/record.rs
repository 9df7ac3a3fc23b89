//! Benchmark records and their CSV form.

use std::io::Write;

use crate::error::{usage, CliResult};

pub const CSV_HEADER: [&str; 9] = [
    "method",
    "dim",
    "N_FS",
    "N_s",
    "M",
    "region_fraction",
    "reps",
    "seconds_mean",
    "seconds_std",
];

/// One timed configuration.
///
/// Size columns hold one value per axis. They are written as a single
/// number when every axis agrees and as `AxB` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: String,
    pub n_fs: Vec<usize>,
    pub n_s: Vec<usize>,
    pub m: Option<Vec<usize>>,
    pub region_fraction: Option<f64>,
    pub reps: usize,
    pub seconds_mean: f64,
    pub seconds_std: f64,
}

impl BenchRecord {
    pub fn dim(&self) -> usize {
        self.n_s.len()
    }

    fn fields(&self) -> [String; 9] {
        [
            self.method.clone(),
            self.dim().to_string(),
            format_sizes(&self.n_fs),
            format_sizes(&self.n_s),
            self.m.as_deref().map(format_sizes).unwrap_or_default(),
            self.region_fraction
                .map(|f| f.to_string())
                .unwrap_or_default(),
            self.reps.to_string(),
            self.seconds_mean.to_string(),
            self.seconds_std.to_string(),
        ]
    }
}

pub fn format_sizes(sizes: &[usize]) -> String {
    match sizes {
        [first, rest @ ..] if rest.iter().all(|s| s == first) => first.to_string(),
        _ => sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("x"),
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Mean and sample standard deviation of `reps >= 3` timings.
pub fn mean_std(samples: &[f64]) -> CliResult<(f64, f64)> {
    if samples.len() < 3 {
        return Err(usage(format!(
            "at least 3 repetitions are required, got {}",
            samples.len()
        )));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> BenchRecord {
        BenchRecord {
            method: "czt".into(),
            n_fs: vec![127],
            n_s: vec![128],
            m: Some(vec![512]),
            region_fraction: Some(0.01),
            reps: 10,
            seconds_mean: 1.5e-5,
            seconds_std: 2e-7,
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let mut conv = record();
        conv.method = "naive".into();
        conv.n_fs = vec![127, 127];
        conv.n_s = vec![128, 64];
        conv.m = None;
        conv.region_fraction = None;
        write_csv(&[record(), conv], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "method,dim,N_FS,N_s,M,region_fraction,reps,seconds_mean,seconds_std"
        );
        assert_eq!(lines[1], "czt,1,127,128,512,0.01,10,0.000015,0.0000002");
        assert_eq!(lines[2], "naive,2,127,128x64,,,10,0.000015,0.0000002");
    }

    #[test]
    fn sizes() {
        assert_eq!(format_sizes(&[64, 64]), "64");
        assert_eq!(format_sizes(&[64, 32]), "64x32");
        assert_eq!(format_sizes(&[]), "");
    }

    #[test]
    fn statistics() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m, 2.0);
        assert_eq!(s, 1.0);
        assert!(mean_std(&[1.0, 2.0]).is_err());
    }
}
