use std::process::{Command, Output};

fn ffskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffskit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_single_suite_passes() {
    let o = ffskit(&["verify", "--suite", "czt", "--cases", "30", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("seed: 11"));
    assert!(text.contains("czt: 30 cases"));
    assert!(!text.contains("ffs:"));
}

#[test]
fn verify_all_suites_default_seed() {
    let o = ffskit(&["verify", "--cases", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 5);
}

#[test]
fn verify_perturbation_fails() {
    let o = ffskit(&["verify", "--suite", "interp", "--cases", "5", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failure: case 0"));
}

#[test]
fn verify_thread_cap() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_ffskit"))
            .args(["verify", "--suite", "dft", "--cases", "10"])
            .env("FFSKIT_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ffskit(&["verify", "--suite", "fft"]).status.code(), Some(2));
    assert_eq!(
        ffskit(&["bench-interp-1d", "--reps", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ffskit(&["bench-interp-1d", "--m", "64", "--fractions", "1.0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ffskit(&["bench-convolve-2d", "--sizes", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ffskit(&["bench-interp-2d", "--m", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ffskit(&["demo-optics", "--region=-3e-3,0"]).status.code(),
        Some(2)
    );
    assert_eq!(ffskit(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn bench_interp_1d_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("interp.csv");
    let o = ffskit(&[
        "bench-interp-1d",
        "--n-fs",
        "31",
        "--n-s",
        "32",
        "--fractions",
        "0.1,1.0",
        "--m",
        "32,64",
        "--reps",
        "3",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: 5"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "method,dim,N_FS,N_s,M,region_fraction,reps,seconds_mean,seconds_std"
    );
    assert_eq!(lines.len(), 9);
    assert!(lines[1].starts_with("czt,1,31,32,32,0.1,3,"));
    assert!(lines[2].starts_with("zero_pad,1,31,32,32,0.1,3,"));
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[7].parse::<f64>().unwrap() > 0.0);
        assert!(f[8].parse::<f64>().unwrap() >= 0.0);
    }
}

#[test]
fn bench_interp_2d_to_stdout() {
    let o = ffskit(&[
        "bench-interp-2d",
        "--n-fs",
        "15,7",
        "--n-s",
        "16,8",
        "--m",
        "8",
        "--fractions",
        "0.4",
        "--reps",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("czt,2,15x7,16x8,8,0.4,3,"));
}

#[test]
fn bench_convolve_2d_rows() {
    let o = ffskit(&["bench-convolve-2d", "--sizes", "8,9", "--reps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("ffs,2,7,8,,,3,"));
    assert!(lines[2].starts_with("naive,2,7,8,,,3,"));
    assert!(lines[3].starts_with("ffs,2,9,9,,,3,"));
}

#[test]
fn demo_optics_writes_pgm_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("field.csv");
    let pgm_path = dir.path().join("field.pgm");
    let o = ffskit(&[
        "demo-optics",
        "--n",
        "32",
        "--m",
        "20",
        "--out",
        csv_path.to_str().unwrap(),
        "--pgm",
        pgm_path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let pgm = std::fs::read_to_string(&pgm_path).unwrap();
    let lines: Vec<&str> = pgm.lines().collect();
    assert_eq!(&lines[..3], &["P2", "20 20", "255"]);
    assert_eq!(lines.len(), 23);
    let levels: Vec<u8> = lines[3..]
        .iter()
        .flat_map(|l| l.split(' ').map(|v| v.parse::<u8>().unwrap()))
        .collect();
    assert_eq!(levels.len(), 400);
    assert_eq!(levels.iter().copied().max(), Some(255));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "x,y,intensity");
    assert_eq!(rows.len(), 401);
    // x is the outer loop.
    let first: Vec<&str> = rows[1].split(',').collect();
    let second: Vec<&str> = rows[2].split(',').collect();
    assert_eq!(first[0], second[0]);
    assert_ne!(first[1], second[1]);
}
