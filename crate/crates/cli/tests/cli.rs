use std::process::{Command, Output};

fn specqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specqm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .unwrap()
        .split(',')
        .position(|h| h == name)
        .expect("column present");
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn weights_for_three_nodes() {
    let csv = stdout(&specqm(&["weights", "--N", "3", "--point", "0.3"]));
    let w = column(&csv, "w");
    for (got, want) in w.iter().zip([4.0 / 9.0, 10.0 / 9.0, 4.0 / 9.0]) {
        assert!((got - want).abs() < 1e-15);
    }
    assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    assert!(csv
        .lines()
        .next()
        .unwrap()
        .starts_with("j,t,w,omega,Omega,Wminus_0"));
}

#[test]
fn cauchy_weights_at_origin_are_odd() {
    let csv = stdout(&specqm(&["weights", "--N", "8"]));
    let omega = column(&csv, "omega");
    for j in 0..4 {
        assert!((omega[j] + omega[7 - j]).abs() < 1e-13, "{omega:?}");
    }
}

#[test]
fn single_n_gives_single_row() {
    let csv = stdout(&specqm(&[
        "converge", "--N", "32", "--method", "volterra", "--sweep", "0.1,1,5",
    ]));
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(csv.lines().next().unwrap(), "N,volterra_E");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = [
        "converge",
        "--potential",
        "hulthen",
        "--N",
        "16,24,32",
        "--sweep",
        "0.1,2,9",
    ];
    let one = stdout(&specqm(&[&args[..], &["--jobs", "1"]].concat()));
    let four = stdout(&specqm(&[&args[..], &["--jobs", "4"]].concat()));
    assert_eq!(one, four);
    let e = column(&one, "volterra_E");
    assert!(e[2] < e[0]);
}

#[test]
fn length_sweep_crosses_the_pole() {
    let csv = stdout(&specqm(&[
        "converge",
        "--quantity",
        "length",
        "--method",
        "volterra",
        "--N",
        "48",
    ]));
    let e = column(&csv, "volterra_E");
    assert!(e[0].is_finite() && e[0] < 1e-6, "{e:?}");
}

#[test]
fn exponential_benchmark_by_every_method() {
    let s = format!("{}", std::f64::consts::FRAC_PI_2.powi(2));
    let csv = stdout(&specqm(&["bound", "--s", &s, "--N", "64"]));
    let x = column(&csv, "x");
    assert_eq!(x.len(), 3);
    assert!(x.iter().all(|x| (x - 0.25).abs() < 1e-9), "{csv}");
}

#[test]
fn hydrogen_table_down_to_quarter() {
    let csv = stdout(&specqm(&["hydrogen", "--N", "64"]));
    let err = column(&csv, "relative_error");
    assert_eq!(err.len(), 10, "{csv}");
    assert!(err.iter().all(|&e| e < 1e-7), "{csv}");
}

#[test]
fn phase_sweep_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phase.csv");
    let out = specqm(&[
        "phase",
        "--N",
        "64",
        "--sweep",
        "0.5,1.5,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "xi,exact,schrodinger,volterra,momentum"
    );
    let (exact, v) = (column(&csv, "exact"), column(&csv, "volterra"));
    assert!(exact.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-9));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# Hulthen study\npotential = hulthen\ns = 0.5\nmethod = volterra\nN = 24\n",
    )
    .unwrap();
    let csv = stdout(&specqm(&[
        "alen",
        "--config",
        cfg.to_str().unwrap(),
        "--sweep",
        "0.5,0.5,1",
        "--N",
        "48",
    ]));
    let (exact, v) = (column(&csv, "exact"), column(&csv, "volterra"));
    assert_eq!(v.len(), 1);
    assert!((exact[0] - v[0]).abs() < 1e-9 * exact[0].abs());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["phase", "--method", ","][..],
        &["phase", "--method", "magic"],
        &["converge", "--N", "32,16"],
        &["phase", "--sweep", "1,0"],
        &["phase", "--bogus"],
        &["teleport"],
        &["phase", "--a", "-1"],
        &["weights", "--N", "300"],
        &["phase", "--config", "/nonexistent/specqm.conf"],
    ] {
        let out = specqm(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_with_three() {
    // the closed form behind E(N) covers s >= 0 only
    let out = specqm(&["converge", "--s", "-0.5", "--N", "16", "--sweep", "0.5,1,2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(specqm(&["--help"]).status.code(), Some(0));
}
