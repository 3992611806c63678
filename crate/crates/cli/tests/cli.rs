//! End-to-end behavior of the binary: exit codes, output shapes, CSV
//! round-tripping, and the limit command.

use std::process::{Command, Output};

fn qgamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn eval_known_value() {
    let out = qgamma(&["eval", "log-qgamma", "--q", "0.5", "--x", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,x,value,terms_used");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let value: f64 = row[2].parse().unwrap();
    assert!((value - 1.5f64.ln()).abs() < 1e-12);
    let terms: u64 = row[3].parse().unwrap();
    assert!(terms > 0);
}

#[test]
fn eval_li2_at_one() {
    let out = qgamma(&["eval", "li2", "--z", "1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let pi = std::f64::consts::PI;
    assert!((value - pi * pi / 6.0).abs() < 1e-12);
}

#[test]
fn eval_phi_spot() {
    let out = qgamma(&[
        "eval", "phi", "--alpha", "0.5", "--beta", "1", "--y", "0.25",
    ]);
    assert_eq!(exit_code(&out), 0);
    let value: f64 = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value + 0.11643397569993164).abs() < 1e-13);
}

#[test]
fn eval_grid_emits_one_record_per_point() {
    let out = qgamma(&["eval", "qdigamma", "--q", "0.5", "--grid", "0.5:8:16:log"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 17); // header + 16 points
}

#[test]
fn usage_errors_exit_two() {
    // Unknown function.
    assert_eq!(exit_code(&qgamma(&["eval", "nope", "--x", "1"])), 2);
    // Unknown suite.
    assert_eq!(exit_code(&qgamma(&["verify", "thm-9"])), 2);
    // Domain error: q = 1 is the classical limit.
    assert_eq!(
        exit_code(&qgamma(&["eval", "log-qgamma", "--q", "1", "--x", "2"])),
        2
    );
    // Domain error at a grid point must name the point.
    let out = qgamma(&["eval", "li2", "--grid", "0:2:5"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("z=1.5") || err.contains("z=2"), "{err}");
    // Malformed grid.
    assert_eq!(exit_code(&qgamma(&["eval", "li2", "--grid", "2:1:5"])), 2);
    // Missing required value flag.
    assert_eq!(exit_code(&qgamma(&["eval", "log-qgamma", "--x", "2"])), 2);
    // Clap-level parse failure.
    assert_eq!(exit_code(&qgamma(&["frobnicate"])), 2);
}

#[test]
fn csv_round_trips_bit_for_bit() {
    // Parse the printed CSV back and re-render it; 17 significant digits
    // make the f64 cells exact.
    let out = qgamma(&[
        "eval",
        "log-f",
        "--alpha",
        "0.3",
        "--beta",
        "1.7",
        "--q",
        "0.77",
        "--grid",
        "0.1:30:40:log",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "alpha,beta,q,x,value,terms_used");
    for line in lines {
        for cell in line.split(',').take(5) {
            let v: f64 = cell.parse().unwrap();
            let reprinted = format!("{v:.16e}");
            assert_eq!(reprinted, cell, "cell `{cell}` did not round-trip");
        }
    }
}

#[test]
fn json_output_is_parseable_array() {
    let out = qgamma(&["eval", "cq", "--grid", "0.3:0.9:4", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    assert!(arr[0]["value"].is_f64());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("qgamma-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.csv");
    let out = qgamma(&[
        "eval",
        "moak-I",
        "--q",
        "0.5",
        "--x",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.2899405780148402).abs() < 1e-14);
}

#[test]
fn limit_tracks_classical_targets() {
    let out = qgamma(&["limit", "log-qgamma", "--x", "0.5", "--q", "0.9,0.99,0.999"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let errors: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 3);
    assert!(errors[0] > errors[1] && errors[1] > errors[2]);
    // Target column is log sqrt(pi).
    let target: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((target - std::f64::consts::PI.sqrt().ln()).abs() < 1e-12);

    let out = qgamma(&["limit", "cq", "--q", "0.9,0.99,0.999"]);
    assert_eq!(exit_code(&out), 0);
    let last: f64 = stdout(&out)
        .lines()
        .nth(3)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((last - 0.9187301164893618).abs() < 1e-12);

    let out = qgamma(&[
        "limit",
        "li2-over-logq",
        "--x",
        "2",
        "--q",
        "0.9,0.99,0.999",
    ]);
    assert_eq!(exit_code(&out), 0);
    let last: f64 = stdout(&out)
        .lines()
        .nth(3)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((last + 2.0).abs() < 2e-3, "{last}");
}

#[test]
fn limit_rejects_bad_sequences() {
    assert_eq!(
        exit_code(&qgamma(&[
            "limit",
            "log-qgamma",
            "--x",
            "1",
            "--q",
            "0.9,1.0"
        ])),
        2
    );
    assert_eq!(
        exit_code(&qgamma(&[
            "limit",
            "log-qgamma",
            "--x",
            "1",
            "--q",
            "0.99,0.9"
        ])),
        2
    );
    assert_eq!(
        exit_code(&qgamma(&[
            "limit",
            "log-qgamma",
            "--x",
            "1",
            "--q",
            "0.9,1.1"
        ])),
        2
    );
}

#[test]
fn limit_from_above_one() {
    // x = 3 rather than 2: Gamma_q(2) = 1 identically, which would leave
    // nothing but rounding noise to compare.
    let out = qgamma(&["limit", "log-qgamma", "--x", "3", "--q", "1.1,1.01,1.001"]);
    assert_eq!(exit_code(&out), 0);
    let errors: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2]);
}

#[test]
fn verify_single_suite_csv_has_schema() {
    let out = qgamma(&["verify", "cor-3.4"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "suite,check,q,x,n,value,pass");
    // 10 q values x 6 x values
    assert_eq!(text.lines().count(), 61);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_respects_overrides() {
    // Restricting q shrinks the sweep.
    let out = qgamma(&["verify", "cor-3.4", "--q", "0.5"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 7);
    // Out-of-range q is a usage error.
    assert_eq!(exit_code(&qgamma(&["verify", "cor-3.4", "--q", "1.5"])), 2);
    // Stirling n cap.
    let out = qgamma(&["verify", "stirling", "--n", "10"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 21); // header + 2 checks per n
}

proptest::proptest! {
    #[test]
    fn printed_f64_round_trips(bits in proptest::prelude::any::<u64>()) {
        let v = f64::from_bits(bits);
        proptest::prop_assume!(v.is_finite());
        let printed = format!("{v:.16e}");
        let parsed: f64 = printed.parse().unwrap();
        proptest::prop_assert_eq!(parsed.to_bits(), v.to_bits());
    }
}
