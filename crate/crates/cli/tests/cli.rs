use std::path::Path;
use std::process::{Command, Output};

use salpeter_wigner::report::Expect;
use salpeter_wigner_cli::config::Format;
use salpeter_wigner_cli::output::read_json;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salpeter-wigner"))
        .args(args)
        .env("SW_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_writes_csv_rows_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let res = run(&[
        "eval",
        "--def",
        "zm",
        "--packet",
        "massless-lorentzian",
        "--a",
        "1",
        "--x=-2:2:5",
        "--p=-1:1:3",
        "--t",
        "0,2,4",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["x", "p", "t", "w", "err", "flag"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3 * 5 * 3);
    assert_eq!(&rows[1][0], "-2.0000000000000000e0");
    assert_eq!(&rows[1][1], "0.0000000000000000e0");
    assert_eq!(&rows[3][0], "-1.0000000000000000e0");
    assert_eq!(&rows[15][2], "2.0000000000000000e0");
    let w: f64 = rows[3 * 2 + 2][3].parse().unwrap();
    let reference = salpeter_wigner::wigner_zm::zm_closed_form(
        salpeter_wigner::wigner_zm::ZmClosed::MasslessLorentzian,
        salpeter_wigner::params::PhysicsParams::massless(1.0).unwrap(),
        salpeter_wigner::params::PhaseSpacePoint::new(0.0, 1.0, 0.0),
    )
    .unwrap();
    assert_eq!(w, reference);
    assert!(rows.iter().all(|r| &r[5] == "0"));
}

#[test]
fn json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let res = run(&[
        "eval",
        "--def",
        "std",
        "--packet",
        "massive-lorentzian",
        "--m",
        "1",
        "--x=-1:1:3",
        "--p=-0.5:0.5:2",
        "--t",
        "1",
        "--out",
        path_str(&out),
        "--format",
        "json",
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let first = read_json(&out).unwrap();
    assert_eq!(first.config.format, Format::Json);
    assert_eq!(first.fields.len(), 1);
    assert_eq!(first.fields[0].grid().t, 1.0);
    let again = dir.path().join("again.json");
    salpeter_wigner_cli::output::write_json(&again, &first).unwrap();
    assert_eq!(read_json(&again).unwrap(), first);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |p: &str| {
        vec![
            "eval".to_owned(),
            "--def".into(),
            "zm".into(),
            "--packet".into(),
            "massive-lorentzian".into(),
            "--form".into(),
            "rapidity".into(),
            "--x=-2:2:4".into(),
            "--p=-1:1:3".into(),
            "--t".into(),
            "0.5".into(),
            "--out".into(),
            p.into(),
        ]
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let owned = args(path_str(p));
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        assert_eq!(code(&run(&refs)), 0);
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn invalid_configurations_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = path_str(&out);
    for args in [
        vec![
            "eval",
            "--def",
            "nonrel",
            "--packet",
            "massive-lorentzian",
            "--x=-1:1:3",
            "--p=-1:1:3",
            "--t",
            "0",
            "--out",
            o,
        ],
        vec![
            "eval",
            "--def",
            "zm",
            "--packet",
            "chiral-plus",
            "--m",
            "1",
            "--x=-1:1:3",
            "--p=-1:1:3",
            "--t",
            "0",
            "--out",
            o,
        ],
        vec![
            "eval",
            "--def",
            "zm",
            "--packet",
            "chiral-plus",
            "--x=1:1:3",
            "--p=-1:1:3",
            "--t",
            "0",
            "--out",
            o,
        ],
        vec![
            "eval",
            "--def",
            "std",
            "--packet",
            "massive-lorentzian",
            "--form",
            "closed",
            "--x=-1:1:3",
            "--p=-1:1:3",
            "--t",
            "0",
            "--out",
            o,
        ],
        vec![
            "eval",
            "--def",
            "zm",
            "--packet",
            "nope",
            "--x=-1:1:3",
            "--p=-1:1:3",
            "--t",
            "0",
            "--out",
            o,
        ],
        vec!["figures", "--id", "9", "--out", o],
        vec!["verify", "--suite", "bogus", "--out", o],
    ] {
        let res = run(&args);
        assert_eq!(code(&res), 1, "{args:?}: {}", String::from_utf8_lossy(&res.stderr));
    }
    assert!(!out.exists());
}

#[test]
fn unwritable_output_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "x").unwrap();
    let out = file.join("w.csv");
    let res = run(&[
        "eval",
        "--def",
        "zm",
        "--packet",
        "chiral-minus",
        "--x=-1:1:3",
        "--p=-1:1:3",
        "--t",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&res), 3);
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let res = run(&["verify", "--suite", "transport", "--out", path_str(&out)]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
    let report = read_json(&out).unwrap().report;
    let shift = report.get("transport_shift_zm_massive").unwrap();
    assert!(shift.passed && shift.residual <= 1e-12);
    let std = report.get("transport_shift_std_massless").unwrap();
    assert_eq!(std.expect, Expect::Exceeds);
    assert!(std.passed);
}

#[test]
fn verify_reports_the_zm_marginal_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let res = run(&["verify", "--suite", "zm", "--out", path_str(&out)]);
    assert_eq!(code(&res), 0);
    let report = read_json(&out).unwrap().report;
    let e = report.get("zm_massless_marginal_mismatch").unwrap();
    assert!((e.residual - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-6);
    assert_eq!(e.expect, Expect::Exceeds);
}

#[test]
fn figure_three_has_negative_values() {
    let dir = tempfile::tempdir().unwrap();
    let res = run(&[
        "figures",
        "--id",
        "3",
        "--out",
        path_str(dir.path()),
        "--format",
        "json",
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let out = read_json(&dir.path().join("figure3.json")).unwrap();
    assert!(out.fields[0].min() < 0.0);
    assert!(out.config.note.unwrap().contains("not taken from the original"));
    assert!(dir.path().join("figure3.meta.json").exists());
}

#[test]
fn bad_thread_count_is_rejected() {
    let res = Command::new(env!("CARGO_BIN_EXE_salpeter-wigner"))
        .args(["verify", "--suite", "specfun", "--out", "/dev/null"])
        .env("SW_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&res), 1);
}
