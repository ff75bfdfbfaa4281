//! End-to-end runs of the `moment-forge` binary: exit codes, persisted
//! reports and the fixture gate in front of the Voronoi suite.

use std::path::Path;
use std::process::{Command, Output};

use moment_forge::maass::{bundled_form, render_fixture, MaassForm};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moment-forge"))
        .args(args)
        .current_dir(dir)
        .env("MOMENT_FORGE_OFFLINE", "1")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn moment_csv_writes_report_and_index_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["moment", "--q", "7", "--format", "csv", "--out", "r"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("file,kind,q,sigma0,t0,"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[1..5], &["moment", "7", "0.5", "0.0"]);
    assert!(row[10].parse::<f64>().unwrap() < 1e-6);

    let index = std::fs::read_to_string(dir.path().join("r/index.csv")).unwrap();
    assert_eq!(index.lines().count(), 2);
    let json_path = dir.path().join("r").join(row[0]);
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(record["schema"], 1);
    assert_eq!(record["config"]["command"], "moment");
    assert_eq!(record["report"]["q"], 7);
}

#[test]
fn repeated_runs_append_to_the_index() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..2 {
        assert_eq!(code(&run(&["nonvanish", "--q", "5", "--out", "r"], dir.path())), 0);
    }
    let index = std::fs::read_to_string(dir.path().join("r/index.csv")).unwrap();
    assert_eq!(index.lines().count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["moment"],
        &["moment", "--q", "9"],
        &["moment", "--q", "7", "--sigma0", "1.5"],
        &["verify", "no-such-suite"],
        &["fit", "--q", "5", "--q", "7"],
        &["moment", "--q", "7", "--threads", "0"],
    ];
    for args in cases {
        assert_eq!(code(&run(args, dir.path())), 2, "{args:?}");
    }
}

#[test]
fn io_and_network_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = run(&["moment", "--q", "7", "--form", "missing.txt"], dir.path());
    assert_eq!(code(&missing), 3);
    let fetch = run(&["fetch", "--label", "not.bundled", "--out", "f.txt"], dir.path());
    assert_eq!(code(&fetch), 3);
}

#[test]
fn offline_fetch_of_the_bundled_label_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fetch", "--depth", "40", "--out", "f.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("offline fallback"));
    let text = std::fs::read_to_string(dir.path().join("f.txt")).unwrap();
    assert!(text.lines().last().unwrap().starts_with("40,"));
}

#[test]
fn corrupted_fixture_fails_hecke_before_voronoi() {
    let dir = tempfile::tempdir().unwrap();
    let good = bundled_form().truncated(2000).unwrap();
    let mut decimals = good.decimals().to_vec();
    decimals[5] = format!("{:?}", good.lambda(6) + 1e-2);
    let bad = MaassForm::from_parts(
        good.spectral_text().to_string(),
        decimals,
        "perturbed".into(),
        good.precision_digits(),
        good.parity(),
    )
    .unwrap();
    std::fs::write(dir.path().join("bad.txt"), render_fixture(&bad)).unwrap();

    let out = run(&["verify", "voronoi", "--form", "bad.txt", "--out", "r"], dir.path());
    assert_eq!(code(&out), 1);
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = record["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "hecke relations");
    assert_eq!(checks[0]["passed"], false);

    let moment = run(&["moment", "--q", "7", "--form", "bad.txt", "--out", "r"], dir.path());
    assert_eq!(code(&moment), 1);
}

#[test]
fn char_sum_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "char-sums", "--out", "r"], dir.path());
    assert_eq!(code(&out), 0);
    let record: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(record["report"]["passed"], true);
}
