//! End-to-end tests of the `dolgachev` binary: flag handling, config
//! files, exact output encodings, and exit codes (0 success, 1 hard-check
//! failure, 2 usage error).

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dolgachev"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn invariants_json_table() {
    let (code, stdout, _) = run(&["invariants", "--p", "3", "--q", "2", "--n-max", "3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["meta"]["p"], 3);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let a: Vec<i64> = rows.iter().map(|r| r["a"].as_i64().unwrap()).collect();
    let b: Vec<i64> = rows.iter().map(|r| r["b"].as_i64().unwrap()).collect();
    assert_eq!(a, vec![3, 6, 9]);
    assert_eq!(b, vec![45, 90, 135]);
    assert!(rows.iter().all(|r| r["a_match"] == true && r["b_match"] == true));
    assert!(rows.iter().all(|r| r["c"].is_null()));
}

#[test]
fn invariants_degenerate_case_has_c_column() {
    let (code, stdout, _) = run(&["invariants", "--p", "1", "--q", "1", "--n-max", "2"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let b: Vec<i64> = rows.iter().map(|r| r["b"].as_i64().unwrap()).collect();
    let c: Vec<i64> = rows.iter().map(|r| r["c"].as_i64().unwrap()).collect();
    assert_eq!(b, vec![-3, -6]);
    assert_eq!(c, vec![21, 42]);
}

#[test]
fn invariants_non_coprime_notice() {
    let (code, stdout, _) = run(&["invariants", "--p", "4", "--q", "6", "--n-max", "3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["note"], "not coprime");
}

#[test]
fn invariants_sweep_filters_pairs() {
    let (code, stdout, _) =
        run(&["invariants", "--sweep", "3", "3", "--n-max", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut coprime = 0;
    let mut skipped = 0;
    for line in stdout.lines().skip(1) {
        if line.ends_with("not coprime") {
            skipped += 1;
        } else {
            coprime += 1;
        }
    }
    // 3x3 grid: (2,2) and (3,3) are not coprime.
    assert_eq!(coprime, 7);
    assert_eq!(skipped, 2);
}

#[test]
fn csv_and_json_round_trip_same_values() {
    let (code, json_out, _) = run(&["invariants", "--p", "3", "--q", "4", "--n-max", "4"]);
    assert_eq!(code, 0);
    let (code, csv_out, _) =
        run(&["invariants", "--p", "3", "--q", "4", "--n-max", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let mut rows = 0;
    for (i, record) in rdr.records().enumerate() {
        let record = record.unwrap();
        let json_row = &doc["rows"][i];
        for (field, value) in headers.iter().zip(record.iter()) {
            let json_value = &json_row[field];
            if json_value.is_null() {
                assert!(value.is_empty(), "field {field} should be empty");
            } else if let Some(n) = json_value.as_i64() {
                assert_eq!(value.parse::<i64>().unwrap(), n, "field {field}");
            } else if let Some(b) = json_value.as_bool() {
                assert_eq!(value.parse::<bool>().unwrap(), b, "field {field}");
            } else {
                assert_eq!(value, json_value.as_str().unwrap(), "field {field}");
            }
        }
        rows += 1;
    }
    assert_eq!(rows, 4);
}

#[test]
fn invariants_out_file() {
    let dir = std::env::temp_dir().join("dolgachev-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let (code, stdout, _) = run(&[
        "invariants",
        "--p",
        "5",
        "--q",
        "2",
        "--n-max",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["rows"][0]["b"], 141);
}

#[test]
fn verify_fast_deterministic_and_ledgered() {
    let (code, first, _) = run(&["verify", "--depth", "fast", "--seed", "11"]);
    assert_eq!(code, 0);
    let (code, second, _) = run(&["verify", "--depth", "fast", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(first, second, "identical seeds must give byte-identical reports");

    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["meta"]["seed"], 11);
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows
        .iter()
        .all(|r| r["status"] == "pass" || (r["kind"] == "diagnostic" && r["status"] == "info")));
    let ledger = doc["ledger"].as_array().unwrap();
    assert!(ledger.len() >= 3);
    let locations: Vec<&str> =
        ledger.iter().map(|e| e["location"].as_str().unwrap()).collect();
    assert!(locations.iter().any(|l| l.contains("stratum weight expansion")));
    assert!(locations.iter().any(|l| l.contains("piecewise stratum degree")));
    assert!(locations.iter().any(|l| l.contains("floor-offset convention")));
}

#[test]
fn verify_csv_contains_checks_and_ledger() {
    let (code, stdout, _) = run(&["verify", "--depth", "fast", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("record,check,kind,status,details"));
    assert!(stdout.lines().any(|l| l.starts_with("check,")));
    assert!(stdout.lines().any(|l| l.starts_with("ledger,")));
}

#[test]
fn walls_same_endpoint_is_empty() {
    let w = "4,-1,-1,-1,-1,-1,-1,-1,-1,-1";
    let (code, stdout, _) = run(&["walls", "--n", "1", "--w0", w, "--w1", w]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
}

#[test]
fn walls_documented_fixture() {
    let (code, stdout, _) = run(&[
        "walls",
        "--n",
        "1",
        "--w0",
        "49/4,-109/24,-83/24,-4,-4,-4,-4,-4,-4,-4",
        "--w1",
        "49/4,-55/12,-41/12,-4,-4,-4,-4,-4,-4,-4",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains("zeta = (9,-5,-1,-3,-3,-3,-3,-3,-3,-3)"));
    assert!(lines[0].contains("zeta^2 = -8"));
    assert!(lines[0].contains("M = (0,1,-1,0,0,0,0,0,0,0)"));
    assert!(lines[0].contains("effective = false"));
}

#[test]
fn walls_rejects_wrong_cone_component() {
    let (code, _, stderr) = run(&[
        "walls",
        "--n",
        "1",
        "--w0",
        "4,-1,-1,-1,-1,-1,-1,-1,-1,-1",
        "--w1",
        "-4,1,1,1,1,1,1,1,1,1",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cone component"), "stderr: {stderr}");
}

#[test]
fn walls_rejects_endpoint_on_wall() {
    // 2f + e0 - (9/4)(e1 - e2) is orthogonal to zeta = 3f - 2(e1 - e2)
    // (and to further walls); the rejection names an offending class.
    let (code, _, stderr) = run(&[
        "walls",
        "--n",
        "1",
        "--w0",
        "7,-17/4,1/4,-2,-2,-2,-2,-2,-2,-2",
        "--w1",
        "7,-2,-2,-2,-2,-2,-2,-2,-2,-2",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("lies on the wall perpendicular to ("), "stderr: {stderr}");
}

#[test]
fn hilb2_products() {
    let (code, stdout, _) = run(&["hilb2", "T.T.T.T"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-96");

    let (code, stdout, _) =
        run(&["hilb2", "[3,0,0,0,0,0,0,0,0,0].[1,0,0,0,0,0,0,0,0,0].T.T"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-24");

    let (code, stdout, _) = run(&["hilb2", "e0.e1.e2.T"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0");

    // Rational t-free surface products honor the pairing.
    let (code, stdout, _) = run(&["hilb2", "e0.e0.e0.e0"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "3");
}

#[test]
fn hilb2_parse_error_reports_position() {
    let (code, _, stderr) = run(&["hilb2", "T.T.T,T"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error"), "stderr: {stderr}");
    let (code, _, stderr) = run(&["hilb2", "T.T.T.Q"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte 6"), "stderr: {stderr}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("dolgachev-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# defaults\np = 3\nq = 2\nn-max = 2\nformat = csv\n").unwrap();

    let (code, stdout, _) = run(&["invariants", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("p,q,n"), "config format should apply: {stdout}");
    assert_eq!(stdout.lines().count(), 3);

    // Flag overrides the file.
    let (code, stdout, _) =
        run(&["invariants", "--config", path.to_str().unwrap(), "--n-max", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 2);

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "unknown-key = 1\n").unwrap();
    let (code, _, stderr) = run(&["invariants", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown key"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&["invariants"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["walls", "--n", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&["invariants", "--p", "3", "--q", "2", "--n-max", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("n-max"));
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("invariants"));
    assert!(stdout.contains("verify"));
    assert!(stdout.contains("walls"));
    assert!(stdout.contains("hilb2"));
}
