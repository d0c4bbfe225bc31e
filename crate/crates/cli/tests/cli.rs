use std::process::{Command, Output};

fn rrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrp"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    rrp(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(rrp(args).stdout).unwrap()
}

#[test]
fn check_q_exit_codes() {
    assert_eq!(code(&["check-q", "--r", "101"]), 0);
    assert_eq!(code(&["check-q", "--r", "17"]), 1);
    assert!(stdout(&["check-q", "--r", "17"]).contains("[FAIL        ] r mod 8"));
    let out = rrp(&["check-q", "--r", "15"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("15"));
}

#[test]
fn scan_q_with_expectation() {
    assert_eq!(code(&["scan-q", "--max-r", "150", "--expect", "data/q_list.txt"]), 0);
    assert_eq!(stdout(&["scan_q", "--max-r", "13"]).lines().next(), Some("5 7 11 13"));
    assert_eq!(code(&["scan-q", "--max-r", "300"]), 64);
    assert_eq!(code(&["scan-q", "--max-r", "150", "--expect", "no/such/file"]), 66);
    let tmp = std::env::temp_dir().join("rrp_short_list.txt");
    std::fs::write(&tmp, "5 7 11\n").unwrap();
    assert_eq!(code(&["scan-q", "--max-r", "13", "--expect", tmp.to_str().unwrap()]), 1);
}

#[test]
fn check_quad_exit_codes() {
    assert_eq!(code(&["check-quad", "--d", "2", "--r", "11"]), 0);
    assert_eq!(code(&["check-quad", "--d", "5", "--r", "5"]), 1);
    let out = stdout(&["check-quad", "--d", "7", "--r", "11"]);
    assert_eq!(code(&["check-quad", "--d", "7", "--r", "11"]), 2);
    assert!(out.contains("missing h+ table entry: d = 7 r = 11"));
    assert_eq!(code(&["check-quad", "--d", "4", "--r", "11"]), 64);
    assert_eq!(code(&["check-quad", "--d", "2", "--r", "5", "--theorem"]), 0);
    assert_eq!(code(&["check-theorem", "--r", "7"]), 1);
    let table = std::env::temp_dir().join("rrp_table.txt");
    std::fs::write(&table, "7 11 odd test-fixture\n").unwrap();
    assert_eq!(code(&["check-quad", "--d", "7", "--r", "11", "--hplus-table", table.to_str().unwrap()]), 0);
}

#[test]
fn frey_command() {
    let out = stdout(&["frey", "--r", "5", "--x", "2", "--y", "1", "--k", "0,1,2"]);
    assert!(out.contains("A+B+C  = 0"));
    assert!(out.contains("delta"));
    assert_eq!(code(&["frey", "--r", "5", "--x", "2", "--y", "2"]), 64);
    assert_eq!(code(&["frey", "--r", "5", "--x", "1", "--y", "0", "--k", "0,0,1"]), 64);
    assert_eq!(code(&["frey", "--r", "7", "--x", "-3", "--y", "2", "--k", "1,2,3"]), 0);
}

#[test]
fn json_reports_are_stable() {
    let args = ["check-quad", "--d", "2", "--r", "13", "--json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["result"]["overall"], "pass");
    assert_eq!(v["tables"][0]["origin"], "shipped");
    assert_eq!(v["tables"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(v.get("timing_ms").is_none());
    let t: serde_json::Value = serde_json::from_str(&stdout(&["check-q", "--r", "7", "--json", "--timing"])).unwrap();
    assert!(t["timing_ms"].is_number());
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[]), 64);
    assert_eq!(code(&["check-q"]), 64);
    assert_eq!(code(&["--help"]), 0);
}
