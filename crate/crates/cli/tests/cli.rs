use std::process::{Command, Output};

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_c4() {
    let o = springer(&["list", "--type", "C", "--rank", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("torus C4"));
    assert!(out.contains("(b) t=1 k=1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(springer(&["list", "--type", "C", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(springer(&["list", "--type", "Q", "--rank", "3"]).status.code(), Some(2));
    assert_eq!(springer(&["report", "--family", "z"]).status.code(), Some(2));
}

#[test]
fn report_json() {
    let o = springer(&["report", "--family", "j", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dual"]["gamma_order"]["value"], 3);
}

#[test]
fn verify_exit_codes() {
    let ok = springer(&["verify", "finite", "--max-rank", "4"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = springer(&["verify", "afunction", "--case", "b", "--t", "1", "--k", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}
