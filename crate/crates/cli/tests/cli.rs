use std::path::PathBuf;
use std::process::{Command, Output};

fn delpezzo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delpezzo")).args(args).output().unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("delpezzo-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(delpezzo(&["feasibility", "--p", "4"]).status.code(), Some(2));
    assert_eq!(delpezzo(&["presentation", "--chart", "5"]).status.code(), Some(2));
    assert_eq!(delpezzo(&["verify", "--suite", "cusps"]).status.code(), Some(2));
    assert_eq!(delpezzo(&["verify", "--chart", "4"]).status.code(), Some(2));
    assert_eq!(delpezzo(&[]).status.code(), Some(2));
}

#[test]
fn feasibility_csv_for_p_2() {
    let out = delpezzo(&["feasibility", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,d,q,feasible,attained");
    assert_eq!(lines.len(), 1 + 12 * 8);
    assert!(lines.contains(&"2,1,1,true,true"));
    assert!(lines.contains(&"2,2,1,true,true"));
    assert!(lines.contains(&"2,3,1,false,false"));
}

#[test]
fn feasibility_json_for_p_3() {
    let out = delpezzo(&["feasibility", "--p", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["p"], 3);
    assert_eq!(v["q_min_by_d"][0], serde_json::json!({"d": 1, "q_min": 2}));
    assert_eq!(v["q_min_by_d"].as_array().unwrap().len(), 12);
}

#[test]
fn cusp_suite_json_reports_cramer_identity() {
    let out = delpezzo(&["verify", "--suite", "cusp", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_name"] == "cusp: (det A_1)^4 * c_13 = (det A_0)^4 * c_11")
        .unwrap();
    assert_eq!(check["status"], "pass");
    assert_eq!(v["counts"]["fail"], 0);
    // keys are sorted
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["chart", "checks", "counts", "suite"]);
}

#[test]
fn presentation_on_chart_two_verifies() {
    let out = delpezzo(&["verify", "--suite", "presentation", "--chart", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  chart 2: relation r_6 vanishes in M"));
    assert!(text.contains("0 failed"));
}

#[test]
fn presentation_round_trip() {
    let dir = scratch_dir("round-trip");
    let path = dir.join("chart0.json");
    let out = delpezzo(&["presentation", "--chart", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let names: Vec<&str> = v["relations"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["r_0", "r_1", "r_2", "r_3", "r_4", "r_5", "r_6"]);

    let back = delpezzo(&["presentation", "--input", path.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stdout));

    // a tampered file fails verification
    let mut tampered = v.clone();
    let terms = tampered["relations"][1]["terms"].as_array_mut().unwrap();
    terms.push(serde_json::json!({"coeff_den": "1", "coeff_num": "1", "exponents": [1, 0, 0, 0, 0, 0]}));
    let bad = dir.join("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&tampered).unwrap()).unwrap();
    let out = delpezzo(&["presentation", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL  chart 0: relation r_1 vanishes in M"));

    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{\"chart\": 9}").unwrap();
    assert_eq!(delpezzo(&["presentation", "--input", garbage.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_directory_variable() {
    let dir = scratch_dir("out-dir");
    let out = Command::new(env!("CARGO_BIN_EXE_delpezzo"))
        .args(["feasibility", "--out", "fig.csv"])
        .env("DELPEZZO_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("fig.csv")).unwrap();
    assert!(text.starts_with("p,d,q,feasible,attained\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
