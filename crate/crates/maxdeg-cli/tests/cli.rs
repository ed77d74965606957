use std::process::{Command, Output};

fn maxdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxdeg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = maxdeg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts_csv() {
    assert_eq!(stdout(&["counts", "2conn-outerplanar", "4", "--format", "csv"]), "n,count\n2,1\n3,1\n4,9\n");
    assert_eq!(stdout(&["counts", "conn-outerplanar", "4", "--format", "csv"]), "n,count\n1,1\n2,1\n3,4\n4,37\n");
}

#[test]
fn counts_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["counts", "conn-sp", "5"])).unwrap();
    assert_eq!(v[4]["count"], "622");
}

#[test]
fn unknown_class_fails_with_message() {
    let out = maxdeg(&["counts", "planar", "4"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown graph class"));
}

#[test]
fn constants_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["constants", "2conn-sp"])).unwrap();
    assert!((v["q"].as_f64().unwrap() - 0.7620402).abs() < 1e-6);
    assert!((v["c"].as_f64().unwrap() - 3.679772).abs() < 2e-6);
}

#[test]
fn degrees_csv() {
    let out = stdout(&["degrees", "2conn-outerplanar", "4", "6", "--format", "csv"]);
    assert!(out.contains("4,2,,2/3,"));
    assert!(out.contains("4,3,,1/3,"));
}

#[test]
fn verify_level_one() {
    let out = maxdeg(&["verify", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(!maxdeg(&["verify", "9"]).status.success());
}

#[test]
fn sampling_is_reproducible() {
    let a = stdout(&["sample", "conn-sp", "30", "--count", "3", "--seed", "4"]);
    let b = stdout(&["sample", "conn-sp", "30", "--count", "3", "--seed", "4"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_ne!(a, stdout(&["sample", "conn-sp", "30", "--count", "3", "--seed", "5"]));
}

#[test]
fn bounds_and_tails() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["bounds", "2conn-sp", "6"])).unwrap();
    assert!(v["expectation"]["lower_float"].as_f64().unwrap() <= v["expectation"]["upper_float"].as_f64().unwrap());
    let t = stdout(&["tails", "2conn-outerplanar", "8", "--format", "csv"]);
    let mut lines = t.lines();
    assert_eq!(lines.next(), Some("k,tail,tail_float,limit_tail,n_tail"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[..3], ["0", "1", "1"]);
    assert!((row[3].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn experiment_writes_artifacts() {
    let dir = std::env::temp_dir().join(format!("maxdeg-cli-exp-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let args = ["experiment", "2conn-outerplanar", "--sizes", "50,100", "--samples", "20", "--seed", "1", "--output", d];
    let a = stdout(&args);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["slope"].is_number());
    for f in ["samples.csv", "summary.csv", "records.json", "plot.dat"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let plot = std::fs::read_to_string(dir.join("plot.dat")).unwrap();
    assert_eq!(plot.lines().count(), 3);
    assert_eq!(a, stdout(&args), "identical runs must print identical output");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn schema_is_valid_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["schema"])).unwrap();
    assert_eq!(v["schema_version"], 1);
    for cmd in ["counts", "constants", "degrees", "tails", "bounds", "sample", "experiment", "verify"] {
        assert!(v["commands"][cmd].is_object(), "{cmd}");
    }
}
