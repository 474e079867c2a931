use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapcone")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn kodaira_prints_exact_value() {
    let out = run(&["kodaira", "--n", "7", "--space", "full"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("2/7"));
}

#[test]
fn full_and_fiber_kodaira_agree() {
    for n in 3..=12 {
        let n = n.to_string();
        let full = run(&["kodaira", "--n", &n, "--space", "full", "--format", "csv"]);
        let fiber = run(&["kodaira", "--n", &n, "--space", "fiber", "--format", "csv"]);
        let value = |o: &Output| stdout(o).lines().nth(1).unwrap().split(',').nth(2).unwrap().to_string();
        assert_eq!(value(&full), value(&fiber), "n={n}");
        assert_eq!(full.status.code(), Some(0));
    }
}

#[test]
fn cone_certificate_for_three_points() {
    let out = run(&["cone-cert", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "pass");
    let mins: Vec<&str> = v["certificate"]["coordinates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["minimum"].as_str().unwrap())
        .collect();
    assert_eq!(mins, ["1/4", "1/2"]);
}

#[test]
fn repeated_root_discriminant_is_zero() {
    let out = run(&["disc", "--coeffs", "1,-2,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn act_substitutes() {
    let out = run(&["act", "--coeffs", "1,0,0", "--matrix", "1,1,0,1"]);
    assert_eq!(stdout(&out).trim(), "1,2,1");
    let bad = run(&["act", "--coeffs", "1,0,0", "--matrix", "2,0,0,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_output_round_trips() {
    for args in [
        &["pairings", "--n", "5"][..],
        &["cone-cert", "--n", "4"],
        &["relation", "--n", "6"],
        &["fiber-check", "--n", "5"],
        &["kodaira", "--n", "9", "--space", "fiber"],
        &["disc", "--coeffs", "3,1,-4,2,5"],
    ] {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let text = stdout(&run(&full));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["format"], "json");
        assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn verification_commands_pass() {
    for cmd in ["relation", "fiber-check", "cone-cert"] {
        let out = run(&[cmd, "--n", "8"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(stdout(&out).contains("verdict: pass"));
    }
}

#[test]
fn invalid_input_exits_two() {
    let small = run(&["kodaira", "--n", "2"]);
    assert_eq!(small.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&small.stderr).contains("at least 3"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["pairings", "--n", "x"]).status.code(), Some(2));
    assert_eq!(run(&["disc", "--coeffs", "1,a"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--coeffs", "1,-2,1,0", "--bmax", "100"]).status.code(), Some(2));
}

#[test]
fn count_then_fit_from_csv() {
    let out = run(&["count", "--coeffs", "1,0,-1,-1", "--bmax", "3200", "--grid", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    assert!(csv.starts_with("B,N\n100,200\n"));
    let path = std::env::temp_dir().join(format!("mapcone-cli-{}.csv", std::process::id()));
    std::fs::write(&path, &csv).unwrap();
    let fit = run(&["fit", "--in", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(fit.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&fit)).unwrap();
    let slope = v["fit"]["slope"].as_f64().unwrap();
    assert!((0.5..0.9).contains(&slope), "slope {slope}");
    assert_eq!(v["fit"]["points"], 6);
}
