use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariants_examples() {
    let v = json(&["invariants", "--p", "2", "--a", "3", "--b", "2", "--oracle"]);
    assert_eq!(v["oracle"]["mu"], 4);
    assert_eq!(v["oracle"]["base_size"], 7);
    assert_eq!(v["verdict"]["mu"], "MATCH");
    assert_eq!(v["verdict"]["base_size"], "MATCH");

    let v = json(&["invariants", "--p", "3", "--a", "2", "--b", "3"]);
    assert_eq!(v["formula"]["mu"], 6);
    assert_eq!(v["formula"]["base_size"], 8);

    let v = json(&["invariants", "--p", "2", "--a", "2", "--b", "0"]);
    assert_eq!(v["formula"]["mu"], 8);
    assert_eq!(v["formula"]["base_size"], 1);
    assert_eq!(v["formula"]["product"], 8);
}

#[test]
fn field_order_is_pinned() {
    let out = run(&["invariants", "--p", "2", "--a", "3", "--b", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"n\"",
        "\"order\"",
        "\"mu\"",
        "\"base_size\"",
        "\"product\"",
        "\"exponent\"",
        "\"transitive\"",
    ];
    let formula = &text[text.find("\"formula\"").unwrap()..];
    let positions: Vec<usize> = keys.iter().map(|k| formula.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    assert!(formula.contains("\"exponent\": 1.20183873051,"));
    assert!(formula.contains("\"order\": \"1024\""));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["sweep", "--p", "3", "--a", "2"][..],
        &["--format", "csv", "asym", "--p-list", "5,11,101"],
        &["construct", "sylow", "--n", "8", "--p", "2"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn sweep_table() {
    let out = run(&["--format", "csv", "sweep", "--p", "2", "--a", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "b,r,s,mu,base,product,exponent");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].ends_with(",1"));
    // top row: mu = p, base = p^a
    assert_eq!(lines[4], "3,3,0,2,8,16,1");
}

#[test]
fn verify_suite() {
    let v = json(&["verify", "--max-degree", "8"]);
    assert_eq!(v["result"], "PASS");
    assert_eq!(v["instance_count"], 5);

    let out = run(&["verify", "--max-degree", "8", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("G_b(p=2, a=1, b=0)"), "{err}");

    let v = json(&["verify", "--max-degree", "32"]);
    assert_eq!(v["result"], "PASS");
    assert!(v["instance_count"].as_u64().unwrap() >= 20);
}

#[test]
fn asym_commands() {
    let out = run(&["--format", "csv", "asym", "--lambda", "0.3333333"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.58496).abs() < 1e-5);

    let out = run(&["--format", "csv", "asym", "--p-list", "5,11,101"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "p,theta_minus,theta_zero,theta_plus"
    );
    assert_eq!(text.lines().count(), 4);

    let out = run(&["asym", "--p-list", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not prime"));
}

#[test]
fn construct_examples() {
    let v = json(&["construct", "sylow", "--n", "4", "--p", "2"]);
    assert_eq!(v["report"]["order"], "8");
    assert_eq!(v["report"]["mu"], 2);
    assert_eq!(v["report"]["base_size"], 2);
    assert_eq!(v["nlogn"]["ok"], true);
    assert_eq!(v["group"]["kind"], "sylow");

    let v = json(&["construct", "maxintrans", "--n", "5", "--k", "2"]);
    assert_eq!(v["report"]["product"], 6);

    let v = json(&["construct", "wreath", "--inner", "S2", "--outer", "S3"]);
    assert_eq!(v["report"]["order"], "48");
    assert_eq!(v["nlogn"]["ok"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["invariants", "--p", "4", "--a", "2", "--b", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["invariants", "--p", "2", "--a", "2", "--b", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--format", "xml", "sweep", "--p", "2", "--a", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--element-cap", "0", "sweep", "--p", "2", "--a", "2"])
            .status
            .code(),
        Some(2)
    );
    let capped = run(&[
        "--element-cap",
        "100",
        "invariants",
        "--p",
        "2",
        "--a",
        "3",
        "--b",
        "2",
        "--oracle",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    let degree = run(&["invariants", "--p", "2", "--a", "9", "--b", "1", "--oracle"]);
    assert_eq!(degree.status.code(), Some(3));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("mubase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = run(&[
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
        "sweep",
        "--p",
        "2",
        "--a",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("b,r,s,mu,base,product,exponent\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
