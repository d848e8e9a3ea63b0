use std::process::Command;

use serde_json::Value;

fn tqft(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_tqft")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}");
    serde_json::from_slice(&out.stdout).unwrap()
}

fn parse_ratio(s: &str) -> f64 {
    let (n, d) = s.split_once('/').unwrap();
    n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
}

#[test]
fn approx_matches_exact() {
    for (m, g, w) in [
        ("L(3,1)", "Z/3", "cyclic:3:1"),
        ("L(5,1)", "Z/5", "cyclic:5:2"),
        ("T3_6tet", "Z/4", "cyclic:4:1"),
        ("S3_bd4simplex", "S3", "trivial"),
    ] {
        let v = tqft(&["z", "--manifold", m, "--group", g, "--cocycle", w]);
        let (mut re, mut im) = (0.0, 0.0);
        for pair in v["exact"].as_array().unwrap() {
            let c = parse_ratio(pair[0].as_str().unwrap());
            let t = 2.0 * std::f64::consts::PI * parse_ratio(pair[1].as_str().unwrap());
            re += c * t.cos();
            im += c * t.sin();
        }
        let approx = v["approx"].as_array().unwrap();
        assert!((approx[0].as_f64().unwrap() - re).abs() < 1e-12, "{m}");
        assert!((approx[1].as_f64().unwrap() - im).abs() < 1e-12, "{m}");
    }
}

#[test]
fn output_modes_and_timing() {
    let v = tqft(&["z", "--manifold", "L(2,1)", "--group", "Z/2", "--output", "approx"]);
    assert!(v.get("exact").is_none() && v.get("approx").is_some());
    let v = tqft(&["z", "--manifold", "L(2,1)", "--group", "Z/2", "--output", "exact"]);
    assert!(v.get("approx").is_none());
    assert!(v["meta"].get("timing_ms").is_none());
    let v = tqft(&["z", "--manifold", "L(2,1)", "--group", "Z/2", "--timing"]);
    assert!(v["meta"]["timing_ms"].is_number());
}

#[test]
fn hilbert_examples() {
    assert_eq!(tqft(&["hilbert", "--genus", "1", "--group", "S3"])["dim"], 8);
    let v = tqft(&["hilbert", "--genus", "0", "--group", "Z/5"]);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["sectors"][0]["weight"], "1/5");
    assert_eq!(tqft(&["hilbert", "--genus", "2", "--group", "Z/2"])["dim"], 16);
}
