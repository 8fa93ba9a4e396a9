use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use icobr::cli::analyze;
use icobr::ScenarioConfig;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_icobr"));
    c.env_remove("ICOBR_WORKERS");
    c
}

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const STRONG: &str = r#"{"a12":0.5,"a21":1.8,"b1":1,"b2":10,"c1":2,"c2":1,
    "P1":10,"P2":10,"P1R":10,"P2R":10,"PR":10,"eta_mac":1,"eta_bc":1}"#;

#[test]
fn analyze_text_and_json() {
    let out = run(bin().arg("analyze").arg(preset("strong_interference.json")));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: sum-capacity established (separable conditions, MacBottleneck)"));

    let out = run(bin().args(["analyze", "--json"]).arg(preset("strong_interference.json")));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["capacity_established"], true);
    let sc = ScenarioConfig::from_json(STRONG).unwrap().to_scenario().unwrap();
    let direct = analyze(&sc).unwrap();
    assert_eq!(
        v["signal_relaying"]["sum_rate"].as_f64().unwrap(),
        direct.signal_relaying.sum_rate
    );
    assert_eq!(v["upper_bound"]["value"].as_f64().unwrap(), direct.upper_bound.unwrap().value);
}

#[test]
fn validation_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write(dir.path(), "neg.json", &STRONG.replace("\"b1\":1", "\"b1\":-1"));
    let out = run(bin().arg("analyze").arg(&neg));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b1"));

    let extra = write(dir.path(), "extra.json", &STRONG.replace("\"b1\"", "\"bogus\":1,\"b1\""));
    assert_eq!(run(bin().arg("analyze").arg(&extra)).status.code(), Some(1));
    assert_eq!(run(bin().arg("analyze").arg(dir.path().join("missing.json"))).status.code(), Some(1));
    assert_eq!(run(bin().arg("frobnicate")).status.code(), Some(1));
    assert_eq!(run(bin().args(["verify", "--n", "0"])).status.code(), Some(1));
    let cfg = write(dir.path(), "ok.json", STRONG);
    let out = run(bin().arg("region").arg(&cfg).args(["--xi", "1.5", "-o"]).arg(dir.path().join("r.txt")));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_is_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    let spec = preset("c1_sweep_a21_0.9.json");
    assert!(run(bin().arg("sweep").arg(&spec).arg("-o").arg(&a).args(["--workers", "1"])).status.success());
    assert!(run(bin().arg("sweep").arg(&spec).arg("-o").arg(&b).args(["--workers", "3"])).status.success());
    assert!(run(bin().arg("sweep").arg(&spec).arg("-o").arg(&c).env("ICOBR_WORKERS", "2")).status.success());
    let (a, b, c) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap(), std::fs::read(c).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, c);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("c1,sr_rate,sr_xi,if_rate,if_xi,ub_rate,ub_xi,warning\n"));
    assert_eq!(text.lines().count(), 52);

    let out = run(bin().arg("sweep").arg(&spec).arg("-o").arg(dir.path().join("d.csv")).env("ICOBR_WORKERS", "lots"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn single_value_sweep_matches_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "one.json",
        &format!(r#"{{"base":{STRONG},"param":"c1","values":[2],"objectives":["sr","if","ub"]}}"#),
    );
    let csv_path = dir.path().join("one.csv");
    assert!(run(bin().arg("sweep").arg(&spec).arg("-o").arg(&csv_path)).status.success());
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let row = rdr.records().next().unwrap().unwrap();
    let cell = |i: usize| row[i].parse::<f64>().unwrap();

    let sc = ScenarioConfig::from_json(STRONG).unwrap().to_scenario().unwrap();
    let r = analyze(&sc).unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-8 * (1.0 + b.abs());
    assert!(close(cell(1), r.signal_relaying.sum_rate));
    assert!(close(cell(2), r.signal_relaying.xi_star.xi));
    assert!(close(cell(3), r.interference_forwarding.sum_rate));
    assert!(close(cell(5), r.upper_bound.unwrap().value));
    assert_eq!(&row[7], "");
}

#[test]
fn region_dump_contents() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", &STRONG.replace("\"a21\":1.8", "\"a21\":0.9").replace("\"c1\":2", "\"c1\":4"));
    let out_path = dir.path().join("region.txt");
    let out = run(bin().arg("region").arg(&cfg).args(["--xi", "0.5", "-o"]).arg(&out_path));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 disagreements on 10000 grid points"));
    let dump = std::fs::read_to_string(&out_path).unwrap();
    for section in ["# rate-split system", "# projected onto (r1, r2)", "# closed form", "# membership"] {
        assert!(dump.contains(section), "{section}");
    }
    assert!(!dump.contains("1*r2cp <= 0\n"));

    // signal relaying pins the forwarded stream to zero
    let out = run(bin().arg("region").arg(&cfg).args(["--xi", "0.5", "--mode", "sr", "-o"]).arg(&out_path));
    assert_eq!(out.status.code(), Some(0));
    let dump = std::fs::read_to_string(&out_path).unwrap();
    assert!(dump.contains("# mode sr") && dump.contains("1*r2cp <= 0\n"));
}

#[test]
fn verify_exit_code_follows_report() {
    let out = run(bin().args(["verify", "--seed", "42", "--n", "1"]));
    let text = String::from_utf8(out.stdout).unwrap();
    let expected = if text.contains("\nFAIL ") { 2 } else { 0 };
    assert_eq!(out.status.code(), Some(expected), "{text}");
    assert!(text.contains("PASS achievable_le_bound"));
}
