use std::path::PathBuf;
use std::process::{Command, Output};

use cyclodcr::compiler::{compile_sixj, dcr_from_json};
use cyclodcr::SixJLabels;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclodcr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(o)).unwrap()
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn eval_symmetric_k500_matches_reference() {
    let o = run(&[
        "eval",
        "--spins",
        "60,60,60,60,60,60",
        "--level",
        "500",
        "--engine",
        "dcr-mp",
        "--bits",
        "1024",
        "--format",
        "json",
    ]);
    let v = json(&o);
    let re = num(&v["re"]);
    assert!(((re + 1.0930e-3) / 1.0930e-3).abs() < 5e-5, "{re}");
    assert_eq!(v["engine"], "dcr-mp");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["eval", "--spins", "2,2,2,2,2,2", "--level", "5"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["eval", "--spins", "1,1,1,1,1,1", "--level", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["eval", "--spins", "2,2,2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--spins", "2,2,2,2,2,2"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "--spins", "20,20,20,20,20,20", "--level", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "eval",
            "--spins",
            "2,2,2,2,2,2",
            "--level",
            "5",
            "--engine",
            "lse-f64",
            "--bits",
            "128"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["tv", "--file", "/nonexistent/tri.json", "--level", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn engines_agree_on_small_symbol() {
    let mut vals = Vec::new();
    for (engine, bits) in [
        ("dcr-f64", None),
        ("dcr-mp", Some("256")),
        ("lse-f64", None),
        ("lse-mp", Some("256")),
        ("exact", Some("256")),
    ] {
        let mut args = vec![
            "eval",
            "--spins",
            "4,2,2,3,3,1",
            "--level",
            "6",
            "--engine",
            engine,
            "--format",
            "json",
        ];
        if let Some(b) = bits {
            args.extend(["--bits", b]);
        }
        vals.push(num(&json(&run(&args))["re"]));
    }
    for v in &vals[1..] {
        assert!((v - vals[0]).abs() < 1e-12, "{vals:?}");
    }
}

#[test]
fn classical_parts_are_rational() {
    let v = json(&run(&[
        "eval",
        "--spins",
        "2,2,2,2,2,2",
        "--engine",
        "classical",
        "--parts",
        "--format",
        "json",
    ]));
    assert_eq!(v["a"]["re"], "1/6");
    assert_eq!(v["r"]["re"], "1");
}

#[test]
fn compile_json_round_trips() {
    let o = run(&["compile", "--spins", "20,20,20,20,20,20"]);
    assert_eq!(o.status.code(), Some(0));
    let dcr = dcr_from_json(&stdout(&o)).unwrap();
    assert_eq!(dcr, compile_sixj(SixJLabels::symmetric(20)).unwrap());
}

#[test]
fn single_point_sweep_equals_eval() {
    let o = run(&[
        "sweep",
        "--spins",
        "40,40,40,40,40,40",
        "--start",
        "0.01",
        "--stop",
        "0.01",
        "--count",
        "1",
        "--unit-circle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[5], "OK");
    let swept: f64 = row[3].parse().unwrap();
    let e = json(&run(&[
        "eval",
        "--spins",
        "40,40,40,40,40,40",
        "--level",
        "98",
        "--format",
        "json",
    ]));
    assert!((swept - num(&e["re"])).abs() < 1e-13 * swept.abs().max(1.0));
    assert!(text.contains("# compiles=1 points=1"));
}

#[test]
fn sweep_compiles_once_for_many_points() {
    let o = run(&[
        "sweep",
        "--spins",
        "20,20,20,20,20,20",
        "--start",
        "0.001",
        "--stop",
        "0.5",
        "--count",
        "200",
        "--unit-circle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 201);
    assert!(text.contains("# compiles=1 points=200"));
}

#[test]
fn sweep_reports_poles() {
    let o = run(&[
        "sweep",
        "--spins",
        "2,2,2,2,2,2",
        "--start",
        "0.25",
        "--stop",
        "0.25",
        "--count",
        "1",
        "--unit-circle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ERROR pole at Phi_4"));
}

#[test]
fn table3_rows() {
    let o = run(&["table", "t3", "--format", "json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!(r["rel_dev_truth"].as_f64().unwrap() < 5e-5, "{r}");
    }
    let j90 = rows.iter().find(|r| r["j"] == 90).unwrap();
    assert!(j90["lse_f64"].as_f64().unwrap() > 0.0);
    assert!(j90["dcr_f64"].as_f64().unwrap() < 0.0);
}

#[test]
fn tv_one_tetrahedron() {
    let v = json(&run(&[
        "tv",
        "--file",
        &data("one_tet.json"),
        "--level",
        "3",
        "--format",
        "json",
    ]));
    assert_eq!(v["colorings"], 1);
    assert!((num(&v["re"]) - 2.5e-3).abs() < 1e-15);
    let four = json(&run(&[
        "tv",
        "--file",
        &data("four_tet.json"),
        "--level",
        "3",
        "--bits",
        "256",
        "--format",
        "json",
    ]));
    assert!((num(&four["re"]) - 2.5e-3).abs() < 1e-12);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("cyclodcr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let o = run(&["compile", "--spins", "2,2,2,2,2,2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(dcr_from_json(&std::fs::read_to_string(&path).unwrap()).is_ok());
    std::fs::remove_dir_all(dir).unwrap();
}
