//! End-to-end CLI tests: spec examples, JSON round-trips, exit codes, and
//! byte-determinism of reports and SVG output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plankgeo"))
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, content).unwrap();
    p
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

const CUBE: &str = r#"{"type":"hpoly","normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[1,0,1,0]}"#;
const TRI: &str = r#"{"type":"vpoly","vertices":[[0,0],[2,0],[1,1.7320508075688772]]}"#;
const DISK: &str = r#"{"type":"ball","center":[0,0],"radius":1}"#;
const GAP_PLANKS: &str = r#"[{"normal":[1,0],"low":0.0,"high":0.4},{"normal":[1,0],"low":0.6,"high":1.0}]"#;

#[test]
fn successive_inradius_cube_example() {
    let dir = tmpdir("si");
    let cube = write(&dir, "cube.json", CUBE);
    let out = bin()
        .args(["successive-inradius", "--body"])
        .arg(&cube)
        .arg("--gauge")
        .arg(&cube)
        .args(["--m", "3"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let rho = v["rho"].as_f64().unwrap();
    assert!((rho - 1.0 / 3.0).abs() < 1e-6, "rho {rho}");
    assert_eq!(v["method"], "fixed-point");
}

#[test]
fn verify_conway_triangle_disk_example() {
    let dir = tmpdir("vc");
    let tri = write(&dir, "tri.json", TRI);
    let disk = write(&dir, "disk.json", DISK);
    let out = bin()
        .args(["verify", "conway", "--body"])
        .arg(&tri)
        .arg("--gauge")
        .arg(&disk)
        .args(["--n", "2", "--trials", "50", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let bound = v["bound"].as_f64().unwrap();
    assert!(
        (bound - 0.346410).abs() < 1e-5,
        "bound {bound} want 0.346410"
    );
}

#[test]
fn cover_check_reports_witness() {
    let dir = tmpdir("cc");
    let cube = write(&dir, "square.json", CUBE);
    let planks = write(&dir, "gap.json", GAP_PLANKS);
    let out = bin()
        .args(["cover-check", "--body"])
        .arg(&cube)
        .arg("--planks")
        .arg(&planks)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["covered"], false);
    let w = v["witness"].as_array().unwrap();
    let x = w[0].as_f64().unwrap();
    assert!(x > 0.4 && x < 0.6, "witness x = {x}");
}

#[test]
fn erode_output_feeds_back_as_body() {
    let dir = tmpdir("roundtrip");
    let cube = write(&dir, "cube.json", CUBE);
    let centered =
        write(&dir, "c.json", r#"{"type":"hpoly","normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[0.5,0.5,0.5,0.5]}"#);
    let eroded = dir.join("eroded.json");
    let out = bin()
        .args(["erode", "--body"])
        .arg(&cube)
        .arg("--gauge")
        .arg(&centered)
        .args(["--rho", "0.4", "--out"])
        .arg(&eroded)
        .output()
        .unwrap();
    assert!(out.status.success());
    // The emitted body must be readable by the CLI again.
    let out = bin()
        .args(["width", "--body"])
        .arg(&eroded)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    // [0.2,0.8]^2 has minimal width 0.6.
    let val = v["value"].as_f64().unwrap();
    assert!((val - 0.6).abs() < 1e-9, "width {val}");
}

#[test]
fn width_with_direction_and_gauge() {
    let dir = tmpdir("width");
    let cube = write(&dir, "cube.json", CUBE);
    let disk = write(&dir, "disk.json", DISK);
    let out = bin()
        .args(["width", "--body"])
        .arg(&cube)
        .arg("--gauge")
        .arg(&disk)
        .args(["--direction", "0,1"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn inradius_square_disk() {
    let dir = tmpdir("inr");
    let cube = write(&dir, "cube.json", CUBE);
    let disk = write(&dir, "disk.json", DISK);
    let out = bin()
        .args(["inradius", "--body"])
        .arg(&cube)
        .arg("--gauge")
        .arg(&disk)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!((v["scale"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn probe_deterministic_across_thread_counts() {
    let dir = tmpdir("probe");
    let cfg = write(
        &dir,
        "cfg.json",
        r#"{"target":"affine-plank","dimension":2,"trials":12,"masterSeed":99,"m":1,"n":2,"tolerance":1e-6}"#,
    );
    let out1 = dir.join("r1.json");
    let out2 = dir.join("r2.json");
    let csv = dir.join("r.csv");
    let s1 = bin()
        .args(["probe", "--config"])
        .arg(&cfg)
        .args(["--threads", "1", "--out"])
        .arg(&out1)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(s1.status.code(), Some(0));
    let s2 = bin()
        .args(["probe", "--config"])
        .arg(&cfg)
        .args(["--threads", "4", "--out"])
        .arg(&out2)
        .output()
        .unwrap();
    assert_eq!(s2.status.code(), Some(0));
    assert_eq!(
        fs::read(&out1).unwrap(),
        fs::read(&out2).unwrap(),
        "probe reports differ across thread counts"
    );
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&out1).unwrap()).unwrap();
    assert!(report["conclusion"]
        .as_str()
        .unwrap()
        .contains("no counterexample"));
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("seed,deficit\n"));
    assert_eq!(csv_text.lines().count(), 13); // header + 12 trials
}

#[test]
fn svg_output_is_byte_identical() {
    let dir = tmpdir("svg");
    let tri = write(&dir, "tri.json", TRI);
    let disk = write(&dir, "disk.json", DISK);
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    for out in [&a, &b] {
        let s = bin()
            .args(["plot", "--body"])
            .arg(&tri)
            .arg("--gauge")
            .arg(&disk)
            .args(["--rho", "0.3", "--sites", "0.5,0.4;1.5,0.6", "--out"])
            .arg(out)
            .output()
            .unwrap();
        assert!(
            s.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&s.stderr)
        );
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("circle")); // gauge sites and/or disk
}

#[test]
fn optimal_cuts_emits_cut_tree_json() {
    let dir = tmpdir("cuts");
    let cube = write(&dir, "cube.json", CUBE);
    let tree_path = dir.join("tree.json");
    let out = bin()
        .args(["optimal-cuts", "--body"])
        .arg(&cube)
        .arg("--gauge")
        .arg(&cube)
        .args(["--n", "3", "--out"])
        .arg(&tree_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&tree_path).unwrap()).unwrap();
    assert!(v.get("cut").is_some());
    // The tree must plot cleanly as pieces.
    let svg = dir.join("cuts.svg");
    let out = bin()
        .args(["plot", "--body"])
        .arg(&cube)
        .arg("--cuts")
        .arg(&tree_path)
        .arg("--out")
        .arg(&svg)
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn usage_and_data_errors_exit_1() {
    // Unknown flag.
    let out = bin().args(["width", "--nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Malformed body file.
    let dir = tmpdir("err");
    let bad = write(&dir, "bad.json", "{\"type\":\"hpoly\"");
    let out = bin().args(["width", "--body"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("InvalidInput"), "stderr was: {err}");

    // Geometrically invalid body (unbounded) names the module error.
    let unbounded = write(
        &dir,
        "unbounded.json",
        r#"{"type":"hpoly","normals":[[1,0]],"offsets":[1]}"#,
    );
    let out = bin()
        .args(["width", "--body"])
        .arg(&unbounded)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("UnboundedBody"), "stderr was: {err}");
}

#[test]
fn sequence_flag_lists_monotone_products() {
    let dir = tmpdir("seq");
    let tri = write(&dir, "tri.json", TRI);
    let disk = write(&dir, "disk.json", DISK);
    let out = bin()
        .args(["successive-inradius", "--body"])
        .arg(&tri)
        .arg("--gauge")
        .arg(&disk)
        .args(["--m", "5", "--sequence"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let rows = v["sequence"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let products: Vec<f64> = rows.iter().map(|r| r["mRho"].as_f64().unwrap()).collect();
    for pair in products.windows(2) {
        assert!(pair[1] >= pair[0] - 1e-8);
    }
}
