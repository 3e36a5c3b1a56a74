use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn dgk(args: &[&str], cache_env: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dgk"));
    cmd.args(args)
        .env_remove("DGK_CACHE")
        .env("RUST_LOG", "warn");
    if let Some(dir) = cache_env {
        cmd.env("DGK_CACHE", dir);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> Value {
    let (code, stdout, stderr) = dgk(args, None);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn cohomology_of_example_a() {
    let a = example("exampleA.json");
    let r = report(&["cohomology", a.to_str().unwrap(), "--max-degree", "6"]);
    assert_eq!(r["tool"], "dgk");
    assert_eq!(r["field"], "Q");
    assert_eq!(r["result"]["dims"], serde_json::json!([1, 1, 0, 0, 0, 0]));
    assert_eq!(r["result"]["basis"][1][0], "[y]");
}

#[test]
fn koszul_dg_of_example_a() {
    let a = example("exampleA.json");
    let r = report(&[
        "koszul-dg",
        a.to_str().unwrap(),
        "--max-degree",
        "8",
        "--max-stage",
        "8",
    ]);
    assert_eq!(r["result"]["outcome"], "yes");
    assert_eq!(r["result"]["window"], serde_json::json!({"D": 8, "S": 8}));
    assert_eq!(r["window"], serde_json::json!({"D": 8, "S": 8}));
}

#[test]
fn local_pipeline_on_truncated_polynomial() {
    let t4 = example("k_t_mod_t4.json");
    let r = report(&["local-pipeline", t4.to_str().unwrap()]);
    let res = &r["result"];
    assert_eq!(res["koszul_dg"]["outcome"], "yes");
    assert_eq!(res["ext_iso_to_r"]["found"], true);
    assert_eq!(res["strongly_quasi_koszul"]["outcome"], "no");
    assert!(res["strongly_quasi_koszul"]["witness"].is_object());
}

#[test]
fn algebra_commands_accept_structure_constants() {
    let dual = example("dual_numbers.json");
    let r = report(&["strongly-quasi-koszul", dual.to_str().unwrap()]);
    assert_eq!(r["result"]["outcome"], "yes");
    let plane = example("square_zero_plane.json");
    let r = report(&["frobenius", plane.to_str().unwrap()]);
    assert_eq!(r["result"]["outcome"], "no");
    let r = report(&[
        "adjunction-check",
        dual.to_str().unwrap(),
        "--max-degree",
        "4",
    ]);
    assert_eq!(r["result"]["quasi_isomorphism"], true);
}

#[test]
fn field_override_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let a = example("exampleA.json");
    let (code, stdout, _) = dgk(
        &[
            "cohomology",
            a.to_str().unwrap(),
            "--field",
            "GF(2)",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["field"], "GF(2)");
}

#[test]
fn reports_are_deterministic() {
    let a = example("exampleA.json");
    let args = [
        "ext",
        a.to_str().unwrap(),
        "--max-degree",
        "6",
        "--seed",
        "11",
    ];
    let (_, first, _) = dgk(&args, None);
    let (_, second, _) = dgk(&args, None);
    assert_eq!(first, second);
    let t4 = example("k_t_mod_t4.json");
    let args = ["local-pipeline", t4.to_str().unwrap(), "--seed", "5"];
    assert_eq!(dgk(&args, None).1, dgk(&args, None).1);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = example("k_x.json");
    let args = [
        "duality-roundtrip",
        a.to_str().unwrap(),
        "--max-degree",
        "5",
        "--cache",
        dir.path().to_str().unwrap(),
    ];
    let (code, cold, _) = dgk(&args, None);
    assert_eq!(code, 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let (_, warm, _) = dgk(&args, None);
    assert_eq!(cold, warm);
    let mut verify = args.to_vec();
    verify.push("--verify-cache");
    let (code, verified, _) = dgk(&verify, None);
    assert_eq!(code, 0);
    assert_eq!(verified, cold);
    let (_, uncached, _) = dgk(&args[..4], None);
    assert_eq!(uncached, cold);
}

#[test]
fn tampered_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let a = example("exampleA.json");
    let args = [
        "cohomology",
        a.to_str().unwrap(),
        "--cache",
        dir.path().to_str().unwrap(),
    ];
    let (_, cold, _) = dgk(&args, None);
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("[1,1,", "[1,2,", 1)).unwrap();
    let (code, again, stderr) = dgk(&args, None);
    assert_eq!(code, 0);
    assert_eq!(again, cold);
    assert!(stderr.contains("corrupt"), "{stderr}");
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);
}

#[test]
fn verify_cache_detects_a_consistent_but_wrong_entry() {
    let dir = tempfile::tempdir().unwrap();
    let a = example("exampleA.json");
    let args = [
        "cohomology",
        a.to_str().unwrap(),
        "--cache",
        dir.path().to_str().unwrap(),
    ];
    dgk(&args, None);
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let key = entry.file_stem().unwrap().to_str().unwrap().to_string();
    dgk_cli::Cache::open(dir.path())
        .unwrap()
        .put(&key, "{\"dims\":[7]}")
        .unwrap();
    let mut verify = args.to_vec();
    verify.push("--verify-cache");
    let (code, _, stderr) = dgk(&verify, None);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn cache_environment_variable_wins() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let a = example("exampleA.json");
    let (code, _, _) = dgk(
        &[
            "tor",
            a.to_str().unwrap(),
            "--cache",
            flag_dir.path().to_str().unwrap(),
        ],
        Some(env_dir.path()),
    );
    assert_eq!(code, 0);
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 1);
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 0);
}

#[test]
fn exit_codes() {
    let a = example("exampleA.json");
    let a = a.to_str().unwrap();
    assert_eq!(dgk(&["--help"], None).0, 0);
    assert_eq!(dgk(&["no-such-command", a], None).0, 1);
    assert_eq!(dgk(&["cohomology", a, "--max-degree", "0"], None).0, 1);
    assert_eq!(dgk(&["cohomology", "/nonexistent.json"], None).0, 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"generators\": [").unwrap();
    assert_eq!(dgk(&["validate", bad.to_str().unwrap()], None).0, 1);
    // d(d(x)) = x*y ≠ 0
    let not_dga = dir.path().join("not_dga.json");
    fs::write(
        &not_dga,
        r#"{"generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 2}],
            "differential": {"x": "y", "y": "x*y"}, "truncation_degree": 4}"#,
    )
    .unwrap();
    let (code, stdout, _) = dgk(&["validate", not_dga.to_str().unwrap()], None);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["result"]["validation"]["ok"], false);
    assert_eq!(dgk(&["cohomology", not_dga.to_str().unwrap()], None).0, 1);
    let t4 = example("k_t_mod_t4.json");
    assert_eq!(
        dgk(
            &["local-pipeline", t4.to_str().unwrap(), "--max-degree", "2"],
            None
        )
        .0,
        1
    );
    assert_eq!(dgk(&["cobar", a], None).0, 1);
}
