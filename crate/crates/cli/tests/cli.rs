use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn parfus(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_parfus")).args(args).env_remove("PARFUS_CACHE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("parfus-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = parfus(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn decomposition_json_shape() {
    let v = json(&["decompose", "--group", "cyclic:4", "--format", "json", "--no-cache"]);
    assert_eq!(v["dim"], 20);
    assert_eq!(v["wedderburn"], serde_json::json!([1, 1, 1, 1, 1, 1, 1, 2, 3]));
    assert_eq!(v["summary"], "7C ⊕ M_2(C) ⊕ M_3(C)");
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 5);
    let n: Vec<u64> = blocks.iter().map(|b| b["n"].as_u64().unwrap()).collect();
    assert_eq!(n, [1, 2, 1, 3, 1]);
}

#[test]
fn simples_and_fusion_json() {
    let v = json(&["simples", "--group", "cyclic:3", "--no-cache"]);
    assert_eq!(v["sum_dim_sq"], 8);
    let dims: Vec<u64> = v["labels"].as_array().unwrap().iter().map(|l| l["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 2, 1, 1, 1]);
    let f = json(&["fusion", "--group", "cyclic:3", "--no-cache"]);
    assert_eq!(f["N"][3][4][2], 1);
    assert_eq!(f["N"][0][1].as_array().unwrap().iter().filter(|x| x.as_u64() != Some(0)).count(), 0);
}

#[test]
fn verify_reports_every_check() {
    let v = json(&["verify", "--group", "cyclic:3", "--suite", "fusion", "--no-cache"]);
    assert_eq!(v["status"], "pass");
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["suite"], "fusion");
        assert_eq!(c["status"], "pass");
        assert!(c["counterexample"].is_null());
        assert!(c["cases"].as_u64().unwrap() > 0);
    }
}

#[test]
fn functor_reports() {
    let v = json(&["matryoshka", "--group", "cyclic:4", "--subgroup", "gens:2", "--no-cache"]);
    let r = &v["reports"][0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["phi"], serde_json::json!([0, 2, 0, 2]));
    let xs: Vec<u64> = r["label_map"].as_array().unwrap().iter().map(|l| l["X"].as_u64().unwrap()).collect();
    assert_eq!(xs, [0b0101, 0b1111, 0b1111]);
    let c = json(&["christmas", "--group", "sym:3", "--subgroup", "gens:3", "--no-cache"]);
    // A3 = ⟨(1 2 3)⟩: three one-dimensional images
    assert_eq!(c["reports"][0]["label_map"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["info"][..],
        &["info", "--group", "nope:3"],
        &["info", "--group", "cyclic:17"],
        &["matryoshka", "--group", "cyclic:4"],
        &["matryoshka", "--group", "sym:3", "--subgroup", "all"],
        &["christmas", "--group", "cyclic:4", "--subgroup", "gens:7"],
        &["info", "--group", "cyclic:3", "--format", "xml"],
    ] {
        let (code, out, err) = parfus(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    let (_, _, err) = parfus(&["info", "--group", "cyclic:17"]);
    assert!(err.contains("--cap"));
    let (code, out, _) = parfus(&["info", "--group", "cyclic:17", "--cap", "17", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("e_subsets,65536"));
}

#[test]
fn cayley_file_and_env_cache() {
    let d = scratch("file");
    let path = d.join("c3.json");
    fs::write(&path, r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "label": "C3"}"#).unwrap();
    let spec = format!("file:{}", path.display());
    let cache = d.join("cache");
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_parfus"))
            .args(["fusion", "--group", &spec, "--format", "md"])
            .env("PARFUS_CACHE", &cache)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let cold = run();
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
    assert_eq!(run(), cold);
    assert!(cold.starts_with("# Fusion rules of k_par C3"));
    // editing the file changes the key
    fs::write(&path, r#"{"order": 2, "table": [[0,1],[1,0]], "label": "C2"}"#).unwrap();
    assert!(run().contains("C2"));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 2);
    fs::remove_dir_all(&d).unwrap();
}
