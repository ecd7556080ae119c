//! Integration tests of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slgalois"))
}

#[test]
fn count_tiny_ball() {
    let out = bin().args(["count", "--d", "2", "--t2", "9/4"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "4");
}

#[test]
fn count_rejects_bad_dimension() {
    let out = bin().args(["count", "--d", "0", "--t2", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn usage_error_exits_2() {
    let out = bin().args(["count", "--d", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_sharding_and_merge() {
    let dir = tempfile::tempdir().unwrap();
    let mut shard_total = 0u64;
    let mut files = Vec::new();
    for i in 0..3u64 {
        let ckpt = dir.path().join(format!("shard{i}.txt"));
        let out = bin()
            .args([
                "count",
                "--d",
                "2",
                "--t2",
                "100",
                "--shards",
                "3",
                "--shard-index",
                &i.to_string(),
                "--checkpoint",
                ckpt.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        shard_total += String::from_utf8_lossy(&out.stdout).trim().parse::<u64>().unwrap();
        files.push(ckpt);
    }
    let full = bin().args(["count", "--d", "2", "--t2", "100"]).output().unwrap();
    let full: u64 = String::from_utf8_lossy(&full.stdout).trim().parse().unwrap();
    assert_eq!(shard_total, full);
    // merge the checkpoint files
    let mut args = vec!["count", "--d", "2", "--t2", "100", "--merge"];
    let paths: Vec<String> = files.iter().map(|f| f.to_str().unwrap().to_string()).collect();
    args.extend(paths.iter().map(|s| s.as_str()));
    let merged = bin().args(&args).output().unwrap();
    assert!(merged.status.success());
    let merged: u64 = String::from_utf8_lossy(&merged.stdout).trim().parse().unwrap();
    assert_eq!(merged, full);
}

#[test]
fn count_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("resume.txt");
    let args = [
        "count", "--d", "2", "--t2", "50", "--checkpoint",
    ];
    let first = bin()
        .args(args)
        .arg(ckpt.to_str().unwrap())
        .output()
        .unwrap();
    assert!(first.status.success());
    let again = bin()
        .args(args)
        .arg(ckpt.to_str().unwrap())
        .output()
        .unwrap();
    assert!(again.status.success());
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn certify_full_cubic() {
    let out = bin()
        .args(["certify", "--poly", "x^3-x-1", "--L", "200"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "CertifiedFull");
    assert!(v["witness"]["coverage"]["observed"].as_object().unwrap().len() == 3);
}

#[test]
fn certify_rejects_garbage() {
    let out = bin().args(["certify", "--poly", "3x^2-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_csv_and_json_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("a.csv");
    let json1 = dir.path().join("a.json");
    let csv2 = dir.path().join("b.csv");
    let json2 = dir.path().join("b.json");
    for (csv, json) in [(&csv1, &json1), (&csv2, &json2)] {
        let out = bin()
            .args([
                "census", "--d", "2", "--t-list", "5,10", "--L", "100",
                "--out", csv.to_str().unwrap(), "--json", json.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&csv1).unwrap(), std::fs::read(&csv2).unwrap());
    assert_eq!(std::fs::read(&json1).unwrap(), std::fs::read(&json2).unwrap());
    let text = std::fs::read_to_string(&csv1).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "T,n_t,non_regular,certified_full,certified_proper,inconclusive,prime_bound"
    );
    assert!(lines.next().unwrap().starts_with("5/1,"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json1).unwrap()).unwrap();
    assert!(report["meta"]["config_hash"].as_str().unwrap().len() == 16);
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn sieve_bound_json_fields() {
    let out = bin()
        .args([
            "sieve-bound", "--d", "2", "--t2", "100", "--class", "2", "--L", "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for field in [
        "v", "m", "n_t", "rho", "fitted_c", "bound", "empirical_sifted", "prime_bound", "class",
    ] {
        assert!(v.get(field).is_some(), "missing field {field}");
    }
    assert_eq!(v["class"], "2");
    assert_eq!(v["prime_bound"], 5);
    assert!(v["bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn equidist_json() {
    let out = bin()
        .args(["equidist", "--d", "2", "--t", "5", "--p", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["prime"], 3);
    assert!(v["l1_dev"].as_f64().unwrap() <= 2.0);
}

#[test]
fn gallagher_exhaustive_and_sampled() {
    let out = bin()
        .args(["gallagher", "--d", "2", "--t", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 49);
    let s1 = bin()
        .args(["gallagher", "--d", "3", "--t", "8", "--sample", "100", "--seed", "9"])
        .output()
        .unwrap();
    let s2 = bin()
        .args(["gallagher", "--d", "3", "--t", "8", "--sample", "100", "--seed", "9"])
        .output()
        .unwrap();
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn resource_cap_exits_3() {
    let out = bin()
        .args(["count", "--d", "2", "--t2", "100", "--cap", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
