use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxnichols")).args(args).output().expect("spawn coxnichols")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn certify_presets() {
    for (name, split) in [("I2(5)", true), ("A3", false), ("A1", true)] {
        let o = run(&["certify", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v = json(&o);
        assert_eq!(v["schema_version"], "twist_certificate.v1");
        assert_eq!(v["split"], split, "{name}");
        assert_eq!(v["cohomologous"], split, "{name}");
        for key in ["section", "vendramin", "global", "twist"] {
            assert_eq!(v[key], "pass", "{name} {key}");
        }
    }
}

#[test]
fn certificates_are_byte_identical() {
    let a = run(&["certify", "B3"]);
    let b = run(&["certify", "--preset", "B3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn infinite_group_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("affine_a2.txt");
    fs::write(&path, "3\n1 3 3\n3 1 3\n3 3 1\n").unwrap();
    let o = run(&["certify", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infinite"));
}

#[test]
fn matrix_file_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.txt");
    fs::write(&path, "# H3\n3\n1 5 2\n5 1 3\n2 3 1\n").unwrap();
    let from_file = run(&["info", "--json", path.to_str().unwrap()]);
    let from_preset = run(&["info", "--json", "H3"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_preset.stdout);
    assert_eq!(json(&from_file)["order"], 120);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let fresh = run(&["certify", "D4"]);
    let first = run(&["--cache-dir", c, "certify", "D4"]);
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let bytes = fs::read(&entries[0]).unwrap();
    assert_eq!(&bytes[..8], b"CXGT\x01\x00\x00\x00");
    assert_eq!(bytes.len(), 16 + 4 * 4 * 192);
    let second = run(&["--cache-dir", c, "certify", "D4"]);
    assert_eq!(first.stdout, fresh.stdout);
    assert_eq!(second.stdout, fresh.stdout);
    let info_cached = run(&["--cache-dir", c, "info", "--json", "--cocycles", "D4"]);
    let info_fresh = run(&["info", "--json", "--cocycles", "D4"]);
    assert_eq!(info_cached.stdout, info_fresh.stdout);

    // A damaged entry is rebuilt, with a warning, and gives the same answer.
    fs::write(&entries[0], &bytes[..100]).unwrap();
    let third = run(&["--cache-dir", c, "certify", "D4"]);
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, fresh.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("warning"));
    assert_eq!(fs::read(&entries[0]).unwrap(), bytes);
}

#[test]
fn info_classes() {
    let v = json(&run(&["info", "--json", "--cocycles", "B3"]));
    assert_eq!(v["schema_version"], "group_info.v1");
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![6, 3]);
    assert_eq!(v["cocycles"]["q+"]["schema_version"], "cocycle_table.v1");
    assert_eq!(v["cocycles"]["q-"]["labels"].as_array().unwrap().len(), 9);
    assert!(stdout(&run(&["info", "A2"])).contains("|T|      = 3"));
}

#[test]
fn hilbert_totals() {
    let o = run(&["hilbert", "A2", "--dmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let total = out.lines().find(|l| l.trim_start().starts_with("total")).unwrap();
    assert_eq!(total.split_whitespace().collect::<Vec<_>>(), ["total", "12", "12", "yes"]);

    let o = run(&["hilbert", "B3", "--subrack", "T2", "--dmax", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    for (cocycle, chunk) in ["q+", "q-"].iter().zip(lines.chunks(5)) {
        let ranks: Vec<u64> = chunk.iter().map(|r| r["rank"].as_u64().unwrap()).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1, 0]);
        assert!(chunk.iter().all(|r| r["cocycle"] == *cocycle && r["schema_version"] == "symmetrizer_report.v1"));
    }
}

#[test]
fn hilbert_exact_matches_modular() {
    let m = run(&["hilbert", "--json", "I2(4)", "--dmax", "4"]);
    let e = run(&["hilbert", "--json", "I2(4)", "--dmax", "4", "--mode", "exact"]);
    let ranks = |o: &Output| -> Vec<u64> {
        stdout(o).lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["rank"].as_u64().unwrap()).collect()
    };
    assert_eq!(ranks(&m), ranks(&e));
    assert_eq!(ranks(&e)[..5], [1, 4, 8, 12, 14]);
}

#[test]
fn hilbert_errors() {
    assert_eq!(run(&["hilbert", "A2", "--primes", "1"]).status.code(), Some(1));
    assert_eq!(run(&["hilbert", "A2", "--subrack", "T2"]).status.code(), Some(1));
    // 6^8 exceeds the exact budget.
    assert_eq!(run(&["hilbert", "A3", "--dmax", "8", "--mode", "exact"]).status.code(), Some(1));
}

#[test]
fn triplet_dump() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["hilbert", "A2", "--dmax", "3", "--dump", d]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("omega_qminus_n2.txt")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# omega degree=2 dim=9 k=2"));
    // Ω_2 = id + c: 9 diagonal ones plus one entry of c per column.
    assert_eq!(lines.count(), 18);
    assert!(dir.path().join("omega_qplus_n3.txt").exists());
}

#[test]
fn dihedral_reports() {
    let v = json(&run(&["dihedral", "--json", "--r", "5"]));
    assert_eq!(v["schema_version"], "dihedral_report.v1");
    assert_eq!(v["admissible"], serde_json::json!(["V0", "V(5,1)", "V(5,3)"]));

    let o = run(&["dihedral", "--json", "--r", "5", "--summands", "V(5,1),V(5,3)", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["compatible"], true);
    assert_eq!(v["predicted"], 16);
    assert_eq!(v["check"]["agree"], true);

    let v = json(&run(&["dihedral", "--json", "--r", "9", "--summands", "V(3,3),V(9,1)"]));
    assert_eq!(v["compatible"], false);
    assert_eq!(v["predicted"], Value::Null);
    assert_eq!(v["incompatible_pairs"][0]["four_cycle"], 12);
}

#[test]
fn dihedral_refuses_r3() {
    let o = run(&["dihedral", "--r", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r > 3 and odd"));
    assert_eq!(run(&["dihedral", "--r", "6"]).status.code(), Some(1));
    assert_eq!(run(&["dihedral", "--r", "5", "--summands", "V(3,1)"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["certify", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["info", "Z9"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
