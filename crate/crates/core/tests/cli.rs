use std::process::Command;

use octoperm::cli::{ClassesDoc, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};

fn octoperm(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_octoperm"))
        .args(args)
        .env("OCTOPERM_THREADS", "1")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn golden_outputs() {
    assert_eq!(octoperm(&["hc", "--q", "13", "--m", "2"]).1, "x6^2 + 2*x4\n");
    assert_eq!(octoperm(&["hc", "--q", "27", "--m", "4"]).1, "x6^3 + x2\n");
    assert_eq!(
        octoperm(&["check", "--q", "29", "--coeffs", "0,0,0,0,0,4"]).1,
        "{\"is_pp\":true,\"hermite_verified\":true}\n"
    );
    assert_eq!(
        octoperm(&["check", "--q", "27", "--coeffs", "e^2,2e,2e^3,e^10,2e^6,1"]).1,
        "{\"is_pp\":true,\"hermite_verified\":true}\n"
    );
    assert_eq!(
        octoperm(&["check", "--q", "11", "--coeffs", "0,0,0,0,0,0"]).1,
        "{\"is_pp\":false,\"hermite_verified\":false}\n"
    );
    let (code, text, _) = octoperm(&["classify", "--q", "31"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(text, octoperm(&["classify", "--q", "31"]).1);
    assert!(text.starts_with("q = 31: 1 classes\n"));
}

#[test]
fn classify_json_and_csv() {
    let (code, json, _) = octoperm(&["classify", "--q", "29", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert!(json.starts_with("{\"q\":29,\"count\":2,"));
    let doc: ClassesDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.count, 2);
    assert_eq!(serde_json::to_string(&doc).unwrap() + "\n", json);
    let (_, csv, _) = octoperm(&["classify", "--q", "29", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "a6,a5,a4,a3,a2,a1,orbit_size");
    assert_eq!(rows.len(), 3);
    assert!(rows[1..].iter().all(|r| r.split(',').all(|f| f.parse::<u32>().is_ok())));
}

#[test]
fn classify_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let (code, _, _) = octoperm(&["classify", "--q", "13", "--mode", "generic", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let doc: ClassesDoc = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!((doc.q, doc.count), (13, 117));
}

#[test]
fn groebner_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    std::fs::write(&path, "x1^2 + x2\nx2\n").unwrap();
    let (code, out, _) = octoperm(&["groebner", "--q", "7", "--vars", "2", "--in", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "x2\nx1^2\n"));

    let hc: Vec<String> = (6..=12).map(|m| octoperm(&["hc", "--q", "43", "--m", &m.to_string()]).1).collect();
    std::fs::write(&path, hc.concat()).unwrap();
    let (code, out, _) = octoperm(&[
        "groebner", "--q", "43", "--in", path.to_str().unwrap(), "--field-equations", "--budget-secs", "0",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_INCONCLUSIVE, "INCONCLUSIVE(budget)\n"));
}

#[test]
fn nonexist_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.json");
    let (code, out, _) = octoperm(&["nonexist", "--q", "41", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("{\"q\":41,\"method\":\"hermite-unit\",\"witness\":{\"m\":5}"));
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(saved[0]["method"], "hermite-unit");

    let (code, out, _) = octoperm(&["nonexist", "--range", "40..44", "--budget-secs", "0"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("\"q\":43,\"method\":\"inconclusive\""));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["hc", "--q", "16", "--m", "1"][..],
        &["classify", "--q", "8"],
        &["classify", "--q", "37"],
        &["check", "--q", "29", "--coeffs", "1,2,3"],
        &["nonexist"],
        &["bogus"],
    ] {
        let (code, _, err) = octoperm(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    assert_eq!(octoperm(&["--help"]).0, EXIT_OK);
}
