use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn scratch(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qf-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

fn qf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qf")).args(args).env_remove("QF_SEARCH_BUDGET").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn make_dihedral_writes_a_table() {
    let out = qf(&["make", "dihedral", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["order"], 4);
    assert_eq!(v["table"], serde_json::json!([[0, 2, 0, 2], [3, 1, 3, 1], [2, 0, 2, 0], [1, 3, 1, 3]]));
}

#[test]
fn made_quandles_pass_the_axiom_check() {
    for (name, args) in [
        ("d5.json", vec!["make", "dihedral", "5"]),
        ("u23.json", vec!["make", "u", "2", "3"]),
        ("conj.json", vec!["make", "conj", "dihedral:3"]),
        ("tak.json", vec!["make", "takasaki", "cyclic:5"]),
        ("core.json", vec!["make", "core", "heisenberg:3,1"]),
    ] {
        let path = scratch(name);
        let mut full = args.clone();
        full.extend(["--out", &path]);
        assert_eq!(code(&qf(&full)), 0, "{args:?}");
        let out = qf(&["check", "axioms", &path]);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(json(&out)["valid"], true);
    }
}

#[test]
fn r4_and_u22_are_isomorphic() {
    let (r4, u) = (scratch("r4.json"), scratch("u22.json"));
    assert_eq!(code(&qf(&["make", "dihedral", "4", "--out", &r4])), 0);
    assert_eq!(code(&qf(&["make", "u", "2", "2", "--out", &u])), 0);
    let out = qf(&["iso", &r4, &u]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["isomorphic"], true);

    let t4 = scratch("t4.json");
    assert_eq!(code(&qf(&["make", "trivial", "4", "--out", &t4])), 0);
    let out = qf(&["iso", &r4, &t4]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["isomorphic"], false);
}

#[test]
fn bad_table_is_rejected() {
    let out = qf(&["check", "axioms", &data("bad.json")]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["axiom"], "r1");

    let out = qf(&["orbits", &data("bad.json")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qf(&["frobnicate"])), 2);
    assert_eq!(code(&qf(&["make", "dihedral"])), 2);
    assert_eq!(code(&qf(&["orbits", &data("missing.json")])), 2);
    assert_eq!(code(&qf(&["make", "group", "nonsense:3"])), 2);
    assert_eq!(code(&qf(&["--help"])), 0);
}

#[test]
fn exhausted_budget_exits_3() {
    let t3 = scratch("budget-t3.json");
    assert_eq!(code(&qf(&["make", "trivial", "3", "--out", &t3])), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_qf"))
        .args(["envelope", "certify", &t3])
        .env("QF_SEARCH_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn certificate_round_trip() {
    let (r4, cert) = (scratch("cert-r4.json"), scratch("cert.json"));
    assert_eq!(code(&qf(&["make", "dihedral", "4", "--out", &r4])), 0);
    let out = qf(&["envelope", "certify", &r4]);
    assert_eq!(code(&out), 0);
    std::fs::write(&cert, &out.stdout).unwrap();
    let out = qf(&["envelope", "reconstruct", &r4, "--cert", &cert]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["isomorphic"], true);
}

#[test]
fn model_reports() {
    let out = qf(&["envelope", "verify-u", "3", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passes"], true);
    assert_eq!(v["y_plus_substitution_holds"], false);

    let out = qf(&["envelope", "verify-r2n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passes"], true);
}

#[test]
fn abelianization_of_r3() {
    let r3 = scratch("ab-r3.json");
    assert_eq!(code(&qf(&["make", "dihedral", "3", "--out", &r3])), 0);
    let v = json(&qf(&["envelope", "abelianize", &r3]));
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["torsion"], serde_json::json!([]));
}

#[test]
fn free_structures() {
    let v = json(&qf(&["free", "fq", "2", "--depth", "1"]));
    assert_eq!(v["count"], 6);

    let out = qf(&["free", "closure", &data("r3.json"), "--depth", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["lower"], v["upper"]);

    let v = json(&qf(&["free", "product", &data("r3.json"), &data("triv.json"), "--envelope"]));
    assert_eq!(v["generators"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn union_from_actions_file() {
    let t3 = scratch("union-t3.json");
    assert_eq!(code(&qf(&["make", "trivial", "3", "--out", &t3])), 0);
    let out = qf(&["make", "union", &t3, &data("one.json"), &data("actions.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["order"], 4);
}

#[test]
fn classification_counts() {
    for (n, count) in [(1, 1), (2, 1), (3, 3), (4, 7)] {
        let v = json(&qf(&["classify", "--order", &n.to_string()]));
        assert_eq!(v["count"], count, "order {n}");
    }
    let v = json(&qf(&["classify", "--order", "5", "--connected", "true"]));
    assert_eq!(v["count"], 3);
}

#[test]
fn scan_has_no_contradictions() {
    let out = qf(&["abenvel-scan", "--max-order", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["quandles"], 10);
    assert_eq!(v["contradictions"], 0);
    assert_eq!(v["unresolved"], 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "--order", "4"],
        vec!["envelope", "verify-u", "2", "2"],
        vec!["ga", "--group", "dihedral:4", "--elems", "4,5", "--compare-conj"],
        vec!["abenvel-scan", "--max-order", "4", "--format", "table"],
    ] {
        let (a, b) = (qf(&args), qf(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn table_format() {
    let out = qf(&["make", "dihedral", "3", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5, "{text}");
}
