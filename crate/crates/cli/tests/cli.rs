//! End-to-end runs of the `rbn` binary.

use std::path::Path;
use std::process::{Command, Output};

fn rbn(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbn"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn verify_a4_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["verify", "a4", "--product", "bracket", "--axiom", "jacobi"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS 3-jacobi"));
}

#[test]
fn naive_bracket_fails_jacobi_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["construct", "a4", "--recipe", "naive", "--map", "D", "--out", "naive.json"], dir.path());
    assert_eq!(code(&o), 0);

    let o = rbn(&["verify", "naive.json", "--axiom", "jacobi"], dir.path());
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("FAIL 3-jacobi at (x1, x2, x3, x1, x4)"), "{text}");
    assert!(text.contains("lhs = -x1") && text.contains("rhs = x1"), "{text}");

    let o = rbn(&["verify", "naive.json", "--axiom", "jacobi", "--at", "x1,x2,x3,x2,x4"], dir.path());
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("lhs = -x2") && text.contains("rhs = x2"), "{text}");
}

#[test]
fn constructed_brackets_verify() {
    let dir = tempfile::tempdir().unwrap();
    let steps: [&[&str]; 4] = [
        &["construct", "heisenberg_line", "--recipe", "f-bracket", "--form", "f", "--out", "fb.json"],
        &["verify", "fb.json", "--axiom", "jacobi"],
        &["construct", "trunc_poly4", "--recipe", "fD-bracket", "--form", "f", "--map", "D", "--out", "fd.json"],
        &["verify", "fd.json", "--axiom", "jacobi"],
    ];
    for args in steps {
        let o = rbn(args, dir.path());
        assert_eq!(code(&o), 0, "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
    let o = rbn(&["construct", "a4", "--recipe", "derived", "--map", "D", "--out", "d.json"], dir.path());
    assert_eq!(code(&o), 0);
    let o = rbn(&["verify-op", "d.json", "--map", "D", "--kind", "rb"], dir.path());
    assert_eq!(code(&o), 0);
}

#[test]
fn operator_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["verify-op", "a4", "--map", "D", "--kind", "duality"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdicts agree: true"));
    let o = rbn(&["verify-op", "componentwise3", "--map", "P", "--kind", "rb", "--weight", "1"], dir.path());
    assert_eq!(code(&o), 0);
    let o = rbn(&["verify-op", "componentwise3", "--map", "P", "--kind", "rb", "--weight", "-1"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("lhs = "));
    // the catalog operator on nonabelian2 is singular
    let o = rbn(&["verify-op", "nonabelian2", "--map", "P", "--kind", "duality"], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn search_reports_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["search", "nonabelian2", "--target", "rb_operator", "--out", "ops.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("81 candidates, 15 results"), "{}", stdout(&o));
    let o = rbn(&["verify-op", "ops.json", "--map", "S15", "--kind", "rb"], dir.path());
    assert_eq!(code(&o), 0);

    let o = rbn(&["search", "heisenberg", "--target", "annihilating_form"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("g2: [0, 1, 0]"), "{}", stdout(&o));
    let o = rbn(&["search", "nonabelian2", "--target", "rb_operator", "--strategy", "linear"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["r1.json", "r2.json"] {
        let o = rbn(&["--report", name, "verify", "a4", "--axiom", "jacobi"], dir.path());
        assert_eq!(code(&o), 0);
    }
    let a = std::fs::read(dir.path().join("r1.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("r2.json")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\"format\": \"rbn-report\"") && text.contains("\"exit_code\": 0"), "{text}");

    let o = rbn(&["construct", "a4", "--recipe", "naive", "--map", "D", "--out", "n.json"], dir.path());
    assert_eq!(code(&o), 0);
    let o = rbn(&["--report", "r3.json", "verify", "n.json", "--axiom", "jacobi"], dir.path());
    assert_eq!(code(&o), 1);
    let text = std::fs::read_to_string(dir.path().join("r3.json")).unwrap();
    assert!(text.contains("\"exit_code\": 1") && text.contains("\"arguments\""), "{text}");
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["verify", "no-such-algebra", "--axiom", "jacobi"], dir.path());
    assert_eq!(code(&o), 2);

    let o = rbn(&["catalog", "heisenberg_line", "--out", "h.json"], dir.path());
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("h.json")).unwrap();
    std::fs::write(dir.path().join("bad.json"), text.replacen("\"1/2\"", "\"0.5\"", 1)).unwrap();
    let o = rbn(&["verify", "bad.json", "--axiom", "lie"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("0.5"));

    let o = rbn(&["verify", "a4", "--axiom", "nonsense"], dir.path());
    assert_eq!(code(&o), 2);
    let o = rbn(&["verify-op", "a4", "--map", "Q", "--kind", "rb"], dir.path());
    assert_eq!(code(&o), 2);
    // a skew-only check on a non-skew product is a failed precondition
    let o = rbn(&["verify", "componentwise3", "--axiom", "jacobi"], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn catalog_listing() {
    let dir = tempfile::tempdir().unwrap();
    let o = rbn(&["catalog"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 13);
    assert!(stdout(&o).contains("a4: dimension 4, products bracket"));
}
