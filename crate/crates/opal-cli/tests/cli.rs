//! End-to-end tests of the opal binary: exit codes, report shapes and the
//! byte-determinism contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn opal() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opal"))
}

fn data(file: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("data")
        .join(file);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    opal().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn homology_table_of_sl2() {
    let out = run(&[
        "homology",
        "--theory",
        "ce",
        "--algebra",
        &data("sl2_Q.alg"),
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("0\t1"), "H_0 line present:\n{text}");
    assert!(text.contains("3\t1"), "H_3 line present:\n{text}");
    assert!(text.contains("1\t0") && text.contains("2\t0"));
}

#[test]
fn homology_json_output() {
    let out = run(&[
        "homology",
        "--theory",
        "cyclic",
        "--algebra",
        &data("rationals.alg"),
        "--max-degree",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid json");
    assert_eq!(rows[0]["dimension"], 1);
    assert_eq!(rows[2]["dimension"], 1);
    assert_eq!(rows[1]["dimension"], 0);
}

#[test]
fn verify_corollary_passes_and_prints_both_sides() {
    let out = run(&[
        "verify",
        "corollary",
        "--ring",
        &data("dual_numbers.alg"),
        "--n",
        "3",
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ring side"), "{text}");
    assert!(text.contains("matrix side"), "{text}");
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn verify_morita_passes() {
    let out = run(&[
        "verify",
        "morita",
        "--ring",
        &data("rationals.alg"),
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn verify_products_passes() {
    let out = run(&[
        "verify",
        "products",
        "--left",
        &data("rationals.alg"),
        "--right",
        &data("dual_numbers.alg"),
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn plus_pi0_of_gl2() {
    let out = run(&["plus", "pi0", "--algebra", &data("gl2_Q.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim 1"), "{text}");
    assert!(text.contains("dim 3"), "radical line present: {text}");
}

#[test]
fn utree_check_passes() {
    let out = run(&[
        "utree",
        "check",
        "--tree",
        &data("minimal_lie.tree"),
        "--r-max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("cone_pi0_zero\tPASS"), "{text}");
    assert!(text.contains("cone_hq_zero\tPASS"), "{text}");
}

#[test]
fn operad_check_reports_dimensions() {
    let out = run(&["operad", "check", "--name", "lie", "--arity-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("may_axioms\tPASS"), "{text}");
    assert!(text.contains("4\t6"), "Lie(4) = 6: {text}");
}

#[test]
fn operad_check_admissibility_probe() {
    let out = run(&[
        "operad",
        "check",
        "--name",
        "com",
        "--arity-max",
        "4",
        "--scalars",
        "Fp:2",
        "--admissibility-d",
        "1",
        "--weight-max",
        "2",
        "--degree-max",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("obstruction at weight 2, degree 4"));
}

#[test]
fn operad_free_from_module_file() {
    let out = run(&[
        "operad",
        "free",
        "--module",
        &data("binary.op"),
        "--arity-max",
        "4",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2\t1"));
    assert!(text.contains("3\t3"));
    assert!(text.contains("4\t15"));
    assert!(text.contains("may_axioms\tPASS"));
}

#[test]
fn hurewicz_report() {
    let out = run(&[
        "hurewicz",
        "--operad",
        "lie",
        "--generator-degree",
        "1",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("connectivity\t0"), "{text}");
    // non-injectivity at degree 2: pi = 1, hq = 0
    assert!(text.contains("2\t1\t0\tfalse\ttrue"), "{text}");
}

#[test]
fn sweep_reports_and_budget_exhaustion() {
    let ok = run(&[
        "sweep",
        "--ring",
        &data("rationals.alg"),
        "--side",
        "ce-sl",
        "--degree",
        "2",
        "--n-from",
        "2",
        "--n-to",
        "3",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("stable_match\ttrue"));

    let truncated = run(&[
        "sweep",
        "--ring",
        &data("rationals.alg"),
        "--side",
        "ce-sl",
        "--degree",
        "2",
        "--n-from",
        "2",
        "--n-to",
        "6",
        "--budget",
        "40",
    ]);
    assert_eq!(
        truncated.status.code(),
        Some(3),
        "budget exhaustion exits 3"
    );
    assert!(stdout(&truncated).contains("TRUNCATED"));
}

#[test]
fn malformed_file_is_input_error_with_position() {
    let dir = std::env::temp_dir().join("opal_cli_bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.alg");
    std::fs::write(
        &path,
        "format = 1\nkind = lie\nscalars = Q\ndim = 2\nbasis = x y\nproduct 0 9 = 0:1\n",
    )
    .unwrap();
    let out = run(&[
        "homology",
        "--theory",
        "ce",
        "--algebra",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6"), "position-annotated error: {err}");
}

#[test]
fn missing_file_is_input_error() {
    let out = run(&[
        "homology",
        "--theory",
        "ce",
        "--algebra",
        "/nonexistent.alg",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_jobs_produce_identical_bytes() {
    let args = [
        "homology",
        "--theory",
        "leibniz",
        "--algebra",
        &data("sl2_Q.alg"),
        "--max-degree",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        a.stdout, b.stdout,
        "reports must be byte-identical across runs"
    );
    assert_eq!(a.status.code(), b.status.code());
}
