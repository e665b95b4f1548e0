use std::process::{Command, Output};

fn qhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(args)
        .env_remove("QHOPF_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn coproduct_of_generator() {
    let o = qhopf(&["coproduct", "--element", "x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x1 (x) 1 + g1 (x) x1");
}

#[test]
fn coproduct_latex_and_json() {
    let o = qhopf(&["coproduct", "--element", "x2", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), r"x_2\otimes 1+g_2\otimes x_2");

    let o = qhopf(&["coproduct", "--element", "bracket(x1,x2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let t = qhopf::render::tensor_from_json(&stdout(&o)).unwrap();
    let e = qhopf::Engine::free(2);
    assert_eq!(t, e.coproduct_free(&e.serre_left(1, 2, 1).unwrap()));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(["coproduct", "--element", "x1"])
        .env("QHOPF_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), r"x_1\otimes 1+g_1\otimes x_1");
}

#[test]
fn shuffle_and_omega() {
    let o = qhopf(&["shuffle", "--left", "x1", "--right", "x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(x1x2) + p21^-1*(x2x1)");

    let o = qhopf(&["omega", "--element", "x2^2"]);
    assert_eq!(stdout(&o).trim(), "(1 + p22^-1)*(x2^2)");

    let o = qhopf(&["omega", "--element", "serreL(1,2,4)", "--mode", "g2"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["coproduct", "--element", "x1 +"][..],
        &["coproduct", "--element", "g2top()"],
        &["coproduct"],
        &["coproduct", "--element", "x1", "--mode", "g2", "--n", "3"],
        &["coproduct", "--element", "x4", "--n", "3"],
        &["shuffle", "--left", "g(1)", "--right", "x1"],
        &["verify", "--identity", "nonexistent"],
        &["frobnicate"],
    ] {
        let o = qhopf(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = qhopf(&["coproduct", "--element", "x1 + * x2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 6"));
}

#[test]
fn verify_single_identity() {
    let o = qhopf(&["verify", "--identity", "mon", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 identities, 0 failed"));

    let o = qhopf(&["verify", "--identity", "ser3", "--max-n", "3", "--corrupt", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["reports"][0]["witness"].as_str().unwrap().starts_with("n = 3"));
}
