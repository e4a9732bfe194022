use std::process::{Command, Output};

use upsig_core::plcalc::PlFunction;
use upsig_core::upsilon::ups_staircase;

fn upsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upsig")).args(args).env_remove("UPSIG_FORMAT").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = upsig(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn code(args: &[&str]) -> i32 {
    upsig(args).status.code().unwrap()
}

#[test]
fn torus_value() {
    assert_eq!(ok(&["upsilon", "torus", "8", "11", "--eval", "1"]).trim(), "-21");
    assert_eq!(ok(&["upsilon", "torus", "3", "4", "--eval", "2/3", "--route", "semigroup"]).trim(), "-2");
    assert_eq!(ok(&["--decimal", "3", "upsilon", "torus", "3", "4", "--eval", "1/2"]).trim(), "-1.500");
}

#[test]
fn decomposition_cancels() {
    let text = ok(&["upsilon", "expr", "T(8,11) # -T(8,9) # -2*T(3,4) # -T(2,3)"]);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(values, ["0", "0"]);
}

#[test]
fn json_round_trip() {
    let text = ok(&["--format", "json", "upsilon", "torus", "3", "4"]);
    let f = PlFunction::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(f, ups_staircase(3).unwrap());
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_upsig"))
        .args(["upsilon", "torus", "2", "3"])
        .env("UPSIG_FORMAT", "csv")
        .output()
        .unwrap();
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("t,value"));
    assert!(text.contains("1,-1"));
}

#[test]
fn svg_plot() {
    let text = ok(&["--format", "svg", "upsilon", "torus", "3", "5"]);
    assert!(text.starts_with("<svg"));
    assert!(text.contains("(1, -3)"));
    assert_eq!(code(&["--format", "svg", "semigroup", "2", "3"]), 3);
}

#[test]
fn semigroup_csv() {
    let text = ok(&["semigroup", "3", "4"]);
    assert!(text.starts_with("# genus 3\n# gaps 1 2 5\ni,H\n"));
    assert!(text.ends_with("6,3\n"));
}

#[test]
fn signature_values() {
    assert_eq!(ok(&["signature", "--braid", "1 1 1"]).trim(), "-2");
    assert_eq!(ok(&["signature", "--knot", "T(3,4)"]).trim(), "-6");
    assert_eq!(ok(&["signature", "--knot", "-T(2,5)", "--omega", "1/2"]).trim(), "2");
}

#[test]
fn signature_sweep() {
    let text = ok(&["signature", "--braid", "1 1 1", "--sweep", "6"]);
    assert_eq!(text, "s,sigma\n1/6,0\n1/3,JUMP\n1/2,-2\n2/3,-2\n5/6,-2\n");
}

#[test]
fn cobordism_json() {
    let text = ok(&["bounds", "cobordism", "--K", "T(2,13)", "--L", "T(3,7)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["best_lower"], "2");
    assert_eq!(v["triangle_lower"], "0");
    assert_eq!(v["unverified_g4"], false);
}

#[test]
fn cobordism_certificate_literal() {
    let text = ok(&["bounds", "cobordism", "--K", "cert(n=2,k=6,g4=6,m=2)", "--L", "cert(n=3,k=2,g4=6)"]);
    assert!(text.contains("2"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["--format", "json", "bounds", "cobordism", "--K", "T(2,3)", "--L", "cert(n=3,k=1,g4=3)"]))
            .unwrap();
    assert_eq!(v["unverified_g4"], true);
    assert_eq!(code(&["bounds", "cobordism", "--K", "cert(n=3,k=2", "--L", "T(2,3)"]), 2);
    assert_eq!(code(&["bounds", "cobordism", "--K", "cert(n=3,k=1,g4=1,m=2)", "--L", "T(2,3)"]), 3);
}

#[test]
fn braid_index() {
    let text = ok(&["bounds", "braid-index", "--knot", "T(3,8)"]);
    assert_eq!(text.trim(), "braid index >= 3 for all concordant knots");
    assert_eq!(ok(&["bounds", "bennequin", "--braid", "1 1 1"]).trim(), "1");
}

#[test]
fn homogenize_outputs() {
    assert_eq!(ok(&["homogenize", "--family", "torus", "--n", "3", "--m", "7", "--t", "1"]).trim(), "-14/3");
    let text = ok(&["homogenize", "--family", "beta_n", "--n", "6", "--check-convexity"]);
    assert!(text.contains("convex: false"));
    assert!(text.contains("upper(2/3) = -22/3, lower(1) = -7; non-convexity certified: true"));
    assert_eq!(code(&["homogenize", "--family", "torus", "--n", "3"]), 3);
}

#[test]
fn torus_table() {
    let text = ok(&["table", "torus", "--pmax", "3", "--qmax", "5", "--t", "1"]);
    assert_eq!(text, "p,q,upsilon\n2,3,-1\n2,5,-2\n3,4,-2\n3,5,-3\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["upsilon", "torus", "4", "6"]), 2);
    assert_eq!(code(&["upsilon", "expr", "T(2,3"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["upsilon", "torus", "2", "3", "--eval", "3"]), 3);
    assert_eq!(code(&["signature", "--braid", "1 1 1", "--omega", "1/3"]), 3);
    assert_eq!(code(&["signature", "--braid", "1 1 1", "--omega", "0"]), 3);
}

#[test]
fn errors_go_to_stderr() {
    let out = upsig(&["upsilon", "torus", "4", "6"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

#[test]
fn selftest_report_shape() {
    let out = upsig(&["selftest"]);
    let text = stdout(&out);
    let verdicts = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count();
    assert_eq!(verdicts, 12);
    let expected = if text.contains("FAIL") { 4 } else { 0 };
    assert_eq!(out.status.code(), Some(expected));
}
