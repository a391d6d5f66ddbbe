use std::process::{Command, Output};

use alcove_compress::formula::{compute, Formula};
use alcove_compress::io::PolynomialDocument;
use alcove_compress::weyl::CartanType;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcove-compress")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_linear_character() {
    let out = run(&["compute", "--type", "A", "--lambda", "1", "--n", "2", "--formula", "compressed"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x1 + x2");
}

#[test]
fn chain_listing_type_a() {
    let out = run(&["chain", "--type", "A", "--lambda", "4,3,1", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let tokens: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(tokens.join(" "), "(1,4) (1,3) | (2,4) (2,3) (1,4) (1,3) | (2,4) (1,4)");
}

#[test]
fn chain_listing_type_c_uses_group_separators() {
    let out = run(&["chain", "--type", "C", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "||"));
    assert!(text.lines().all(|l| l == "|" || l == "||" || l.starts_with('(')));
}

#[test]
fn compare_reports_equal() {
    for args in [["--type", "C", "--lambda", "2,1", "--n", "2"], ["--type", "A", "--lambda", "2,1", "--n", "3"]] {
        let mut full = vec!["compare"];
        full.extend(args);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), "EQUAL");
    }
}

#[test]
fn json_round_trip() {
    for (ty, cartan, lambda, n, formula) in [
        ("A", CartanType::A, "2,1", 3, Formula::RamYip),
        ("C", CartanType::C, "2,1", 2, Formula::Compressed),
    ] {
        let n_arg = n.to_string();
        let out = run(&["compute", "--type", ty, "--lambda", lambda, "--n", &n_arg, "--formula", &formula.to_string(), "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let doc: PolynomialDocument = serde_json::from_str(&stdout(&out)).unwrap();
        let expected = compute(cartan, &lambda.parse().unwrap(), n, formula).unwrap();
        assert!(doc.to_polynomial().unwrap().poly_equal(&expected).unwrap());
        assert!(doc.terms.windows(2).all(|w| w[0].exponent < w[1].exponent));
    }
}

#[test]
fn specialized_output() {
    let out = run(&["compute", "--type", "A", "--lambda", "1", "--n", "2", "--formula", "ramyip", "--specialize", "q=1/2,t=1/3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x1 + x2");
}

#[test]
fn fibers_verify() {
    let out = run(&["fibers", "--type", "C", "--lambda", "2,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("27 fillings, 0 failed"));
    let out = run(&["fibers", "--type", "A", "--lambda", "2,1", "--dump"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.trim_start().starts_with("w=")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--type", "B", "--lambda", "2,1", "--formula", "ramyip"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--type", "A", "--lambda", "2,1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "slow"]).status.code(), Some(2));
}

#[test]
fn invalid_input_exits_3() {
    assert_eq!(run(&["compute", "--type", "A", "--lambda", "2,2", "--formula", "ramyip"]).status.code(), Some(3));
    assert_eq!(run(&["compute", "--type", "A", "--lambda", "2,1", "--n", "5", "--formula", "ramyip"]).status.code(), Some(3));
    assert_eq!(run(&["chain", "--type", "C", "--lambda", "3,x"]).status.code(), Some(3));
    assert_eq!(run(&["compute", "--type", "A", "--lambda", "2,1", "--formula", "schwer"]).status.code(), Some(3));
    assert_eq!(
        run(&["compute", "--type", "A", "--lambda", "1", "--formula", "ramyip", "--specialize", "q=1"]).status.code(),
        Some(3)
    );
}

#[test]
fn verify_quick_passes() {
    let out = run(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 8);
}
