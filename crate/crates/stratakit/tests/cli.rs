use std::io::Write;
use std::process::{Command, Output};

use proptest::prelude::*;
use stratakit::format::{parse, serialize};
use stratakit::report::Report;

fn stratakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratakit")).args(args).output().unwrap()
}

fn machine(args: &[&str]) -> (Report, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "machine"]);
    let out = stratakit(&full);
    let r = Report::parse_machine(&String::from_utf8(out.stdout).unwrap()).unwrap();
    (r, out.status.code().unwrap())
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".alg").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_loop2() {
    let (r, code) = machine(&["analyze", "loop2"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("algebra.dim"), Some("2"));
    assert_eq!(r.get("class.properly_stratified"), Some("true"));
    assert_eq!(r.get("class.quasi_hereditary"), Some("false"));
    assert_eq!(r.get("tilting.pd"), Some("0"));
    assert_eq!(r.get("tilting.is_regular"), Some("true"));
    assert_eq!(r.get("cotilting.matches_tilting"), Some("true"));
}

#[test]
fn analyze_a3line_reports_strict_bound() {
    let (r, code) = machine(&["analyze", "a3line"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("class.quasi_hereditary"), Some("true"));
    assert_eq!(r.get("dims.global_dim"), Some("1"));
    assert_eq!(r.get("bounds.global_dim_vs_upper"), Some("strict"));
}

#[test]
fn every_fixture_checks_clean() {
    for name in ["point", "semisimple2", "loop2", "loop4", "a2", "a3line", "borelA", "borelB"] {
        let (r, code) = machine(&["check", name]);
        assert_eq!(code, 0, "{name}: {}", r.render_text());
        assert_eq!(r.get("summary.status"), Some("pass"));
    }
}

#[test]
fn borel_check_reports_equality() {
    let (r, code) = machine(&["check", "borelA", "--borel", "borelB"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("check.gldim_at_most_twice_sub.witness"), Some("4 <= 2*2, equality"));
    assert_eq!(r.get("duality.source"), Some("supplied"));
}

#[test]
fn failing_borel_pair_exits_one() {
    let (r, code) = machine(&["check", "loop4", "--borel", "loop2", "--embedding", "loop2_to_loop4"]);
    assert_eq!(code, 1);
    assert_eq!(r.get("check.induction_is_exact.status"), Some("fail"));
    assert_eq!(r.get("check.gldim_at_most_twice_sub.status"), None);
}

#[test]
fn small_cap_is_inconclusive() {
    let (r, code) = machine(&["check", "borelA", "--cap", "1"]);
    assert_eq!(code, 3);
    assert_eq!(r.get("summary.status"), Some("inconclusive"));
}

#[test]
fn input_errors_exit_two_with_location() {
    let f = temp_file("field Q\nvertices 1 2\narrow a 1 2\narrow b 1 2\nrelation 1*b.a\n");
    let out = stratakit(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 5") && err.contains("not composable"), "{err}");
    assert_eq!(stratakit(&["analyze", "no-such-algebra"]).status.code(), Some(2));
    let bad = temp_file("vertices v\narrow x v v\nrelation 1*x - 1*x.x\n");
    let out = stratakit(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gfd_on_module_literal() {
    let (r, code) = machine(&["gfd", "a3line", "--module", "E3"]);
    assert_eq!(code, 0);
    assert_eq!(r.get("module.dims"), Some("(0,0,1)"));
    assert_eq!(r.get("module.gfd_nabla_bar"), Some("1"));
    let (r, _) = machine(&["gfd", "borelA", "--module", "standard:3"]);
    assert_eq!(r.get("module.in_f_delta"), Some("true"));
    assert_eq!(machine(&["gfd", "a3line", "--module", "nothing"]).1, 2);
}

#[test]
fn text_and_machine_agree() {
    let text = String::from_utf8(stratakit(&["analyze", "a2"]).stdout).unwrap();
    let (r, _) = machine(&["analyze", "a2"]);
    assert_eq!(text, r.render_text());
}

fn spec_text() -> impl Strategy<Value = String> {
    let vertices = 1usize..4;
    vertices
        .prop_flat_map(|n| {
            let arrow = (0..n, 0..n);
            (Just(n), prop::collection::vec(arrow, 0..5), prop::bool::ANY, prop::collection::vec(-3i64..4, 1..4))
        })
        .prop_map(|(n, arrows, prime, coeffs)| {
            let mut s = String::from("name gen\n");
            s.push_str(if prime { "field GF 5\n" } else { "field Q\n" });
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            s.push_str(&format!("vertices {}\n", names.join(" ")));
            for (k, (a, b)) in arrows.iter().enumerate() {
                s.push_str(&format!("arrow x{k} v{a} v{b}\n"));
            }
            if let Some((k, (a, _))) = arrows.iter().enumerate().find(|(_, (a, b))| a == b) {
                let c = coeffs[0];
                s.push_str(&format!("relation {c}*x{k}.x{k} + 1/2*x{k}.x{k}.x{k}\n"));
                s.push_str(&format!("module M\ndims {}\nend\n", (0..n).map(|i| if i == *a { "1" } else { "0" }).collect::<Vec<_>>().join(" ")));
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(text in spec_text()) {
        let f = parse(&text, "gen").unwrap();
        let again = parse(&serialize(&f), "other").unwrap();
        prop_assert_eq!(again, f);
    }
}
