//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::Command;

use stratakit::corpus::FIXTURES;
use stratakit::format::{parse, serialize};
use stratakit::report::Report;
use stratakit::run::{algebra, load, run_analyze, run_check, Input};
use stratakit_core::borel::induce;
use stratakit_core::homological::{proj_dim, HomDim};
use stratakit_core::module::{find_isomorphism, is_isomorphic, regular, simple};
use stratakit_core::strat::{standards, Stratified};
use stratakit_core::tilting::{characteristic_cotilting, characteristic_tilting, gfd_algebra};
use stratakit_core::verify::{analyze, run_checks, Analysis, Check, Status};

const CAP: usize = 20;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn algebra_fixtures() -> Vec<&'static str> {
    FIXTURES
        .iter()
        .filter(|(_, t)| t.lines().any(|l| l.starts_with("vertices")))
        .map(|(n, _)| *n)
        .collect()
}

struct Corpus {
    analyses: BTreeMap<&'static str, (Analysis, Vec<Check>)>,
}

impl Corpus {
    fn build() -> Corpus {
        let mut analyses = BTreeMap::new();
        for name in algebra_fixtures() {
            let a = algebra(&load(name).unwrap()).unwrap();
            let an = analyze(&a, CAP).unwrap();
            let checks = run_checks(&an);
            analyses.insert(name, (an, checks));
        }
        Corpus { analyses }
    }

    fn check_everywhere(&self, name: &str, applies: impl Fn(&Analysis) -> bool) -> Outcome {
        let mut n = 0;
        for (alg, (an, checks)) in &self.analyses {
            if !applies(an) {
                continue;
            }
            let c = checks.iter().find(|c| c.name == name).ok_or(format!("{alg}: {name} missing"))?;
            ensure(c.status == Status::Pass, format!("{alg}: {} ({})", c.witness, c.status.as_str()))?;
            n += 1;
        }
        ensure(n > 0, "no algebra in scope")?;
        Ok(format!("{n} algebras"))
    }
}

fn input(name: &str) -> Input {
    load(name).unwrap()
}

fn criterion_1() -> Outcome {
    let (rb, _) = run_analyze(&input("borelB"), CAP).map_err(|e| e.to_string())?;
    let (ra, _) = run_analyze(&input("borelA"), CAP).map_err(|e| e.to_string())?;
    ensure(rb.get("dims.global_dim") == Some("2"), format!("gl.dim B = {:?}", rb.get("dims.global_dim")))?;
    ensure(ra.get("dims.global_dim") == Some("4"), format!("gl.dim A = {:?}", ra.get("dims.global_dim")))?;
    let (rc, status) = run_check(&input("borelA"), Some(&input("borelB")), None, CAP).map_err(|e| e.to_string())?;
    ensure(rc.get("check.gldim_at_most_twice_sub.status") == Some("pass"), "bound check did not pass")?;
    let w = rc.get("check.gldim_at_most_twice_sub.witness").unwrap_or("");
    ensure(w == "4 <= 2*2, equality", format!("witness `{w}`"))?;
    ensure(status == Status::Pass, "check run not clean")?;
    Ok("gl.dim B = 2, gl.dim A = 4, 4 <= 2*2 with equality".into())
}

fn criterion_2() -> Outcome {
    let a = algebra(&input("a3line")).unwrap();
    let s = Stratified::new(&a).map_err(|e| e.to_string())?;
    ensure(s.class.quasi_hereditary, "not quasi-hereditary")?;
    let t = characteristic_tilting(&s).map_err(|e| e.to_string())?;
    ensure(t.summands.len() == 3, "summand count")?;
    for i in 0..3 {
        for j in i + 1..3 {
            ensure(!is_isomorphic(&t.summands[i], &t.summands[j]), "repeated summand")?;
        }
    }
    let e1 = simple(&a, 0).unwrap();
    ensure(t.summands.iter().any(|x| is_isomorphic(x, &e1)), "E(1) is not a summand")?;
    let (r, _) = run_analyze(&input("a3line"), CAP).map_err(|e| e.to_string())?;
    let pd: usize = r.get("tilting.pd").unwrap().parse().unwrap();
    let id: usize = r.get("tilting.id").unwrap().parse().unwrap();
    let gl: usize = r.get("dims.global_dim").unwrap().parse().unwrap();
    ensure(gl == 1 && gl < pd + id, format!("gl.dim {gl}, pd T {pd}, id T {id}"))?;
    Ok(format!("3 summands incl. E(1); gl.dim 1 < {pd} + {id}"))
}

fn criterion_3() -> Outcome {
    let a = algebra(&input("loop2")).unwrap();
    let s = Stratified::new(&a).map_err(|e| e.to_string())?;
    ensure(s.class.properly_stratified && !s.class.quasi_hereditary, "classification")?;
    let t = characteristic_tilting(&s).map_err(|e| e.to_string())?;
    let c = characteristic_cotilting(&s).map_err(|e| e.to_string())?;
    let reg = regular(&a);
    ensure(find_isomorphism(&t.module, &reg).is_some(), "T is not A")?;
    ensure(find_isomorphism(&c.module, &reg).is_some(), "S is not A")?;
    let (r, _) = run_check(&input("loop2"), None, None, CAP).map_err(|e| e.to_string())?;
    ensure(r.get("check.finitistic_bound_on_probes.status") == Some("pass"), "finitistic bound check")?;
    let w = r.get("check.finitistic_bound_on_probes.witness").unwrap();
    ensure(w.ends_with("pd <= 0"), format!("witness `{w}`"))?;
    Ok(format!("properly stratified, not quasi-hereditary, T = S = A; {w}"))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut notes = Vec::new();
    for (alg, (an, _)) in &c.analyses {
        let (Some(s), Some(t)) = (&an.stratified, &an.tilting) else { continue };
        let r = gfd_algebra(s, t).map_err(|e| format!("{alg}: {e}"))?;
        ensure(proj_dim(&t.module, CAP) == HomDim::Finite(r.gfd_regular), format!("{alg}: {r:?}"))?;
        ensure(r.gfd_regular == r.t_codim_regular && r.probe_sup <= r.gfd_regular, format!("{alg}: {r:?}"))?;
        if r.probe_sup < r.gfd_regular {
            notes.push(format!("{alg} probe sup below"));
        }
    }
    c.check_everywhere("gfd_four_way_equality", |an| an.tilting.is_some())?;
    Ok(if notes.is_empty() { "all four equal on every algebra".into() } else { notes.join(", ") })
}

fn criterion_9() -> Outcome {
    let a_in = input("borelA");
    let b_in = input("borelB");
    let (r, _) = run_check(&a_in, Some(&b_in), None, CAP).map_err(|e| e.to_string())?;
    for name in ["induced_simples_are_standard", "induction_lowers_pd", "induction_is_exact"] {
        let st = r.get(&format!("check.{name}.status"));
        ensure(st == Some("pass"), format!("{name}: {st:?}"))?;
    }
    let a = algebra(&a_in).unwrap();
    let b = algebra(&b_in).unwrap();
    let emb = stratakit_core::borel::Embedding::from_arrow_images(
        &b,
        &a,
        b_in.file
            .embedding
            .as_ref()
            .unwrap()
            .iter()
            .map(|(_, t)| stratakit::format::element(&a, t).unwrap())
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let da = standards(&a);
    for i in 0..a.num_vertices() {
        ensure(is_isomorphic(&induce(&emb, &simple(&b, i).unwrap()), &da[i]), format!("vertex {i}"))?;
    }
    Ok(format!("A ⊗ E_B(i) ≅ Δ_A(i) for all i; {}", r.get("check.induction_lowers_pd.witness").unwrap()))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_stratakit");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(|e| e.to_string());
    let mut runs = 0;
    for name in algebra_fixtures() {
        let args = ["check", name, "--format", "machine"];
        let first = run(&args)?;
        let second = run(&args)?;
        ensure(first.stdout == second.stdout && !first.stdout.is_empty(), format!("{name}: reports differ"))?;
        let text = String::from_utf8(first.stdout).map_err(|e| e.to_string())?;
        let report = Report::parse_machine(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.render_machine() == text, format!("{name}: machine report does not round-trip"))?;
        runs += 1;
    }
    let first = run(&["check", "borelA", "--borel", "borelB", "--format", "machine"])?;
    let second = run(&["check", "borelA", "--borel", "borelB", "--format", "machine"])?;
    ensure(first.stdout == second.stdout, "borel reports differ")?;
    for (name, text) in FIXTURES {
        let f = parse(text, name).map_err(|e| format!("{name}: {e}"))?;
        let again = parse(&serialize(&f), name).map_err(|e| format!("{name}: {e}"))?;
        ensure(again == f, format!("{name}: reparse differs"))?;
    }
    Ok(format!("{runs} algebras reported identically twice; {} fixtures reparse", FIXTURES.len()))
}

fn main() {
    let corpus = Corpus::build();
    let ss = |an: &Analysis| an.tilting.is_some();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "borel pair global dimensions and bound", criterion_1()),
        (2, "a3line tilting module and strict upper bound", criterion_2()),
        (3, "loop2 classification and T = S = A", criterion_3()),
        (4, "four-way gfd equality", criterion_4(&corpus)),
        (
            5,
            "filtration certificates agree with Ext criteria",
            corpus
                .check_everywhere("delta_certificate_matches_ext_criterion", ss)
                .and_then(|_| corpus.check_everywhere("nabla_bar_certificate_matches_ext_criterion", ss)),
        ),
        (6, "Ext balance on indecomposable probes", corpus.check_everywhere("ext_balance", ss)),
        (7, "top Ext(T, -) degree equals gfd", corpus.check_everywhere("ext_vanishing_matches_gfd", ss)),
        (8, "Ringel double dual", corpus.check_everywhere("ringel_double_dual_matches", |an| an.class.quasi_hereditary)),
        (9, "induction from the Borel subalgebra", criterion_9()),
        (10, "determinism and round trips", criterion_10()),
    ];
    let mut failed = 0;
    for (n, what, r) in &results {
        match r {
            Ok(w) => println!("PASS criterion {n:>2}: {what} ({w})"),
            Err(w) => {
                failed += 1;
                println!("FAIL criterion {n:>2}: {what} ({w})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
