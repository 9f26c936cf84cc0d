use stratakit_core::borel::{
    duality_check, find_dualities, induce, is_exact_borel, run_borel_checks, Embedding,
};
use stratakit_core::homological::{global_dim, inj_dim, proj_dim, HomDim};
use stratakit_core::module::{is_isomorphic, projective, simple};
use stratakit_core::strat::{standards, Stratified};
use stratakit_core::tilting::{characteristic_tilting, gfd_algebra};
use stratakit_core::verify::{analyze, run_checks, Status};
use stratakit_core::{build_algebra, Field, PathAlgebra, QuiverSpec, Rational};

fn borel_a() -> PathAlgebra {
    let spec = QuiverSpec::new("borelA", Field::Rationals, &["1", "2", "3"])
        .arrow("alpha", "3", "1")
        .unwrap()
        .arrow("beta", "1", "3")
        .unwrap()
        .arrow("gamma", "1", "2")
        .unwrap()
        .arrow("delta", "2", "1")
        .unwrap()
        .relation(&[(1, "delta.gamma.alpha")])
        .unwrap()
        .relation(&[(1, "beta.delta.gamma")])
        .unwrap()
        .relation(&[(1, "beta.alpha")])
        .unwrap()
        .relation(&[(1, "gamma.delta")])
        .unwrap();
    build_algebra(spec).unwrap()
}

fn borel_b() -> PathAlgebra {
    let spec = QuiverSpec::new("borelB", Field::Rationals, &["1", "2", "3"])
        .arrow("beta", "1", "3")
        .unwrap()
        .arrow("gamma", "1", "2")
        .unwrap()
        .arrow("db", "2", "3")
        .unwrap()
        .relation(&[(1, "db.gamma")])
        .unwrap();
    build_algebra(spec).unwrap()
}

fn embedding() -> Embedding {
    let (a, b) = (borel_a(), borel_b());
    let one = Rational::one();
    let images = vec![
        a.element(&[(one.clone(), "beta")]).unwrap(),
        a.element(&[(one.clone(), "gamma")]).unwrap(),
        a.element(&[(one, "beta.delta")]).unwrap(),
    ];
    Embedding::from_arrow_images(&b, &a, images).unwrap()
}

/// Paths of the quiver avoiding every monomial relation as a contiguous
/// subpath, counted by direct enumeration.
fn count_monomial_paths(arrows: &[(usize, usize)], vertices: usize, forbidden: &[Vec<usize>], max_len: usize) -> usize {
    let mut count = vertices;
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..=max_len {
        layer.retain(|p| !forbidden.iter().any(|f| p.windows(f.len()).any(|w| w == f.as_slice())));
        count += layer.len();
        let mut next = Vec::new();
        for p in &layer {
            let end = arrows[*p.last().unwrap()].1;
            for (b, &(s, _)) in arrows.iter().enumerate() {
                if s == end {
                    let mut q = p.clone();
                    q.push(b);
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    assert!(layer.iter().all(|p| forbidden.iter().any(|f| p.windows(f.len()).any(|w| w == f.as_slice()))));
    count
}

#[test]
fn borel_a_dimension_matches_path_count() {
    // alpha 3->1, beta 1->3, gamma 1->2, delta 2->1 with vertices 1,2,3 as 0,1,2
    let arrows = [(2, 0), (0, 2), (0, 1), (1, 0)];
    // traversal order: alpha, gamma, delta ; gamma, delta, beta ; alpha, beta ; delta, gamma
    let forbidden = vec![vec![0, 2, 3], vec![2, 3, 1], vec![0, 1], vec![3, 2]];
    let n = count_monomial_paths(&arrows, 3, &forbidden, 12);
    assert_eq!(borel_a().dim(), n);
    assert_eq!(n, 14);
}

#[test]
fn borel_pair_global_dimensions() {
    assert_eq!(global_dim(&borel_b(), 20), HomDim::Finite(2));
    assert_eq!(global_dim(&borel_a(), 20), HomDim::Finite(4));
    assert_eq!(borel_b().dim(), 6);
}

#[test]
fn borel_a_is_quasi_hereditary_with_balanced_tilting() {
    let a = borel_a();
    let s = Stratified::new(&a).unwrap();
    assert!(s.class.quasi_hereditary);
    let t = characteristic_tilting(&s).unwrap();
    let pd = proj_dim(&t.module, 20).finite().unwrap();
    let id = inj_dim(&t.module, 20).finite().unwrap();
    assert!(pd.max(id) <= 4 && 4 <= pd + id);
    assert_eq!((pd, id), (2, 2));
    let r = gfd_algebra(&s, &t).unwrap();
    assert!(r.consistent(), "{r:?}");
}

#[test]
fn borel_pair_is_exact_borel() {
    let e = embedding();
    let v = is_exact_borel(&e, 20);
    assert!(v.holds(), "{v:?}");
    let (a, b) = (borel_a(), borel_b());
    let da = standards(&a);
    for i in 0..3 {
        assert!(is_isomorphic(&induce(&e, &simple(&b, i).unwrap()), &da[i]));
        let p = induce(&e, &projective(&b, i).unwrap());
        assert!(is_isomorphic(&p, &projective(&a, i).unwrap()));
    }
}

#[test]
fn borel_checks_pass_with_duality() {
    let a = borel_a();
    let d = duality_check(&a, &[1, 0, 3, 2]).unwrap();
    assert!(find_dualities(&a, 6).contains(&d));
    let checks = run_borel_checks(&embedding(), Some(&d), 20);
    for c in &checks {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.witness);
    }
    let bound = checks.iter().find(|c| c.name == "gldim_at_most_twice_sub").unwrap();
    assert!(bound.witness.contains("equality"));
}

#[test]
fn borel_a_section_checks_pass() {
    let an = analyze(&borel_a(), 20).unwrap();
    for c in run_checks(&an) {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.witness);
    }
}

#[test]
fn borel_b_section_checks_pass() {
    let an = analyze(&borel_b(), 20).unwrap();
    assert!(an.class.quasi_hereditary);
    for c in run_checks(&an) {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.witness);
    }
}
