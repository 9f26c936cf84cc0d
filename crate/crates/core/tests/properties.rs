use proptest::prelude::*;
use stratakit_core::decompose::decompose;
use stratakit_core::homological::{ext_dim, ext_dim_dual};
use stratakit_core::module::{direct_sum, hom_dim, is_isomorphic};
use stratakit_core::strat::Stratified;
use stratakit_core::tilting::{characteristic_tilting, gfd_nabla_bar, gfd_nabla_bar_by_coresolution};
use stratakit_core::{build_algebra, Field, Matrix, PathAlgebra, QuiverSpec, Rational, Rep};

fn a3line() -> PathAlgebra {
    let spec = QuiverSpec::new("a3line", Field::Rationals, &["1", "2", "3"])
        .arrow("a", "2", "1")
        .unwrap()
        .arrow("b", "1", "3")
        .unwrap();
    build_algebra(spec).unwrap()
}

fn loop2() -> PathAlgebra {
    let spec = QuiverSpec::new("loop2", Field::Rationals, &["v"])
        .arrow("a", "v", "v")
        .unwrap()
        .relation(&[(1, "a.a")])
        .unwrap();
    build_algebra(spec).unwrap()
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let f = Field::Rationals;
    Matrix::from_fn(f, rows, cols, |i, j| f.from_int(entries[(i * cols + j) % entries.len()]))
}

/// A representation of `2 -a-> 1 -b-> 3` with small dimensions.
fn a3_rep() -> impl Strategy<Value = Rep> {
    (0usize..3, 0usize..3, 0usize..3, prop::collection::vec(-2i64..3, 1..12), prop::collection::vec(-2i64..3, 1..12))
        .prop_map(|(d1, d2, d3, ea, eb)| {
            let a = a3line();
            Rep::new(&a, vec![d1, d2, d3], vec![matrix(d1, d2, &ea), matrix(d3, d1, &eb)]).unwrap()
        })
}

/// A module over the dual numbers, `x = [[0, Y], [0, 0]]`.
fn loop2_rep() -> impl Strategy<Value = Rep> {
    (0usize..3, 0usize..3, prop::collection::vec(-2i64..3, 1..9)).prop_map(|(k, l, e)| {
        let a = loop2();
        let f = Field::Rationals;
        let y = matrix(k, l, &e);
        let mut x = Matrix::zeros(f, k + l, k + l);
        x.set_block(0, k, &y);
        Rep::new(&a, vec![k + l], vec![x]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ext_balanced_on_a3line(m in a3_rep(), n in a3_rep()) {
        for i in 0..3 {
            prop_assert_eq!(ext_dim(i, &m, &n, 20).unwrap(), ext_dim_dual(i, &m, &n, 20).unwrap());
        }
    }

    #[test]
    fn ext_balanced_on_loop2(m in loop2_rep(), n in loop2_rep()) {
        for i in 0..4 {
            prop_assert_eq!(ext_dim(i, &m, &n, 20).unwrap(), ext_dim_dual(i, &m, &n, 20).unwrap());
        }
    }

    #[test]
    fn hom_dim_invariant_under_duality(m in a3_rep(), n in a3_rep()) {
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.dual(), &m.dual()).unwrap());
    }

    #[test]
    fn decomposition_reassembles(m in a3_rep()) {
        let parts = decompose(&m).unwrap();
        let mut all = Vec::new();
        for (p, k) in &parts {
            for _ in 0..*k {
                all.push(p.clone());
            }
        }
        let total: usize = all.iter().map(Rep::total_dim).sum();
        prop_assert_eq!(total, m.total_dim());
        prop_assert!(is_isomorphic(&direct_sum(m.algebra(), &all), &m));
    }

    #[test]
    fn gfd_equals_top_tilting_ext(m in a3_rep()) {
        prop_assume!(!m.is_zero());
        let s = Stratified::new(m.algebra()).unwrap();
        let t = characteristic_tilting(&s).unwrap();
        let g = gfd_nabla_bar(&s, &m).unwrap();
        let top = (1..=3).rev().find(|&i| ext_dim(i, &t.module, &m, 20).unwrap() != 0).unwrap_or(0);
        prop_assert_eq!(g, top);
        prop_assert_eq!(g, gfd_nabla_bar_by_coresolution(&s, &m).unwrap());
    }

    #[test]
    fn rationals_form_a_field(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
        let f = Field::Rationals;
        let (x, y, z) = (Rational::from(a), Rational::from(b), f.inv(&Rational::from(c)).unwrap());
        prop_assert_eq!(f.mul(&f.add(&x, &y), &z), f.add(&f.mul(&x, &z), &f.mul(&y, &z)));
        prop_assert_eq!(f.mul(&z, &Rational::from(c)), Rational::one());
    }
}
