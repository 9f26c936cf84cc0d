//! Krull–Schmidt decomposition by splitting endomorphisms.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{find_isomorphism, hom_basis, random_scalar, seeded_rng, combine, Morphism, Rep, Submodule};
use crate::poly::{minimal_polynomial, roots, Poly};
use crate::rational::Rational;

/// An indecomposable direct summand with its split inclusion and projection.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Rep,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

const RANDOM_CANDIDATES: usize = 8;

/// Splits `m` into indecomposable summands with `Σ ι_k π_k = id`.
pub fn decompose_summands(m: &Rep) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = hom_basis(m, m)?;
    match find_split(m.field(), &end, m.total_dim() as u64)? {
        None => Ok(vec![Summand {
            module: m.clone(),
            inclusion: Morphism::identity(m),
            projection: Morphism::identity(m),
        }]),
        Some((g, h, f)) => {
            let k1 = kernel_of_poly(&f, &g);
            let k2 = kernel_of_poly(&f, &h);
            let mut out = Vec::new();
            let (p1, p2) = complementary_projections(m, &k1, &k2);
            for (k, p) in [(k1, p1), (k2, p2)] {
                let (rep, inc) = k.as_rep();
                // p lands in k; express it in the basis of rep
                let proj_maps: Vec<Matrix> = (0..m.dims().len())
                    .map(|v| k.basis(v).solve_matrix(p.map(v)).expect("projection lands in the summand"))
                    .collect();
                let proj = Morphism::new_unchecked(m, &rep, proj_maps);
                for s in decompose_summands(&rep)? {
                    out.push(Summand {
                        module: s.module,
                        inclusion: inc.compose(&s.inclusion),
                        projection: s.projection.compose(&proj),
                    });
                }
            }
            Ok(out)
        }
    }
}

/// Indecomposable summands grouped into isomorphism classes.
pub fn decompose(m: &Rep) -> Result<Vec<(Rep, usize)>> {
    let mut classes: Vec<(Rep, usize)> = Vec::new();
    for s in decompose_summands(m)? {
        match classes.iter_mut().find(|(r, _)| find_isomorphism(r, &s.module).is_some()) {
            Some(slot) => slot.1 += 1,
            None => classes.push((s.module, 1)),
        }
    }
    Ok(classes)
}

pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    Ok(!m.is_zero() && decompose_summands(m)?.len() == 1)
}

fn kernel_of_poly(f: &Morphism, p: &Poly) -> Submodule {
    let maps: Vec<Matrix> = f.maps().iter().map(|b| p.eval_matrix(b)).collect();
    Morphism::new_unchecked(f.source(), f.source(), maps).kernel()
}

/// Idempotents of `M = K1 ⊕ K2` onto each part along the other.
fn complementary_projections(m: &Rep, k1: &Submodule, k2: &Submodule) -> (Morphism, Morphism) {
    let f = m.field();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for v in 0..m.dims().len() {
        let (b1, b2) = (k1.basis(v), k2.basis(v));
        let full = Matrix::hstack(f, m.dim(v), &[b1, b2]);
        let inv = full.inverse().expect("kernels of coprime factors are complementary");
        let c1 = inv.block(0, 0, b1.cols(), m.dim(v));
        let c2 = inv.block(b1.cols(), 0, b2.cols(), m.dim(v));
        p1.push(b1.mul(&c1));
        p2.push(b2.mul(&c2));
    }
    (Morphism::new_unchecked(m, m, p1), Morphism::new_unchecked(m, m, p2))
}

/// Coprime nonconstant `g h` equal to the minimal polynomial of `f`.
fn coprime_split(field: Field, f: &Morphism) -> Option<(Poly, Poly)> {
    let mu = minimal_polynomial(field, f.maps());
    if mu.degree() <= 1 {
        return None;
    }
    for r in roots(&mu, field) {
        let lin = Poly::linear(field, &r);
        let mut g = Poly::one();
        let mut rest = mu.clone();
        loop {
            let (q, rem) = rest.div_rem(&lin, field);
            if !rem.is_zero() {
                break;
            }
            g = g.mul(&lin, field);
            rest = q;
        }
        if rest.degree() > 0 {
            return Some((g, rest));
        }
    }
    // square-free layers: factors occurring with different multiplicities
    let d = mu.gcd(&mu.derivative(field), field);
    if d.degree() > 0 && !mu.derivative(field).is_zero() {
        let radical = mu.div_rem(&d, field).0;
        let once = radical.div_rem(&radical.gcd(&d, field), field).0;
        if once.degree() > 0 && once.degree() < mu.degree() {
            let rest = mu.div_rem(&once, field).0;
            if rest.gcd(&once, field).degree() == 0 {
                return Some((once.monic(field), rest.monic(field)));
            }
        }
    }
    None
}

/// Eigenvalue of `f` when `f - λ` is nilpotent.
fn scalar_part(field: Field, f: &Morphism) -> Option<Rational> {
    let mu = minimal_polynomial(field, f.maps());
    let rs = roots(&mu, field);
    if rs.len() != 1 {
        return None;
    }
    let mut p = Poly::one();
    for _ in 0..mu.degree() {
        p = p.mul(&Poly::linear(field, &rs[0]), field);
    }
    (p == mu).then(|| rs[0].clone())
}

type Split = (Poly, Poly, Morphism);

fn find_split(field: Field, end: &[Morphism], salt: u64) -> Result<Option<Split>> {
    if end.len() <= 1 {
        return Ok(None);
    }
    let try_one = |f: &Morphism| coprime_split(field, f).map(|(g, h)| (g, h, f.clone()));
    for f in end {
        if let Some(s) = try_one(f) {
            return Ok(Some(s));
        }
    }
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            for cand in [end[i].add(&end[j]), end[i].compose(&end[j]), end[j].compose(&end[i])] {
                if let Some(s) = try_one(&cand) {
                    return Ok(Some(s));
                }
            }
        }
    }
    let mut rng = seeded_rng(salt);
    for _ in 0..RANDOM_CANDIDATES {
        let coeffs: Vec<Rational> = end.iter().map(|_| random_scalar(field, &mut rng)).collect();
        if let Some(s) = try_one(&combine(&coeffs, end)) {
            return Ok(Some(s));
        }
    }
    if is_local(field, end) {
        Ok(None)
    } else {
        Err(Error::DecompositionFailed)
    }
}

/// `End(M)` is local when its basis is scalar plus nilpotent and the
/// nilpotent parts span a nilpotent subalgebra.
fn is_local(field: Field, end: &[Morphism]) -> bool {
    let mut nil = Vec::new();
    for f in end {
        let Some(lambda) = scalar_part(field, f) else { return false };
        let id = Morphism::identity(f.source());
        let n = f.add(&id.scale(&field.neg(&lambda)));
        if !n.is_zero() {
            nil.push(n);
        }
    }
    let flat = |fs: &[Morphism]| -> Matrix {
        let cols: Vec<Vec<Rational>> = fs.iter().map(|g| g.maps().iter().flat_map(|b| b.entries().to_vec()).collect()).collect();
        let len = cols.first().map_or(0, Vec::len);
        Matrix::from_columns(field, len, &cols)
    };
    let mut power = nil.clone();
    let bound = end.first().map_or(0, |f| f.source().total_dim()) + 1;
    for _ in 0..bound {
        if power.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for x in &power {
            for y in &nil {
                let p = x.compose(y);
                if !p.is_zero() {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        let basis_idx = flat(&next).rref().1;
        power = basis_idx.into_iter().map(|i| next[i].clone()).collect();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverSpec};
    use crate::module::{direct_sum, projective, regular, simple};

    #[test]
    fn regular_module_of_a3line() {
        let spec = QuiverSpec::new("a3line", Field::Rationals, &["1", "2", "3"])
            .arrow("a", "2", "1")
            .unwrap()
            .arrow("b", "1", "3")
            .unwrap();
        let a = build_algebra(spec).unwrap();
        let parts = decompose(&regular(&a)).unwrap();
        assert_eq!(parts.len(), 3);
        for i in 0..3 {
            let p = projective(&a, i).unwrap();
            assert!(parts.iter().any(|(r, k)| *k == 1 && find_isomorphism(r, &p).is_some()));
        }
        let e = simple(&a, 0).unwrap();
        let ee = direct_sum(&a, &[e.clone(), e.clone()]);
        let d = decompose(&ee).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        let summands = decompose_summands(&regular(&a)).unwrap();
        let id = Morphism::identity(&regular(&a));
        let mut acc = Morphism::zero(&regular(&a), &regular(&a));
        for s in &summands {
            assert_eq!(s.projection.compose(&s.inclusion), Morphism::identity(&s.module));
            acc = acc.add(&s.inclusion.compose(&s.projection));
        }
        assert_eq!(acc, id);
    }
}
