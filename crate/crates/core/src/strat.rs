//! Standard, proper standard, costandard and proper costandard modules,
//! filtration certificates and the classification of `(A, ≤)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::homological::{ext_dim, DEFAULT_CAP};
use crate::module::{
    find_isomorphism, generated_by_vertices, hom_basis, projective, quotient, radical, random_scalar, seeded_rng,
    combine, Morphism, Rep, RepKey, Submodule,
};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// `Δ(i)`: the largest quotient of `P(i)` without composition factors
/// `E(j)`, `j > i`, together with the projection from `P(i)`.
pub fn standard_with_projection(a: &PathAlgebra, i: usize) -> Result<(Rep, Morphism)> {
    let p = projective(a, i)?;
    let higher: Vec<usize> = (i + 1..a.num_vertices()).collect();
    Ok(quotient(&p, &generated_by_vertices(&p, &higher)))
}

pub fn standard(a: &PathAlgebra, i: usize) -> Result<Rep> {
    Ok(standard_with_projection(a, i)?.0)
}

/// `Δ̄(i) = Δ(i) / A·(rad Δ(i))_i`, so that `[Δ̄(i) : E(i)] = 1`.
pub fn proper_standard(a: &PathAlgebra, i: usize) -> Result<Rep> {
    let d = standard(a, i)?;
    let rad = radical(&d);
    let f = a.field();
    let gens = (0..a.num_vertices())
        .map(|v| if v == i { rad.basis(v).clone() } else { Matrix::zeros(f, d.dim(v), 0) })
        .collect();
    Ok(quotient(&d, &Submodule::generated(&d, gens)).0)
}

/// `∇(λ) = D Δ_{A^op}(λ)`.
pub fn costandard(a: &PathAlgebra, l: usize) -> Result<Rep> {
    Ok(standard(&a.opposite(), l)?.dual())
}

/// `∇̄(λ) = D Δ̄_{A^op}(λ)`.
pub fn proper_costandard(a: &PathAlgebra, l: usize) -> Result<Rep> {
    Ok(proper_standard(&a.opposite(), l)?.dual())
}

pub fn standards(a: &PathAlgebra) -> Vec<Rep> {
    (0..a.num_vertices()).map(|i| standard(a, i).unwrap()).collect()
}

pub fn proper_standards(a: &PathAlgebra) -> Vec<Rep> {
    (0..a.num_vertices()).map(|i| proper_standard(a, i).unwrap()).collect()
}

pub fn costandards(a: &PathAlgebra) -> Vec<Rep> {
    (0..a.num_vertices()).map(|i| costandard(a, i).unwrap()).collect()
}

pub fn proper_costandards(a: &PathAlgebra) -> Vec<Rep> {
    (0..a.num_vertices()).map(|i| proper_costandard(a, i).unwrap()).collect()
}

/// A chain `M = M_0 ⊃ M_1 ⊃ ⋯ ⊃ M_t = 0` whose factor `M_k / M_{k+1}` is
/// isomorphic to `family[labels[k]]` via `isos[k]`.
#[derive(Debug, Clone)]
pub struct FiltrationCertificate {
    pub module: Rep,
    pub chain: Vec<Submodule>,
    pub labels: Vec<usize>,
    pub isos: Vec<Morphism>,
}

impl FiltrationCertificate {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Multiplicity of each family member among the factors.
    pub fn multiplicities(&self, family_len: usize) -> Vec<usize> {
        let mut out = vec![0; family_len];
        for &l in &self.labels {
            out[l] += 1;
        }
        out
    }

    /// Re-checks the chain and every factor isomorphism.
    pub fn verify(&self, family: &[Rep]) -> bool {
        let t = self.labels.len();
        if self.chain.len() != t + 1 || self.isos.len() != t {
            return false;
        }
        if !self.chain[0].is_whole() || !self.chain[t].is_zero() {
            return false;
        }
        for k in 0..t {
            let (upper, lower) = (&self.chain[k], &self.chain[k + 1]);
            if upper.ambient() != &self.module || Submodule::new(&self.module, (0..self.module.dims().len()).map(|v| upper.basis(v).clone()).collect()).is_err() {
                return false;
            }
            if !upper.contains(lower) || upper.total_dim() <= lower.total_dim() {
                return false;
            }
            let (u, inc) = upper.as_rep();
            let lower_in_u = Submodule::preimage(&inc, lower);
            let (factor, _) = quotient(&u, &lower_in_u);
            let iso = &self.isos[k];
            let Some(theta) = family.get(self.labels[k]) else { return false };
            if iso.source().key() != factor.key() || iso.target().key() != theta.key() {
                return false;
            }
            if Morphism::new(&factor, theta, iso.maps().to_vec()).is_err() || !iso.is_isomorphism() {
                return false;
            }
        }
        true
    }
}

/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Peel {
    /// Epimorphisms onto family members, recursing on kernels.
    Top,
    /// Monomorphisms from family members, recursing on cokernels.
    Bottom,
}

struct Search<'a> {
    family: &'a [Rep],
    peel: Peel,
    budget: usize,
    nodes: usize,
    failed: BTreeSet<RepKey>,
    reachable: BTreeSet<Vec<usize>>,
    unreachable: BTreeSet<Vec<usize>>,
}

const MAPS_PER_MEMBER: usize = 3;
const RANDOM_MAPS: usize = 6;

/// Up to `limit` members of `span(hom)` satisfying `pred`: basis elements,
/// then `{-1, 0, 1}` combinations of small spaces, then seeded random ones.
fn candidate_maps(hom: &[Morphism], pred: impl Fn(&Morphism) -> bool, limit: usize, salt: u64) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = Vec::new();
    if hom.is_empty() {
        return out;
    }
    let f = hom[0].source().field();
    for h in hom {
        if pred(h) {
            out.push(h.clone());
            if out.len() >= limit {
                return out;
            }
        }
    }
    let k = hom.len();
    if k > 1 && k <= 6 {
        let mut idx = vec![0usize; k];
        let vals = [0i64, 1, -1];
        'outer: loop {
            let nonzero = idx.iter().filter(|&&i| i != 0).count();
            if nonzero >= 2 {
                let coeffs: Vec<Rational> = idx.iter().map(|&i| f.from_int(vals[i])).collect();
                let g = combine(&coeffs, hom);
                if pred(&g) {
                    out.push(g);
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    break 'outer;
                }
                idx[pos] += 1;
                if idx[pos] < 3 {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    let mut rng = seeded_rng(salt);
    for _ in 0..RANDOM_MAPS {
        let coeffs: Vec<Rational> = hom.iter().map(|_| random_scalar(f, &mut rng)).collect();
        let g = combine(&coeffs, hom);
        if pred(&g) {
            out.push(g);
            if out.len() >= limit {
                break;
            }
        }
    }
    out
}

impl Search<'_> {
    /// Can `dims` be written as a sum of family dimension vectors?
    fn dims_reachable(&mut self, dims: &[usize]) -> bool {
        if dims.iter().all(|&d| d == 0) {
            return true;
        }
        if self.reachable.contains(dims) {
            return true;
        }
        if self.unreachable.contains(dims) {
            return false;
        }
        let mut ok = false;
        for theta in self.family {
            if theta.dims().iter().zip(dims).all(|(t, d)| t <= d) {
                let rest: Vec<usize> = dims.iter().zip(theta.dims()).map(|(d, t)| d - t).collect();
                if self.dims_reachable(&rest) {
                    ok = true;
                    break;
                }
            }
        }
        if ok {
            self.reachable.insert(dims.to_vec());
        } else {
            self.unreachable.insert(dims.to_vec());
        }
        ok
    }

    fn run(&mut self, x: &Rep) -> Result<Option<(Vec<Submodule>, Vec<usize>)>> {
        if x.is_zero() {
            return Ok(Some((vec![Submodule::zero(x)], Vec::new())));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let key = x.key();
        if self.failed.contains(&key) || !self.dims_reachable(x.dims()) {
            return Ok(None);
        }
        for label in (0..self.family.len()).rev() {
            let theta = &self.family[label];
            if theta.is_zero() || !theta.dims().iter().zip(x.dims()).all(|(t, d)| t <= d) {
                continue;
            }
            let salt = (self.nodes as u64) << 8 | label as u64;
            match self.peel {
                Peel::Top => {
                    let hom = hom_basis(x, theta)?;
                    for epi in candidate_maps(&hom, Morphism::is_surjective, MAPS_PER_MEMBER, salt) {
                        let kernel = epi.kernel();
                        let (k, inc) = kernel.as_rep();
                        if let Some((chain, labels)) = self.run(&k)? {
                            let mut full = vec![Submodule::whole(x)];
                            full.extend(chain.iter().map(|s| s.image_under(&inc)));
                            let mut all = vec![label];
                            all.extend(labels);
                            return Ok(Some((full, all)));
                        }
                    }
                }
                Peel::Bottom => {
                    let hom = hom_basis(theta, x)?;
                    for mono in candidate_maps(&hom, Morphism::is_injective, MAPS_PER_MEMBER, salt) {
                        let (c, proj) = mono.cokernel();
                        if let Some((chain, mut labels)) = self.run(&c)? {
                            let mut full: Vec<Submodule> = chain.iter().map(|s| Submodule::preimage(&proj, s)).collect();
                            full.push(Submodule::zero(x));
                            labels.push(label);
                            return Ok(Some((full, labels)));
                        }
                    }
                }
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

fn certify(x: &Rep, family: &[Rep], peel: Peel, budget: usize) -> Result<Option<FiltrationCertificate>> {
    let mut search = Search {
        family,
        peel,
        budget,
        nodes: 0,
        failed: BTreeSet::new(),
        reachable: BTreeSet::new(),
        unreachable: BTreeSet::new(),
    };
    let Some((chain, labels)) = search.run(x)? else { return Ok(None) };
    let mut isos = Vec::with_capacity(labels.len());
    for (k, &l) in labels.iter().enumerate() {
        let (u, inc) = chain[k].as_rep();
        let lower = Submodule::preimage(&inc, &chain[k + 1]);
        let (factor, _) = quotient(&u, &lower);
        match find_isomorphism(&factor, &family[l]) {
            Some(iso) => isos.push(iso),
            None => return Ok(None),
        }
    }
    Ok(Some(FiltrationCertificate { module: x.clone(), chain, labels, isos }))
}

/// Certificate that `x ∈ F(family)`, peeling quotients off the top.
/// `None` means no filtration exists among the enumerated maps.
pub fn filtration_certificate(x: &Rep, family: &[Rep]) -> Result<Option<FiltrationCertificate>> {
    certify(x, family, Peel::Top, DEFAULT_BUDGET)
}

/// As [`filtration_certificate`], but peeling submodules off the bottom;
/// the natural direction for costandard families.
pub fn filtration_certificate_bottom(x: &Rep, family: &[Rep]) -> Result<Option<FiltrationCertificate>> {
    certify(x, family, Peel::Bottom, DEFAULT_BUDGET)
}

pub fn filtration_certificate_with_budget(
    x: &Rep,
    family: &[Rep],
    bottom: bool,
    budget: usize,
) -> Result<Option<FiltrationCertificate>> {
    certify(x, family, if bottom { Peel::Bottom } else { Peel::Top }, budget)
}

#[derive(Debug, Clone)]
pub struct StratClass {
    pub standardly_stratified: bool,
    pub properly_stratified: bool,
    pub quasi_hereditary: bool,
    /// `Δ`-certificate of each `P(i)`, when found.
    pub delta_certificates: Vec<Option<FiltrationCertificate>>,
    /// `Δ̄`-certificate of each `P(i)`, when found.
    pub delta_bar_certificates: Vec<Option<FiltrationCertificate>>,
    /// First vertex whose projective has no `Δ`-filtration.
    pub failing_vertex: Option<usize>,
}

/// Decides standard/proper stratification constructively from
/// certificates for the indecomposable projectives.
pub fn classify(a: &PathAlgebra) -> Result<StratClass> {
    let deltas = standards(a);
    let bars = proper_standards(a);
    let mut delta_certificates = Vec::new();
    let mut delta_bar_certificates = Vec::new();
    for i in 0..a.num_vertices() {
        let p = projective(a, i)?;
        delta_certificates.push(filtration_certificate(&p, &deltas)?);
        delta_bar_certificates.push(filtration_certificate(&p, &bars)?);
    }
    let failing_vertex = delta_certificates.iter().position(Option::is_none);
    let standardly_stratified = failing_vertex.is_none();
    let properly_stratified = standardly_stratified && delta_bar_certificates.iter().all(Option::is_some);
    let quasi_hereditary = standardly_stratified && deltas.iter().enumerate().all(|(i, d)| d.dim(i) == 1);
    Ok(StratClass {
        standardly_stratified,
        properly_stratified,
        quasi_hereditary,
        delta_certificates,
        delta_bar_certificates,
        failing_vertex,
    })
}

/// A standardly stratified algebra with its four families. Only
/// constructible once the hypothesis is established, so the Ext criteria
/// hosted here are always valid.
#[derive(Debug, Clone)]
pub struct Stratified {
    pub algebra: PathAlgebra,
    pub class: StratClass,
    pub deltas: Vec<Rep>,
    pub delta_bars: Vec<Rep>,
    pub nablas: Vec<Rep>,
    pub nabla_bars: Vec<Rep>,
    pub cap: usize,
}

impl Stratified {
    pub fn new(a: &PathAlgebra) -> Result<Stratified> {
        Self::with_class(a, classify(a)?)
    }

    pub fn with_class(a: &PathAlgebra, class: StratClass) -> Result<Stratified> {
        if !class.standardly_stratified {
            return Err(Error::NotStratified);
        }
        Ok(Stratified {
            algebra: a.clone(),
            class,
            deltas: standards(a),
            delta_bars: proper_standards(a),
            nablas: costandards(a),
            nabla_bars: proper_costandards(a),
            cap: DEFAULT_CAP,
        })
    }

    /// `x ∈ F(Δ)` iff `Ext^1(x, ∇̄(μ)) = 0` for all `μ`.
    pub fn in_f_delta_by_ext(&self, x: &Rep) -> Result<bool> {
        for nb in &self.nabla_bars {
            if ext_dim(1, x, nb, self.cap)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x ∈ F(∇̄)` iff `Ext^1(Δ(λ), x) = 0` for all `λ`.
    pub fn in_f_nabla_bar_by_ext(&self, x: &Rep) -> Result<bool> {
        for d in &self.deltas {
            if ext_dim(1, d, x, self.cap)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverSpec};
    use crate::field::Field;
    use crate::module::{direct_sum, injective, is_isomorphic, regular, simple};

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

    #[test]
    fn a3line_families() {
        let a = a3line();
        assert_eq!(standard(&a, 0).unwrap().dims(), &[1, 0, 0]);
        assert_eq!(standard(&a, 1).unwrap().dims(), &[1, 1, 0]);
        assert_eq!(standard(&a, 2).unwrap().dims(), &[0, 0, 1]);
        assert_eq!(costandard(&a, 0).unwrap().dims(), &[1, 0, 0]);
        assert!(is_isomorphic(&costandard(&a, 2).unwrap(), &injective(&a, 2).unwrap()));
        for i in 0..3 {
            assert_eq!(standard(&a, i).unwrap(), proper_standard(&a, i).unwrap());
        }
        let c = classify(&a).unwrap();
        assert!(c.quasi_hereditary && c.properly_stratified);
        let cert = filtration_certificate(&regular(&a), &standards(&a)).unwrap().unwrap();
        assert!(cert.verify(&standards(&a)));
        assert_eq!(cert.multiplicities(3), vec![1, 1, 3]);
        let e1e2 = direct_sum(&a, &[simple(&a, 0).unwrap(), simple(&a, 1).unwrap()]);
        assert!(filtration_certificate(&e1e2, &[projective(&a, 0).unwrap()]).unwrap().is_none());
    }

    #[test]
    fn loop2_is_properly_stratified() {
        let a = loop2();
        let c = classify(&a).unwrap();
        assert!(c.standardly_stratified && c.properly_stratified && !c.quasi_hereditary);
        assert!(is_isomorphic(&standard(&a, 0).unwrap(), &regular(&a)));
        assert_eq!(proper_standard(&a, 0).unwrap().dims(), &[1]);
        let s = Stratified::new(&a).unwrap();
        assert!(!s.in_f_delta_by_ext(&simple(&a, 0).unwrap()).unwrap());
        assert!(s.in_f_delta_by_ext(&regular(&a)).unwrap());
        let nb = &s.nabla_bars;
        let cert = filtration_certificate_bottom(&injective(&a, 0).unwrap(), nb).unwrap().unwrap();
        assert!(cert.verify(nb));
    }

    #[test]
    fn non_stratified_order() {
        let spec = QuiverSpec::new("rev", Field::Rationals, &["1", "2"])
            .arrow("a", "2", "1")
            .unwrap()
            .arrow("b", "1", "2")
            .unwrap()
            .relation(&[(1, "a.b")])
            .unwrap();
        let a = build_algebra(spec).unwrap();
        let c = classify(&a).unwrap();
        assert!(!c.standardly_stratified);
        assert_eq!(c.failing_vertex, Some(0));
        assert_eq!(Stratified::with_class(&a, c).unwrap_err(), Error::NotStratified);
    }
}
