//! Characteristic tilting and cotilting modules, good filtration
//! dimensions, `add(T)`-(co)resolutions and the Ringel dual.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{build_algebra, PathAlgebra, QuiverSpec};
use crate::decompose::{decompose, decompose_summands};
use crate::error::{Error, Result};
use crate::homological::{cosyzygy, ext_dim, proj_dim, universal_extension, HomDim};
use crate::matrix::{Matrix, Vector};
use crate::module::{
    direct_sum, dual_regular, find_isomorphism, hom_basis, injective, is_isomorphic, projective, quotient, radical,
    regular, search_combination, simple, socle, top, Morphism, Rep,
};
use crate::poly::{minimal_polynomial, roots};
use crate::rational::Rational;
use crate::strat::{
    filtration_certificate, filtration_certificate_bottom, FiltrationCertificate, Stratified,
};

/// Bound on universal-extension steps while building one `T(λ)`.
pub const EXTENSION_BUDGET: usize = 1000;

/// `0 -> Δ(λ) -> T(λ) -> M(λ) -> 0` with `M(λ) ∈ F(Δ_{<λ})`.
#[derive(Debug, Clone)]
pub struct DefiningSequence {
    pub embedding: Morphism,
    pub cokernel: Rep,
    /// Labels index the standard modules `Δ(0..λ)`.
    pub cokernel_certificate: FiltrationCertificate,
}

#[derive(Debug, Clone)]
pub struct CharTilting {
    pub algebra: PathAlgebra,
    /// `T(λ)` in vertex order.
    pub summands: Vec<Rep>,
    pub module: Rep,
    pub sequences: Vec<DefiningSequence>,
    /// `T(λ) ∈ F(Δ)`.
    pub delta_certificates: Vec<FiltrationCertificate>,
}

impl CharTilting {
    /// `x ∈ add(T)`.
    pub fn contains(&self, x: &Rep) -> Result<bool> {
        in_add(x, &self.summands)
    }
}

/// Every indecomposable summand of `x` is isomorphic to one of `summands`.
pub fn in_add(x: &Rep, summands: &[Rep]) -> Result<bool> {
    for (s, _) in decompose(x)? {
        if !summands.iter().any(|t| t.dims() == s.dims() && is_isomorphic(t, &s)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds `T = ⊕ T(λ)` by repeated universal extensions of `Δ(λ)` by lower
/// standard modules.
pub fn characteristic_tilting(s: &Stratified) -> Result<CharTilting> {
    let a = &s.algebra;
    let n = a.num_vertices();
    let mut summands = Vec::with_capacity(n);
    let mut sequences = Vec::with_capacity(n);
    let mut delta_certificates = Vec::with_capacity(n);
    for l in 0..n {
        let mut x = s.deltas[l].clone();
        let mut steps = 0;
        loop {
            let mut changed = false;
            for m in (0..l).rev() {
                while ext_dim(1, &s.deltas[m], &x, s.cap)? != 0 {
                    steps += 1;
                    if steps > EXTENSION_BUDGET {
                        return Err(Error::NonTerminating(EXTENSION_BUDGET));
                    }
                    x = universal_extension(&s.deltas[m], &x)?.middle;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let parts = decompose_summands(&x)?;
        let mut with_l = parts.into_iter().filter(|p| p.module.dim(l) != 0);
        let t = with_l.next().ok_or(Error::NonTerminating(steps))?.module;
        if with_l.next().is_some() {
            return Err(Error::NonTerminating(steps));
        }
        let lower = &s.deltas[..l];
        let hom = hom_basis(&s.deltas[l], &t)?;
        let good = |h: &Morphism| {
            h.is_injective() && matches!(filtration_certificate(&h.cokernel().0, lower), Ok(Some(_)))
        };
        let embedding = search_combination(a.field(), &hom, l as u64, good).ok_or(Error::NonTerminating(steps))?;
        let (cokernel, _) = embedding.cokernel();
        let cokernel_certificate = filtration_certificate(&cokernel, lower)?.ok_or(Error::NonTerminating(steps))?;
        let seq = DefiningSequence { embedding, cokernel, cokernel_certificate };
        let cert = filtration_certificate(&t, &s.deltas)?.ok_or(Error::NotStratified)?;
        if !s.in_f_nabla_bar_by_ext(&t)? {
            return Err(Error::NonTerminating(steps));
        }
        summands.push(t);
        sequences.push(seq);
        delta_certificates.push(cert);
    }
    let module = direct_sum(a, &summands);
    Ok(CharTilting { algebra: a.clone(), summands, module, sequences, delta_certificates })
}

/// The characteristic cotilting module `S` with `add S = F(∇) ∩ F(Δ̄)`.
#[derive(Debug, Clone)]
pub struct CharCotilting {
    pub summands: Vec<Rep>,
    pub module: Rep,
    pub nabla_certificates: Vec<FiltrationCertificate>,
    pub delta_bar_certificates: Vec<FiltrationCertificate>,
}

/// `S = D T_{A^op}`; needs `A` properly stratified.
pub fn characteristic_cotilting(s: &Stratified) -> Result<CharCotilting> {
    if !s.class.properly_stratified {
        return Err(Error::NotProperlyStratified);
    }
    let a = &s.algebra;
    let op = Stratified::new(&a.opposite())?;
    let t_op = characteristic_tilting(&op)?;
    let summands: Vec<Rep> = t_op.summands.iter().map(Rep::dual).collect();
    let mut nabla_certificates = Vec::new();
    let mut delta_bar_certificates = Vec::new();
    for x in &summands {
        nabla_certificates.push(filtration_certificate_bottom(x, &s.nablas)?.ok_or(Error::NotProperlyStratified)?);
        delta_bar_certificates.push(filtration_certificate(x, &s.delta_bars)?.ok_or(Error::NotProperlyStratified)?);
    }
    let module = direct_sum(a, &summands);
    Ok(CharCotilting { summands, module, nabla_certificates, delta_bar_certificates })
}

/// Largest `d` with `Ext^d(Δ(λ), -)` possibly nonzero: `max pd Δ(λ)`.
pub fn delta_ext_bound(s: &Stratified) -> Result<usize> {
    let mut bound = 0;
    for d in &s.deltas {
        match proj_dim(d, s.cap) {
            HomDim::Finite(p) => bound = bound.max(p),
            HomDim::AtLeast(_) => return Err(Error::Truncated(s.cap)),
        }
    }
    Ok(bound)
}

/// `∇̄`-good filtration dimension: the top degree `d` with
/// `Ext^d(Δ(λ), x) ≠ 0` for some `λ`.
pub fn gfd_nabla_bar(s: &Stratified, x: &Rep) -> Result<usize> {
    let bound = delta_ext_bound(s)?;
    for d in (1..=bound).rev() {
        for delta in &s.deltas {
            if ext_dim(d, delta, x, s.cap)? != 0 {
                return Ok(d);
            }
        }
    }
    Ok(0)
}

/// The same dimension as the least `d` whose cosyzygy `Ω^{-d} x` carries a
/// certified `∇̄`-filtration.
pub fn gfd_nabla_bar_by_coresolution(s: &Stratified, x: &Rep) -> Result<usize> {
    let bound = delta_ext_bound(s)?;
    for d in 0..=bound + 1 {
        let c = cosyzygy(x, d)?;
        if filtration_certificate_bottom(&c, &s.nabla_bars)?.is_some() {
            return Ok(d);
        }
    }
    Err(Error::SearchBudgetExceeded(bound + 1))
}

/// `Δ̄`-good filtration dimension, `∇̄-gfd_{A^op}(D x)`; `op` is the
/// stratified opposite algebra.
pub fn gfd_delta_bar(op: &Stratified, x: &Rep) -> Result<usize> {
    gfd_nabla_bar(op, &x.dual())
}

/// Length of an `add(summands)`-coresolution `0 -> x -> T_0 -> ⋯ -> T_s -> 0`
/// built from evaluation maps.
pub fn add_codim(x: &Rep, summands: &[Rep], cap: usize) -> Result<usize> {
    let a = x.algebra();
    let mut current = x.clone();
    for step in 0..=cap {
        if in_add(&current, summands)? {
            return Ok(step);
        }
        let mut targets = Vec::new();
        let mut maps = Vec::new();
        for t in summands {
            for h in hom_basis(&current, t)? {
                targets.push(t.clone());
                maps.push(h);
            }
        }
        let t0 = direct_sum(a, &targets);
        let f = a.field();
        let eval_maps: Vec<Matrix> = (0..a.num_vertices())
            .map(|v| {
                let blocks: Vec<&Matrix> = maps.iter().map(|h| h.map(v)).collect();
                Matrix::vstack(f, current.dim(v), &blocks)
            })
            .collect();
        let eval = Morphism::new(&current, &t0, eval_maps)?;
        if !eval.is_injective() {
            return Err(Error::NoEmbedding);
        }
        current = eval.cokernel().0;
    }
    Err(Error::SearchBudgetExceeded(cap))
}

/// `T-codim(x)`.
pub fn t_codim(x: &Rep, t: &CharTilting, cap: usize) -> Result<usize> {
    add_codim(x, &t.summands, cap)
}

/// Length of an `add(summands)`-resolution `0 -> T_s -> ⋯ -> T_0 -> x -> 0`,
/// via the dual coresolution over the opposite algebra.
pub fn add_dim(x: &Rep, summands: &[Rep], cap: usize) -> Result<usize> {
    let duals: Vec<Rep> = summands.iter().map(Rep::dual).collect();
    add_codim(&x.dual(), &duals, cap)
}

pub fn t_dim(x: &Rep, summands: &[Rep], cap: usize) -> Result<usize> {
    add_dim(x, summands, cap)
}

/// A finite family of test modules: simples, projectives, injectives, the
/// four standard-type families, their radicals, tops and socle quotients,
/// deduplicated up to isomorphism.
pub fn probe_modules(s: &Stratified) -> Vec<Rep> {
    let a = &s.algebra;
    let n = a.num_vertices();
    let mut base: Vec<Rep> = Vec::new();
    for i in 0..n {
        base.push(simple(a, i).unwrap());
        base.push(projective(a, i).unwrap());
        base.push(injective(a, i).unwrap());
    }
    for fam in [&s.deltas, &s.delta_bars, &s.nablas, &s.nabla_bars] {
        base.extend(fam.iter().cloned());
    }
    let mut all = base.clone();
    for m in &base {
        all.push(radical(m).as_rep().0);
        all.push(top(m).0);
        all.push(quotient(m, &socle(m)).0);
    }
    let mut out: Vec<Rep> = Vec::new();
    for m in all {
        if m.is_zero() {
            continue;
        }
        if !out.iter().any(|o| o.dims() == m.dims() && is_isomorphic(o, &m)) {
            out.push(m);
        }
    }
    out
}

/// The four quantities that describe `∇̄-gfd(A)`, computed independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfdReport {
    pub pd_tilting: HomDim,
    pub gfd_regular: usize,
    pub t_codim_regular: usize,
    /// Supremum of `∇̄-gfd` over the probe modules.
    pub probe_sup: usize,
    pub probe_count: usize,
}

impl GfdReport {
    /// The first three agree and the probe supremum does not exceed them.
    pub fn consistent(&self) -> bool {
        self.pd_tilting == HomDim::Finite(self.gfd_regular)
            && self.gfd_regular == self.t_codim_regular
            && self.probe_sup <= self.gfd_regular
    }
}

pub fn gfd_algebra(s: &Stratified, t: &CharTilting) -> Result<GfdReport> {
    let a = &s.algebra;
    let pd_tilting = proj_dim(&t.module, s.cap);
    let reg = regular(a);
    let gfd_regular = gfd_nabla_bar(s, &reg)?;
    let t_codim_regular = t_codim(&reg, t, s.cap)?;
    let probes = probe_modules(s);
    let mut probe_sup = 0;
    for p in &probes {
        probe_sup = probe_sup.max(gfd_nabla_bar(s, p)?);
    }
    Ok(GfdReport { pd_tilting, gfd_regular, t_codim_regular, probe_sup, probe_count: probes.len() })
}

fn flatten(h: &Morphism) -> Vector {
    h.maps().iter().flat_map(|b| b.entries().to_vec()).collect()
}

/// `End(T)^op` presented by a quiver with relations. Vertices are the
/// summands `T(λ)` in reversed order (named after `λ`); an arrow `i -> j`
/// stands for an irreducible map `T(j) -> T(i)`.
pub fn ringel_dual(t: &CharTilting) -> Result<PathAlgebra> {
    let a = &t.algebra;
    let f = a.field();
    let n = t.summands.len();
    // quiver vertex q corresponds to summand n-1-q
    let summand = |q: usize| n - 1 - q;
    let homs: Vec<Vec<Vec<Morphism>>> = (0..n)
        .map(|i| (0..n).map(|j| hom_basis(&t.summands[i], &t.summands[j])).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let end_dim: usize = homs.iter().flatten().map(Vec::len).sum();
    // radical pieces R(x -> y) ⊆ Hom(T(x), T(y)) on summand indices
    let radical_basis = |x: usize, y: usize| -> Result<Vec<Morphism>> {
        if x != y {
            return Ok(homs[x][y].clone());
        }
        // End(T(x)) is local; subtracting an eigenvalue lands in its radical
        let id = Morphism::identity(&t.summands[x]);
        let mut basis = Vec::new();
        for h in &homs[x][x] {
            let mp = minimal_polynomial(f, &[h.total_matrix()]);
            let lambda = roots(&mp, f).into_iter().next().ok_or_else(|| {
                Error::PresentationFailed("endomorphism ring of a summand is not split local".to_string())
            })?;
            basis.push(h.add(&id.scale(&f.neg(&lambda))));
        }
        let len = flatten(&id).len();
        let cols: Vec<Vector> = basis.iter().map(flatten).collect();
        let m = Matrix::from_columns(f, len, &cols);
        Ok(m.rref().1.into_iter().map(|i| basis[i].clone()).collect())
    };
    let rad: Vec<Vec<Vec<Morphism>>> =
        (0..n).map(|x| (0..n).map(|y| radical_basis(x, y)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let mut spec = QuiverSpec::new(
        &format!("{}-ringel-dual", a.name()),
        f,
        &(0..n).map(|q| a.vertex_name(summand(q))).collect::<Vec<_>>(),
    );
    // arrow q_i -> q_j  <->  irreducible T(summand(q_j)) -> T(summand(q_i))
    let mut arrow_maps: Vec<Morphism> = Vec::new();
    for qi in 0..n {
        for qj in 0..n {
            let (src, dst) = (summand(qj), summand(qi));
            let r = &rad[src][dst];
            if r.is_empty() {
                continue;
            }
            let len = flatten(&r[0]).len();
            let mut r2: Vec<Vector> = Vec::new();
            for k in 0..n {
                for g in &rad[src][k] {
                    for h in &rad[k][dst] {
                        r2.push(flatten(&h.compose(g)));
                    }
                }
            }
            let mut span = Matrix::from_columns(f, len, &r2).image_basis();
            for h in r {
                let v = Matrix::from_columns(f, len, &[flatten(h)]);
                if !span.spans(&v) {
                    span = span.span_sum(&v);
                    let name = format!("r{}", arrow_maps.len() + 1);
                    spec.add_arrow(&name, &spec.vertices[qi].clone(), &spec.vertices[qj].clone())?;
                    arrow_maps.push(h.clone());
                }
            }
        }
    }
    // evaluate paths: traversing arrows a1, a2, ... gives the map a1 ∘ a2 ∘ ⋯
    let mut layer: Vec<(Vec<usize>, Morphism)> = Vec::new();
    for (ai, h) in arrow_maps.iter().enumerate() {
        layer.push((vec![ai], h.clone()));
    }
    let mut by_length: Vec<Vec<(Vec<usize>, Morphism)>> = vec![Vec::new(), layer.clone()];
    let mut max_len = None;
    for len in 2..=end_dim + 1 {
        let mut next = Vec::new();
        for (path, h) in &by_length[len - 1] {
            let last = *path.last().unwrap();
            for (ai, g) in arrow_maps.iter().enumerate() {
                if spec.arrows[ai].source != spec.arrows[last].target {
                    continue;
                }
                let mut p = path.clone();
                p.push(ai);
                next.push((p, h.compose(g)));
            }
        }
        let all_zero = next.iter().all(|(_, h)| h.is_zero());
        by_length.push(next);
        if all_zero {
            max_len = Some(len);
            break;
        }
    }
    if arrow_maps.is_empty() {
        max_len = Some(1);
    }
    let max_len = max_len.ok_or_else(|| {
        Error::PresentationFailed(format!("paths survive past degree {}", end_dim + 1))
    })?;
    // linear relations among paths of length 2..max_len, per endpoint pair
    for qs in 0..n {
        for qt in 0..n {
            let paths: Vec<&(Vec<usize>, Morphism)> = by_length[2..max_len.max(2)]
                .iter()
                .flatten()
                .filter(|(p, _)| {
                    spec.arrows[p[0]].source == qs && spec.arrows[*p.last().unwrap()].target == qt
                })
                .collect();
            if paths.is_empty() {
                continue;
            }
            let len = flatten(&paths[0].1).len();
            let cols: Vec<Vector> = paths.iter().map(|(_, h)| flatten(h)).collect();
            let eval = Matrix::from_columns(f, len, &cols);
            for ker in eval.kernel_basis() {
                let mut terms = Vec::new();
                for (c, (p, _)) in ker.iter().zip(&paths) {
                    if !c.is_zero() {
                        terms.push((c.clone(), spec.path_from_arrows(p.clone())?));
                    }
                }
                spec.add_relation(terms)?;
            }
        }
    }
    if max_len >= 2 {
        for (p, _) in &by_length[max_len] {
            let path = spec.path_from_arrows(p.clone())?;
            spec.add_relation(vec![(Rational::one(), path)])?;
        }
    }
    let dual = build_algebra(spec)?;
    if dual.dim() != end_dim {
        return Err(Error::PresentationFailed(format!(
            "presented algebra has dimension {} but End(T) has {}",
            dual.dim(),
            end_dim
        )));
    }
    Ok(dual)
}

/// Names a vertex the way reports do.
pub fn vertex_label(a: &PathAlgebra, v: usize) -> String {
    a.vertex_name(v).to_string()
}

/// `D(A_A)` of the algebra, re-exported for verifiers.
pub fn dual_regular_module(a: &PathAlgebra) -> Rep {
    dual_regular(a)
}

/// An isomorphism between the tilting and cotilting modules, if any.
pub fn tilting_matches_cotilting(t: &CharTilting, s: &CharCotilting) -> bool {
    find_isomorphism(&t.module, &s.module).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::homological::inj_dim;

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
    fn a3line_tilting() {
        let a = a3line();
        let s = Stratified::new(&a).unwrap();
        let t = characteristic_tilting(&s).unwrap();
        assert_eq!(t.summands.len(), 3);
        assert!(is_isomorphic(&t.summands[0], &simple(&a, 0).unwrap()));
        for (i, x) in t.summands.iter().enumerate() {
            for y in &t.summands[i + 1..] {
                assert!(!is_isomorphic(x, y));
            }
        }
        assert_eq!(proj_dim(&t.module, 20), HomDim::Finite(1));
        assert_eq!(inj_dim(&t.module, 20), HomDim::Finite(1));
        let report = gfd_algebra(&s, &t).unwrap();
        assert!(report.consistent(), "{report:?}");
        assert_eq!(report.gfd_regular, 1);
        let cot = characteristic_cotilting(&s).unwrap();
        assert!(tilting_matches_cotilting(&t, &cot));
        let dual = ringel_dual(&t).unwrap();
        assert_eq!(dual.num_vertices(), 3);
        let ds = Stratified::new(&dual).unwrap();
        assert!(ds.class.quasi_hereditary);
        let tt = characteristic_tilting(&ds).unwrap();
        let back = ringel_dual(&tt).unwrap();
        assert_eq!(back.dim(), a.dim());
    }

    #[test]
    fn loop2_tilting_is_regular() {
        let a = loop2();
        let s = Stratified::new(&a).unwrap();
        let t = characteristic_tilting(&s).unwrap();
        assert!(is_isomorphic(&t.module, &regular(&a)));
        let cot = characteristic_cotilting(&s).unwrap();
        assert!(is_isomorphic(&cot.module, &regular(&a)));
        let report = gfd_algebra(&s, &t).unwrap();
        assert_eq!(report, GfdReport {
            pd_tilting: HomDim::Finite(0),
            gfd_regular: 0,
            t_codim_regular: 0,
            probe_sup: 0,
            probe_count: report.probe_count
        });
        let dual = ringel_dual(&t).unwrap();
        assert_eq!(dual.dim(), 2);
    }
}
