//! Subalgebra embeddings, induction `A ⊗_B -`, exact Borel subalgebras and
//! dualities coming from anti-automorphisms.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::homological::{global_dim, proj_dim, HomDim};
use crate::matrix::{Matrix, Vector};
use crate::module::{
    find_isomorphism, injective, is_isomorphic, projective, quotient, regular, simple, Morphism, Rep, Submodule,
};
use crate::rational::Rational;
use crate::strat::{costandard, filtration_certificate, standards, Stratified};
use crate::tilting::{characteristic_tilting, probe_modules};
use crate::verify::{Check, Status};

/// An algebra map `B -> A`, stored as the image of every basis element of
/// `B`. Vertex `i` of `B` goes to vertex `i` of `A`.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: PathAlgebra,
    ambient: PathAlgebra,
    images: Vec<Vector>,
}

impl Embedding {
    /// Extends arrow images multiplicatively and verifies the result.
    pub fn from_arrow_images(sub: &PathAlgebra, ambient: &PathAlgebra, arrows: Vec<Vector>) -> Result<Embedding> {
        if sub.field() != ambient.field() {
            return Err(Error::AlgebraMismatch);
        }
        if sub.num_vertices() != ambient.num_vertices() {
            return Err(Error::IdempotentMismatch(sub.num_vertices().min(ambient.num_vertices())));
        }
        if arrows.len() != sub.num_arrows() || arrows.iter().any(|x| x.len() != ambient.dim()) {
            return Err(Error::InvalidRepresentation("one ambient element per arrow is required".into()));
        }
        let images = sub
            .basis()
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    ambient.unit(ambient.idempotent(p.source))
                } else {
                    let mut x = ambient.unit(ambient.idempotent(p.source));
                    for &ai in &p.arrows {
                        x = ambient.multiply(&arrows[ai], &x);
                    }
                    x
                }
            })
            .collect();
        check_embedding(Embedding { sub: sub.clone(), ambient: ambient.clone(), images })
    }

    pub fn identity(a: &PathAlgebra) -> Embedding {
        let images = (0..a.dim()).map(|i| a.unit(i)).collect();
        Embedding { sub: a.clone(), ambient: a.clone(), images }
    }

    pub fn sub(&self) -> &PathAlgebra {
        &self.sub
    }

    pub fn ambient(&self) -> &PathAlgebra {
        &self.ambient
    }

    /// Image of a basis element of `B`.
    pub fn basis_image(&self, i: usize) -> &[Rational] {
        &self.images[i]
    }

    pub fn image(&self, x: &[Rational]) -> Vector {
        let f = self.ambient.field();
        let mut out = self.ambient.zero();
        for (c, im) in x.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(im) {
                *o = f.add(o, &f.mul(c, v));
            }
        }
        out
    }
}

/// Verifies that `e` is a unital, injective algebra map matching vertex
/// idempotents.
pub fn check_embedding(e: Embedding) -> Result<Embedding> {
    let (b, a) = (&e.sub, &e.ambient);
    if b.num_vertices() != a.num_vertices() {
        return Err(Error::IdempotentMismatch(b.num_vertices().min(a.num_vertices())));
    }
    for v in 0..b.num_vertices() {
        if e.images[b.idempotent(v)] != a.unit(a.idempotent(v)) {
            return Err(Error::IdempotentMismatch(v));
        }
    }
    if e.image(&b.one()) != a.one() {
        return Err(Error::NotUnital);
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let lhs = e.image(&b.multiply(&b.unit(i), &b.unit(j)));
            let rhs = a.multiply(&e.images[i], &e.images[j]);
            if lhs != rhs {
                return Err(Error::NotMultiplicative(i, j));
            }
        }
    }
    let m = Matrix::from_columns(a.field(), a.dim(), &e.images);
    if m.rank() != b.dim() {
        return Err(Error::NotInjective);
    }
    Ok(e)
}

/// `A` as a right `B`-module, i.e. a module over `B^op`.
pub fn right_module(e: &Embedding) -> Rep {
    let (b, a) = (&e.sub, &e.ambient);
    let f = a.field();
    let op = b.opposite();
    let n = b.num_vertices();
    let comps: Vec<Vec<usize>> = (0..n).map(|i| a.paths_from(i)).collect();
    let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
    let maps = (0..b.num_arrows())
        .map(|ai| {
            let arrow = b.arrow(ai);
            let x = &e.images[b.arrow_basis(ai)];
            // p ↦ p · ι(α) maps A e_t to A e_s
            let (from, to) = (arrow.target, arrow.source);
            let mut m = Matrix::zeros(f, dims[to], dims[from]);
            for (c, &p) in comps[from].iter().enumerate() {
                let prod = a.multiply(&a.unit(p), x);
                for (r, &q) in comps[to].iter().enumerate() {
                    m.set(r, c, prod[q].clone());
                }
            }
            m
        })
        .collect();
    Rep::new(&op, dims, maps).expect("right action of an embedded subalgebra is a module")
}

/// Induction is exact iff `A` is projective as a right `B`-module.
pub fn induction_is_exact(e: &Embedding, cap: usize) -> bool {
    proj_dim(&right_module(e), cap) == HomDim::Finite(0)
}

/// Basis of `⊕_i A e_i ⊗ M_i`: triples `(path, vector index)` grouped by
/// the target vertex of the path.
fn tensor_basis(a: &PathAlgebra, m: &Rep) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new(); a.num_vertices()];
    for (p, path) in a.basis().iter().enumerate() {
        for k in 0..m.dim(path.source) {
            out[path.target].push((p, k));
        }
    }
    out
}

fn local_index(basis: &[Vec<(usize, usize)>]) -> impl Fn(usize, usize, usize) -> usize + '_ {
    move |v, p, k| basis[v].iter().position(|&(q, j)| q == p && j == k).expect("pair is in the basis")
}

/// The free part `A ⊗_k M` and its quotient `A ⊗_B M` with the projection.
fn induce_parts(e: &Embedding, m: &Rep) -> (Rep, Morphism) {
    let (b, a) = (&e.sub, &e.ambient);
    let f = a.field();
    let basis = tensor_basis(a, m);
    let idx = local_index(&basis);
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let maps = (0..a.num_arrows())
        .map(|xi| {
            let arrow = a.arrow(xi);
            let x = a.unit(a.arrow_basis(xi));
            let mut mat = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
            for (c, &(p, k)) in basis[arrow.source].iter().enumerate() {
                let prod = a.multiply(&x, &a.unit(p));
                for (q, coeff) in prod.iter().enumerate() {
                    if !coeff.is_zero() {
                        mat.set(idx(arrow.target, q, k), c, coeff.clone());
                    }
                }
            }
            mat
        })
        .collect();
    let free = Rep::new_unchecked(a, dims.clone(), maps);
    // p·ι(α) ⊗ m - p ⊗ α m for p ∈ A e_t, m ∈ M_s, α: s -> t
    let mut rels: Vec<Vec<Vector>> = vec![Vec::new(); a.num_vertices()];
    for ai in 0..b.num_arrows() {
        let arrow = b.arrow(ai);
        let (s, t) = (arrow.source, arrow.target);
        let x = &e.images[b.arrow_basis(ai)];
        let act = m.map(ai);
        for p in a.paths_from(t) {
            let v = a.basis()[p].target;
            let prod = a.multiply(&a.unit(p), x);
            for k in 0..m.dim(s) {
                let mut r = vec![Rational::zero(); dims[v]];
                for (q, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        let i = idx(v, q, k);
                        r[i] = f.add(&r[i], c);
                    }
                }
                for j in 0..m.dim(t) {
                    let c = act.get(j, k);
                    if !c.is_zero() {
                        let i = idx(v, p, j);
                        r[i] = f.sub(&r[i], c);
                    }
                }
                rels[v].push(r);
            }
        }
    }
    let spans: Vec<Matrix> = rels
        .iter()
        .enumerate()
        .map(|(v, cols)| Matrix::from_columns(f, dims[v], cols).image_basis())
        .collect();
    let sub = Submodule::new(&free, spans).expect("relations of a balanced tensor product span a submodule");
    quotient(&free, &sub)
}

/// `A ⊗_B M`.
pub fn induce(e: &Embedding, m: &Rep) -> Rep {
    induce_parts(e, m).0
}

/// `A ⊗_B g`.
pub fn induce_morphism(e: &Embedding, g: &Morphism) -> Morphism {
    let a = &e.ambient;
    let f = a.field();
    let (_, src_proj) = induce_parts(e, g.source());
    let (_, dst_proj) = induce_parts(e, g.target());
    let src_basis = tensor_basis(a, g.source());
    let dst_basis = tensor_basis(a, g.target());
    let idx = local_index(&dst_basis);
    let maps: Vec<Matrix> = (0..a.num_vertices())
        .map(|v| {
            let mut mat = Matrix::zeros(f, dst_basis[v].len(), src_basis[v].len());
            for (c, &(p, k)) in src_basis[v].iter().enumerate() {
                let s = a.basis()[p].source;
                let gm = g.map(s);
                for j in 0..gm.rows() {
                    if !gm.get(j, k).is_zero() {
                        mat.set(idx(v, p, j), c, gm.get(j, k).clone());
                    }
                }
            }
            mat
        })
        .collect();
    let free_map = Morphism::new_unchecked(src_proj.source(), dst_proj.source(), maps);
    crate::module::descend(&src_proj, &dst_proj.compose(&free_map))
}

/// Whether `e` exhibits an exact Borel subalgebra, with the first failing
/// clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelVerdict {
    pub same_simples: bool,
    pub exact_induction: bool,
    pub standards_match: bool,
    pub failing_clause: Option<String>,
}

impl BorelVerdict {
    pub fn holds(&self) -> bool {
        self.failing_clause.is_none()
    }
}

pub fn is_exact_borel(e: &Embedding, cap: usize) -> BorelVerdict {
    let (b, a) = (&e.sub, &e.ambient);
    let same_simples = b.num_vertices() == a.num_vertices();
    let exact_induction = induction_is_exact(e, cap);
    let db = standards(b);
    let da = standards(a);
    let mismatch = (0..a.num_vertices()).find(|&i| !is_isomorphic(&induce(e, &db[i]), &da[i]));
    let standards_match = mismatch.is_none();
    let failing_clause = if !same_simples {
        Some("different numbers of simple modules".to_string())
    } else if !exact_induction {
        Some("A is not projective as a right module over the subalgebra".to_string())
    } else {
        mismatch.map(|i| format!("induced standard module at vertex {} differs", a.vertex_name(i)))
    };
    BorelVerdict { same_simples, exact_induction, standards_match, failing_clause }
}

/// `σ`, an arrow map reversing arrows, given by the index of each image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duality {
    pub algebra: PathAlgebra,
    pub sigma: Vec<usize>,
}

impl Duality {
    /// `φ(M)`: the dual `D M` read back over `A` through `σ`.
    pub fn apply(&self, m: &Rep) -> Result<Rep> {
        let maps = self.sigma.iter().map(|&s| m.map(s).transpose()).collect();
        Rep::new(&self.algebra, m.dims().to_vec(), maps)
    }
}

/// Image of a path under the anti-automorphism determined by `σ`.
fn twist_path(a: &PathAlgebra, sigma: &[usize], arrows: &[usize], end: usize) -> Vector {
    let mut x = a.unit(a.idempotent(end));
    // traversal a1, ..., am becomes σ(am), ..., σ(a1)
    for &ai in arrows {
        x = a.multiply(&x, &a.unit(a.arrow_basis(sigma[ai])));
    }
    x
}

/// Checks that `σ` is an involution reversing every arrow and that it
/// extends to an anti-automorphism of `A` fixing the vertex idempotents.
pub fn duality_check(a: &PathAlgebra, sigma: &[usize]) -> Result<Duality> {
    let fail = |msg: String| Err(Error::NotAntiAutomorphism(msg));
    if sigma.len() != a.num_arrows() {
        return fail("one image per arrow is required".into());
    }
    for (i, &s) in sigma.iter().enumerate() {
        let (x, y) = (a.arrow(i), a.arrow(s));
        if x.source != y.target || x.target != y.source {
            return fail(format!("{} and {} are not opposite arrows", x.name, y.name));
        }
        if sigma[s] != i {
            return fail(format!("not an involution at {}", x.name));
        }
    }
    let f = a.field();
    for rel in &a.spec().relations {
        let mut sum = a.zero();
        for (c, p) in &rel.terms {
            let img = twist_path(a, sigma, &p.arrows, p.source);
            for (o, v) in sum.iter_mut().zip(&img) {
                *o = f.add(o, &f.mul(c, v));
            }
        }
        if sum.iter().any(|c| !c.is_zero()) {
            let names: Vec<String> = rel.terms.iter().map(|(_, p)| a.spec().path_name(p)).collect();
            return fail(format!("relation {} is not preserved", names.join(" + ")));
        }
    }
    Ok(Duality { algebra: a.clone(), sigma: sigma.to_vec() })
}

/// Every anti-automorphism of the quiver (up to `max_arrows` arrows) that
/// passes [`duality_check`].
pub fn find_dualities(a: &PathAlgebra, max_arrows: usize) -> Vec<Duality> {
    let n = a.num_arrows();
    if n > max_arrows {
        return Vec::new();
    }
    let options: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let x = a.arrow(i);
            (0..n).filter(|&j| a.arrow(j).source == x.target && a.arrow(j).target == x.source).collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let sigma: Vec<usize> = idx.iter().enumerate().map(|(i, &k)| options[i][k]).collect();
        if let Ok(d) = duality_check(a, &sigma) {
            out.push(d);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Test modules over the subalgebra.
pub fn sub_probes(b: &PathAlgebra) -> Vec<Rep> {
    match Stratified::new(b) {
        Ok(s) => probe_modules(&s),
        Err(_) => (0..b.num_vertices())
            .flat_map(|i| [simple(b, i).unwrap(), projective(b, i).unwrap(), injective(b, i).unwrap()])
            .collect(),
    }
}

fn dims_label(m: &Rep) -> String {
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Checks on an embedding `B -> A`. The consequences of being an exact
/// Borel subalgebra are only checked once the defining clauses hold; the
/// global dimension bound also needs a duality on `A`.
pub fn run_borel_checks(e: &Embedding, duality: Option<&Duality>, cap: usize) -> Vec<Check> {
    let (b, a) = (e.sub(), e.ambient());
    let mut checks = Vec::new();
    let verdict = is_exact_borel(e, cap);
    checks.push(Check::run("induction_is_exact", || {
        Ok((verdict.exact_induction, format!("A projective as right module: {}", verdict.exact_induction)))
    }));
    checks.push(Check::run("induction_preserves_regular", || {
        let ok = is_isomorphic(&induce(e, &regular(b)), &regular(a));
        Ok((ok, format!("A ⊗ B ≅ A: {ok}")))
    }));
    checks.push(Check::run("sub_standards_are_simple", || {
        let db = standards(b);
        let ok = db.iter().all(|d| d.total_dim() == 1);
        Ok((ok, format!("standard module dimensions {}", db.iter().map(dims_label).collect::<Vec<_>>().join(" "))))
    }));
    checks.push(Check::run("induced_simples_are_standard", || {
        let da = standards(a);
        for (i, d) in da.iter().enumerate() {
            let ind = induce(e, &simple(b, i)?);
            if !is_isomorphic(&ind, d) {
                return Ok((false, format!("vertex {}: induced {}, standard {}", a.vertex_name(i), dims_label(&ind), dims_label(d))));
            }
        }
        Ok((true, format!("{} vertices", da.len())))
    }));
    if !verdict.holds() {
        return checks;
    }
    checks.push(Check::run("induction_lowers_pd", || {
        let sa = Stratified::new(a)?;
        let probes = sub_probes(b);
        for m in &probes {
            let ind = induce(e, m);
            let pa = proj_dim(&ind, cap);
            let pb = proj_dim(m, cap);
            let ok = match (pa, pb) {
                (_, HomDim::AtLeast(_)) => true,
                (HomDim::Finite(x), HomDim::Finite(y)) => x <= y,
                (HomDim::AtLeast(_), HomDim::Finite(_)) => false,
            };
            if !ok {
                return Ok((false, format!("module {}: pd {} after induction, {} before", dims_label(m), pa, pb)));
            }
            if !ind.is_zero() && filtration_certificate(&ind, &sa.deltas)?.is_none() {
                return Ok((false, format!("induced module {} has no standard filtration", dims_label(&ind))));
            }
        }
        Ok((true, format!("{} probe modules", probes.len())))
    }));
    if let Some(d) = duality {
        checks.push(Check::run("duality_fixes_simples", || {
            for i in 0..a.num_vertices() {
                let s = simple(a, i)?;
                if d.apply(&s)?.dims() != s.dims() {
                    return Ok((false, format!("vertex {}", a.vertex_name(i))));
                }
            }
            Ok((true, format!("{} simples", a.num_vertices())))
        }));
        checks.push(Check::run("duality_swaps_standard_costandard", || {
            let s = Stratified::new(a)?;
            let t = characteristic_tilting(&s)?;
            for i in 0..a.num_vertices() {
                if find_isomorphism(&d.apply(&s.deltas[i])?, &costandard(a, i)?).is_none() {
                    return Ok((false, format!("φ(Δ({0})) is not ∇({0})", a.vertex_name(i))));
                }
                if find_isomorphism(&d.apply(&t.summands[i])?, &t.summands[i]).is_none() {
                    return Ok((false, format!("φ(T({0})) is not T({0})", a.vertex_name(i))));
                }
            }
            Ok((true, format!("{} vertices", a.num_vertices())))
        }));
        checks.push(Check::run("gldim_at_most_twice_sub", || {
            let ga = global_dim(a, cap).finite().ok_or(Error::Truncated(cap))?;
            let gb = global_dim(b, cap).finite().ok_or(Error::Truncated(cap))?;
            let shape = if ga == 2 * gb { "equality" } else { "strict" };
            Ok((ga <= 2 * gb, format!("{ga} <= 2*{gb}, {shape}")))
        }));
    }
    checks
}

/// Status of the Borel checks taken together.
pub fn borel_status(checks: &[Check]) -> Status {
    crate::verify::overall(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverSpec};
    use crate::field::Field;
    use crate::module::radical;

    fn a3line() -> PathAlgebra {
        let spec = QuiverSpec::new("a3line", Field::Rationals, &["1", "2", "3"])
            .arrow("a", "2", "1")
            .unwrap()
            .arrow("b", "1", "3")
            .unwrap();
        build_algebra(spec).unwrap()
    }

    fn loop_algebra(n: i64) -> PathAlgebra {
        let power = vec!["x"; n as usize].join(".");
        let spec = QuiverSpec::new("loop", Field::Rationals, &["v"])
            .arrow("x", "v", "v")
            .unwrap()
            .relation(&[(1, power.as_str())])
            .unwrap();
        build_algebra(spec).unwrap()
    }

    #[test]
    fn identity_embedding() {
        let a = a3line();
        let e = check_embedding(Embedding::identity(&a)).unwrap();
        for i in 0..3 {
            let p = projective(&a, i).unwrap();
            assert!(is_isomorphic(&induce(&e, &p), &p));
        }
        assert!(is_exact_borel(&e, 20).holds());
    }

    #[test]
    fn rejects_bad_embeddings() {
        let a = a3line();
        let zero = vec![a.zero(), a.zero()];
        let e = Embedding::from_arrow_images(&a, &a, zero).unwrap_err();
        assert_eq!(e, Error::NotInjective);
        let two = a.unit(a.arrow_basis(0)).iter().map(|c| c.clone() + c.clone()).collect::<Vec<_>>();
        let mut wrong = a.zero();
        wrong[a.arrow_basis(0)] = Rational::one();
        let err = Embedding::from_arrow_images(&a, &a, vec![two, wrong]).unwrap_err();
        assert!(matches!(err, Error::NotInjective | Error::NotMultiplicative(..)));
    }

    #[test]
    fn loop_embedding_not_projective() {
        let b = loop_algebra(2);
        let a = loop_algebra(4);
        let x3 = a.element(&[(Rational::one(), "x.x.x")]).unwrap();
        let e = Embedding::from_arrow_images(&b, &a, vec![x3]).unwrap();
        assert!(!induction_is_exact(&e, 20));
        assert!(!is_exact_borel(&e, 20).holds());
    }

    #[test]
    fn induction_of_exact_sequence() {
        let a = a3line();
        let e = Embedding::identity(&a);
        let p = projective(&a, 0).unwrap();
        let (r, inc) = radical(&p).as_rep();
        let (q, proj) = quotient(&p, &radical(&p));
        let fi = induce_morphism(&e, &inc);
        let fp = induce_morphism(&e, &proj);
        assert!(fi.is_injective() && fp.is_surjective());
        assert!(fp.compose(&fi).is_zero());
        assert_eq!(induce(&e, &r).total_dim() + induce(&e, &q).total_dim(), p.total_dim());
    }

    #[test]
    fn dualities() {
        assert!(find_dualities(&a3line(), 6).is_empty());
        let l = loop_algebra(2);
        let d = duality_check(&l, &[0]).unwrap();
        let reg = regular(&l);
        assert!(is_isomorphic(&d.apply(&reg).unwrap(), &reg));
    }
}
