//! Minimal projective resolutions, Ext, homological dimensions and
//! realized extensions.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::module::{
    descend, direct_sum, from_generators, hom_basis, projective, quotient, radical, simple, sum_injection,
    Morphism, Rep, Submodule,
};
use crate::rational::Rational;

/// Default length cap for resolutions.
pub const DEFAULT_CAP: usize = 20;

/// A homological dimension: exact, or only bounded below because a
/// resolution hit its cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomDim {
    Finite(usize),
    AtLeast(usize),
}

impl HomDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            HomDim::Finite(n) => Some(n),
            HomDim::AtLeast(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, HomDim::Finite(_))
    }

    pub fn max(self, other: HomDim) -> HomDim {
        match (self, other) {
            (HomDim::Finite(a), HomDim::Finite(b)) => HomDim::Finite(a.max(b)),
            (HomDim::AtLeast(a), HomDim::Finite(b)) | (HomDim::Finite(b), HomDim::AtLeast(a)) => {
                HomDim::AtLeast(a.max(b + 1))
            }
            (HomDim::AtLeast(a), HomDim::AtLeast(b)) => HomDim::AtLeast(a.max(b)),
        }
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Finite(n) => write!(f, "{n}"),
            HomDim::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// `⋯ -> P_1 -> P_0 -> M -> 0` with `P_k = ⊕_j P(terms[k][j])`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub module: Rep,
    pub terms: Vec<Vec<usize>>,
    /// `differentials[k][g][j]`: the coefficient (in `e_w A e_{v_j}`) of the
    /// j-th generator of `P_k` in the image of generator `g` of `P_{k+1}`.
    pub differentials: Vec<Vec<Vec<Vector>>>,
    /// `syzygies[k] = Ω^k M`, with `syzygies[0] = M`.
    pub syzygies: Vec<Rep>,
    /// `covers[k]: P_k ↠ Ω^k M`.
    pub covers: Vec<Morphism>,
    /// `inclusions[k]: Ω^{k+1} M ↪ P_k`.
    pub inclusions: Vec<Morphism>,
    /// The cap was reached with a nonzero syzygy left over.
    pub truncated: bool,
    pub cap: usize,
}

impl Resolution {
    /// Number of computed terms minus one.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn proj_dim(&self) -> HomDim {
        if self.module.is_zero() {
            return HomDim::Finite(0);
        }
        if self.truncated {
            HomDim::AtLeast(self.cap + 1)
        } else {
            HomDim::Finite(self.length())
        }
    }

    /// Generators of `P_k`, empty beyond a finite resolution.
    fn term(&self, k: usize) -> Result<&[usize]> {
        if k < self.terms.len() {
            Ok(&self.terms[k])
        } else if self.truncated {
            Err(Error::Truncated(self.cap))
        } else {
            Ok(&[])
        }
    }

    /// Minimality: every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().flatten().all(|x| {
            let a = self.module.algebra();
            (0..a.num_vertices()).all(|v| x[a.idempotent(v)].is_zero())
        })
    }
}

/// `P = ⊕ P(v_j)` as a representation.
pub fn free_module(a: &PathAlgebra, vertices: &[usize]) -> Rep {
    let parts: Vec<Rep> = vertices.iter().map(|&v| projective(a, v).unwrap()).collect();
    direct_sum(a, &parts)
}

/// Splits a vector of `(⊕ P(v_j))_w` into algebra elements `x_j ∈ e_w A e_{v_j}`.
fn split_coordinates(a: &PathAlgebra, vertices: &[usize], w: usize, vec: &[Rational]) -> Vec<Vector> {
    let mut pos = 0;
    vertices
        .iter()
        .map(|&v| {
            let mut x = a.zero();
            for p in a.paths_from(v) {
                if a.basis()[p].target == w {
                    x[p] = vec[pos].clone();
                    pos += 1;
                }
            }
            x
        })
        .collect()
}

/// Projective cover `⊕ P(v_j) ↠ M`, lifting a basis of the top.
pub fn projective_cover(m: &Rep) -> Result<(Vec<usize>, Morphism)> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(cover_of(m))
}

fn cover_of(m: &Rep) -> (Vec<usize>, Morphism) {
    let a = m.algebra();
    let rad = radical(m);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for v in 0..a.num_vertices() {
        let c = rad.basis(v).complement_columns();
        for j in 0..c.cols() {
            vertices.push(v);
            images.push(c.column(j));
        }
    }
    let p = free_module(a, &vertices);
    let cover = from_generators(&p, &vertices, m, &images);
    (vertices, cover)
}

/// Minimal projective resolution computed up to `P_cap`.
pub fn min_proj_resolution(m: &Rep, cap: usize) -> Arc<Resolution> {
    let a = m.algebra();
    let key = m.key();
    if let Some(r) = a.inner_resolutions().lock().get(&key) {
        if !r.truncated || r.cap >= cap {
            return r.clone();
        }
    }
    let res = Arc::new(compute_resolution(m, cap));
    a.inner_resolutions().lock().insert(key, res.clone());
    res
}

fn compute_resolution(m: &Rep, cap: usize) -> Resolution {
    let a = m.algebra();
    let mut res = Resolution {
        module: m.clone(),
        terms: Vec::new(),
        differentials: Vec::new(),
        syzygies: vec![m.clone()],
        covers: Vec::new(),
        inclusions: Vec::new(),
        truncated: false,
        cap,
    };
    if m.is_zero() {
        return res;
    }
    let mut current = m.clone();
    loop {
        let k = res.terms.len();
        let (gens, cover) = cover_of(&current);
        if k > 0 {
            let prev = &res.terms[k - 1];
            let inc = &res.inclusions[k - 1];
            // image of each new generator inside P_{k-1}
            let mut rows = Vec::with_capacity(gens.len());
            let mut seen = vec![0usize; a.num_vertices()];
            for &w in &gens {
                let src = cover.source();
                let local: usize = seen[w];
                seen[w] += 1;
                // generator j sits at vertex w; its column in P at w is the
                // trivial path of its own summand
                let col = generator_column(src, &gens, w, local);
                let in_omega = cover.map(w).column(col);
                let in_prev = inc.map(w).mul_vec(&in_omega);
                rows.push(split_coordinates(a, prev, w, &in_prev));
            }
            res.differentials.push(rows);
        }
        res.terms.push(gens);
        let kernel = cover.kernel();
        let (omega, inc) = kernel.as_rep();
        res.covers.push(cover);
        if omega.is_zero() {
            res.syzygies.push(omega);
            res.inclusions.push(inc);
            break;
        }
        res.syzygies.push(omega.clone());
        res.inclusions.push(inc);
        if k == cap {
            res.truncated = true;
            break;
        }
        current = omega;
    }
    res
}

/// Column of the `local`-th generator at vertex `w` in `(⊕ P(v_j))_w`.
fn generator_column(p: &Rep, gens: &[usize], w: usize, local: usize) -> usize {
    let a = p.algebra();
    let mut col = 0;
    let mut count = 0;
    for &v in gens {
        for q in a.paths_from(v) {
            if a.basis()[q].target != w {
                continue;
            }
            if v == w && a.basis()[q].is_trivial() {
                if count == local {
                    return col;
                }
                count += 1;
            }
            col += 1;
        }
    }
    unreachable!("generator exists")
}

/// `Ω^k M` (a zero module past the projective dimension).
pub fn syzygy(m: &Rep, k: usize) -> Result<Rep> {
    let res = min_proj_resolution(m, k);
    if k < res.syzygies.len() {
        Ok(res.syzygies[k].clone())
    } else if res.truncated {
        Err(Error::Truncated(res.cap))
    } else {
        Ok(Rep::zero(m.algebra()))
    }
}

/// `Ω^{-k} M = D Ω^k_{A^op}(D M)`.
pub fn cosyzygy(m: &Rep, k: usize) -> Result<Rep> {
    Ok(syzygy(&m.dual(), k)?.dual())
}

/// Matrix of `δ: Hom(P_k, N) -> Hom(P_{k+1}, N)` in generator coordinates.
fn cochain_matrix(res: &Resolution, k: usize, n: &Rep) -> Result<Matrix> {
    let f = n.field();
    let src = res.term(k)?;
    let dst = res.term(k + 1)?;
    let cols: usize = src.iter().map(|&v| n.dim(v)).sum();
    let rows: usize = dst.iter().map(|&v| n.dim(v)).sum();
    let mut m = Matrix::zeros(f, rows, cols);
    if rows == 0 || cols == 0 {
        return Ok(m);
    }
    let a = n.algebra();
    let mut r0 = 0;
    for (g, &w) in dst.iter().enumerate() {
        let mut c0 = 0;
        for (j, &v) in src.iter().enumerate() {
            let x = &res.differentials[k][g][j];
            let mut block = Matrix::zeros(f, n.dim(w), n.dim(v));
            for (p, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    block = block.add(&n.path_matrix(&a.basis()[p]).scale(c));
                }
            }
            m.set_block(r0, c0, &block);
            c0 += n.dim(v);
        }
        r0 += n.dim(w);
    }
    Ok(m)
}

fn ext_from_resolution(res: &Resolution, i: usize, n: &Rep) -> Result<usize> {
    let hom: usize = res.term(i)?.iter().map(|&v| n.dim(v)).sum();
    let out_rank = cochain_matrix(res, i, n)?.rank();
    let in_rank = if i == 0 { 0 } else { cochain_matrix(res, i - 1, n)?.rank() };
    Ok(hom - out_rank - in_rank)
}

/// `dim Ext^i(m, n)` from a projective resolution of `m` capped at `cap`.
pub fn ext_dim(i: usize, m: &Rep, n: &Rep, cap: usize) -> Result<usize> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let res = min_proj_resolution(m, cap);
    if !res.truncated {
        return ext_from_resolution(&res, i, n);
    }
    if i > cap {
        return Err(Error::Truncated(cap));
    }
    ext_from_resolution(&min_proj_resolution(m, i + 1), i, n)
}

/// `dim Ext^i(m, n)` computed as `Ext^i_{A^op}(D n, D m)`, i.e. from an
/// injective coresolution of `n`.
pub fn ext_dim_dual(i: usize, m: &Rep, n: &Rep, cap: usize) -> Result<usize> {
    ext_dim(i, &n.dual(), &m.dual(), cap)
}

pub fn proj_dim(m: &Rep, cap: usize) -> HomDim {
    min_proj_resolution(m, cap).proj_dim()
}

pub fn inj_dim(m: &Rep, cap: usize) -> HomDim {
    proj_dim(&m.dual(), cap)
}

/// Maximum projective dimension of the simples.
pub fn global_dim(a: &PathAlgebra, cap: usize) -> HomDim {
    (0..a.num_vertices())
        .map(|i| proj_dim(&simple(a, i).unwrap(), cap))
        .fold(HomDim::Finite(0), HomDim::max)
}

/// A short exact sequence `0 -> N -> Z -> M -> 0`.
#[derive(Debug, Clone)]
pub struct ExtClass {
    pub middle: Rep,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

impl ExtClass {
    pub fn is_exact(&self) -> bool {
        let (n, z, m) = (self.inclusion.source(), &self.middle, self.projection.target());
        self.inclusion.is_injective()
            && self.projection.is_surjective()
            && self.projection.compose(&self.inclusion).is_zero()
            && n.total_dim() + m.total_dim() == z.total_dim()
    }

    /// True when the projection has a right inverse.
    pub fn splits(&self) -> bool {
        let m = self.projection.target();
        let f = m.field();
        let Ok(hom) = hom_basis(m, &self.middle) else { return false };
        let flatten = |g: &Morphism| -> Vector { g.maps().iter().flat_map(|b| b.entries().to_vec()).collect() };
        let target = flatten(&Morphism::identity(m));
        if hom.is_empty() {
            return target.is_empty();
        }
        let cols: Vec<Vector> = hom.iter().map(|h| flatten(&self.projection.compose(h))).collect();
        Matrix::from_columns(f, target.len(), &cols).solve(&target).is_some()
    }
}

/// Cocycles `Ω M -> N` spanning a complement of the maps that extend to `P_0`.
fn ext1_cocycles(res: &Resolution, n: &Rep) -> Result<Vec<Morphism>> {
    let omega = &res.syzygies[1];
    if omega.is_zero() {
        return Ok(Vec::new());
    }
    let f = n.field();
    let inc = &res.inclusions[0];
    let p0 = inc.target();
    let flatten = |g: &Morphism| -> Vector { g.maps().iter().flat_map(|b| b.entries().to_vec()).collect() };
    let restricted: Vec<Vector> = hom_basis(p0, n)?.iter().map(|h| flatten(&h.compose(inc))).collect();
    let all = hom_basis(omega, n)?;
    let len = all.first().map_or(0, |h| flatten(h).len());
    let mut span = Matrix::from_columns(f, len, &restricted).image_basis();
    let mut out = Vec::new();
    for h in all {
        let v = Matrix::from_columns(f, len, &[flatten(&h)]);
        if !span.spans(&v) {
            span = span.span_sum(&v);
            out.push(h);
        }
    }
    Ok(out)
}

/// Pushout of `0 -> Ω -> P_0 -> M -> 0` along `psi: Ω -> N`.
fn pushout(inc: &Morphism, cover: &Morphism, psi: &Morphism) -> ExtClass {
    let n = psi.target();
    let p0 = inc.target();
    let a = n.algebra();
    let f = a.field();
    let parts = [n.clone(), p0.clone()];
    let w = direct_sum(a, &parts);
    let glue_maps: Vec<Matrix> = (0..a.num_vertices())
        .map(|v| Matrix::vstack(f, inc.source().dim(v), &[psi.map(v), &inc.map(v).scale(&f.from_int(-1))]))
        .collect();
    let glue = Morphism::new_unchecked(inc.source(), &w, glue_maps);
    let (z, proj) = quotient(&w, &glue.image());
    let into_n = sum_injection(&w, &parts, 0);
    let inclusion = proj.compose(&into_n);
    let onto_m_maps: Vec<Matrix> = (0..a.num_vertices())
        .map(|v| Matrix::hstack(f, cover.target().dim(v), &[&Matrix::zeros(f, cover.target().dim(v), n.dim(v)), cover.map(v)]))
        .collect();
    let onto_m = Morphism::new_unchecked(&w, cover.target(), onto_m_maps);
    let projection = descend(&proj, &onto_m);
    ExtClass { middle: z, inclusion, projection }
}

/// A basis of `Ext^1(m, n)` realized as short exact sequences.
pub fn ext1_classes(m: &Rep, n: &Rep) -> Result<Vec<ExtClass>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    let res = min_proj_resolution(m, 1);
    let cocycles = ext1_cocycles(&res, n)?;
    Ok(cocycles.iter().map(|psi| pushout(&res.inclusions[0], &res.covers[0], psi)).collect())
}

/// `0 -> x -> Z -> q^m -> 0` with `m = dim Ext^1(q, x)`, built from all
/// basis cocycles at once so that every extension of `q` by `x` is
/// pulled back from it.
pub fn universal_extension(q: &Rep, x: &Rep) -> Result<ExtClass> {
    if q.algebra() != x.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if q.is_zero() || x.is_zero() {
        return Err(Error::NothingToExtend);
    }
    let res = min_proj_resolution(q, 1);
    let cocycles = ext1_cocycles(&res, x)?;
    if cocycles.is_empty() {
        return Err(Error::NothingToExtend);
    }
    let a = q.algebra();
    let f = a.field();
    let m = cocycles.len();
    let inc = &res.inclusions[0];
    let cover = &res.covers[0];
    let omega_m = direct_sum(a, &vec![inc.source().clone(); m]);
    let p0_m = direct_sum(a, &vec![inc.target().clone(); m]);
    let q_m = direct_sum(a, &vec![q.clone(); m]);
    let block = |g: &Morphism, s: &Rep, t: &Rep| {
        let maps = (0..a.num_vertices())
            .map(|v| {
                let blocks: Vec<&Matrix> = vec![g.map(v); m];
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Morphism::new_unchecked(s, t, maps)
    };
    let inc_m = block(inc, &omega_m, &p0_m);
    let cover_m = block(cover, &p0_m, &q_m);
    let psi_maps = (0..a.num_vertices())
        .map(|v| {
            let parts: Vec<&Matrix> = cocycles.iter().map(|c| c.map(v)).collect();
            Matrix::hstack(f, x.dim(v), &parts)
        })
        .collect();
    let psi = Morphism::new_unchecked(&omega_m, x, psi_maps);
    Ok(pushout(&inc_m, &cover_m, &psi))
}

/// Whether a submodule-level check is needed elsewhere: `s` is contained in
/// the radical of its ambient module.
pub fn in_radical(s: &Submodule) -> bool {
    radical(s.ambient()).contains(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverSpec};
    use crate::field::Field;
    use crate::module::{find_isomorphism, regular};

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
    fn hereditary_resolutions() {
        let a = a3line();
        let e1 = simple(&a, 0).unwrap();
        let res = min_proj_resolution(&e1, 5);
        assert_eq!(res.proj_dim(), HomDim::Finite(1));
        assert!(res.is_minimal());
        let e3 = simple(&a, 2).unwrap();
        assert_eq!(ext_dim(1, &e1, &e3, 5).unwrap(), 1);
        assert_eq!(ext_dim(1, &e3, &e1, 5).unwrap(), 0);
        assert_eq!(global_dim(&a, 5), HomDim::Finite(1));
        let classes = ext1_classes(&e1, &e3).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].middle.dims(), &[1, 0, 1]);
        assert!(classes[0].is_exact());
        assert!(!classes[0].splits());
    }

    #[test]
    fn periodic_resolution() {
        let a = loop2();
        let e = simple(&a, 0).unwrap();
        let res = min_proj_resolution(&e, 6);
        assert!(res.truncated);
        assert_eq!(res.proj_dim(), HomDim::AtLeast(7));
        for k in 1..res.syzygies.len() {
            assert_eq!(res.syzygies[k].total_dim(), 1);
        }
        for i in 0..5 {
            assert_eq!(ext_dim(i, &e, &e, 6).unwrap(), 1);
        }
        let u = universal_extension(&e, &e).unwrap();
        assert!(find_isomorphism(&u.middle, &regular(&a)).is_some());
        assert_eq!(ext_dim(1, &e, &u.middle, 6).unwrap(), 0);
        assert_eq!(universal_extension(&e, &regular(&a)).unwrap_err(), Error::NothingToExtend);
    }
}
