//! Finite-dimensional left modules as quiver representations, their
//! morphisms and submodules.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Path, PathAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

/// Structural identity of a module over a fixed algebra.
pub type RepKey = (Vec<usize>, Vec<Matrix>);

/// A representation: one space per vertex, one matrix per arrow
/// (`dims[target] x dims[source]`).
#[derive(Clone, PartialEq, Eq)]
pub struct Rep {
    algebra: PathAlgebra,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(dims {:?}", self.dims)?;
        for (a, m) in self.maps.iter().enumerate() {
            if !m.is_zero() {
                write!(f, ", {} = {:?}", self.algebra.arrow(a).name, m)?;
            }
        }
        write!(f, ")")
    }
}

impl Rep {
    /// Checks shapes, field and that every relation acts as zero.
    pub fn new(algebra: &PathAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        if dims.len() != algebra.num_vertices() || maps.len() != algebra.num_arrows() {
            return Err(Error::InvalidRepresentation("wrong number of vertices or arrows".into()));
        }
        let f = algebra.field();
        for (a, m) in maps.iter().enumerate() {
            let arrow = algebra.arrow(a);
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::InvalidRepresentation(format!("arrow {} has the wrong shape", arrow.name)));
            }
            if m.field() != f {
                return Err(Error::InvalidRepresentation(format!("arrow {} lives over another field", arrow.name)));
            }
        }
        let rep = Rep { algebra: algebra.clone(), dims, maps };
        for rel in &algebra.spec().relations {
            let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
            let mut acc = Matrix::zeros(f, rep.dims[t], rep.dims[s]);
            for (c, p) in &rel.terms {
                acc = acc.add(&rep.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation through {} does not vanish",
                    algebra.spec().path_name(&rel.terms[0].1)
                )));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: &PathAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Rep {
        debug_assert!(Rep::new(algebra, dims.clone(), maps.clone()).is_ok());
        Rep { algebra: algebra.clone(), dims, maps }
    }

    pub fn zero(algebra: &PathAlgebra) -> Rep {
        let n = algebra.num_vertices();
        Rep::with_dims_zero(algebra, vec![0; n])
    }

    /// All arrows acting as zero (semisimple).
    pub fn with_dims_zero(algebra: &PathAlgebra, dims: Vec<usize>) -> Rep {
        let f = algebra.field();
        let maps = algebra
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Rep { algebra: algebra.clone(), dims, maps }
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Starting index of each vertex space in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    pub fn key(&self) -> RepKey {
        (self.dims.clone(), self.maps.clone())
    }

    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let f = self.field();
        let mut m = Matrix::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of an algebra element on the total space.
    pub fn element_action(&self, x: &[Rational]) -> Matrix {
        let f = self.field();
        let off = self.offsets();
        let n = self.total_dim();
        let mut out = Matrix::zeros(f, n, n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.algebra.basis()[i];
            let block = self.path_matrix(p).scale(c);
            let cur = out.block(off[p.target], off[p.source], block.rows(), block.cols());
            out.set_block(off[p.target], off[p.source], &cur.add(&block));
        }
        out
    }

    /// Composition multiplicity `[M : E(i)]`.
    pub fn composition_multiplicity(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// The k-dual `D M = Hom_k(M, k)`, a module over the opposite algebra.
    pub fn dual(&self) -> Rep {
        Rep {
            algebra: self.algebra.opposite(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Same data read over another (structurally equal) algebra handle.
    pub fn rebase(&self, algebra: &PathAlgebra) -> Result<Rep> {
        if *algebra != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Rep { algebra: algebra.clone(), dims: self.dims.clone(), maps: self.maps.clone() })
    }
}

/// Dual module over the opposite algebra.
pub fn dual_to_opposite(m: &Rep) -> Rep {
    m.dual()
}

pub fn simple(a: &PathAlgebra, i: usize) -> Result<Rep> {
    a.check_vertex(i)?;
    let mut dims = vec![0; a.num_vertices()];
    dims[i] = 1;
    Ok(Rep::with_dims_zero(a, dims))
}

/// `P(i) = A e_i`, with basis the reduced paths leaving `i`.
pub fn projective(a: &PathAlgebra, i: usize) -> Result<Rep> {
    a.check_vertex(i)?;
    let f = a.field();
    let paths = a.paths_from(i);
    let mut dims = vec![0; a.num_vertices()];
    let mut local = vec![usize::MAX; a.dim()];
    for &p in &paths {
        let t = a.basis()[p].target;
        local[p] = dims[t];
        dims[t] += 1;
    }
    let maps = (0..a.num_arrows())
        .map(|ai| {
            let arrow = a.arrow(ai);
            let mut m = Matrix::zeros(f, dims[arrow.target], dims[arrow.source]);
            let x = a.unit(a.arrow_basis(ai));
            for &p in paths.iter().filter(|&&p| a.basis()[p].target == arrow.source) {
                let prod = a.multiply(&x, &a.unit(p));
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        m.set(local[k], local[p], c.clone());
                    }
                }
            }
            m
        })
        .collect();
    Ok(Rep::new_unchecked(a, dims, maps))
}

/// `I(i) = D(e_i A)`, computed as the dual of a projective over `A^op`.
pub fn injective(a: &PathAlgebra, i: usize) -> Result<Rep> {
    projective(&a.opposite(), i).map(|p| p.dual())
}

pub fn regular(a: &PathAlgebra) -> Rep {
    let parts: Vec<Rep> = (0..a.num_vertices()).map(|i| projective(a, i).unwrap()).collect();
    direct_sum(a, &parts)
}

/// `D(A_A)`, the direct sum of the indecomposable injectives.
pub fn dual_regular(a: &PathAlgebra) -> Rep {
    let parts: Vec<Rep> = (0..a.num_vertices()).map(|i| injective(a, i).unwrap()).collect();
    direct_sum(a, &parts)
}

/// Direct sum with vertex spaces concatenated in part order.
pub fn direct_sum(a: &PathAlgebra, parts: &[Rep]) -> Rep {
    let f = a.field();
    let n = a.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..a.num_arrows())
        .map(|ai| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[ai]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    Rep { algebra: a.clone(), dims, maps }
}

/// Inclusions and projections of the `k`-th part of [`direct_sum`].
pub fn sum_injection(sum: &Rep, parts: &[Rep], k: usize) -> Morphism {
    let f = sum.field();
    let maps = (0..sum.dims.len())
        .map(|v| {
            let off: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
            let mut m = Matrix::zeros(f, sum.dims[v], parts[k].dims[v]);
            for j in 0..parts[k].dims[v] {
                m.set(off + j, j, Rational::one());
            }
            m
        })
        .collect();
    Morphism { source: parts[k].clone(), target: sum.clone(), maps }
}

pub fn sum_projection(sum: &Rep, parts: &[Rep], k: usize) -> Morphism {
    let inj = sum_injection(sum, parts, k);
    Morphism {
        source: sum.clone(),
        target: parts[k].clone(),
        maps: inj.maps.iter().map(Matrix::transpose).collect(),
    }
}

pub fn power(m: &Rep, k: usize) -> Rep {
    let parts = vec![m.clone(); k];
    direct_sum(m.algebra(), &parts)
}

/// A module map, stored as one matrix per vertex (`dims_target x dims_source`).
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Rep,
    target: Rep,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism{:?}", self.maps)
    }
}

impl Morphism {
    pub fn new(source: &Rep, target: &Rep, maps: Vec<Matrix>) -> Result<Morphism> {
        if source.algebra != target.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if maps.len() != source.dims.len() {
            return Err(Error::InvalidRepresentation("morphism needs one matrix per vertex".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dims[v] || m.cols() != source.dims[v] {
                return Err(Error::InvalidRepresentation(format!("morphism block at vertex {v} has the wrong shape")));
            }
        }
        let mor = Morphism { source: source.clone(), target: target.clone(), maps };
        for (ai, arrow) in source.algebra.arrows().iter().enumerate() {
            let lhs = mor.maps[arrow.target].mul(&source.maps[ai]);
            let rhs = target.maps[ai].mul(&mor.maps[arrow.source]);
            if lhs != rhs {
                return Err(Error::InvalidRepresentation(format!("map does not commute with arrow {}", arrow.name)));
            }
        }
        Ok(mor)
    }

    pub(crate) fn new_unchecked(source: &Rep, target: &Rep, maps: Vec<Matrix>) -> Morphism {
        Morphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(m: &Rep) -> Morphism {
        let f = m.field();
        Morphism { source: m.clone(), target: m.clone(), maps: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    pub fn zero(m: &Rep, n: &Rep) -> Morphism {
        let f = m.field();
        Morphism {
            source: m.clone(),
            target: n.clone(),
            maps: m.dims.iter().zip(&n.dims).map(|(&s, &t)| Matrix::zeros(f, t, s)).collect(),
        }
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Morphism {
        Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&inner.maps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn with_source(&self, source: &Rep) -> Morphism {
        Morphism { source: source.clone(), target: self.target.clone(), maps: self.maps.clone() }
    }

    pub fn with_target(&self, target: &Rep) -> Morphism {
        Morphism { source: self.source.clone(), target: target.clone(), maps: self.maps.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn total_matrix(&self) -> Matrix {
        let blocks: Vec<&Matrix> = self.maps.iter().collect();
        Matrix::block_diag(self.source.field(), &blocks)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    /// Transpose, a morphism `D N -> D M` over the opposite algebra.
    pub fn dual(&self) -> Morphism {
        Morphism {
            source: self.target.dual(),
            target: self.source.dual(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn kernel(&self) -> Submodule {
        let basis = self.maps.iter().map(Matrix::kernel_matrix).collect();
        Submodule { ambient: self.source.clone(), basis }
    }

    pub fn image(&self) -> Submodule {
        let basis = self.maps.iter().map(Matrix::image_basis).collect();
        Submodule { ambient: self.target.clone(), basis }
    }

    pub fn cokernel(&self) -> (Rep, Morphism) {
        quotient(&self.target, &self.image())
    }
}

/// `Σ c_k f_k`; `fs` must be nonempty and parallel.
pub fn combine(coeffs: &[Rational], fs: &[Morphism]) -> Morphism {
    let f = fs[0].source.field();
    let mut acc = Morphism::zero(&fs[0].source, &fs[0].target);
    for (c, m) in coeffs.iter().zip(fs) {
        if c.is_zero() {
            continue;
        }
        for (a, b) in acc.maps.iter_mut().zip(&m.maps) {
            *a = a.add(&b.scale(&f.convert(c).unwrap()));
        }
    }
    acc
}

/// Per-vertex subspaces closed under the arrow actions.
#[derive(Clone, PartialEq, Eq)]
pub struct Submodule {
    ambient: Rep,
    basis: Vec<Matrix>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule(dims {:?})", self.dims())
    }
}

impl Submodule {
    /// Columns of `spans[v]` span the subspace at `v`; need not be independent.
    pub fn new(ambient: &Rep, spans: Vec<Matrix>) -> Result<Submodule> {
        let basis: Vec<Matrix> = spans.iter().map(Matrix::image_basis).collect();
        let sub = Submodule { ambient: ambient.clone(), basis };
        for (ai, arrow) in ambient.algebra.arrows().iter().enumerate() {
            let moved = ambient.maps[ai].mul(&sub.basis[arrow.source]);
            if !sub.basis[arrow.target].spans(&moved) {
                return Err(Error::NotASubmodule);
            }
        }
        Ok(sub)
    }

    pub fn zero(ambient: &Rep) -> Submodule {
        let f = ambient.field();
        Submodule { ambient: ambient.clone(), basis: ambient.dims.iter().map(|&d| Matrix::zeros(f, d, 0)).collect() }
    }

    pub fn whole(ambient: &Rep) -> Submodule {
        let f = ambient.field();
        Submodule {
            ambient: ambient.clone(),
            basis: ambient.dims.iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    /// Smallest submodule containing the given columns.
    pub fn generated(ambient: &Rep, gens: Vec<Matrix>) -> Submodule {
        let mut basis: Vec<Matrix> = gens.iter().map(Matrix::image_basis).collect();
        let mut frontier = basis.clone();
        loop {
            let mut grew = false;
            let mut next: Vec<Matrix> = basis.iter().map(|b| Matrix::zeros(b.field(), b.rows(), 0)).collect();
            for (ai, arrow) in ambient.algebra.arrows().iter().enumerate() {
                if frontier[arrow.source].cols() == 0 {
                    continue;
                }
                let moved = ambient.maps[ai].mul(&frontier[arrow.source]);
                if !basis[arrow.target].spans(&moved) {
                    let bigger = basis[arrow.target].span_sum(&moved);
                    next[arrow.target] = next[arrow.target].span_sum(&moved);
                    basis[arrow.target] = bigger;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
            frontier = next;
        }
        Submodule { ambient: ambient.clone(), basis }
    }

    pub fn ambient(&self) -> &Rep {
        &self.ambient
    }

    pub fn basis(&self, v: usize) -> &Matrix {
        &self.basis[v]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Matrix::cols).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Matrix::cols).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.total_dim() == self.ambient.total_dim()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.basis.iter().zip(&other.basis).all(|(a, b)| a.spans(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            ambient: self.ambient.clone(),
            basis: self.basis.iter().zip(&other.basis).map(|(a, b)| a.span_sum(b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule {
            ambient: self.ambient.clone(),
            basis: self.basis.iter().zip(&other.basis).map(|(a, b)| a.span_intersection(b)).collect(),
        }
    }

    /// The submodule as a module in its own right, with its inclusion.
    pub fn as_rep(&self) -> (Rep, Morphism) {
        let a = &self.ambient.algebra;
        let dims = self.dims();
        let maps = a
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arrow)| {
                let moved = self.ambient.maps[ai].mul(&self.basis[arrow.source]);
                self.basis[arrow.target].solve_matrix(&moved).expect("submodule is arrow-closed")
            })
            .collect();
        let rep = Rep { algebra: a.clone(), dims, maps };
        let inc = Morphism { source: rep.clone(), target: self.ambient.clone(), maps: self.basis.clone() };
        (rep, inc)
    }

    /// Preimage of a submodule of the target under `f`.
    pub fn preimage(f: &Morphism, s: &Submodule) -> Submodule {
        let (q, proj) = quotient(&f.target, s);
        let _ = q;
        proj.compose(f).kernel()
    }

    /// Image under `f` of this submodule of `f.source()`.
    pub fn image_under(&self, f: &Morphism) -> Submodule {
        Submodule {
            ambient: f.target.clone(),
            basis: f.maps.iter().zip(&self.basis).map(|(m, b)| m.mul(b).image_basis()).collect(),
        }
    }
}

/// `M / S` with the canonical projection.
pub fn quotient(m: &Rep, s: &Submodule) -> (Rep, Morphism) {
    let f = m.field();
    let a = &m.algebra;
    let n = m.dims.len();
    let mut comps = Vec::with_capacity(n);
    let mut projs = Vec::with_capacity(n);
    for v in 0..n {
        let sb = &s.basis[v];
        let c = sb.complement_columns();
        let full = Matrix::hstack(f, m.dims[v], &[sb, &c]);
        let inv = full.inverse().expect("basis plus complement is invertible");
        projs.push(inv.block(sb.cols(), 0, c.cols(), m.dims[v]));
        comps.push(c);
    }
    let dims: Vec<usize> = comps.iter().map(Matrix::cols).collect();
    let maps = a
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| projs[arrow.target].mul(&m.maps[ai]).mul(&comps[arrow.source]))
        .collect();
    let q = Rep { algebra: a.clone(), dims, maps };
    let proj = Morphism { source: m.clone(), target: q.clone(), maps: projs };
    (q, proj)
}

/// The map `Q -> N` induced by `g: M -> N` through a projection `π: M -> Q`
/// whose kernel `g` annihilates.
pub fn descend(proj: &Morphism, g: &Morphism) -> Morphism {
    let f = proj.source.field();
    let maps = proj
        .maps
        .iter()
        .zip(&g.maps)
        .map(|(p, gv)| {
            let section = p.solve_matrix(&Matrix::identity(f, p.rows())).expect("projection is surjective");
            gv.mul(&section)
        })
        .collect();
    Morphism { source: proj.target.clone(), target: g.target.clone(), maps }
}

/// The map `P -> N` from `⊕ P(v_j)` (built by [`direct_sum`] of
/// [`projective`]s) sending the j-th generator `e_{v_j}` to `images[j]`.
pub fn from_generators(p: &Rep, vertices: &[usize], n: &Rep, images: &[Vector]) -> Morphism {
    let a = &p.algebra;
    let f = a.field();
    let mut maps: Vec<Matrix> = (0..n.dims.len()).map(|v| Matrix::zeros(f, n.dims[v], p.dims[v])).collect();
    let mut col = vec![0usize; n.dims.len()];
    for (j, &v) in vertices.iter().enumerate() {
        let g = Matrix::from_columns(f, n.dims[v], &[images[j].clone()]);
        for &pi in &a.paths_from(v) {
            let path = &a.basis()[pi];
            let image = n.path_matrix(path).mul(&g);
            let w = path.target;
            for r in 0..n.dims[w] {
                maps[w].set(r, col[w], image.get(r, 0).clone());
            }
            col[w] += 1;
        }
    }
    Morphism { source: p.clone(), target: n.clone(), maps }
}

/// `rad M`, spanned by the images of the arrows.
pub fn radical(m: &Rep) -> Submodule {
    let f = m.field();
    let mut basis: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::zeros(f, d, 0)).collect();
    for (ai, arrow) in m.algebra.arrows().iter().enumerate() {
        basis[arrow.target] = basis[arrow.target].span_sum(&m.maps[ai]);
    }
    Submodule { ambient: m.clone(), basis }
}

/// `soc M`, the vectors killed by every arrow.
pub fn socle(m: &Rep) -> Submodule {
    let f = m.field();
    let basis = (0..m.dims.len())
        .map(|v| {
            let outgoing: Vec<&Matrix> = m
                .algebra
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(ai, _)| &m.maps[ai])
                .collect();
            let stacked = Matrix::vstack(f, m.dims[v], &outgoing);
            stacked.kernel_matrix()
        })
        .collect();
    Submodule { ambient: m.clone(), basis }
}

pub fn top(m: &Rep) -> (Rep, Morphism) {
    quotient(m, &radical(m))
}

/// Submodule generated by the full vertex spaces at `vertices`; this is the
/// trace of `⊕ P(v)` in `m`.
pub fn generated_by_vertices(m: &Rep, vertices: &[usize]) -> Submodule {
    let f = m.field();
    let gens = (0..m.dims.len())
        .map(|v| {
            if vertices.contains(&v) {
                Matrix::identity(f, m.dims[v])
            } else {
                Matrix::zeros(f, m.dims[v], 0)
            }
        })
        .collect();
    Submodule::generated(m, gens)
}

/// Sum of the images of all maps `u -> m`.
pub fn trace(u: &Rep, m: &Rep) -> Result<Submodule> {
    let mut acc = Submodule::zero(m);
    for h in hom_basis(u, m)? {
        acc = acc.sum(&h.image());
    }
    Ok(acc)
}

/// Basis of `Hom_A(m, n)`, solving `f_t M_a = N_a f_s` for every arrow.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.dims.len();
    let mut var_off = Vec::with_capacity(nv);
    let mut nvars = 0;
    for v in 0..nv {
        var_off.push(nvars);
        nvars += n.dims[v] * m.dims[v];
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| var_off[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (ai, arrow) in m.algebra.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = Vec::new();
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        row.push((var(t, r, k), x.clone()));
                    }
                }
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if !x.is_zero() {
                        row.push((var(s, k, c), f.neg(x)));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut sys = Matrix::zeros(f, rows.len(), nvars);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row {
            let v = f.add(sys.get(i, *j), x);
            sys.set(i, *j, v);
        }
    }
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|sol| {
            let maps = (0..nv)
                .map(|v| Matrix::from_fn(f, n.dims[v], m.dims[v], |r, c| sol[var(v, r, c)].clone()))
                .collect();
            Morphism { source: m.clone(), target: n.clone(), maps }
        })
        .collect())
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

const ISO_SEED: u64 = 0x5eed_0f15;
const RANDOM_TRIES: usize = 12;
const EXHAUSTIVE_LIMIT: usize = 200_000;

/// Random field element from a fixed small range.
pub(crate) fn random_scalar(f: Field, rng: &mut ChaCha8Rng) -> Rational {
    f.from_int(rng.random_range(-1000..=1000))
}

pub(crate) fn seeded_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ISO_SEED ^ salt)
}

/// Searches `span(fs)` for a member satisfying `pred`: seeded random
/// combinations, then exhaustive small coefficients.
pub(crate) fn search_combination(
    f: Field,
    fs: &[Morphism],
    salt: u64,
    pred: impl Fn(&Morphism) -> bool,
) -> Option<Morphism> {
    if fs.is_empty() {
        return None;
    }
    for g in fs {
        if pred(g) {
            return Some(g.clone());
        }
    }
    let mut rng = seeded_rng(salt);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Rational> = fs.iter().map(|_| random_scalar(f, &mut rng)).collect();
        let g = combine(&coeffs, fs);
        if pred(&g) {
            return Some(g);
        }
    }
    let range: Vec<i64> = match f.order() {
        Some(p) if p <= 5 => (0..p as i64).collect(),
        _ => vec![0, 1, -1, 2, -2],
    };
    let k = fs.len();
    match range.len().checked_pow(k as u32) {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {}
        _ => return None,
    }
    let mut idx = vec![0usize; k];
    loop {
        let coeffs: Vec<Rational> = idx.iter().map(|&i| f.from_int(range[i])).collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            let g = combine(&coeffs, fs);
            if pred(&g) {
                return Some(g);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < range.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// An isomorphism `m -> n`, if one is found.
pub fn find_isomorphism(m: &Rep, n: &Rep) -> Option<Morphism> {
    if m.algebra != n.algebra || m.dims != n.dims {
        return None;
    }
    if m.key() == n.key() {
        return Some(Morphism::identity(m).with_target(n));
    }
    let hom = hom_basis(m, n).ok()?;
    let back = hom_basis(n, m).ok()?;
    if hom.len() != back.len() {
        return None;
    }
    search_combination(m.field(), &hom, m.total_dim() as u64, Morphism::is_isomorphism)
}

pub fn is_isomorphic(m: &Rep, n: &Rep) -> bool {
    find_isomorphism(m, n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, QuiverSpec};

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
    fn projectives_and_injectives() {
        let a = a3line();
        let p2 = projective(&a, 1).unwrap();
        assert_eq!(p2.dims(), &[1, 1, 1]);
        let (t, _) = top(&p2);
        assert_eq!(t.dims(), &[0, 1, 0]);
        assert_eq!(socle(&p2).dims(), vec![0, 0, 1]);
        let total: usize = (0..3).map(|i| injective(&a, i).unwrap().total_dim()).sum();
        assert_eq!(total, 6);
        for i in 0..3 {
            let inj = injective(&a, i).unwrap();
            let mut expect = vec![0; 3];
            expect[i] = 1;
            assert_eq!(socle(&inj).dims(), expect);
        }
        let l = loop2();
        assert!(is_isomorphic(&injective(&l, 0).unwrap(), &regular(&l)));
    }

    #[test]
    fn hom_spaces() {
        let a = a3line();
        let p: Vec<Rep> = (0..3).map(|i| projective(&a, i).unwrap()).collect();
        assert_eq!(hom_dim(&p[0], &p[1]).unwrap(), 1);
        assert_eq!(hom_dim(&p[1], &p[0]).unwrap(), 0);
        for i in 0..3 {
            for m in p.iter().chain([&regular(&a), &dual_regular(&a)]) {
                assert_eq!(hom_dim(&p[i], m).unwrap(), m.dim(i));
            }
        }
        let e3 = simple(&a, 2).unwrap();
        let tr = trace(&e3, &p[1]).unwrap();
        assert_eq!(tr, socle(&p[1]));
    }

    #[test]
    fn kernels_and_duals() {
        let a = a3line();
        let p1 = projective(&a, 0).unwrap();
        let e1 = simple(&a, 0).unwrap();
        let cover = hom_basis(&p1, &e1).unwrap().pop().unwrap();
        assert!(cover.is_surjective());
        assert_eq!(cover.kernel().total_dim(), p1.total_dim() - 1);
        let d = p1.dual();
        assert_eq!(d.dual(), p1);
        let m = regular(&a);
        let n = dual_regular(&a);
        assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.dual(), &m.dual()).unwrap());
    }

    #[test]
    fn quotient_is_consistent() {
        let a = loop2();
        let r = regular(&a);
        let rad = radical(&r);
        assert_eq!(rad.dims(), vec![1]);
        let (q, proj) = quotient(&r, &rad);
        assert_eq!(q.dims(), &[1]);
        assert!(proj.is_surjective());
        assert!(Morphism::new(proj.source(), proj.target(), proj.maps().to_vec()).is_ok());
    }
}
