//! Bound quiver algebras `kQ/I`.
//!
//! Paths are stored with their arrows in traversal order; the textual form
//! `c.b.a` (and products `x·y`) follow function order, so `c.b.a` traverses
//! `a` first. A basis path from `i` to `j` lies in `e_j A e_i`, and an arrow
//! `s -> t` acts on a representation as a map `V_s -> V_t`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::{Arc, Weak};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

/// Default bound on the nilpotency degree searched by [`PathAlgebra::build`].
pub const DEFAULT_DEGREE_CAP: usize = 64;
const PATH_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices in the order they are traversed.
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `after`, if composable.
    pub fn then(&self, after: &Path) -> Option<Path> {
        if self.target != after.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&after.arrows);
        Some(Path { source: self.source, target: after.target, arrows })
    }
}

/// A linear combination of paths of length at least two, all parallel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

/// Quiver, relations and base field. Vertex order is the stratifying order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverSpec {
    pub name: String,
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverSpec {
    pub fn new(name: &str, field: Field, vertices: &[&str]) -> Self {
        QuiverSpec {
            name: name.to_string(),
            field,
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        let (s, t) = (self.vertex(source)?, self.vertex(target)?);
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::MalformedRelation(format!("arrow {name} declared twice")));
        }
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    /// Builder form of [`QuiverSpec::add_arrow`].
    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Result<Self> {
        self.add_arrow(name, source, target)?;
        Ok(self)
    }

    /// Parses `c.b.a` (traverse `a`, then `b`, then `c`); `@v` is the
    /// trivial path at `v`.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('@') {
            return Ok(Path::trivial(self.vertex(v)?));
        }
        let mut names: Vec<&str> = text.split('.').map(str::trim).collect();
        names.reverse();
        let mut arrows = Vec::with_capacity(names.len());
        for n in &names {
            arrows.push(self.arrow_index(n)?);
        }
        self.path_from_arrows(arrows)
    }

    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path> {
        let first = *arrows.first().ok_or_else(|| Error::MalformedRelation("empty path".into()))?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NonComposable(self.path_name(&Path {
                    source: 0,
                    target: 0,
                    arrows: arrows.clone(),
                })));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: self.arrows[first].source, target: self.arrows[last].target, arrows })
    }

    /// Textual form in function order.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("@{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(".")
    }

    pub fn add_relation(&mut self, terms: Vec<(Rational, Path)>) -> Result<()> {
        let mut merged: Vec<(Rational, Path)> = Vec::new();
        for (c, p) in terms {
            let c = self.field.convert(&c)?;
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some(slot) => slot.0 = self.field.add(&slot.0, &c),
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        let rel = Relation { terms: merged };
        self.check_relation(&rel)?;
        self.relations.push(rel);
        Ok(())
    }

    /// Builder form taking textual paths with integer coefficients.
    pub fn relation(mut self, terms: &[(i64, &str)]) -> Result<Self> {
        let mut parsed = Vec::new();
        for (c, p) in terms {
            parsed.push((Rational::from_int(*c), self.parse_path(p)?));
        }
        self.add_relation(parsed)?;
        Ok(self)
    }

    fn check_relation(&self, rel: &Relation) -> Result<()> {
        let Some((_, first)) = rel.terms.first() else {
            return Err(Error::MalformedRelation("relation has no nonzero terms".into()));
        };
        for (_, p) in &rel.terms {
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!("term {} has length below 2", self.path_name(p))));
            }
            if p.source != first.source || p.target != first.target {
                return Err(Error::MalformedRelation(format!(
                    "terms {} and {} are not parallel",
                    self.path_name(first),
                    self.path_name(p)
                )));
            }
        }
        Ok(())
    }

    /// Checks arrow endpoints, field membership and relation shapes.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::UnknownVertex(format!("{v} declared twice")));
            }
        }
        for a in &self.arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::UnknownVertex(a.name.clone()));
            }
        }
        for rel in &self.relations {
            for (c, p) in &rel.terms {
                if self.field.convert(c)? != *c {
                    return Err(Error::CoefficientNotInField(c.to_string()));
                }
                if p.arrows.iter().any(|&a| a >= self.arrows.len()) {
                    return Err(Error::UnknownArrow(format!("{:?}", p.arrows)));
                }
                let q = self.path_from_arrows(p.arrows.clone())?;
                if q != *p {
                    return Err(Error::MalformedRelation("path endpoints disagree with arrows".into()));
                }
            }
            self.check_relation(rel)?;
        }
        Ok(())
    }

    /// Reversed arrows and relations, same vertex order.
    pub fn opposite(&self) -> QuiverSpec {
        let flip = |p: &Path| Path {
            source: p.target,
            target: p.source,
            arrows: p.arrows.iter().rev().copied().collect(),
        };
        QuiverSpec {
            name: self.name.clone(),
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { terms: r.terms.iter().map(|(c, p)| (c.clone(), flip(p))).collect() })
                .collect(),
        }
    }

    fn max_relation_spread(&self) -> usize {
        self.relations
            .iter()
            .map(|r| {
                let lens = r.terms.iter().map(|(_, p)| p.len());
                lens.clone().max().unwrap_or(0) - lens.min().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

/// All paths of length at most `max_len`, shortest first.
fn enumerate_paths(spec: &QuiverSpec, max_len: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..spec.vertices.len()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in spec.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        if out.len() > PATH_LIMIT {
            return Err(Error::TooLarge(PATH_LIMIT));
        }
        frontier = next;
    }
    Ok(out)
}

/// `p · rel · q` in function order: traverse `q`, the relation, then `p`.
fn sandwich(rel: &Relation, before: &Path, after: &Path) -> Option<Vec<(Rational, Path)>> {
    let mut terms = Vec::with_capacity(rel.terms.len());
    for (c, r) in &rel.terms {
        terms.push((c.clone(), before.then(r)?.then(after)?));
    }
    Some(terms)
}

/// Rows `p·r·q` whose terms all have length at most `max_len` (or, when
/// `truncate`, whose shortest term does, dropping the longer terms).
fn ideal_rows(
    spec: &QuiverSpec,
    paths: &[Path],
    index: &BTreeMap<&Path, usize>,
    max_len: usize,
    truncate: bool,
) -> Matrix {
    let f = spec.field;
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for rel in &spec.relations {
        let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
        let lmin = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap();
        let lmax = rel.terms.iter().map(|(_, p)| p.len()).max().unwrap();
        let bound = if truncate { lmin } else { lmax };
        if bound > max_len {
            continue;
        }
        let room = max_len - bound;
        for q in paths.iter().filter(|q| q.target == s && q.len() <= room) {
            for p in paths.iter().filter(|p| p.source == t && p.len() + q.len() <= room) {
                let Some(terms) = sandwich(rel, q, p) else { continue };
                let row: Vec<(usize, Rational)> = terms
                    .into_iter()
                    .filter(|(_, path)| path.len() <= max_len)
                    .map(|(c, path)| (index[&path], c))
                    .collect();
                rows.push(row);
            }
        }
    }
    let mut m = Matrix::zeros(f, rows.len(), paths.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row {
            let v = f.add(m.get(i, *j), c);
            m.set(i, *j, v);
        }
    }
    m
}

/// Column order for elimination: longest paths first, so that pivots are
/// leading terms and the surviving columns are the shortest normal forms.
fn elimination_order(paths: &[Path]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&a, &b| paths[b].len().cmp(&paths[a].len()).then(b.cmp(&a)));
    order
}

/// True when every path of length exactly `m` lies in the ideal, certified by
/// combinations of `p·r·q` whose terms have length at most `max_len`.
fn top_degree_in_ideal(spec: &QuiverSpec, m: usize, max_len: usize) -> Result<bool> {
    let paths = enumerate_paths(spec, max_len)?;
    if !paths.iter().any(|p| p.len() == m) {
        return Ok(true);
    }
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rows = ideal_rows(spec, &paths, &index, max_len, false);
    let order = elimination_order(&paths);
    let (r, pivots) = rows.select_columns(&order).rref();
    let mut pivot_row = BTreeMap::new();
    for (i, &c) in pivots.iter().enumerate() {
        pivot_row.insert(order[c], i);
    }
    for (pi, p) in paths.iter().enumerate().filter(|(_, p)| p.len() == m) {
        let Some(&row) = pivot_row.get(&pi) else { return Ok(false) };
        let nonzeros = r.row(row).iter().filter(|v| !v.is_zero()).count();
        if nonzeros != 1 {
            let _ = p;
            return Ok(false);
        }
    }
    Ok(true)
}

struct Inner {
    spec: QuiverSpec,
    basis: Vec<Path>,
    /// Normal form of every path of length below the nilpotency degree.
    reduce: BTreeMap<Path, Vec<(usize, Rational)>>,
    /// `table[i][j]` is the product `basis[i] · basis[j]`.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    nilpotency: usize,
    arrow_basis: Vec<usize>,
    opposite: spin::Once<OppositeLink>,
    pub(crate) resolutions: spin::Mutex<BTreeMap<crate::module::RepKey, Arc<crate::homological::Resolution>>>,
}

enum OppositeLink {
    Owned(PathAlgebra),
    Back(Weak<Inner>),
}

/// A finite-dimensional algebra `kQ/I` with a reduced path basis. Cloning is
/// cheap; equality compares the defining data.
#[derive(Clone)]
pub struct PathAlgebra(Arc<Inner>);

impl PartialEq for PathAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for PathAlgebra {}

impl fmt::Debug for PathAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathAlgebra({}, dim {})", self.0.spec.name, self.dim())
    }
}

/// Builds `kQ/I` with the default degree cap.
pub fn build_algebra(spec: QuiverSpec) -> Result<PathAlgebra> {
    PathAlgebra::build(spec)
}

impl PathAlgebra {
    pub fn build(spec: QuiverSpec) -> Result<Self> {
        Self::build_with_cap(spec, DEFAULT_DEGREE_CAP)
    }

    pub fn build_with_cap(spec: QuiverSpec, cap: usize) -> Result<Self> {
        spec.validate()?;
        let spread = spec.max_relation_spread();
        let mut nilpotency = None;
        'degree: for m in 1..=cap {
            for extra in 0..=2 * spread {
                if top_degree_in_ideal(&spec, m, m + extra)? {
                    nilpotency = Some(m);
                    break 'degree;
                }
                if spread == 0 {
                    break;
                }
            }
        }
        let n = nilpotency.ok_or(Error::NotAdmissible(cap))?;
        Ok(Self::from_parts(spec, n, None))
    }

    fn from_parts(spec: QuiverSpec, n: usize, back: Option<Weak<Inner>>) -> Self {
        let f = spec.field;
        let paths = enumerate_paths(&spec, n - 1).expect("already enumerated at a larger length");
        let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = ideal_rows(&spec, &paths, &index, n - 1, true);
        let order = elimination_order(&paths);
        let (r, pivots) = rows.select_columns(&order).rref();
        let mut is_pivot = vec![false; paths.len()];
        for &c in &pivots {
            is_pivot[order[c]] = true;
        }
        let mut basis_idx: Vec<usize> = (0..paths.len()).filter(|&i| !is_pivot[i]).collect();
        basis_idx.sort_by(|&a, &b| {
            let (p, q) = (&paths[a], &paths[b]);
            p.len().cmp(&q.len()).then_with(|| {
                if p.is_trivial() {
                    p.source.cmp(&q.source)
                } else {
                    p.arrows.cmp(&q.arrows).then(p.source.cmp(&q.source))
                }
            })
        });
        let position: BTreeMap<usize, usize> = basis_idx.iter().enumerate().map(|(b, &i)| (i, b)).collect();
        let basis: Vec<Path> = basis_idx.iter().map(|&i| paths[i].clone()).collect();
        let mut reduce = BTreeMap::new();
        for (&i, &b) in &position {
            reduce.insert(paths[i].clone(), vec![(b, Rational::one())]);
        }
        for (row, &c) in pivots.iter().enumerate() {
            let mut nf = Vec::new();
            for (k, &col) in order.iter().enumerate() {
                if is_pivot[col] {
                    continue;
                }
                let v = r.get(row, k);
                if !v.is_zero() {
                    nf.push((position[&col], f.neg(v)));
                }
            }
            nf.sort_by_key(|t| t.0);
            reduce.insert(paths[order[c]].clone(), nf);
        }
        let table = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| match y.then(x) {
                        Some(p) if p.len() < n => reduce[&p].clone(),
                        _ => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        let arrow_basis = (0..spec.arrows.len())
            .map(|a| {
                let p = Path { source: spec.arrows[a].source, target: spec.arrows[a].target, arrows: vec![a] };
                basis.iter().position(|b| *b == p).expect("arrows are never in an admissible ideal")
            })
            .collect();
        let opposite = match back {
            Some(w) => spin::Once::initialized(OppositeLink::Back(w)),
            None => spin::Once::new(),
        };
        PathAlgebra(Arc::new(Inner {
            spec,
            basis,
            reduce,
            table,
            nilpotency: n,
            arrow_basis,
            opposite,
            resolutions: spin::Mutex::new(BTreeMap::new()),
        }))
    }

    pub(crate) fn inner_resolutions(
        &self,
    ) -> &spin::Mutex<BTreeMap<crate::module::RepKey, Arc<crate::homological::Resolution>>> {
        &self.0.resolutions
    }

    pub fn spec(&self) -> &QuiverSpec {
        &self.0.spec
    }

    pub fn name(&self) -> &str {
        &self.0.spec.name
    }

    pub fn field(&self) -> Field {
        self.0.spec.field
    }

    pub fn num_vertices(&self) -> usize {
        self.0.spec.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.0.spec.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.0.spec.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.0.spec.arrows
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.0.spec.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.0.spec.vertex(name)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.0.basis
    }

    /// Smallest `N` with `rad^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.0.nilpotency
    }

    /// Basis index of the trivial path at `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    /// Basis index of arrow `a`.
    pub fn arrow_basis(&self, a: usize) -> usize {
        self.0.arrow_basis[a]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.0.table[i][j]
    }

    pub fn zero(&self) -> Vector {
        vec![Rational::zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = Rational::one();
        v
    }

    pub fn one(&self) -> Vector {
        let mut v = self.zero();
        for x in v.iter_mut().take(self.num_vertices()) {
            *x = Rational::one();
        }
        v
    }

    /// `x · y`: act with `y` first.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let f = self.field();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in &self.0.table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary path.
    pub fn path_element(&self, p: &Path) -> Vector {
        let mut v = self.zero();
        if let Some(nf) = self.0.reduce.get(p) {
            for (k, c) in nf {
                v[*k] = c.clone();
            }
        }
        v
    }

    /// Element given by `(coefficient, c.b.a)` terms.
    pub fn element(&self, terms: &[(Rational, &str)]) -> Result<Vector> {
        let f = self.field();
        let mut v = self.zero();
        for (c, text) in terms {
            let c = f.convert(c)?;
            let p = self.0.spec.parse_path(text)?;
            for (k, x) in self.path_element(&p).iter().enumerate() {
                v[k] = f.add(&v[k], &f.mul(&c, x));
            }
        }
        Ok(v)
    }

    /// Basis indices of paths starting at `v` (a basis of `P(v) = A e_v`).
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].source == v).collect()
    }

    /// Basis indices of paths ending at `v` (a basis of `e_v A`).
    pub fn paths_to(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].target == v).collect()
    }

    /// Matrix of `z ↦ x · z` on the whole algebra.
    pub fn left_multiplication(&self, x: &[Rational]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for j in 0..self.dim() {
            let col = self.multiply(x, &self.unit(j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn path_name(&self, i: usize) -> String {
        self.0.spec.path_name(&self.0.basis[i])
    }

    /// Human-readable element.
    pub fn format_element(&self, x: &[Rational]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", c, self.path_name(i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `A^op`; cached, and `(A^op)^op` returns this very algebra.
    pub fn opposite(&self) -> PathAlgebra {
        let link = self.0.opposite.call_once(|| {
            let op = Self::from_parts(self.0.spec.opposite(), self.0.nilpotency, Some(Arc::downgrade(&self.0)));
            OppositeLink::Owned(op)
        });
        match link {
            OppositeLink::Owned(op) => op.clone(),
            OppositeLink::Back(w) => match w.upgrade() {
                Some(inner) => PathAlgebra(inner),
                None => Self::from_parts(self.0.spec.opposite(), self.0.nilpotency, None),
            },
        }
    }

    /// The same element read in `A^op` (paths reversed).
    pub fn to_opposite(&self, x: &[Rational]) -> Vector {
        let op = self.opposite();
        let f = self.field();
        let mut out = op.zero();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.0.basis[i];
            let q = Path { source: p.target, target: p.source, arrows: p.arrows.iter().rev().copied().collect() };
            for (k, v) in op.path_element(&q).iter().enumerate() {
                out[k] = f.add(&out[k], &f.mul(c, v));
            }
        }
        out
    }
}

/// Opposite algebra (alias of [`PathAlgebra::opposite`]).
pub fn opposite_algebra(a: &PathAlgebra) -> PathAlgebra {
    a.opposite()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop2() -> PathAlgebra {
        let spec = QuiverSpec::new("loop2", Field::Rationals, &["v"])
            .arrow("a", "v", "v")
            .unwrap()
            .relation(&[(1, "a.a")])
            .unwrap();
        build_algebra(spec).unwrap()
    }

    fn a3line() -> PathAlgebra {
        let spec = QuiverSpec::new("a3line", Field::Rationals, &["1", "2", "3"])
            .arrow("a", "2", "1")
            .unwrap()
            .arrow("b", "1", "3")
            .unwrap();
        build_algebra(spec).unwrap()
    }

    #[test]
    fn point_and_loop() {
        let point = build_algebra(QuiverSpec::new("point", Field::Rationals, &["v"])).unwrap();
        assert_eq!(point.dim(), 1);
        assert_eq!(point.nilpotency(), 1);
        let a = loop2();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency(), 2);
        let x = a.unit(a.arrow_basis(0));
        assert_eq!(a.multiply(&x, &x), a.zero());
        assert_eq!(a.multiply(&a.one(), &x), x);
    }

    #[test]
    fn a3line_composition() {
        let a = a3line();
        assert_eq!(a.dim(), 6);
        let pa = a.unit(a.arrow_basis(0));
        let pb = a.unit(a.arrow_basis(1));
        let ba = a.multiply(&pb, &pa);
        let expected = a.element(&[(Rational::one(), "b.a")]).unwrap();
        assert_eq!(ba, expected);
        assert_eq!(a.multiply(&pa, &pb), a.zero());
        let op = a.opposite();
        assert_eq!(op.dim(), 6);
        assert_eq!(op.arrow(0).source, 0);
        assert_eq!(op.arrow(0).target, 1);
        assert_eq!(op.opposite(), a);
        assert!(Arc::ptr_eq(&op.opposite().0, &a.0));
    }

    #[test]
    fn rejects_bad_input() {
        let spec = QuiverSpec::new("x", Field::Rationals, &["1", "2"]).arrow("a", "1", "2").unwrap();
        assert!(matches!(spec.parse_path("a.a"), Err(Error::NonComposable(_))));
        let free_loop = QuiverSpec::new("free", Field::Rationals, &["v"]).arrow("x", "v", "v").unwrap();
        assert!(matches!(PathAlgebra::build_with_cap(free_loop, 8), Err(Error::NotAdmissible(8))));
        let short = QuiverSpec::new("s", Field::Rationals, &["v"]).arrow("x", "v", "v").unwrap();
        assert!(matches!(short.relation(&[(1, "x")]), Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn non_monomial_relation() {
        // commutative square: b.a = d.c
        let spec = QuiverSpec::new("square", Field::Rationals, &["1", "2", "3", "4"])
            .arrow("a", "1", "2")
            .unwrap()
            .arrow("b", "2", "4")
            .unwrap()
            .arrow("c", "1", "3")
            .unwrap()
            .arrow("d", "3", "4")
            .unwrap()
            .relation(&[(1, "b.a"), (-1, "d.c")])
            .unwrap();
        let a = build_algebra(spec).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        let ba = a.element(&[(Rational::one(), "b.a")]).unwrap();
        let dc = a.element(&[(Rational::one(), "d.c")]).unwrap();
        assert_eq!(ba, dc);
    }

    #[test]
    fn non_homogeneous_ideal_is_not_admissible() {
        // x^2 = x^3 leaves x^2 a nonzero idempotent
        let spec = QuiverSpec::new("x", Field::Rationals, &["v"])
            .arrow("x", "v", "v")
            .unwrap()
            .relation(&[(1, "x.x"), (-1, "x.x.x")])
            .unwrap();
        assert!(matches!(PathAlgebra::build_with_cap(spec, 10), Err(Error::NotAdmissible(10))));
    }

    #[test]
    fn associativity_on_basis() {
        for a in [loop2(), a3line()] {
            let n = a.dim();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (x, y, z) = (a.unit(i), a.unit(j), a.unit(k));
                        assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
                    }
                }
            }
        }
    }
}
