//! Dense matrices over a [`Field`] with exact Gauss-Jordan elimination.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

/// Row-major dense matrix. Entries are always canonical field elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows whose entries are already field elements.
    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix { field, rows, cols, data: entries }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in sum");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in difference");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Reduced row echelon form together with the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Eliminates using only the first `limit` columns as pivot candidates.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).unwrap();
            if !inv.is_one() {
                for j in c..cols {
                    let v = &self.data[r * cols + j];
                    if !v.is_zero() {
                        self.data[r * cols + j] = f.mul(v, &inv);
                    }
                }
            }
            let pivot_row: Vec<(usize, Rational)> = (c..cols)
                .filter(|&j| !self.data[r * cols + j].is_zero())
                .map(|j| (j, self.data[r * cols + j].clone()))
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let idx = i * cols + j;
                    self.data[idx] = f.sub(&self.data[idx], &f.mul(&factor, v));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Independent columns of `self` spanning its column space.
    pub fn image_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// Some `X` with `self * X = rhs`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows, "right-hand side row mismatch");
        let mut aug = Matrix::hstack(self.field, self.rows, &[self, rhs]);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            if aug.row(i)[self.cols..].iter().any(|v| !v.is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, aug.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Horizontal concatenation; `rows` is needed when the list is empty.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row mismatch in hstack");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.data[i * cols + off + j] = m.get(i, j).clone();
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            data.extend_from_slice(&m.data);
        }
        Matrix { field, rows, cols, data }
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Standard basis vectors completing the independent columns of `self`
    /// to a basis of the ambient space.
    pub fn complement_columns(&self) -> Matrix {
        let (_, pivots) = self.transpose().rref();
        let mut is_pivot = vec![false; self.rows];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.rows).filter(|&i| !is_pivot[i]).collect();
        Matrix::from_fn(self.field, self.rows, free.len(), |i, j| {
            if i == free[j] {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Basis of the sum of two column spaces.
    pub fn span_sum(&self, other: &Matrix) -> Matrix {
        Matrix::hstack(self.field, self.rows, &[self, other]).image_basis()
    }

    /// Basis of the intersection of two column spaces (inputs need not be independent).
    pub fn span_intersection(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let a = self.image_basis();
        let b = other.image_basis();
        let stacked = Matrix::hstack(f, self.rows, &[&a, &b.scale(&f.from_int(-1))]);
        let ker = stacked.kernel_basis();
        let coeffs: Vec<Vector> = ker.iter().map(|v| v[..a.cols].to_vec()).collect();
        let c = Matrix::from_columns(f, a.cols, &coeffs);
        a.mul(&c).image_basis()
    }

    /// True when every column of `other` lies in the column space of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        if other.cols == 0 {
            return true;
        }
        self.solve_matrix(other).is_some()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix {
        Matrix::from_rows(Field::Rationals, rows, cols, v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Field::Rationals, 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let row = q(1, 2, &[1, 1]);
        assert_eq!(row.rref(), (row.clone(), vec![0]));
        // hand elimination: R2 <- R2 - 2 R1
        assert_eq!(q(2, 2, &[1, 2, 2, 4]).rref(), (q(2, 2, &[1, 2, 0, 0]), vec![0]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Field::Rationals, 3).kernel_basis().is_empty());
        let k = q(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], Rational::zero());
        assert!(!k[0][0].is_zero());
        assert_eq!(Matrix::zeros(Field::Rationals, 2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Field::Rationals, 2);
        let b = vec![Rational::new(1, 3), Rational::from_int(-2)];
        assert_eq!(id.solve(&b), Some(b.clone()));
        let x = q(1, 2, &[1, 1]).solve(&[Rational::from_int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], Rational::from_int(2));
        // x = 1 and 2x = 1 cannot both hold
        assert_eq!(q(2, 1, &[1, 2]).solve(&[Rational::one(), Rational::one()]), None);
    }

    #[test]
    fn subspace_operations() {
        let a = q(3, 2, &[1, 0, 0, 1, 0, 0]);
        let b = q(3, 2, &[0, 0, 1, 0, 0, 1]);
        assert_eq!(a.span_intersection(&b).cols(), 1);
        assert_eq!(a.span_sum(&b).cols(), 3);
        assert_eq!(a.complement_columns().cols(), 1);
        let inv = q(2, 2, &[2, 1, 1, 1]).inverse().unwrap();
        assert_eq!(inv, q(2, 2, &[1, -1, -1, 2]));
    }

    #[test]
    fn prime_field_elimination() {
        let f = Field::Prime(3);
        let m = Matrix::from_rows(f, 2, 2, [1, 2, 2, 1].iter().map(|&x| f.from_int(x)).collect());
        // second row is 2 * first row mod 3
        assert_eq!(m.rank(), 1);
        for v in m.rref().0.entries() {
            let (n, d) = v.as_small().unwrap();
            assert!(d == 1 && (0..3).contains(&n));
        }
    }

    fn arb_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_rows(field, r, c, v.into_iter().map(|x| field.from_int(x)).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(Field::Rationals)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
            for v in m.kernel_basis() {
                prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn rref_idempotent(m in arb_matrix(Field::Rationals)) {
            let (r, p) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), p.clone()));
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(Field::Prime(5)), seed in 0i64..100) {
            let f = m.field();
            let x: Vector = (0..m.cols()).map(|i| f.from_int(seed + i as i64)).collect();
            let b = m.mul_vec(&x);
            let y = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
