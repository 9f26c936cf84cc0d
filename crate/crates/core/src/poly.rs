//! Univariate polynomials over a [`Field`], just enough to split
//! endomorphisms by their minimal polynomials.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::rational::Rational;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rational::one()] }
    }

    /// `x - c`
    pub fn linear(field: Field, c: &Rational) -> Self {
        Poly::new(vec![field.neg(c), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self, field: Field) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = field.inv(&self.leading()).unwrap();
        Poly::new(self.coeffs.iter().map(|c| field.mul(c, &inv)).collect())
    }

    pub fn mul(&self, other: &Poly, field: Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly, field: Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| field.sub(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly, field: Field) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let lead_inv = field.inv(&divisor.leading()).unwrap();
        if rem.len() <= d {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + d], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(&rem[k + i], &field.mul(&c, b));
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly, field: Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, field).1;
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| field.mul(c, &field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational, field: Field) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = m.field();
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    fn pow_mod(&self, mut exp: u64, modulus: &Poly, field: Field) -> Poly {
        let mut base = self.div_rem(modulus, field).1;
        let mut acc = Poly::one().div_rem(modulus, field).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, field).div_rem(modulus, field).1;
            }
            base = base.mul(&base, field).div_rem(modulus, field).1;
            exp >>= 1;
        }
        acc
    }
}

/// Minimal polynomial (monic) of the block-diagonal operator with the given
/// square blocks, found from the first linear dependency among its powers.
pub fn minimal_polynomial(field: Field, blocks: &[Matrix]) -> Poly {
    let total: usize = blocks.iter().map(Matrix::rows).sum();
    let flatten = |powers: &[Matrix]| -> Vec<Rational> {
        powers.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    };
    let mut powers: Vec<Vec<Matrix>> = vec![blocks.iter().map(|b| Matrix::identity(field, b.rows())).collect()];
    let mut flat: Vec<Vec<Rational>> = vec![flatten(&powers[0])];
    let len = flat[0].len();
    for k in 1..=total + 1 {
        let next: Vec<Matrix> = powers[k - 1].iter().zip(blocks).map(|(p, b)| p.mul(b)).collect();
        flat.push(flatten(&next));
        powers.push(next);
        let m = Matrix::from_columns(field, len, &flat);
        let ker = m.kernel_basis();
        if let Some(v) = ker.first() {
            // the new column is the only dependent one, so v[k] != 0
            return Poly::new(v.clone()).monic(field);
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

/// Distinct roots of `p` lying in `field`. Over the rationals the candidate
/// search is skipped when the integer content is too large to factor by
/// trial division, so the result can be incomplete there.
pub fn roots(p: &Poly, field: Field) -> Vec<Rational> {
    if p.degree() == 0 {
        return Vec::new();
    }
    match field {
        Field::Rationals => rational_roots(p),
        Field::Prime(q) => prime_roots(p, field, q),
    }
}

fn rational_roots(p: &Poly) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut coeffs = p.coeffs.clone();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        out.push(Rational::zero());
        coeffs.drain(..shift);
    }
    if coeffs.len() <= 1 {
        return out;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return out;
    };
    if a0 > RATIONAL_ROOT_LIMIT || an > RATIONAL_ROOT_LIMIT {
        return out;
    }
    let poly = Poly::new(coeffs);
    let mut cands = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let c = Rational::new(sign * num as i64, den as i64);
                if !cands.contains(&c) {
                    cands.push(c);
                }
            }
        }
    }
    cands.sort();
    for c in cands {
        if poly.eval(&c, Field::Rationals).is_zero() {
            out.push(c);
        }
    }
    out
}

fn prime_roots(p: &Poly, field: Field, q: u64) -> Vec<Rational> {
    if q <= 1 << 16 {
        return (0..q as i64)
            .map(|v| field.from_int(v))
            .filter(|x| p.eval(x, field).is_zero())
            .collect();
    }
    let p = p.monic(field);
    let x = Poly::new(vec![Rational::zero(), Rational::one()]);
    let xq = x.pow_mod(q, &p, field);
    let split = p.gcd(&xq.sub(&x, field), field);
    let mut out = Vec::new();
    equal_degree_roots(&split, field, q, 0, &mut out);
    out.sort();
    out
}

/// Roots of a monic product of distinct linear factors (odd `q`).
fn equal_degree_roots(g: &Poly, field: Field, q: u64, salt: i64, out: &mut Vec<Rational>) {
    match g.degree() {
        0 => {}
        1 => out.push(field.neg(&g.monic(field).coeffs[0])),
        _ => {
            for a in salt.. {
                let shifted = Poly::new(vec![field.from_int(a), Rational::one()]);
                let h = shifted.pow_mod((q - 1) / 2, g, field).sub(&Poly::one(), field);
                let d = g.gcd(&h, field);
                if d.degree() > 0 && d.degree() < g.degree() {
                    let rest = g.div_rem(&d, field).0;
                    equal_degree_roots(&d, field, q, a + 1, out);
                    equal_degree_roots(&rest, field, q, a + 1, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn minimal_polynomial_of_idempotent() {
        let f = Field::Rationals;
        let e = Matrix::from_rows(f, 2, 2, [1, 0, 0, 0].iter().map(|&x| Rational::from_int(x)).collect());
        // x^2 - x
        assert_eq!(minimal_polynomial(f, &[e]), qp(&[0, -1, 1]));
        let nil = Matrix::from_rows(f, 2, 2, [0, 1, 0, 0].iter().map(|&x| Rational::from_int(x)).collect());
        assert_eq!(minimal_polynomial(f, &[nil.clone(), Matrix::zeros(f, 1, 1)]), qp(&[0, 0, 1]));
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3)(x^2 + 1) = 2x^4 + 5x^3 - x^2 + 5x - 3
        let p = qp(&[-3, 5, -1, 5, 2]);
        assert_eq!(roots(&p, Field::Rationals), vec![Rational::from_int(-3), Rational::new(1, 2)]);
        assert!(roots(&qp(&[1, 0, 1]), Field::Rationals).is_empty());
    }

    #[test]
    fn prime_roots_large_modulus() {
        let q = 1_000_003;
        let f = Field::prime(q).unwrap();
        // (x - 5)(x - 77)(x^2 + 1 has roots mod 1000003? it is 3 mod 4, so no)
        let p = Poly::linear(f, &f.from_int(5))
            .mul(&Poly::linear(f, &f.from_int(77)), f)
            .mul(&Poly::new(vec![f.from_int(1), f.zero(), f.one()]), f);
        assert_eq!(roots(&p, f), vec![f.from_int(5), f.from_int(77)]);
    }

    #[test]
    fn gcd_and_division() {
        let f = Field::Rationals;
        let a = qp(&[-1, 0, 1]); // x^2 - 1
        let b = qp(&[1, 1]); // x + 1
        assert_eq!(a.gcd(&b, f), b);
        let (quot, rem) = a.div_rem(&b, f);
        assert_eq!(quot, qp(&[-1, 1]));
        assert!(rem.is_zero());
    }
}
