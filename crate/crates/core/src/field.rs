//! Base fields. Scalars are always [`Rational`] values; over a prime field
//! they are the least nonnegative residues `0..p` with denominator one.

use alloc::string::ToString;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

const PRIME_LIMIT: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field of order `p`; `p` must be prime and below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    #[inline]
    fn residue(x: &Rational) -> i64 {
        x.as_small().expect("prime field residue out of range").0
    }

    #[inline]
    fn lift(v: i64) -> Rational {
        Rational::from_int(v)
    }

    pub fn zero(&self) -> Rational {
        Rational::zero()
    }

    pub fn one(&self) -> Rational {
        Rational::one()
    }

    pub fn from_int(&self, n: i64) -> Rational {
        match self {
            Field::Rationals => Rational::from_int(n),
            Field::Prime(p) => Self::lift(n.rem_euclid(*p as i64)),
        }
    }

    /// Brings an arbitrary rational into this field.
    pub fn convert(&self, x: &Rational) -> Result<Rational> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let p_big = num_bigint::BigInt::from(*p);
                let reduce = |v: num_bigint::BigInt| -> i64 {
                    let r = ((v % &p_big) + &p_big) % &p_big;
                    num_traits::ToPrimitive::to_i64(&r).unwrap()
                };
                let n = reduce(x.numer());
                let d = reduce(x.denom());
                if d == 0 {
                    return Err(Error::CoefficientNotInField(x.to_string()));
                }
                let inv = self.inv(&Self::lift(d)).expect("nonzero residue");
                Ok(self.mul(&Self::lift(n), &inv))
            }
        }
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => {
                let s = Self::residue(a) + Self::residue(b);
                Self::lift(if s >= *p as i64 { s - *p as i64 } else { s })
            }
        }
    }

    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => {
                let s = Self::residue(a) - Self::residue(b);
                Self::lift(if s < 0 { s + *p as i64 } else { s })
            }
        }
    }

    pub fn neg(&self, a: &Rational) -> Rational {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => {
                let r = Self::residue(a);
                Self::lift(if r == 0 { 0 } else { *p as i64 - r })
            }
        }
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => Self::lift(Self::residue(a) * Self::residue(b) % *p as i64),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Rational) -> Option<Rational> {
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let a = Self::residue(a);
                if a == 0 {
                    return None;
                }
                let (mut r0, mut r1) = (*p as i64, a);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Some(Self::lift(t0.rem_euclid(*p as i64)))
            }
        }
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Rational {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// Number of elements, `None` for infinite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn converts_fractions_mod_p() {
        let f = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(f.convert(&Rational::new(1, 2)).unwrap(), Rational::from_int(3));
        assert_eq!(f.convert(&Rational::new(-1, 1)).unwrap(), Rational::from_int(4));
        assert!(f.convert(&Rational::new(1, 5)).is_err());
    }

    proptest! {
        #[test]
        fn residues_stay_canonical(a in 0i64..97, b in 0i64..97) {
            let f = Field::Prime(97);
            let (x, y) = (f.from_int(a), f.from_int(b));
            for r in [f.add(&x, &y), f.sub(&x, &y), f.mul(&x, &y), f.neg(&x)] {
                let v = r.as_small().unwrap();
                prop_assert!(v.1 == 1 && (0..97).contains(&v.0));
            }
            if a != 0 {
                prop_assert!(f.mul(&x, &f.inv(&x).unwrap()).is_one());
            }
        }
    }
}
