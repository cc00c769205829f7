//! Exact coefficient fields: arbitrary-precision rationals and prime fields GF(p).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::hash::Hash;

/// A coefficient field together with arithmetic on its elements.
///
/// The field value carries the context (e.g. the modulus of GF(p)) so that
/// elements stay lightweight; this is the ring-object idiom rather than
/// element-level operator traits.  Every operation is exact and total on
/// nonzero divisors.
pub trait Field: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    /// 0 for the rationals, p for GF(p).
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// None exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a square in the field.
    fn is_square(&self, a: &Self::Elem) -> bool;
    /// Element for randomized property checks; small over Q, uniform over GF(p).
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> Self::Elem;
    /// True when the canonical text form starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn abs(&self, a: &Self::Elem) -> Self::Elem;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }
}

/// The field of rationals with arbitrary-precision, always-reduced elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn is_square(&self, a: &BigRational) -> bool {
        if a.is_negative() {
            return false;
        }
        a.numer().sqrt().pow(2) == *a.numer() && a.denom().sqrt().pow(2) == *a.denom()
    }
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> BigRational {
        let n = (rng.next_u64() % 19) as i64 - 9;
        self.from_int(n)
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn abs(&self, a: &BigRational) -> BigRational {
        a.abs()
    }
    fn elem_to_string(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field GF(p), p < 2^31; elements are canonical residues in 0..p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn is_square(&self, a: &u64) -> bool {
        if *a == 0 || self.p == 2 {
            return true;
        }
        self.pow(*a, (self.p - 1) / 2) == 1
    }
    fn random_elem(&self, rng: &mut dyn rand::RngCore) -> u64 {
        rng.next_u64() % self.p
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn abs(&self, a: &u64) -> u64 {
        *a
    }
    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}
