//! Monomials and monomial orders.

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// An exponent vector; the arity is fixed by the ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps: exps.into_boxed_slice(), degree }
    }

    pub fn one(arity: usize) -> Self {
        Monomial::new(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let exps = self.exps.iter().map(|a| a * e).collect();
        Monomial { exps, degree: self.degree * e }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.degree <= other.degree
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps: Box<[u32]> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for i in self.support() {
            m |= 1 << i;
        }
        m
    }
}

/// Total multiplicative well-orders on monomials.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// The first `split` variables dominate; degrevlex within each block.
    Block { split: usize },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Rightmost differing exponent: smaller exponent there means larger monomial.
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares under the invariant that both monomials share an arity.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match self {
            MonomialOrder::Lex => a.exps.iter().cmp(b.exps.iter()),
            MonomialOrder::DegRevLex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                degrevlex(&a.exps, &b.exps)
            }
            MonomialOrder::Block { split } => {
                let s = (*split).min(a.arity());
                match degrevlex(&a.exps[..s], &b.exps[..s]) {
                    Ordering::Equal => degrevlex(&a.exps[s..], &b.exps[s..]),
                    ord => ord,
                }
            }
        }
    }

    /// Checked comparison, the public decision-procedure entry point.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(a.arity(), b.arity()));
        }
        Ok(self.cmp(a, b))
    }
}
