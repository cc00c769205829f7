//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are stored sorted strictly descending under the ring's monomial
//! order with no zero coefficients, so structural equality is polynomial
//! equality and the leading term is `terms[0]`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    ring: PolyRing<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Hash for Polynomial<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &PolyRing<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &PolyRing<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &PolyRing<F>, c: F::Elem) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.arity()), c)] }
    }

    pub fn from_int(ring: &PolyRing<F>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_int(n))
    }

    pub fn var(ring: &PolyRing<F>, i: usize) -> Result<Self> {
        if i >= ring.arity() {
            return Err(Error::VarIndexOutOfRange { index: i, arity: ring.arity() });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), i), ring.field().one())],
        })
    }

    pub fn monomial(ring: &PolyRing<F>, m: Monomial, c: F::Elem) -> Result<Self> {
        if m.arity() != ring.arity() {
            return Err(Error::ArityMismatch(m.arity(), ring.arity()));
        }
        if ring.field().is_zero(&c) {
            return Ok(Self::zero(ring));
        }
        Ok(Polynomial { ring: ring.clone(), terms: vec![(m, c)] })
    }

    /// Canonicalizes an arbitrary term list: sorts, combines, drops zeros.
    pub fn from_terms(ring: &PolyRing<F>, mut terms: Vec<(Monomial, F::Elem)>) -> Result<Self> {
        for (m, _) in &terms {
            if m.arity() != ring.arity() {
                return Err(Error::ArityMismatch(m.arity(), ring.arity()));
            }
        }
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = ring.field().add(lc, &c);
                    if ring.field().is_zero(lc) {
                        out.pop();
                    }
                }
                _ => {
                    if !ring.field().is_zero(&c) {
                        out.push((m, c));
                    }
                }
            }
        }
        Ok(Polynomial { ring: ring.clone(), terms: out })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The coefficient of the degree-zero monomial.
    pub fn constant_term(&self) -> F::Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        for (tm, c) in &self.terms {
            if tm == m {
                return c.clone();
            }
        }
        self.ring.field().zero()
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, true, None))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(self.mul_impl(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("ring mismatch")
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), f.mul(k, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), f.mul(tc, c))).collect(),
        }
    }

    /// self - c * m * g, merged in one pass; the workhorse of division.
    pub fn sub_scaled(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        self.merge(g, true, Some((m, c)))
    }

    fn merge(&self, other: &Self, subtract: bool, shift: Option<(&Monomial, &F::Elem)>) -> Self {
        let f = self.ring.field();
        let mut out: Vec<(Monomial, F::Elem)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |idx: usize| -> (Monomial, F::Elem) {
            let (m, c) = &other.terms[idx];
            match shift {
                Some((sm, sc)) => (m.mul(sm), f.mul(c, sc)),
                None => (m.clone(), c.clone()),
            }
        };
        while i < self.terms.len() && j < other.terms.len() {
            let (om, oc) = shifted(j);
            match self.ring.cmp_monomials(&self.terms[i].0, &om) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((om, if subtract { f.neg(&oc) } else { oc }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        f.sub(&self.terms[i].1, &oc)
                    } else {
                        f.add(&self.terms[i].1, &oc)
                    };
                    if !f.is_zero(&c) {
                        out.push((om, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            let (om, oc) = shifted(j);
            out.push((om, if subtract { f.neg(&oc) } else { oc }));
            j += 1;
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let f = self.ring.field();
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.mul(bm);
                let c = f.mul(ac, bc);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> =
            acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Leading coefficient scaled to one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if self.ring.field().is_one(lc) {
                    self.clone()
                } else {
                    let inv = self.ring.field().inv(lc).expect("nonzero leading coefficient");
                    self.scale(&inv)
                }
            }
        }
    }

    /// The formal partial derivative with respect to variable `i`.
    ///
    /// Exponents are reduced into the field, so terms may vanish in
    /// characteristic p.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.ring.arity() {
            return Err(Error::VarIndexOutOfRange { index: i, arity: self.ring.arity() });
        }
        let f = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let k = f.mul(c, &f.from_int(e as i64));
            if f.is_zero(&k) {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            terms.push((Monomial::new(exps), k));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Image under the ring map sending variable i to `images[i]`.
    pub fn map_vars(&self, target: &PolyRing<F>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.ring.arity() {
            return Err(Error::ArityMismatch(images.len(), self.ring.arity()));
        }
        for im in images {
            im.ring().check_same(target)?;
        }
        // Cache variable powers; exponents stay small at desk scale.
        let mut powers: Vec<Vec<Polynomial<F>>> =
            (0..images.len()).map(|_| vec![Polynomial::one(target)]).collect();
        let mut power = |v: usize, e: u32, images: &[Polynomial<F>]| -> Polynomial<F> {
            while powers[v].len() <= e as usize {
                let next = powers[v].last().unwrap().mul(&images[v]);
                powers[v].push(next);
            }
            powers[v][e as usize].clone()
        };
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for v in m.support() {
                term = term.mul(&power(v, m.exp(v), images));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Re-indexes variables into `target` without arithmetic; `index_map[i]`
    /// is the target slot of source variable i.
    pub fn rename_into(&self, target: &PolyRing<F>, index_map: &[usize]) -> Result<Self> {
        if index_map.len() != self.ring.arity() {
            return Err(Error::ArityMismatch(index_map.len(), self.ring.arity()));
        }
        let arity = target.arity();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; arity];
            for v in m.support() {
                let t = index_map[v];
                if t >= arity {
                    return Err(Error::VarIndexOutOfRange { index: t, arity });
                }
                exps[t] += m.exp(v);
            }
            terms.push((Monomial::new(exps), c.clone()));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of an embedding: fails if any dropped variable occurs.
    /// `keep[i]` gives the source index feeding target slot i.
    pub fn restrict_into(&self, target: &PolyRing<F>, keep: &[usize]) -> Result<Self> {
        let mut back = vec![usize::MAX; self.ring.arity()];
        for (t, s) in keep.iter().enumerate() {
            back[*s] = t;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for v in m.support() {
                if back[v] == usize::MAX {
                    return Err(Error::Internal(format!(
                        "variable {} survives restriction",
                        self.ring.var_name(v)
                    )));
                }
                exps[back[v]] += m.exp(v);
            }
            terms.push((Monomial::new(exps), c.clone()));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Substitute a single variable by a polynomial of the same ring.
    pub fn substitute(&self, var: usize, value: &Polynomial<F>) -> Result<Self> {
        let mut images = Vec::with_capacity(self.ring.arity());
        for i in 0..self.ring.arity() {
            if i == var {
                images.push(value.clone());
            } else {
                images.push(Polynomial::var(&self.ring, i)?);
            }
        }
        self.map_vars(&self.ring, &images)
    }

    /// Exact division by `g`; None when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        assert!(self.ring.same_ring(&g.ring), "ring mismatch");
        if self.is_zero() {
            return Some(Self::zero(&self.ring));
        }
        let f = self.ring.field();
        let (glm, glc) = g.terms.first()?;
        let ginv = f.inv(glc)?;
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            let qm = glm.quotient_of(rm)?;
            let qc = f.mul(rc, &ginv);
            rem = rem.sub_scaled(&qc, &qm, g);
            quo.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quo).expect("same ring"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::text::parse_polynomial;

    pub(crate) fn ring_xy() -> PolyRing<Rationals> {
        PolyRing::new(
            Rationals,
            vec!["X".into(), "Y".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn p(r: &PolyRing<Rationals>, s: &str) -> Polynomial<Rationals> {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let r = ring_xy();
        let x = p(&r, "X");
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn product_of_conjugates() {
        let r = ring_xy();
        assert_eq!(p(&r, "X + Y").mul(&p(&r, "X - Y")), p(&r, "X^2 - Y^2"));
    }

    #[test]
    fn char_two_addition() {
        let f = PrimeField::new(2).unwrap();
        let r = PolyRing::new(f, vec!["X".into()], MonomialOrder::DegRevLex).unwrap();
        let x = Polynomial::var(&r, 0).unwrap();
        assert!(x.add(&x).is_zero());
    }

    #[test]
    fn ring_mismatch_reported() {
        let r1 = ring_xy();
        let r2 = PolyRing::new(Rationals, vec!["Z".into()], MonomialOrder::DegRevLex).unwrap();
        let a = p(&r1, "X");
        let b = Polynomial::var(&r2, 0).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn derivative_examples() {
        let r = ring_xy();
        // d(X*Y)/dX = Y, d(Y^2+1)/dY = 2Y, d(c)/dX = 0
        assert_eq!(p(&r, "X*Y").partial_derivative(0).unwrap(), p(&r, "Y"));
        assert_eq!(p(&r, "Y^2 + 1").partial_derivative(1).unwrap(), p(&r, "2*Y"));
        assert!(p(&r, "7").partial_derivative(0).unwrap().is_zero());
        assert!(p(&r, "X").partial_derivative(5).is_err());
    }

    #[test]
    fn derivative_drops_terms_in_char_p() {
        let f = PrimeField::new(2).unwrap();
        let r = PolyRing::new(f, vec!["X".into()], MonomialOrder::DegRevLex).unwrap();
        let x2 = Polynomial::var(&r, 0).unwrap().pow(2);
        assert!(x2.partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring_xy();
        let prod = p(&r, "X + Y").mul(&p(&r, "X^2 - 3*Y"));
        assert_eq!(prod.div_exact(&p(&r, "X + Y")), Some(p(&r, "X^2 - 3*Y")));
        assert_eq!(p(&r, "X^2 + 1").div_exact(&p(&r, "X + Y")), None);
    }

    #[test]
    fn substitution() {
        let r = ring_xy();
        // Y := X^3 in Y^2 - X
        let img = p(&r, "Y^2 - X").substitute(1, &p(&r, "X^3")).unwrap();
        assert_eq!(img, p(&r, "X^6 - X"));
    }
}
