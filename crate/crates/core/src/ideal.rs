//! Ideals with cached reduced Groebner bases, the ideal operations,
//! radical membership via the Rabinowitsch trick, and Krull dimension from
//! the initial ideal's independent variable sets.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::sync::OnceLock;

/// A finitely generated ideal of its polynomial ring.
///
/// The generator list is preserved as given (Jacobian matrices depend on it);
/// the reduced Groebner basis is computed once on demand and then shared.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<std::result::Result<GroebnerBasis<F>, Error>>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl<F: Field> Eq for Ideal<F> {}

impl<F: Field> Ideal<F> {
    /// Builds an ideal from generators; zero generators are dropped.
    pub fn new(ring: &PolyRing<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            g.ring().check_same(ring)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn zero(ring: &PolyRing<F>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &PolyRing<F>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
            gb: OnceLock::new(),
        }
    }

    /// Ideal generated by the listed variables.
    pub fn of_vars(ring: &PolyRing<F>, vars: &[usize]) -> Result<Self> {
        let gens = vars
            .iter()
            .map(|&i| Polynomial::var(ring, i))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The cached reduced Groebner basis; fills idempotently.
    pub fn groebner(&self, budget: &Budget) -> Result<&GroebnerBasis<F>> {
        self.gb
            .get_or_init(|| buchberger(&self.ring, &self.gens, budget))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn is_unit_ideal(&self, budget: &Budget) -> Result<bool> {
        Ok(self.groebner(budget)?.is_unit())
    }

    /// f in I, decided by normal form against the reduced basis.
    pub fn contains(&self, f: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        f.ring().check_same(&self.ring)?;
        Ok(self.groebner(budget)?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality through the canonical reduced bases.
    pub fn equals(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        Ok(self.groebner(budget)?.elements() == other.groebner(budget)?.elements())
    }

    /// f in sqrt(I) via Rabinowitsch: 1 in I + (1 - T*f) in S[T].
    pub fn contains_in_radical(&self, f: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        f.ring().check_same(&self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        let t_name = self.ring.fresh_name("T");
        let ext = self.ring.extend_front(&[t_name])?;
        let shift: Vec<usize> = (1..=self.ring.arity()).collect();
        let mut gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| g.rename_into(&ext, &shift))
            .collect::<Result<Vec<_>>>()?;
        let t = Polynomial::var(&ext, 0)?;
        let f_ext = f.rename_into(&ext, &shift)?;
        gens.push(Polynomial::one(&ext).sub(&t.mul(&f_ext)));
        Ok(buchberger(&ext, &gens, budget)?.is_unit())
    }

    pub fn radical_equals(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        for g in &other.gens {
            if !self.contains_in_radical(g, budget)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !other.contains_in_radical(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        for g in &other.gens {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul(b);
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// I ∩ J by eliminating t from t*I + (1-t)*J.
    pub fn intersect(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        self.ring.check_same(&other.ring)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let t_name = self.ring.fresh_name("T");
        let ext = self.ring.extend_front(&[t_name])?;
        let shift: Vec<usize> = (1..=self.ring.arity()).collect();
        let t = Polynomial::var(&ext, 0)?;
        let one_minus_t = Polynomial::one(&ext).sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.rename_into(&ext, &shift)?));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.rename_into(&ext, &shift)?));
        }
        let gb = buchberger(&ext, &gens, budget)?;
        let keep: Vec<usize> = (1..ext.arity()).collect();
        let mut out = Vec::new();
        for g in gb.elements() {
            if !g.involves_var(0) {
                out.push(g.restrict_into(&self.ring, &keep)?);
            }
        }
        Ideal::new(&self.ring, out)
    }

    /// The colon ideal (I : g).
    pub fn quotient_by_poly(&self, g: &Polynomial<F>, budget: &Budget) -> Result<Ideal<F>> {
        g.ring().check_same(&self.ring)?;
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal, budget)?;
        let mut gens = Vec::new();
        for h in &meet.gens {
            let q = h.div_exact(g).ok_or_else(|| {
                Error::Internal("intersection with (g) not divisible by g".into())
            })?;
            if !q.is_zero() && !gens.contains(&q) {
                gens.push(q);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The colon ideal (I : J) = ∩ over generators of J.
    pub fn quotient(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        self.ring.check_same(&other.ring)?;
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient_by_poly(g, budget)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, budget)?,
            });
        }
        Ok(acc.expect("nonempty generator list"))
    }

    /// The saturation (I : J^∞) by iterated quotients, capped by the budget.
    pub fn saturate(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        let mut current = self.clone();
        for _ in 0..budget.max_saturation {
            let next = current.quotient(other, budget)?;
            if next.equals(&current, budget)? {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::SaturationDiverged(budget.max_saturation))
    }

    /// Generators of I ∩ k[vars outside `drop_vars`], returned in the same
    /// ring (the eliminated variables simply no longer occur).
    pub fn eliminate(&self, drop_vars: &[usize], budget: &Budget) -> Result<Ideal<F>> {
        for &v in drop_vars {
            if v >= self.ring.arity() {
                return Err(Error::VarIndexOutOfRange { index: v, arity: self.ring.arity() });
            }
        }
        if drop_vars.is_empty() {
            return Ok(self.clone());
        }
        // Reorder so the dropped variables form the dominant block.
        let dropped: Vec<usize> = drop_vars.to_vec();
        let kept: Vec<usize> = (0..self.ring.arity()).filter(|v| !dropped.contains(v)).collect();
        let mut names: Vec<String> = Vec::with_capacity(self.ring.arity());
        for &v in dropped.iter().chain(kept.iter()) {
            names.push(self.ring.var_name(v).to_string());
        }
        let ext = PolyRing::new(
            self.ring.field().clone(),
            names,
            MonomialOrder::Block { split: dropped.len() },
        )?;
        // index_map[source] = target slot in ext.
        let mut index_map = vec![0usize; self.ring.arity()];
        for (slot, &v) in dropped.iter().chain(kept.iter()).enumerate() {
            index_map[v] = slot;
        }
        let gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| g.rename_into(&ext, &index_map))
            .collect::<Result<Vec<_>>>()?;
        let gb = buchberger(&ext, &gens, budget)?;
        let mut out = Vec::new();
        let back: Vec<usize> = {
            // target slot -> source index, for surviving slots only.
            let mut b = vec![0usize; self.ring.arity()];
            for (slot, &v) in dropped.iter().chain(kept.iter()).enumerate() {
                b[slot] = v;
            }
            b
        };
        for g in gb.elements() {
            if (0..dropped.len()).all(|slot| !g.involves_var(slot)) {
                out.push(g.rename_into(&self.ring, &back)?);
            }
        }
        Ideal::new(&self.ring, out)
    }

    /// Introspection into the initial ideal: leading monomials of the basis.
    pub fn leading_monomials(&self, budget: &Budget) -> Result<Vec<crate::monomial::Monomial>> {
        Ok(self
            .groebner(budget)?
            .elements()
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect())
    }

    /// Krull dimension of S/I as the combinatorial dimension of the initial
    /// ideal: the largest variable subset meeting no leading monomial's
    /// support.  Exhaustive over subsets, exact for m <= 24.
    pub fn krull_dimension(&self, budget: &Budget) -> Result<usize> {
        let gb = self.groebner(budget)?;
        if gb.is_unit() {
            return Err(Error::EmptySpectrum);
        }
        let m = self.ring.arity();
        if m > 24 {
            return Err(Error::TooManyVariables(m));
        }
        let supports: Vec<u64> = gb
            .elements()
            .iter()
            .filter_map(|g| g.leading_monomial())
            .map(|lm| lm.support_mask())
            .collect();
        let mut best = 0usize;
        for subset in 0u64..(1 << m) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}

/// The ideal operations named by the workbench surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
    Quotient,
    Saturate,
}

pub fn ideal_op<F: Field>(
    op: IdealOp,
    lhs: &Ideal<F>,
    rhs: &Ideal<F>,
    budget: &Budget,
) -> Result<Ideal<F>> {
    match op {
        IdealOp::Sum => lhs.sum(rhs),
        IdealOp::Product => lhs.product(rhs),
        IdealOp::Intersect => lhs.intersect(rhs, budget),
        IdealOp::Quotient => lhs.quotient(rhs, budget),
        IdealOp::Saturate => lhs.saturate(rhs, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::text::parse_polynomial;

    fn ring(vars: &[&str]) -> PolyRing<Rationals> {
        PolyRing::new(
            Rationals,
            vars.iter().map(|v| v.to_string()).collect(),
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn ideal(r: &PolyRing<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        let polys = gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect();
        Ideal::new(r, polys).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn membership_examples() {
        let r = ring(&["X", "Y"]);
        let i = ideal(&r, &["X^2", "X*Y"]);
        assert!(i.contains(&parse_polynomial(&r, "X^2*Y").unwrap(), &b()).unwrap());
        assert!(!i.contains(&parse_polynomial(&r, "X").unwrap(), &b()).unwrap());
        assert!(i.contains(&parse_polynomial(&r, "0").unwrap(), &b()).unwrap());
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["X", "Y"]);
        let i = ideal(&r, &["X^2", "X*Y"]);
        assert!(i.contains_in_radical(&parse_polynomial(&r, "X").unwrap(), &b()).unwrap());
        assert!(!i.contains_in_radical(&parse_polynomial(&r, "Y").unwrap(), &b()).unwrap());
        let unit = ideal(&r, &["1"]);
        assert!(unit
            .contains_in_radical(&parse_polynomial(&r, "X - 17*Y").unwrap(), &b())
            .unwrap());
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let r = ring(&["X", "Y"]);
        let i = ideal(&r, &["X"]);
        let j = ideal(&r, &["Y"]);
        let meet = i.intersect(&j, &b()).unwrap();
        assert!(meet.equals(&ideal(&r, &["X*Y"]), &b()).unwrap());
    }

    #[test]
    fn product_matches_expansion() {
        let r = ring(&["X", "Y", "Z"]);
        let i = ideal(&r, &["X*Y", "X*Z"]);
        let sq = i.product(&i).unwrap();
        let expanded = ideal(&r, &["X^2*Y^2", "X^2*Y*Z", "X^2*Z^2"]);
        assert!(sq.equals(&expanded, &b()).unwrap());
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let r = ring(&["X", "Y"]);
        let i = ideal(&r, &["X^2 - Y"]);
        let s = i.sum(&Ideal::zero(&r)).unwrap();
        assert!(s.equals(&i, &b()).unwrap());
    }

    #[test]
    fn elimination_drops_unconstrained_data() {
        let r = ring(&["T", "X"]);
        let i = ideal(&r, &["1 - T*X"]);
        let e = i.eliminate(&[0], &b()).unwrap();
        assert!(e.is_zero_ideal() || e.groebner(&b()).unwrap().is_empty());
    }

    #[test]
    fn quotient_and_saturation() {
        let r = ring(&["X", "Y"]);
        // ((X^2, XY) : X) = (X, Y)
        let i = ideal(&r, &["X^2", "X*Y"]);
        let q = i.quotient(&ideal(&r, &["X"]), &b()).unwrap();
        assert!(q.equals(&ideal(&r, &["X", "Y"]), &b()).unwrap());
        // Saturating by X removes the embedded component entirely.
        let sat = i.saturate(&ideal(&r, &["X"]), &b()).unwrap();
        assert!(sat.equals(&ideal(&r, &["1"]), &b()).unwrap());
        let j = ideal(&r, &["X^2*Y"]);
        let sat2 = j.saturate(&ideal(&r, &["X"]), &b()).unwrap();
        assert!(sat2.equals(&ideal(&r, &["Y"]), &b()).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["X", "Y_1", "Y_2", "Y_3"]);
        let i = ideal(&r, &["X*Y_1", "X*Y_2", "X*Y_3"]);
        assert_eq!(i.krull_dimension(&b()).unwrap(), 3);
        assert_eq!(Ideal::zero(&r).krull_dimension(&b()).unwrap(), 4);
        let r2 = ring(&["X", "Y"]);
        let j = ideal(&r2, &["X^2", "X*Y"]);
        assert_eq!(j.krull_dimension(&b()).unwrap(), 1);
        assert_eq!(
            ideal(&r2, &["1"]).krull_dimension(&b()),
            Err(Error::EmptySpectrum)
        );
    }

    #[test]
    fn radical_equality() {
        let r = ring(&["X", "Y"]);
        let i = ideal(&r, &["X^2", "X*Y"]);
        let j = ideal(&r, &["X"]);
        assert!(i.radical_equals(&j, &b()).unwrap());
        assert!(!i.radical_equals(&ideal(&r, &["Y"]), &b()).unwrap());
    }
}
