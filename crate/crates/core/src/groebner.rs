//! Normal forms and Buchberger's algorithm with reduced, deterministic output.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::collections::HashSet;

/// A reduced Groebner basis: monic elements, mutually reduced, no leading
/// monomial dividing another, sorted ascending by the ring order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    elements: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial()).collect()
    }
}

/// Remainder of multivariate division of `f` by `basis`, fully tail-reduced.
/// Reducers are scanned in slice order, so the result is deterministic.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut rem_terms: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.terms().first().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            if let Some((gm, gc)) = g.terms().first() {
                if gm.divides(&lm) {
                    let q = gm.quotient_of(&lm).expect("divides");
                    let c = field.div(&lc, gc).expect("nonzero leading coefficient");
                    work = work.sub_scaled(&c, &q, g);
                    continue 'outer;
                }
            }
        }
        // Irreducible leading term moves to the remainder.
        rem_terms.push((lm.clone(), lc));
        let tail = Polynomial::from_terms(&ring, work.terms()[1..].to_vec()).expect("same ring");
        work = tail;
    }
    Polynomial::from_terms(&ring, rem_terms).expect("same ring")
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    // Both inputs are monic.
    let ring = f.ring();
    let flm = f.leading_monomial().expect("nonzero");
    let glm = g.leading_monomial().expect("nonzero");
    let lcm = flm.lcm(glm);
    let fm = flm.quotient_of(&lcm).expect("divides");
    let gm = glm.quotient_of(&lcm).expect("divides");
    let one = ring.field().one();
    f.mul_term(&fm, &one).sub_scaled(&one, &gm, g)
}

struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm with the normal selection strategy and the
/// coprimality and chain criteria; output is the reduced basis.
pub fn buchberger<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
    budget: &Budget,
) -> Result<GroebnerBasis<F>> {
    for g in gens {
        g.ring().check_same(ring)?;
    }
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut generated = 0usize;

    let push_pairs = |basis: &[Polynomial<F>],
                          new_idx: usize,
                          pairs: &mut Vec<Pair>,
                          pending: &mut HashSet<(usize, usize)>,
                          generated: &mut usize|
     -> Result<()> {
        let new_lm = basis[new_idx].leading_monomial().expect("nonzero").clone();
        for i in 0..new_idx {
            let lm_i = basis[i].leading_monomial().expect("nonzero");
            *generated += 1;
            if *generated > budget.max_pairs {
                return Err(Error::BudgetExceeded { pairs: *generated });
            }
            // First criterion: coprime leading monomials reduce to zero.
            if lm_i.coprime(&new_lm) {
                continue;
            }
            pairs.push(Pair { lcm: lm_i.lcm(&new_lm), i, j: new_idx });
            pending.insert((i, new_idx));
        }
        Ok(())
    };

    for idx in 0..basis.len() {
        push_pairs(&basis, idx, &mut pairs, &mut pending, &mut generated)?;
    }

    while !pairs.is_empty() {
        // Normal strategy: minimal lcm in the ring order, ties by index.
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = ring.cmp_monomials(&pairs[k].lcm, &pairs[best].lcm);
            if ord == Ordering::Less
                || (ord == Ordering::Equal
                    && (pairs[k].i, pairs[k].j) < (pairs[best].i, pairs[best].j))
            {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        // Chain criterion: a third element dividing the lcm whose pairs with
        // both endpoints were already handled makes this pair redundant.
        let mut skip = false;
        for (k, h) in basis.iter().enumerate() {
            if k == pair.i || k == pair.j {
                continue;
            }
            let lm = h.leading_monomial().expect("nonzero");
            if lm.divides(&pair.lcm) {
                let key_ik = (pair.i.min(k), pair.i.max(k));
                let key_jk = (pair.j.min(k), pair.j.max(k));
                if !pending.contains(&key_ik) && !pending.contains(&key_jk) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let h = normal_form(&s, &basis);
        if !h.is_zero() {
            basis.push(h.monic());
            let idx = basis.len() - 1;
            push_pairs(&basis, idx, &mut pairs, &mut pending, &mut generated)?;
        }
    }

    Ok(reduce_basis(ring, basis))
}

fn reduce_basis<F: Field>(ring: &PolyRing<F>, basis: Vec<Polynomial<F>>) -> GroebnerBasis<F> {
    // Keep only elements whose leading monomial no other kept element divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading_monomial().expect("nonzero").clone();
        for (j, g) in basis.iter().enumerate() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = g.leading_monomial().expect("nonzero");
            if lm_j.divides(&lm_i) && (lm_j != &lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial<F>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Full inter-reduction.
    let mut reduced: Vec<Polynomial<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| {
        ring.cmp_monomials(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    GroebnerBasis { ring: ring.clone(), elements: reduced }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::text::parse_polynomial;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, vec!["X".into(), "Y".into()], MonomialOrder::DegRevLex).unwrap()
    }

    fn gb(ring: &PolyRing<Rationals>, gens: &[&str]) -> GroebnerBasis<Rationals> {
        let polys: Vec<_> = gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect();
        buchberger(ring, &polys, &Budget::default()).unwrap()
    }

    #[test]
    fn monomial_pair_is_already_a_basis() {
        let r = ring();
        let basis = gb(&r, &["X^2", "X*Y"]);
        let strs: Vec<String> = basis.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["X*Y", "X^2"]);
    }

    #[test]
    fn reduction_collapses_to_variables() {
        let r = ring();
        let basis = gb(&r, &["X - Y", "Y"]);
        let strs: Vec<String> = basis.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["Y", "X"]);
    }

    #[test]
    fn unit_ideal() {
        let r = ring();
        let basis = gb(&r, &["1"]);
        assert!(basis.is_unit());
        let basis2 = gb(&r, &["X", "X + 1"]);
        assert!(basis2.is_unit());
    }

    #[test]
    fn empty_input_is_the_zero_ideal() {
        let r = ring();
        let basis = buchberger(&r, &[], &Budget::default()).unwrap();
        assert!(basis.is_empty());
        assert!(!basis.contains(&parse_polynomial(&r, "X").unwrap()));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let basis = gb(&r, &["X^2", "X*Y"]);
        assert!(basis.contains(&parse_polynomial(&r, "X^2*Y").unwrap()));
        assert!(!basis.contains(&parse_polynomial(&r, "X").unwrap()));
        let single = gb(&r, &["X^2 + Y"]);
        assert!(single.contains(&parse_polynomial(&r, "X^2 + Y").unwrap()));
        let x_only = gb(&r, &["X"]);
        assert_eq!(x_only.normal_form(&parse_polynomial(&r, "Y").unwrap()).to_string(), "Y");
    }

    #[test]
    fn classic_lex_elimination() {
        let r = PolyRing::new(Rationals, vec!["X".into(), "Y".into()], MonomialOrder::Lex).unwrap();
        // A curve and a line; lex basis should expose the Y-only polynomial.
        let basis = gb(&r, &["X^2 + Y^2 - 1", "X - Y"]);
        assert!(basis.elements().iter().any(|g| !g.involves_var(0)));
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring();
        let polys = vec![
            parse_polynomial(&r, "X^3 - 2*X*Y").unwrap(),
            parse_polynomial(&r, "X^2*Y - 2*Y^2 + X").unwrap(),
        ];
        let err = buchberger(&r, &polys, &Budget::with_max_pairs(1)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn textbook_example_reduces() {
        // Cox-Little-O'Shea staple: x^3 - 2xy, x^2 y - 2y^2 + x.
        let r = ring();
        let basis = gb(&r, &["X^3 - 2*X*Y", "X^2*Y - 2*Y^2 + X"]);
        let strs: Vec<String> = basis.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["Y^2 - 1/2*X", "X*Y", "X^2"]);
    }
}
