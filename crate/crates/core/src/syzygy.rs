//! Free-module Groebner bases and syzygy computation.
//!
//! Module terms are ordered term-over-position on top of the ring order,
//! with an optional dominant position block used to eliminate the target
//! coordinates when extracting syzygies.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::collections::HashSet;

/// An element of a free module S^t, stored sparsely by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVec<F: Field> {
    rank: usize,
    entries: Vec<(usize, Polynomial<F>)>,
}

impl<F: Field> ModuleVec<F> {
    pub fn zero(rank: usize) -> Self {
        ModuleVec { rank, entries: Vec::new() }
    }

    pub fn from_dense(components: Vec<Polynomial<F>>) -> Self {
        let rank = components.len();
        let entries = components
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        ModuleVec { rank, entries }
    }

    pub fn from_entries(rank: usize, mut entries: Vec<(usize, Polynomial<F>)>) -> Self {
        entries.retain(|(_, p)| !p.is_zero());
        entries.sort_by_key(|(pos, _)| *pos);
        ModuleVec { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Polynomial<F>)] {
        &self.entries
    }

    pub fn component(&self, pos: usize, ring: &PolyRing<F>) -> Polynomial<F> {
        self.entries
            .iter()
            .find(|(p, _)| *p == pos)
            .map(|(_, poly)| poly.clone())
            .unwrap_or_else(|| Polynomial::zero(ring))
    }

    pub fn to_dense(&self, ring: &PolyRing<F>) -> Vec<Polynomial<F>> {
        let mut out = vec![Polynomial::zero(ring); self.rank];
        for (pos, p) in &self.entries {
            out[*pos] = p.clone();
        }
        out
    }

    /// The sub-vector supported on positions >= from, re-based at zero.
    pub fn tail_block(&self, from: usize) -> ModuleVec<F> {
        let entries = self
            .entries
            .iter()
            .filter(|(pos, _)| *pos >= from)
            .map(|(pos, p)| (pos - from, p.clone()))
            .collect();
        ModuleVec { rank: self.rank - from, entries }
    }

    pub fn supported_below(&self, limit: usize) -> bool {
        self.entries.iter().all(|(pos, _)| *pos < limit)
    }

    fn map_polys(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(pos, p)| (*pos, f(p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        ModuleVec { rank: self.rank, entries }
    }

    pub fn scale(&self, ring: &PolyRing<F>, c: &F::Elem) -> Self {
        let _ = ring;
        self.map_polys(|p| p.scale(c))
    }

    /// self - c * m * other, positionwise.
    pub fn sub_scaled(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out: Vec<(usize, Polynomial<F>)> = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.entries.len() && j < other.entries.len() {
            let (pa, fa) = &self.entries[i];
            let (pb, fb) = &other.entries[j];
            match pa.cmp(pb) {
                Ordering::Less => {
                    out.push((*pa, fa.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    let v = fb.mul_term(m, c).neg();
                    if !v.is_zero() {
                        out.push((*pb, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = fa.sub_scaled(c, m, fb);
                    if !v.is_zero() {
                        out.push((*pa, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.entries[i..].iter().cloned());
        for (pb, fb) in &other.entries[j..] {
            let v = fb.mul_term(m, c).neg();
            if !v.is_zero() {
                out.push((*pb, v));
            }
        }
        ModuleVec { rank: self.rank, entries: out }
    }
}

/// Term-over-position with a dominant leading block of `split` positions.
#[derive(Clone, Copy, Debug)]
pub struct ModuleOrder {
    pub split: usize,
}

impl ModuleOrder {
    pub fn top() -> Self {
        ModuleOrder { split: 0 }
    }

    fn block(&self, pos: usize) -> usize {
        if pos < self.split {
            0
        } else {
            1
        }
    }

    /// Greater means the term dominates.
    fn cmp_terms<F: Field>(
        &self,
        ring: &PolyRing<F>,
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> Ordering {
        match self.block(b.0).cmp(&self.block(a.0)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match ring.cmp_monomials(a.1, b.1) {
            Ordering::Equal => b.0.cmp(&a.0), // lower position dominates
            ord => ord,
        }
    }
}

fn lead<'a, F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    v: &'a ModuleVec<F>,
) -> Option<(usize, &'a Monomial, &'a F::Elem)> {
    let mut best: Option<(usize, &Monomial, &F::Elem)> = None;
    for (pos, p) in v.entries() {
        let (m, c) = p.terms().first()?;
        match best {
            None => best = Some((*pos, m, c)),
            Some((bp, bm, _)) => {
                if order.cmp_terms(ring, (*pos, m), (bp, bm)) == Ordering::Greater {
                    best = Some((*pos, m, c));
                }
            }
        }
    }
    best
}

/// Top-reduces `v` against `basis`; returns the (possibly nonzero) residue.
fn top_reduce<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    v: &ModuleVec<F>,
    basis: &[ModuleVec<F>],
    by_position: &[Vec<usize>],
) -> ModuleVec<F> {
    let field = ring.field().clone();
    let mut work = v.clone();
    'outer: while let Some((pos, lm, lc)) = lead(ring, order, &work) {
        let lm = lm.clone();
        let lc = lc.clone();
        for &k in &by_position[pos] {
            let g = &basis[k];
            let (gp, gm, gc) = lead(ring, order, g).expect("basis elements nonzero");
            debug_assert_eq!(gp, pos);
            if gm.divides(&lm) {
                let q = gm.quotient_of(&lm).expect("divides");
                let c = field.div(&lc, gc).expect("nonzero lead");
                work = work.sub_scaled(&c, &q, g);
                continue 'outer;
            }
        }
        return work;
    }
    work
}

/// Fully reduces `v`: every term, not just the lead.
fn full_reduce<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    v: &ModuleVec<F>,
    basis: &[ModuleVec<F>],
    by_position: &[Vec<usize>],
) -> ModuleVec<F> {
    let field = ring.field().clone();
    let mut remainder: Vec<(usize, Polynomial<F>)> = Vec::new();
    let mut work = v.clone();
    'outer: loop {
        let Some((pos, lm, lc)) = lead(ring, order, &work) else { break };
        let lm = lm.clone();
        let lc = lc.clone();
        for &k in &by_position[pos] {
            let g = &basis[k];
            let (_, gm, gc) = lead(ring, order, g).expect("nonzero");
            if gm.divides(&lm) {
                let q = gm.quotient_of(&lm).expect("divides");
                let c = field.div(&lc, gc).expect("nonzero lead");
                work = work.sub_scaled(&c, &q, g);
                continue 'outer;
            }
        }
        // Move the irreducible lead into the remainder.
        let keep = Polynomial::monomial(ring, lm.clone(), lc.clone()).expect("arity");
        remainder.push((pos, keep.clone()));
        work = work.sub_scaled(&field.one(), &Monomial::one(lm.arity()), &ModuleVec::from_entries(
            work.rank(),
            vec![(pos, keep)],
        ));
    }
    let rank = v.rank();
    let mut merged: Vec<(usize, Polynomial<F>)> = Vec::new();
    remainder.sort_by_key(|(pos, _)| *pos);
    for (pos, p) in remainder {
        match merged.last_mut() {
            Some((lp, lpoly)) if *lp == pos => *lpoly = lpoly.add(&p),
            _ => merged.push((pos, p)),
        }
    }
    ModuleVec::from_entries(rank, merged)
}

fn monic_vec<F: Field>(ring: &PolyRing<F>, order: &ModuleOrder, v: &ModuleVec<F>) -> ModuleVec<F> {
    match lead(ring, order, v) {
        None => v.clone(),
        Some((_, _, c)) => {
            if ring.field().is_one(c) {
                v.clone()
            } else {
                let inv = ring.field().inv(c).expect("nonzero");
                v.scale(ring, &inv)
            }
        }
    }
}

struct ModPair {
    lcm: Monomial,
    pos: usize,
    i: usize,
    j: usize,
}

/// Buchberger for submodules of a free module.  The coprimality criterion is
/// omitted (it is unsound for modules); the chain criterion applies within a
/// leading position.
pub fn module_groebner<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    gens: &[ModuleVec<F>],
    budget: &Budget,
) -> Result<Vec<ModuleVec<F>>> {
    let mut basis: Vec<ModuleVec<F>> = Vec::new();
    let mut rank = 0usize;
    for g in gens {
        rank = rank.max(g.rank());
        if !g.is_zero() {
            basis.push(monic_vec(ring, order, g));
        }
    }
    let mut by_position: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (k, g) in basis.iter().enumerate() {
        let (pos, _, _) = lead(ring, order, g).expect("nonzero");
        by_position[pos].push(k);
    }

    let mut pairs: Vec<ModPair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut generated = 0usize;

    let push_pairs = |basis: &[ModuleVec<F>],
                          by_position: &[Vec<usize>],
                          new_idx: usize,
                          pairs: &mut Vec<ModPair>,
                          pending: &mut HashSet<(usize, usize)>,
                          generated: &mut usize|
     -> Result<()> {
        let (pos, lm, _) = lead(ring, order, &basis[new_idx]).expect("nonzero");
        let lm = lm.clone();
        for &i in &by_position[pos] {
            if i == new_idx {
                continue;
            }
            let (_, lm_i, _) = lead(ring, order, &basis[i]).expect("nonzero");
            *generated += 1;
            if *generated > budget.max_pairs {
                return Err(Error::BudgetExceeded { pairs: *generated });
            }
            pairs.push(ModPair { lcm: lm_i.lcm(&lm), pos, i, j: new_idx });
            pending.insert((i, new_idx));
        }
        Ok(())
    };

    for idx in 0..basis.len() {
        push_pairs(&basis, &by_position, idx, &mut pairs, &mut pending, &mut generated)?;
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = ring.cmp_monomials(&pairs[k].lcm, &pairs[best].lcm);
            if ord == Ordering::Less
                || (ord == Ordering::Equal
                    && (pairs[k].pos, pairs[k].i, pairs[k].j)
                        < (pairs[best].pos, pairs[best].i, pairs[best].j))
            {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        let mut skip = false;
        for &k in &by_position[pair.pos] {
            if k == pair.i || k == pair.j {
                continue;
            }
            let (_, lm_k, _) = lead(ring, order, &basis[k]).expect("nonzero");
            if lm_k.divides(&pair.lcm) {
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

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (_, lm_i, _) = lead(ring, order, fi).expect("nonzero");
        let (_, lm_j, _) = lead(ring, order, fj).expect("nonzero");
        let qi = lm_i.quotient_of(&pair.lcm).expect("divides");
        let qj = lm_j.quotient_of(&pair.lcm).expect("divides");
        let one = ring.field().one();
        let lhs = shift_vec(fi, &qi, &one);
        let spair = lhs.sub_scaled(&one, &qj, fj);
        let h = top_reduce(ring, order, &spair, &basis, &by_position);
        if !h.is_zero() {
            let h = monic_vec(ring, order, &h);
            let (pos, _, _) = lead(ring, order, &h).expect("nonzero");
            basis.push(h);
            let idx = basis.len() - 1;
            by_position[pos].push(idx);
            push_pairs(&basis, &by_position, idx, &mut pairs, &mut pending, &mut generated)?;
        }
    }

    Ok(reduce_module_basis(ring, order, basis, rank))
}

fn shift_vec<F: Field>(v: &ModuleVec<F>, m: &Monomial, c: &F::Elem) -> ModuleVec<F> {
    let entries = v
        .entries()
        .iter()
        .map(|(pos, p)| (*pos, p.mul_term(m, c)))
        .collect();
    ModuleVec::from_entries(v.rank(), entries)
}

fn reduce_module_basis<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    basis: Vec<ModuleVec<F>>,
    rank: usize,
) -> Vec<ModuleVec<F>> {
    // Lead-minimal subset first.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (pi, mi, _) = lead(ring, order, &basis[i]).expect("nonzero");
        let mi = mi.clone();
        for (j, g) in basis.iter().enumerate() {
            if i == j || !keep[j] {
                continue;
            }
            let (pj, mj, _) = lead(ring, order, g).expect("nonzero");
            if pi == pj && mj.divides(&mi) && (*mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<ModuleVec<F>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<ModuleVec<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut by_position: Vec<Vec<usize>> = vec![Vec::new(); rank];
        for (k, g) in others.iter().enumerate() {
            let (pos, _, _) = lead(ring, order, g).expect("nonzero");
            by_position[pos].push(k);
        }
        let r = full_reduce(ring, order, &minimal[i], &others, &by_position);
        if !r.is_zero() {
            out.push(monic_vec(ring, order, &r));
        }
    }
    out.sort_by(|a, b| {
        let (pa, ma, _) = lead(ring, order, a).expect("nonzero");
        let (pb, mb, _) = lead(ring, order, b).expect("nonzero");
        order.cmp_terms(ring, (pa, ma), (pb, mb))
    });
    out
}

/// Generators of the syzygy module of `cols`, viewed inside S^target_rank.
///
/// Implemented by tagging each column with a unit vector in a trailing block
/// and eliminating the leading block.
pub fn syzygies<F: Field>(
    ring: &PolyRing<F>,
    target_rank: usize,
    cols: &[ModuleVec<F>],
    budget: &Budget,
) -> Result<Vec<ModuleVec<F>>> {
    syzygies_with_helpers(ring, target_rank, cols, &[], budget)
}

/// Coefficient vectors a with sum a_j tagged_j inside span(helpers).
///
/// Helper columns carry no tags, so the returned vectors live in
/// S^{#tagged}; with no helpers this is the plain syzygy module.
pub fn syzygies_with_helpers<F: Field>(
    ring: &PolyRing<F>,
    target_rank: usize,
    tagged_cols: &[ModuleVec<F>],
    helper_cols: &[ModuleVec<F>],
    budget: &Budget,
) -> Result<Vec<ModuleVec<F>>> {
    let u = tagged_cols.len();
    if u == 0 {
        return Ok(Vec::new());
    }
    let total = target_rank + u;
    let mut augmented = Vec::with_capacity(u + helper_cols.len());
    for (idx, col) in tagged_cols.iter().enumerate() {
        if col.rank() != target_rank {
            return Err(Error::MatrixShape);
        }
        let mut entries: Vec<(usize, Polynomial<F>)> =
            col.entries().iter().map(|(pos, p)| (*pos, p.clone())).collect();
        entries.push((target_rank + idx, Polynomial::one(ring)));
        augmented.push(ModuleVec::from_entries(total, entries));
    }
    for col in helper_cols {
        if col.rank() != target_rank {
            return Err(Error::MatrixShape);
        }
        let entries: Vec<(usize, Polynomial<F>)> =
            col.entries().iter().map(|(pos, p)| (*pos, p.clone())).collect();
        let v = ModuleVec::from_entries(total, entries);
        if !v.is_zero() {
            augmented.push(v);
        }
    }
    let order = ModuleOrder { split: target_rank };
    let gb = module_groebner(ring, &order, &augmented, budget)?;
    let mut syz: Vec<ModuleVec<F>> = gb
        .into_iter()
        .filter(|g| g.entries().iter().all(|(pos, _)| *pos >= target_rank))
        .map(|g| g.tail_block(target_rank))
        .collect();
    syz.retain(|v| !v.is_zero());
    Ok(syz)
}

/// Syzygies of column vectors over S (rank-1 free module over the ring).
pub fn syzygies_of_polynomials<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
    budget: &Budget,
) -> Result<Vec<Vec<Polynomial<F>>>> {
    let cols: Vec<ModuleVec<F>> = gens
        .iter()
        .map(|g| ModuleVec::from_dense(vec![g.clone()]))
        .collect();
    let syz = syzygies(ring, 1, &cols, budget)?;
    Ok(syz.into_iter().map(|v| v.to_dense(ring)).collect())
}
