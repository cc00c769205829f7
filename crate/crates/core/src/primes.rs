//! Minimal primes and the equidimensionality defect.
//!
//! Monomial ideals are decomposed exactly through minimal variable covers.
//! General ideals go through recursive factor splitting; leaves that cannot
//! be proven prime by the implemented criteria leave the report uncertified
//! rather than guessing.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMethod {
    MonomialCombinatorial,
    FactorSplit,
    CorpusSupplied,
}

impl DecompositionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionMethod::MonomialCombinatorial => "monomial-combinatorial",
            DecompositionMethod::FactorSplit => "factor-split",
            DecompositionMethod::CorpusSupplied => "corpus-supplied",
        }
    }
}

/// Minimal primes of an ideal together with a certification flag.
///
/// When certified: each listed ideal is prime, contains the input, none
/// contains another, and their intersection shares the input's radical.
#[derive(Debug, Clone)]
pub struct MinimalPrimesReport<F: Field> {
    pub primes: Vec<Ideal<F>>,
    pub certified: bool,
    pub method: DecompositionMethod,
}

/// Per-component dimensions and their spread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EddReport {
    pub dim_r: usize,
    pub component_dims: Vec<usize>,
    pub edd: usize,
}

fn minimal_covers(supports: &[u64], arity: usize) -> Vec<u64> {
    let mut covers: Vec<u64> = Vec::new();
    for subset in 0u64..(1 << arity) {
        if supports.iter().all(|s| s & subset != 0) {
            covers.push(subset);
        }
    }
    let mut minimal = Vec::new();
    'outer: for &c in &covers {
        for &d in &covers {
            if d != c && d & c == d {
                continue 'outer;
            }
        }
        minimal.push(c);
    }
    minimal.sort_by_key(|c| (c.count_ones(), *c));
    minimal
}

fn coordinate_prime<F: Field>(ring: &PolyRing<F>, mask: u64) -> Result<Ideal<F>> {
    let vars: Vec<usize> = (0..ring.arity()).filter(|i| mask & (1 << i) != 0).collect();
    Ideal::of_vars(ring, &vars)
}

/// Strips the monomial content: X^a * h with h having trivial content.
/// Returns the variable factors and the cofactor when the content is proper.
fn peel_monomial_content<F: Field>(f: &Polynomial<F>) -> Option<Vec<Polynomial<F>>> {
    let ring = f.ring();
    let arity = ring.arity();
    let mut content = vec![u32::MAX; arity];
    for (m, _) in f.terms() {
        for i in 0..arity {
            content[i] = content[i].min(m.exp(i));
        }
    }
    let content_mono = Monomial::new(content);
    if content_mono.is_one() {
        return None;
    }
    let mut factors = Vec::new();
    for i in content_mono.support() {
        factors.push(Polynomial::var(ring, i).expect("in range"));
    }
    let cofactor_terms: Vec<(Monomial, F::Elem)> = f
        .terms()
        .iter()
        .map(|(m, c)| (content_mono.quotient_of(m).expect("content divides"), c.clone()))
        .collect();
    let cofactor = Polynomial::from_terms(ring, cofactor_terms).expect("same ring");
    if !cofactor.is_constant() {
        factors.push(cofactor);
    }
    if factors.len() < 2 && f.num_terms() > 1 {
        // Pure content times constant cannot happen for a nonconstant f,
        // but a single-variable factor of a monomial generator is a split.
        return Some(factors);
    }
    Some(factors)
}

/// The monomial square root, when every exponent is even and the coefficient
/// is a square.
fn monomial_sqrt<F: Field>(f: &Polynomial<F>) -> Option<Polynomial<F>> {
    if f.num_terms() != 1 {
        return None;
    }
    let (m, c) = &f.terms()[0];
    if m.exps().iter().any(|e| e % 2 != 0) || !f.ring().field().is_square(c) {
        return None;
    }
    // The coefficient root is only needed for difference-of-squares splits;
    // a monic root suffices since unit factors do not change the ideal.
    let half = Monomial::new(m.exps().iter().map(|e| e / 2).collect());
    Some(Polynomial::monomial(f.ring(), half, f.ring().field().one()).expect("arity"))
}

/// A proper factorization by the implemented heuristics, or None.
fn try_factor<F: Field>(f: &Polynomial<F>) -> Option<Vec<Polynomial<F>>> {
    if f.num_terms() == 1 {
        // A monomial splits into its variables.
        let m = &f.terms()[0].0;
        if m.degree() > 1 || m.support().count() > 1 {
            return Some(m.support().map(|i| Polynomial::var(f.ring(), i).unwrap()).collect());
        }
        return None;
    }
    if let Some(factors) = peel_monomial_content(f) {
        return Some(factors);
    }
    // v^2 - c with c a square monomial: difference of squares.
    if let Some((v, c)) = quadratic_shape(f) {
        if let Some(root) = monomial_sqrt(&c) {
            let ring = f.ring();
            let var = Polynomial::var(ring, v).unwrap();
            return Some(vec![var.sub(&root), var.add(&root)]);
        }
    }
    None
}

/// Recognizes f = a*(v^2) - c with a constant and c free of v; returns
/// (v, c/a) normalized so the shape is v^2 - c'.
fn quadratic_shape<F: Field>(f: &Polynomial<F>) -> Option<(usize, Polynomial<F>)> {
    let ring = f.ring();
    let field = ring.field();
    for v in 0..ring.arity() {
        if f.degree_in(v) != 2 {
            continue;
        }
        let mut square_coeff: Option<F::Elem> = None;
        let mut rest: Vec<(Monomial, F::Elem)> = Vec::new();
        let mut clean = true;
        for (m, c) in f.terms() {
            match m.exp(v) {
                2 => {
                    if m.degree() == 2 && square_coeff.is_none() {
                        square_coeff = Some(c.clone());
                    } else {
                        clean = false;
                        break;
                    }
                }
                0 => rest.push((m.clone(), c.clone())),
                _ => {
                    clean = false;
                    break;
                }
            }
        }
        let Some(a) = square_coeff else { continue };
        if !clean {
            continue;
        }
        let inv = field.inv(&a).expect("nonzero coefficient");
        let neg_inv = field.neg(&inv);
        let c_terms = rest
            .into_iter()
            .map(|(m, c)| (m, field.mul(&c, &neg_inv)))
            .collect();
        let c = Polynomial::from_terms(ring, c_terms).expect("same ring");
        return Some((v, c));
    }
    None
}

/// Criteria proving a reduced-GB ideal prime.
fn certify_prime<F: Field>(gb_elements: &[Polynomial<F>]) -> bool {
    if gb_elements.is_empty() {
        // The zero ideal of a polynomial ring is prime.
        return true;
    }
    // Coordinate-graph system: every element is X_l - g with distinct head
    // variables absent from every tail; the quotient is a polynomial ring.
    if coordinate_graph_heads(gb_elements).is_some() {
        return true;
    }
    if gb_elements.len() == 1 {
        return is_irreducible_certified(&gb_elements[0]);
    }
    false
}

/// Heads of a coordinate-graph system, if the elements form one.
fn coordinate_graph_heads<F: Field>(elements: &[Polynomial<F>]) -> Option<Vec<usize>> {
    let ring = elements.first()?.ring();
    let field = ring.field();
    let mut heads = Vec::new();
    let mut tails: Vec<Polynomial<F>> = Vec::new();
    for f in elements {
        // Find a variable occurring linearly with constant coefficient whose
        // removal leaves a tail free of that variable.
        let mut found = None;
        for v in 0..ring.arity() {
            if f.degree_in(v) != 1 {
                continue;
            }
            let head_mono = Monomial::var(ring.arity(), v);
            let coeff = f.coeff_of(&head_mono);
            if field.is_zero(&coeff) {
                continue;
            }
            let head_poly = Polynomial::monomial(ring, head_mono, coeff.clone()).expect("arity");
            let tail = f.sub(&head_poly);
            if !tail.involves_var(v) {
                found = Some((v, tail));
                break;
            }
        }
        let (v, tail) = found?;
        if heads.contains(&v) {
            return None;
        }
        heads.push(v);
        tails.push(tail);
    }
    // No tail may involve any head variable.
    for t in &tails {
        for &h in &heads {
            if t.involves_var(h) {
                return None;
            }
        }
    }
    Some(heads)
}

fn is_irreducible_certified<F: Field>(f: &Polynomial<F>) -> bool {
    if f.is_zero() || f.is_constant() {
        return false;
    }
    if f.total_degree() == Some(1) {
        return true;
    }
    if coordinate_graph_heads(std::slice::from_ref(f)).is_some() {
        return true;
    }
    // v^2 - c with c a non-square monomial.
    if let Some((_, c)) = quadratic_shape(f) {
        if c.num_terms() == 1 && monomial_sqrt(&c).is_none() {
            return true;
        }
    }
    false
}

struct Leaf<F: Field> {
    ideal: Ideal<F>,
    certified: bool,
}

fn decompose<F: Field>(ideal: &Ideal<F>, budget: &Budget, depth: usize) -> Result<Vec<Leaf<F>>> {
    if depth > 32 {
        return Err(Error::Internal("factor-split recursion too deep".into()));
    }
    let gb = ideal.groebner(budget)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let elements = gb.elements().to_vec();
    let ring = ideal.ring().clone();
    if elements.iter().all(|g| g.num_terms() == 1) {
        let supports: Vec<u64> = elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").support_mask())
            .collect();
        let mut leaves = Vec::new();
        for mask in minimal_covers(&supports, ring.arity()) {
            leaves.push(Leaf { ideal: coordinate_prime(&ring, mask)?, certified: true });
        }
        return Ok(leaves);
    }
    for g in &elements {
        if let Some(factors) = try_factor(g) {
            if factors.len() >= 2 || (factors.len() == 1 && &factors[0] != g) {
                let mut leaves = Vec::new();
                for f in factors {
                    let mut gens = elements.clone();
                    gens.push(f);
                    let bigger = Ideal::new(&ring, gens)?;
                    leaves.extend(decompose(&bigger, budget, depth + 1)?);
                }
                return Ok(leaves);
            }
        }
    }
    Ok(vec![Leaf { ideal: Ideal::new(&ring, elements.clone())?, certified: certify_prime(&elements) }])
}

/// Minimal primes with certification; never guesses on the uncertified side.
pub fn minimal_primes<F: Field>(
    ideal: &Ideal<F>,
    budget: &Budget,
) -> Result<MinimalPrimesReport<F>> {
    let gb = ideal.groebner(budget)?;
    if gb.is_unit() {
        return Err(Error::ImproperIdeal);
    }
    let monomial = gb.elements().iter().all(|g| g.num_terms() == 1);
    let leaves = decompose(ideal, budget, 0)?;
    // Radical-equality dedupe, then minimality pruning on varieties.
    let mut kept: Vec<Leaf<F>> = Vec::new();
    'leafloop: for leaf in leaves {
        for existing in &kept {
            if existing.ideal.radical_equals(&leaf.ideal, budget)? {
                continue 'leafloop;
            }
        }
        kept.push(leaf);
    }
    let mut minimal_flags = vec![true; kept.len()];
    for i in 0..kept.len() {
        for j in 0..kept.len() {
            if i == j || !minimal_flags[i] || !minimal_flags[j] {
                continue;
            }
            // Discard leaf i when V(i) is strictly inside V(j):
            // every generator of j lies in sqrt(i) but not conversely.
            let j_inside = contains_in_radical_all(&kept[i].ideal, &kept[j].ideal, budget)?;
            let i_inside = contains_in_radical_all(&kept[j].ideal, &kept[i].ideal, budget)?;
            if j_inside && !i_inside {
                minimal_flags[i] = false;
            }
        }
    }
    let mut primes = Vec::new();
    let mut certified = true;
    for (leaf, keep) in kept.into_iter().zip(minimal_flags) {
        if keep {
            certified &= leaf.certified;
            primes.push(leaf.ideal);
        }
    }
    primes.sort_by_key(|p| {
        (
            p.generators().len(),
            p.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","),
        )
    });
    let method = if monomial {
        DecompositionMethod::MonomialCombinatorial
    } else {
        DecompositionMethod::FactorSplit
    };
    Ok(MinimalPrimesReport { primes, certified, method })
}

fn contains_in_radical_all<F: Field>(
    radical_of: &Ideal<F>,
    members: &Ideal<F>,
    budget: &Budget,
) -> Result<bool> {
    for g in members.generators() {
        if !radical_of.contains_in_radical(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// edd from a certified (or supplied) decomposition.
pub fn edd_from_report<F: Field>(
    ideal: &Ideal<F>,
    report: &MinimalPrimesReport<F>,
    budget: &Budget,
) -> Result<EddReport> {
    if !report.certified {
        return Err(Error::UncertifiedDecomposition);
    }
    if report.primes.is_empty() {
        return Err(Error::ImproperIdeal);
    }
    let mut component_dims = Vec::with_capacity(report.primes.len());
    for p in &report.primes {
        component_dims.push(p.krull_dimension(budget)?);
    }
    let dim_r = *component_dims.iter().max().expect("nonempty");
    let min = *component_dims.iter().min().expect("nonempty");
    let whole = ideal.krull_dimension(budget)?;
    if whole != dim_r {
        return Err(Error::Internal(format!(
            "dimension mismatch: initial-ideal dimension {whole} vs max component {dim_r}"
        )));
    }
    Ok(EddReport { dim_r, component_dims, edd: dim_r - min })
}

/// Computes minimal primes and the edd in one step; refuses uncertified input.
pub fn edd<F: Field>(ideal: &Ideal<F>, budget: &Budget) -> Result<EddReport> {
    let report = minimal_primes(ideal, budget)?;
    edd_from_report(ideal, &report, budget)
}
