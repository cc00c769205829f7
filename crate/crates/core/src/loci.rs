//! Variety containments, singular loci, the equivalence-condition checks,
//! and the constructions that produce witness and counterexample rings.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::primes::{minimal_primes, edd_from_report, EddReport, MinimalPrimesReport};
use crate::ring::PolyRing;
use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::collections::BTreeMap;

/// Where a singular-locus ideal came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusProvenance {
    JacobianCriterion,
    CorpusSupplied,
}

impl LocusProvenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            LocusProvenance::JacobianCriterion => "jacobian-criterion",
            LocusProvenance::CorpusSupplied => "corpus-supplied",
        }
    }
}

/// The defining ideal of Sing R in S plus recorded condition checks.
#[derive(Debug, Clone)]
pub struct LocusReport<F: Field> {
    pub sing_generators: Ideal<F>,
    pub provenance: LocusProvenance,
    /// Keys like "cond_ii(1)"; populated by `check_conditions`.
    pub checks: BTreeMap<String, bool>,
    /// Derivation notes, e.g. how cond_iv was evaluated.
    pub notes: Vec<String>,
}

/// V(I) ⊆ V(J), decided as J ⊆ sqrt(I) generator by generator.
pub fn variety_contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>, budget: &Budget) -> Result<bool> {
    i.ring().check_same(j.ring())?;
    for g in j.generators() {
        if !i.contains_in_radical(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether I equals the intersection of its certified minimal primes.
pub fn verified_reduced<F: Field>(
    p: &Presentation<F>,
    report: &MinimalPrimesReport<F>,
    budget: &Budget,
) -> Result<bool> {
    if !report.certified {
        return Ok(false);
    }
    let mut meet: Option<Ideal<F>> = None;
    for prime in &report.primes {
        meet = Some(match meet {
            None => prime.clone(),
            Some(acc) => acc.intersect(prime, budget)?,
        });
    }
    match meet {
        None => Ok(false),
        Some(m) => m.equals(p.relations(), budget),
    }
}

/// The singular locus of R as a defining ideal in S.
///
/// The Jacobian-criterion route applies only to verified reduced,
/// equidimensional presentations; otherwise a supplied locus is required,
/// and with neither available the call refuses rather than guessing.
pub fn singular_locus<F: Field>(
    p: &Presentation<F>,
    supplied: Option<&Ideal<F>>,
    budget: &Budget,
) -> Result<LocusReport<F>> {
    if let Ok(report) = minimal_primes(p.relations(), budget) {
        if report.certified {
            let e = edd_from_report(p.relations(), &report, budget)?;
            if e.edd == 0 && verified_reduced(p, &report, budget)? {
                let jn = p.jn_ideal(0, budget)?;
                return Ok(LocusReport {
                    sing_generators: jn.value_in_s().clone(),
                    provenance: LocusProvenance::JacobianCriterion,
                    checks: BTreeMap::new(),
                    notes: vec![
                        "reduced and equidimensional verified; locus is V(J_0 + I)".to_string(),
                    ],
                });
            }
        }
    }
    if let Some(sing) = supplied {
        sing.ring().check_same(p.ring())?;
        return Ok(LocusReport {
            sing_generators: sing.clone(),
            provenance: LocusProvenance::CorpusSupplied,
            checks: BTreeMap::new(),
            notes: vec!["locus supplied by corpus metadata".to_string()],
        });
    }
    Err(Error::SingularLocusUnavailable)
}

/// Records the theorem's condition checks at index n:
/// cond_ii(n): Sing ⊆ V(J_n); cond_iii(n): Spec = V(J_{n+1});
/// cond_iv(n) is evaluated through the sing = V(ca^{d+1}) identity, i.e. it
/// coincides with cond_ii and is recorded with that derivation.
pub fn check_conditions<F: Field>(
    p: &Presentation<F>,
    n: i64,
    locus: &LocusReport<F>,
    budget: &Budget,
) -> Result<LocusReport<F>> {
    let mut report = locus.clone();
    let jn = p.jn_ideal(n, budget)?;
    let cond_ii = variety_contains(&report.sing_generators, jn.value_in_s(), budget)?;
    // V(J_{n+1}) ⊆ Spec holds since the preimage contains I; only the other
    // containment is in question.
    let jn1 = p.jn_ideal(n + 1, budget)?;
    let cond_iii = variety_contains(p.relations(), jn1.value_in_s(), budget)?;
    report.checks.insert(format!("cond_ii({n})"), cond_ii);
    report.checks.insert(format!("cond_iii({n})"), cond_iii);
    report.checks.insert(format!("cond_iv({n})"), cond_ii);
    report.notes.push(format!(
        "cond_iv({n}) evaluated via sing = V(ca^(d+1)): reduces to cond_ii({n})"
    ));
    Ok(report)
}

/// R ⊗_k R': concatenated variables (clashes renamed) and relations.
pub fn tensor_presentation<F: Field>(
    p1: &Presentation<F>,
    p2: &Presentation<F>,
    budget: &Budget,
) -> Result<Presentation<F>> {
    if p1.ring().field() != p2.ring().field() {
        return Err(Error::RingMismatch);
    }
    let mut names: Vec<String> = p1.ring().vars().to_vec();
    let mut map2 = Vec::with_capacity(p2.ring().arity());
    for v in p2.ring().vars() {
        let mut candidate = v.clone();
        let mut k = 2usize;
        while names.contains(&candidate) {
            candidate = format!("{v}_{k}");
            k += 1;
        }
        map2.push(names.len());
        names.push(candidate);
    }
    let big = PolyRing::new(p1.ring().field().clone(), names, p1.ring().order())?;
    let map1: Vec<usize> = (0..p1.ring().arity()).collect();
    let mut gens = Vec::new();
    for g in p1.relations().generators() {
        gens.push(g.rename_into(&big, &map1)?);
    }
    for g in p2.relations().generators() {
        gens.push(g.rename_into(&big, &map2)?);
    }
    Presentation::new(&big, gens, budget)
}

/// k[X_1..X_n]/(X_1..X_n)^2: the square-zero Artinian algebra.
pub fn square_zero_algebra<F: Field>(field: F, n: usize, budget: &Budget) -> Result<Presentation<F>> {
    if n == 0 {
        return Err(Error::ConstructionInapplicable("square-zero algebra needs n >= 1".into()));
    }
    let names: Vec<String> = if n == 1 {
        vec!["X".to_string()]
    } else {
        (1..=n).map(|i| format!("X_{i}")).collect()
    };
    let ring = PolyRing::new(field, names, crate::monomial::MonomialOrder::DegRevLex)?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            let xi = Polynomial::var(&ring, i)?;
            let xj = Polynomial::var(&ring, j)?;
            gens.push(xi.mul(&xj));
        }
    }
    Presentation::new(&ring, gens, budget)
}

/// One step of the edd-reduction: a presentation in one extra variable whose
/// edd is exactly edd(p) - 1, built from Y times the low-dimensional
/// components' intersection; the drop is verified after construction.
pub fn edd_reducer<F: Field>(
    p: &Presentation<F>,
    report: &MinimalPrimesReport<F>,
    budget: &Budget,
) -> Result<Presentation<F>> {
    if !report.certified {
        return Err(Error::UncertifiedDecomposition);
    }
    let e = edd_from_report(p.relations(), report, budget)?;
    if e.edd == 0 {
        return Err(Error::ConstructionInapplicable("edd is already zero".into()));
    }
    let ring = p.ring().clone();
    let mut low: Option<Ideal<F>> = None;
    for (prime, dim) in report.primes.iter().zip(e.component_dims.iter()) {
        if *dim < e.dim_r {
            low = Some(match low {
                None => prime.clone(),
                Some(acc) => acc.intersect(prime, budget)?,
            });
        }
    }
    let low = low.expect("edd > 0 forces a low component");
    let fresh = ring.fresh_name("Y");
    let big = ring.extend_back(&[fresh])?;
    let embed: Vec<usize> = (0..ring.arity()).collect();
    let y = Polynomial::var(&big, big.arity() - 1)?;
    let mut gens = Vec::new();
    for f in p.relations().generators() {
        gens.push(f.rename_into(&big, &embed)?);
    }
    for g in low.generators() {
        gens.push(y.mul(&g.rename_into(&big, &embed)?));
    }
    let built = Presentation::new(&big, gens, budget)?;
    let new_edd = crate::primes::edd(built.relations(), budget)?;
    if new_edd.edd != e.edd - 1 {
        return Err(Error::ConstructionFailed(format!(
            "expected edd {} after reduction, found {}",
            e.edd - 1,
            new_edd.edd
        )));
    }
    Ok(built)
}

/// The two witness rings of the main theorem's converse directions, plus the
/// data used to build them.
#[derive(Debug, Clone)]
pub struct CounterexamplePair<F: Field> {
    /// Same radical as the input, violates Sing ⊆ V(J_n).
    pub cond_ii_witness: Presentation<F>,
    /// Same radical as the input, violates Spec = V(J_{n+1}).
    pub cond_iii_witness: Presentation<F>,
    pub multiplier: Polynomial<F>,
}

fn coordinate_vars<F: Field>(prime: &Ideal<F>, budget: &Budget) -> Result<Vec<usize>> {
    let gb = prime.groebner(budget)?;
    let mut vars = Vec::new();
    for g in gb.elements() {
        let Some(lm) = g.leading_monomial() else { continue };
        if g.num_terms() != 1 || lm.degree() != 1 {
            return Err(Error::ConstructionInapplicable(
                "target prime is not generated by variables".into(),
            ));
        }
        vars.push(lm.support().next().expect("degree one"));
    }
    Ok(vars)
}

/// Monomial-first, then seeded random combinations: an element inside every
/// prime of `inside` and outside `outside`.
fn find_multiplier<F: Field>(
    ring: &PolyRing<F>,
    inside: &[Ideal<F>],
    outside: &Ideal<F>,
    budget: &Budget,
) -> Result<Polynomial<F>> {
    let mut candidates: Vec<Polynomial<F>> = Vec::new();
    let mut frontier: Vec<crate::monomial::Monomial> = vec![crate::monomial::Monomial::one(ring.arity())];
    for _deg in 1..=6u32 {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..ring.arity() {
                let mut exps = m.exps().to_vec();
                exps[v] += 1;
                next.push(crate::monomial::Monomial::new(exps));
            }
        }
        next.sort_by(|a, b| ring.cmp_monomials(a, b));
        next.dedup();
        for m in &next {
            let cand = Polynomial::monomial(ring, m.clone(), ring.field().one())?;
            let mut ok = !outside.contains(&cand, budget)?;
            if ok {
                for p in inside {
                    if !p.contains(&cand, budget)? {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(cand);
            }
            candidates.push(cand);
        }
        frontier = next;
    }
    // Random low-degree combinations of the enumerated monomials.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let mut acc = Polynomial::zero(ring);
        for _ in 0..3 {
            let idx = (rng.next_u64() as usize) % candidates.len();
            let c = ring.field().random_elem(&mut rng);
            acc = acc.add(&candidates[idx].scale(&c));
        }
        if acc.is_zero() {
            continue;
        }
        let mut ok = !outside.contains(&acc, budget)?;
        if ok {
            for p in inside {
                if !p.contains(&acc, budget)? {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(acc);
        }
    }
    Err(Error::ConstructionInapplicable(
        "no admissible multiplier found in the degree-bounded search".into(),
    ))
}

/// Builds the paper-shaped witnesses violating conditions (ii) and (iii) at
/// index n for a target minimal prime with d > dim S/p + n.
pub fn counterexample_builder<F: Field>(
    p: &Presentation<F>,
    target_prime: &Ideal<F>,
    n: i64,
    budget: &Budget,
) -> Result<CounterexamplePair<F>> {
    let ring = p.ring().clone();
    target_prime.ring().check_same(&ring)?;
    let report = minimal_primes(p.relations(), budget)?;
    if !report.certified {
        return Err(Error::UncertifiedDecomposition);
    }
    let mut others: Vec<Ideal<F>> = Vec::new();
    let mut found = false;
    for prime in &report.primes {
        if prime.equals(target_prime, budget)? {
            found = true;
        } else {
            others.push(prime.clone());
        }
    }
    if !found {
        return Err(Error::ConstructionInapplicable(
            "target is not a certified minimal prime of the presentation".into(),
        ));
    }
    let d = p.dim() as i64;
    let target_dim = target_prime.krull_dimension(budget)? as i64;
    if d <= target_dim + n {
        return Err(Error::ConstructionInapplicable(format!(
            "requires dim R = {d} > dim S/p + n = {}",
            target_dim + n
        )));
    }
    let vars = coordinate_vars(target_prime, budget)?;
    if vars.is_empty() {
        return Err(Error::ConstructionInapplicable("target prime is zero".into()));
    }
    let gamma = find_multiplier(&ring, &others, target_prime, budget)?;

    // Witness against (ii): I' = ((v_1..v_{h-1}) + p^2) ∩ (other primes),
    // generated by the multiples gamma*v_r first.
    let head = &vars[..vars.len() - 1];
    let head_ideal = Ideal::of_vars(&ring, head)?;
    let p_squared = target_prime.product(target_prime)?;
    let q = head_ideal.sum(&p_squared)?;
    let mut meet_ii = q.clone();
    for other in &others {
        meet_ii = meet_ii.intersect(other, budget)?;
    }
    let mut gens_ii: Vec<Polynomial<F>> = Vec::new();
    for &v in head {
        gens_ii.push(gamma.mul(&Polynomial::var(&ring, v)?));
    }
    for g in meet_ii.groebner(budget)?.elements() {
        if !gens_ii.contains(g) {
            gens_ii.push(g.clone());
        }
    }
    let witness_ii = Presentation::new(&ring, gens_ii, budget)?;

    // Witness against (iii): J = p ∩ (other primes) with all h multiples.
    let mut meet_iii = target_prime.clone();
    for other in &others {
        meet_iii = meet_iii.intersect(other, budget)?;
    }
    let mut gens_iii: Vec<Polynomial<F>> = Vec::new();
    for &v in &vars {
        gens_iii.push(gamma.mul(&Polynomial::var(&ring, v)?));
    }
    for g in meet_iii.groebner(budget)?.elements() {
        if !gens_iii.contains(g) {
            gens_iii.push(g.clone());
        }
    }
    let witness_iii = Presentation::new(&ring, gens_iii, budget)?;

    // Verification: both share the input's variety.
    for w in [&witness_ii, &witness_iii] {
        let same = variety_contains(w.relations(), p.relations(), budget)?
            && variety_contains(p.relations(), w.relations(), budget)?;
        if !same {
            return Err(Error::ConstructionFailed(
                "witness does not preserve the radical".into(),
            ));
        }
    }
    // The target prime is singular on the (ii) witness: its local ring is
    // Artinian (radical preserved) and not a field, observed through the
    // gamma-saturation cutting strictly below p.
    let sat = witness_ii.relations().saturate(&Ideal::new(&ring, vec![gamma.clone()])?, budget)?;
    if !target_prime.contains_ideal(&sat, budget)? {
        return Err(Error::ConstructionFailed("saturation escapes the target prime".into()));
    }
    let strictly_smaller = !{
        let mut all = true;
        for &v in &vars {
            if !sat.contains(&Polynomial::var(&ring, v)?, budget)? {
                all = false;
                break;
            }
        }
        all
    };
    if !strictly_smaller {
        return Err(Error::ConstructionFailed(
            "local ring at the target prime is a field; no singularity created".into(),
        ));
    }
    // Violations: J_n (resp. J_{n+1}) escapes the target prime.
    let jn_ii = witness_ii.jn_ideal(n, budget)?;
    if variety_contains(target_prime, jn_ii.value_in_s(), budget)? {
        return Err(Error::ConstructionFailed(
            "witness does not violate condition (ii)".into(),
        ));
    }
    let jn_iii = witness_iii.jn_ideal(n + 1, budget)?;
    if variety_contains(target_prime, jn_iii.value_in_s(), budget)? {
        return Err(Error::ConstructionFailed(
            "witness does not violate condition (iii)".into(),
        ));
    }
    Ok(CounterexamplePair { cond_ii_witness: witness_ii, cond_iii_witness: witness_iii, multiplier: gamma })
}

/// Convenience: edd report for a presentation (certified primes required).
pub fn presentation_edd<F: Field>(p: &Presentation<F>, budget: &Budget) -> Result<EddReport> {
    crate::primes::edd(p.relations(), budget)
}
