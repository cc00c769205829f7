//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Everything asserts exact symbolic identities (ideal equality through
//! reduced Groebner bases, or boolean agreement); no tolerances.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use workbench_cli::presfile::{self, Bundle, TypedBundle};
use workbench_core::text::parse_polynomial;
use workbench_core::*;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> TypedBundle {
    let text = std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file");
    presfile::load(&text, MonomialOrder::DegRevLex).expect("valid corpus file")
}

fn b() -> Budget {
    Budget::default()
}

type CheckResult = std::result::Result<(), String>;

fn criterion(k: u32, desc: &str, body: impl FnOnce() -> CheckResult) {
    match body() {
        Ok(()) => println!("ACCEPTANCE {k} PASS: {desc}"),
        Err(e) => {
            println!("ACCEPTANCE {k} FAIL: {desc}: {e}");
            panic!("criterion {k} failed: {e}");
        }
    }
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ideal_of<F: Field>(ring: &PolyRing<F>, gens: &[&str]) -> Ideal<F> {
    let polys = gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect();
    Ideal::new(ring, polys).unwrap()
}

/// Criterion 1 body, generic over the two required coefficient fields.
fn cross_ring_checks<F: Field>(bundle: &Bundle<F>) -> CheckResult {
    let budget = b();
    let ring = &bundle.ring;
    let pres = Presentation::new(ring, bundle.relations.clone(), &budget)
        .map_err(|e| e.to_string())?;
    let jn1 = pres.jn_ideal(1, &budget).map_err(|e| e.to_string())?;
    let expected = ideal_of(ring, &["X^2", "X*Y_1", "X*Y_2", "X*Y_3"])
        .sum(pres.relations())
        .unwrap();
    check!(
        jn1.value_in_s().equals(&expected, &budget).unwrap(),
        "J_1 preimage differs from (X^2, X*Y_1, X*Y_2, X*Y_3) + I"
    );
    let e = edd(pres.relations(), &budget).map_err(|e| e.to_string())?;
    check!(e.edd == 2, "edd = {}, wanted 2", e.edd);
    let sing = ideal_of(ring, &["X", "Y_1", "Y_2", "Y_3"]);
    check!(
        variety_contains(&sing, jn1.value_in_s(), &budget).unwrap(),
        "Sing not inside V(J_1)"
    );
    let jn2 = pres.jn_ideal(2, &budget).map_err(|e| e.to_string())?;
    check!(
        !variety_contains(pres.relations(), jn2.value_in_s(), &budget).unwrap(),
        "Spec unexpectedly equals V(J_2)"
    );
    // The witness prime contains I but misses J_2.
    let witness = ideal_of(ring, &["Y_1", "Y_2", "Y_3"]);
    check!(
        witness.contains_ideal(pres.relations(), &budget).unwrap(),
        "witness prime does not lie on Spec"
    );
    check!(
        !variety_contains(&witness, jn2.value_in_s(), &budget).unwrap(),
        "witness prime fails to separate Spec from V(J_2)"
    );
    Ok(())
}

#[test]
fn criterion_01_cross_ring_over_q_and_gf101() {
    criterion(
        1,
        "cross ring: J_1 value, edd 2, Sing in V(J_1), Spec != V(J_2) over Q and GF(101)",
        || {
            match load("nhensu_n2_q.pres") {
                TypedBundle::Q(bundle) => cross_ring_checks(&bundle)?,
                _ => return Err("nhensu_n2_q.pres should be rational".into()),
            }
            match load("nhensu_n2_gf101.pres") {
                TypedBundle::Gf(bundle) => cross_ring_checks(&bundle)?,
                _ => return Err("nhensu_n2_gf101.pres should be GF(101)".into()),
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_squared_product_ring() {
    criterion(2, "squared product ring: J_0 nilpotent mod I, Spec = V(J_0), edd 1", || {
        let budget = b();
        let TypedBundle::Q(bundle) = load("fixringnothold_q.pres") else {
            return Err("expected a rational file".into());
        };
        let pres = Presentation::new(&bundle.ring, bundle.relations.clone(), &budget)
            .map_err(|e| e.to_string())?;
        let jn0 = pres.jn_ideal(0, &budget).map_err(|e| e.to_string())?;
        for g in jn0.value_in_s().generators() {
            check!(
                pres.relations().contains_in_radical(g, &budget).unwrap(),
                "J_0 generator {g} not nilpotent modulo I"
            );
        }
        check!(
            variety_contains(pres.relations(), jn0.value_in_s(), &budget).unwrap(),
            "Spec != V(J_0)"
        );
        let e = edd(pres.relations(), &budget).map_err(|e| e.to_string())?;
        check!(e.edd == 1, "edd = {}, wanted 1", e.edd);
        Ok(())
    });
}

#[test]
fn criterion_03_closing_example_escapes_j1() {
    criterion(3, "closing example: X^2 in J_1 but not in sqrt((Y_1,Y_2,Y_3) + I)", || {
        let budget = b();
        let TypedBundle::Q(bundle) = load("closing_example_q.pres") else {
            return Err("expected a rational file".into());
        };
        let ring = &bundle.ring;
        let pres = Presentation::new(ring, bundle.relations.clone(), &budget)
            .map_err(|e| e.to_string())?;
        let jn1 = pres.jn_ideal(1, &budget).map_err(|e| e.to_string())?;
        let x2 = parse_polynomial(ring, "X^2").unwrap();
        check!(
            jn1.value_in_s().contains(&x2, &budget).unwrap(),
            "X^2 missing from the J_1 preimage"
        );
        let sing_plus_i = ideal_of(ring, &["Y_1", "Y_2", "Y_3"]).sum(pres.relations()).unwrap();
        check!(
            !sing_plus_i.contains_in_radical(&x2, &budget).unwrap(),
            "X^2 unexpectedly inside sqrt((Y_1,Y_2,Y_3) + I)"
        );
        // Hence Sing = V(Y_1,Y_2,Y_3) is not inside V(J_1).
        let sing = ideal_of(ring, &["Y_1", "Y_2", "Y_3"]);
        check!(
            !variety_contains(&sing, jn1.value_in_s(), &budget).unwrap(),
            "Sing unexpectedly contained in V(J_1)"
        );
        Ok(())
    });
}

fn random_poly<F: Field>(
    ring: &PolyRing<F>,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    max_exp: u32,
) -> Polynomial<F> {
    let mut terms = Vec::new();
    let nterms = 1 + (rng.next_u64() as usize) % max_terms;
    for _ in 0..nterms {
        let exps: Vec<u32> =
            (0..ring.arity()).map(|_| (rng.next_u64() % (max_exp as u64 + 1)) as u32).collect();
        let c = ring.field().random_elem(rng);
        terms.push((Monomial::new(exps), c));
    }
    Polynomial::from_terms(ring, terms).unwrap()
}

fn border_suite<F: Field>(field: F, instances: usize, seed: u64) -> CheckResult {
    let budget = b();
    let ring = PolyRing::new(
        field,
        vec!["X".into(), "Y".into(), "Z".into()],
        MonomialOrder::DegRevLex,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let rows = 1 + (rng.next_u64() as usize) % 4;
        let cols = 1 + (rng.next_u64() as usize) % 4;
        let r = (rng.next_u64() % 4) as i64 + 1;
        let entries: Vec<Polynomial<F>> =
            (0..rows * cols).map(|_| random_poly(&ring, &mut rng, 2, 1)).collect();
        let a = PolyMatrix::new(&ring, rows, cols, entries).unwrap();
        let b_col: Vec<Polynomial<F>> =
            (0..rows).map(|_| random_poly(&ring, &mut rng, 2, 1)).collect();
        let coeffs: Vec<Polynomial<F>> =
            (0..cols).map(|_| random_poly(&ring, &mut rng, 2, 1)).collect();
        let ok = matrix_border_check(&a, &b_col, &coeffs, r, &budget)
            .map_err(|e| format!("case {case}: {e}"))?;
        check!(ok, "bordered-minor inclusion failed on case {case} ({rows}x{cols}, r = {r})");
    }
    Ok(())
}

#[test]
fn criterion_04_bordered_minor_inclusions() {
    criterion(4, "bordered matrix inclusions on 200 GF(101) + 50 Q random instances", || {
        border_suite(PrimeField::new(101).unwrap(), 200, 41)?;
        border_suite(Rationals, 50, 42)?;
        Ok(())
    });
}

fn corpus_bundles_q() -> Vec<(String, Bundle<Rationals>)> {
    let mut out = Vec::new();
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "pres").unwrap_or(false))
        .collect();
    files.sort();
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        if let TypedBundle::Q(bundle) = presfile::load(&text, MonomialOrder::DegRevLex).unwrap() {
            out.push((path.file_name().unwrap().to_string_lossy().to_string(), bundle));
        }
    }
    out
}

#[test]
fn criterion_05_generator_invariance_suite() {
    criterion(5, "minors-plus-I invariance under 10 generator changes per corpus ideal", || {
        let budget = b();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (name, bundle) in corpus_bundles_q() {
            if bundle.relations.is_empty() {
                continue;
            }
            let ring = &bundle.ring;
            let ideal = bundle.relations_ideal().unwrap();
            let gens = bundle.relations.clone();
            for change in 0..10 {
                let mut new_gens = gens.clone();
                match change % 3 {
                    0 => {
                        // Append a random combination of the generators.
                        let mut combo = Polynomial::zero(ring);
                        for g in &gens {
                            combo = combo.add(&g.mul(&random_poly(ring, &mut rng, 2, 1)));
                        }
                        if combo.is_zero() {
                            combo = gens[0].clone();
                        }
                        new_gens.push(combo);
                    }
                    1 => {
                        // Rotate by a random offset.
                        let k = 1 + (rng.next_u64() as usize) % gens.len().max(1);
                        new_gens.rotate_left(k % gens.len().max(1));
                    }
                    _ => {
                        // Scale one generator by a unit.
                        let idx = (rng.next_u64() as usize) % gens.len();
                        let mut unit = ring.field().random_elem(&mut rng);
                        while ring.field().is_zero(&unit) {
                            unit = ring.field().random_elem(&mut rng);
                        }
                        new_gens[idx] = new_gens[idx].scale(&unit);
                    }
                }
                for r in 1..=3i64 {
                    let same =
                        check_generator_invariance(&ideal, &gens, &new_gens, r, &budget)
                            .map_err(|e| format!("{name} change {change}: {e}"))?;
                    check!(same, "{name}: invariance failed at r = {r}, change {change}");
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_presentation_invariance_desk_case() {
    criterion(6, "k[X,Y]/(Y - X^3, Y^2) vs k[X]/(X^6): image-equal J_0 = (X^5)", || {
        let budget = b();
        let r1 = PolyRing::new(
            Rationals,
            vec!["X".into(), "Y".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let p1 = Presentation::new(
            &r1,
            vec![
                parse_polynomial(&r1, "Y - X^3").unwrap(),
                parse_polynomial(&r1, "Y^2").unwrap(),
            ],
            &budget,
        )
        .unwrap();
        let r2 = PolyRing::new(Rationals, vec!["X".into()], MonomialOrder::DegRevLex).unwrap();
        let p2 = Presentation::new(&r2, vec![parse_polynomial(&r2, "X^6").unwrap()], &budget)
            .unwrap();
        let iso = vec![
            parse_polynomial(&r2, "X").unwrap(),
            parse_polynomial(&r2, "X^3").unwrap(),
        ];
        let inverse = vec![parse_polynomial(&r1, "X").unwrap()];
        let same = check_presentation_invariance(&p1, &p2, &iso, &inverse, 0, &budget)
            .map_err(|e| e.to_string())?;
        check!(same, "J_0 images differ under the substitution isomorphism");
        let expected = ideal_of(&r2, &["X^5"]);
        let jn = p2.jn_ideal(0, &budget).unwrap();
        check!(
            jn.value_in_s().equals(&expected, &budget).unwrap(),
            "shared J_0 value is not (X^5)"
        );
        // The minimization route reaches the same small presentation.
        let (minimized, changed) = minimize_presentation(&p1, &budget).unwrap();
        check!(changed, "minimization did not fire");
        check!(minimized.ring().arity() == 1, "minimization kept too many variables");
        let min_gens: Vec<String> =
            minimized.relations().generators().iter().map(|g| g.to_string()).collect();
        check!(min_gens == vec!["X^6".to_string()], "minimized relations are {min_gens:?}");
        Ok(())
    });
}

#[test]
fn criterion_07_smooth_identity() {
    criterion(7, "parabola: J_0 = (1), Sing empty, edd 0", || {
        let budget = b();
        let TypedBundle::Q(bundle) = load("parabola_q.pres") else {
            return Err("expected a rational file".into());
        };
        let pres = Presentation::new(&bundle.ring, bundle.relations.clone(), &budget)
            .map_err(|e| e.to_string())?;
        let jn0 = pres.jn_ideal(0, &budget).unwrap();
        check!(jn0.value_in_s().is_unit_ideal(&budget).unwrap(), "J_0 is not the unit ideal");
        let locus = singular_locus(&pres, None, &budget).map_err(|e| e.to_string())?;
        check!(
            locus.sing_generators.is_unit_ideal(&budget).unwrap(),
            "singular locus is not empty"
        );
        check!(locus.provenance == LocusProvenance::JacobianCriterion, "wrong locus provenance");
        let e = edd(pres.relations(), &budget).unwrap();
        check!(e.edd == 0, "edd = {}, wanted 0", e.edd);
        Ok(())
    });
}

#[test]
fn criterion_08_ext_suite_socle_ring() {
    criterion(8, "socle ring Ext suite: X kills Ext^1(k,k), Y kills Ext^2, ca^2 bound = (X,Y)+I", || {
        let budget = b();
        let TypedBundle::Q(bundle) = load("socle_ext_q.pres") else {
            return Err("expected a rational file".into());
        };
        let ring = &bundle.ring;
        let pres = Presentation::new(ring, bundle.relations.clone(), &budget)
            .map_err(|e| e.to_string())?;
        let k = FpModule::residue_field(&pres, &budget).unwrap();
        let r_module = FpModule::free_rank_one(&pres, &budget).unwrap();
        let x_ideal = ideal_of(ring, &["X"]);
        let r_mod_x = FpModule::quotient_by_ideal(&pres, &x_ideal, "R/XR", &budget).unwrap();
        let x = parse_polynomial(ring, "X").unwrap();
        let y = parse_polynomial(ring, "Y").unwrap();

        let ext1 = ext_annihilator(&k, &k, 1, &budget).map_err(|e| e.to_string())?;
        check!(ext1.ann.contains(&x, &budget).unwrap(), "X does not kill Ext^1(k,k)");

        let family = vec![
            (k.clone(), k.clone()),
            (r_mod_x.clone(), k.clone()),
            (k.clone(), r_module.clone()),
            (r_mod_x.clone(), r_mod_x.clone()),
        ];
        for (m, n) in &family {
            let report = ext_annihilator(m, n, 2, &budget).map_err(|e| e.to_string())?;
            check!(
                report.ann.contains(&y, &budget).unwrap(),
                "Y does not kill Ext^2({}, {})",
                m.label(),
                n.label()
            );
        }
        let bound = ca_upper_bound(&pres, 2, &family, &budget).map_err(|e| e.to_string())?;
        let expected = ideal_of(ring, &["X", "Y"]).sum(pres.relations()).unwrap();
        check!(
            bound.ann.equals(&expected, &budget).unwrap(),
            "ca^2 bound is {} instead of (X, Y) + I",
            presfile::ideal_to_string(&bound.ann)
        );
        check!(bound.note.contains("upper bound"), "missing one-sided-bound caveat");
        Ok(())
    });
}

#[test]
fn criterion_09_stability_evidence_over_corpus() {
    criterion(9, "stability of sampled bounds over i in {d+1, d+2, d+3} for every corpus ring", || {
        let budget = b();
        let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
            .unwrap()
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map(|e| e == "pres").unwrap_or(false))
            .collect();
        files.sort();
        check!(!files.is_empty(), "corpus is empty");
        for path in files {
            let name = path.file_name().unwrap().to_string_lossy().to_string();
            let text = std::fs::read_to_string(&path).unwrap();
            let agree = match presfile::load(&text, MonomialOrder::DegRevLex).unwrap() {
                TypedBundle::Q(bundle) => {
                    let pres =
                        Presentation::new(&bundle.ring, bundle.relations.clone(), &budget)
                            .map_err(|e| format!("{name}: {e}"))?;
                    let pairs = default_stability_pairs(&pres, &budget).unwrap();
                    let d = pres.dim();
                    stability_evidence(&pres, &pairs, &[d + 1, d + 2, d + 3], &budget)
                        .map_err(|e| format!("{name}: {e}"))?
                        .radicals_agree
                }
                TypedBundle::Gf(bundle) => {
                    let pres =
                        Presentation::new(&bundle.ring, bundle.relations.clone(), &budget)
                            .map_err(|e| format!("{name}: {e}"))?;
                    let pairs = default_stability_pairs(&pres, &budget).unwrap();
                    let d = pres.dim();
                    stability_evidence(&pres, &pairs, &[d + 1, d + 2, d + 3], &budget)
                        .map_err(|e| format!("{name}: {e}"))?
                        .radicals_agree
                }
            };
            check!(agree, "{name}: sampled bound radicals disagree across the range");
        }
        Ok(())
    });
}

#[test]
fn criterion_10_constructions() {
    criterion(10, "edd reduction to zero and counterexample witnesses on the cross ring", || {
        let budget = b();
        let TypedBundle::Q(bundle) = load("nhensu_n2_q.pres") else {
            return Err("expected a rational file".into());
        };
        let ring = bundle.ring.clone();
        let mut pres = Presentation::new(&ring, bundle.relations.clone(), &budget)
            .map_err(|e| e.to_string())?;
        let start = edd(pres.relations(), &budget).unwrap().edd;
        check!(start == 2, "starting edd = {start}, wanted 2");
        for step in 0..start {
            let report = minimal_primes(pres.relations(), &budget).unwrap();
            pres = edd_reducer(&pres, &report, &budget)
                .map_err(|e| format!("reduction step {step}: {e}"))?;
        }
        let finished = edd(pres.relations(), &budget).unwrap();
        check!(finished.edd == 0, "edd after reductions = {}, wanted 0", finished.edd);

        let base = Presentation::new(&ring, bundle.relations.clone(), &budget).unwrap();
        let target = ideal_of(&ring, &["Y_1", "Y_2", "Y_3"]);
        let pair = counterexample_builder(&base, &target, 0, &budget)
            .map_err(|e| e.to_string())?;
        for (label, witness) in
            [("cond_ii", &pair.cond_ii_witness), ("cond_iii", &pair.cond_iii_witness)]
        {
            check!(
                variety_contains(witness.relations(), base.relations(), &budget).unwrap()
                    && variety_contains(base.relations(), witness.relations(), &budget).unwrap(),
                "{label} witness changed the radical"
            );
        }
        // cond_ii(0) fails on the first witness: its singular point escapes V(J_0).
        let jn0 = pair.cond_ii_witness.jn_ideal(0, &budget).unwrap();
        check!(
            !variety_contains(&target, jn0.value_in_s(), &budget).unwrap(),
            "cond_ii witness does not violate Sing in V(J_0)"
        );
        // cond_iii(0) fails on the second: Spec != V(J_1).
        let jn1 = pair.cond_iii_witness.jn_ideal(1, &budget).unwrap();
        check!(
            !variety_contains(pair.cond_iii_witness.relations(), jn1.value_in_s(), &budget)
                .unwrap(),
            "cond_iii witness does not violate Spec = V(J_1)"
        );
        Ok(())
    });
}

/// Degree-bounded power search: does f^j lie in I for some j <= 20?
fn power_search<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>, budget: &Budget) -> Option<u32> {
    let mut power = Polynomial::one(f.ring());
    for j in 1..=20u32 {
        power = power.mul(f);
        if ideal.contains(&power, budget).unwrap() {
            return Some(j);
        }
    }
    None
}

#[test]
fn criterion_11_oracle_cross_checks() {
    criterion(11, "Rabinowitsch vs power search (100 pairs) and syzygies vs linear algebra (20)", || {
        let budget = b();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // Radical membership against the bounded power oracle.
        let bundles = corpus_bundles_q();
        let mut pairs_done = 0;
        'outer: loop {
            for (name, bundle) in &bundles {
                if bundle.relations.is_empty() {
                    continue;
                }
                let ideal = bundle.relations_ideal().unwrap();
                let f = random_poly(&bundle.ring, &mut rng, 2, 2);
                let rabinowitsch = ideal
                    .contains_in_radical(&f, &budget)
                    .map_err(|e| format!("{name}: {e}"))?;
                let power = power_search(&f, &ideal, &budget);
                if let Some(j) = power {
                    check!(
                        rabinowitsch,
                        "{name}: f^{j} in I but Rabinowitsch says f not in sqrt(I) for f = {f}"
                    );
                }
                if !rabinowitsch {
                    check!(
                        power.is_none(),
                        "{name}: power search found a power inside I for a non-member"
                    );
                }
                pairs_done += 1;
                if pairs_done >= 100 {
                    break 'outer;
                }
            }
        }

        // Syzygies against degree-bounded kernel linear algebra.
        let field = PrimeField::new(101).unwrap();
        let ring = PolyRing::new(
            field,
            vec!["X".into(), "Y".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        for case in 0..20 {
            let ngens = 2 + (rng.next_u64() as usize) % 2;
            let gens: Vec<Polynomial<PrimeField>> = (0..ngens)
                .map(|_| {
                    let mut g = random_poly(&ring, &mut rng, 2, 2);
                    while g.is_zero() {
                        g = random_poly(&ring, &mut rng, 2, 2);
                    }
                    g
                })
                .collect();
            syzygy_oracle_check(&ring, &gens, &budget)
                .map_err(|e| format!("syzygy case {case}: {e}"))?;
        }
        Ok(())
    });
}

/// Monomials of total degree <= bound, in a fixed enumeration order.
fn monomials_up_to(arity: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(arity)];
    let mut frontier = vec![Monomial::one(arity)];
    for _ in 0..bound {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..arity {
                let mut exps = m.exps().to_vec();
                exps[v] += 1;
                let cand = Monomial::new(exps);
                if !next.contains(&cand) {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.dedup();
    out
}

/// Compares computed syzygies of `gens` with the brute-force kernel of
/// coefficient vectors of degree <= 6 - this is the independent oracle.
fn syzygy_oracle_check(
    ring: &PolyRing<PrimeField>,
    gens: &[Polynomial<PrimeField>],
    budget: &Budget,
) -> CheckResult {
    let field = *ring.field();
    let max_gen_deg = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let coeff_bound = 6u32.saturating_sub(max_gen_deg);
    let coeff_monos = monomials_up_to(ring.arity(), coeff_bound);
    let eq_monos = monomials_up_to(ring.arity(), 6);
    let eq_index = |m: &Monomial| eq_monos.iter().position(|e| e == m).expect("within bound");

    // Unknowns: a coefficient per (generator, coefficient monomial).
    let unknowns = gens.len() * coeff_monos.len();
    let mut rows = vec![vec![0u64; unknowns]; eq_monos.len()];
    for (gi, g) in gens.iter().enumerate() {
        for (mi, m) in coeff_monos.iter().enumerate() {
            let col = gi * coeff_monos.len() + mi;
            for (gm, gc) in g.terms() {
                let prod = gm.mul(m);
                let row = eq_index(&prod);
                rows[row][col] = field.add(&rows[row][col], gc);
            }
        }
    }
    // Kernel basis by Gaussian elimination.
    let mut mat = rows;
    let nrows = mat.len();
    let mut pivot_of_col = vec![usize::MAX; unknowns];
    let mut row_idx = 0;
    for col in 0..unknowns {
        let Some(p) = (row_idx..nrows).find(|&r| mat[r][col] != 0) else { continue };
        mat.swap(row_idx, p);
        let inv = field.inv(&mat[row_idx][col]).unwrap();
        for c in 0..unknowns {
            mat[row_idx][c] = field.mul(&mat[row_idx][c], &inv);
        }
        for r in 0..nrows {
            if r != row_idx && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in 0..unknowns {
                    let sub = field.mul(&factor, &mat[row_idx][c]);
                    mat[r][c] = field.sub(&mat[r][c], &sub);
                }
            }
        }
        pivot_of_col[col] = row_idx;
        row_idx += 1;
        if row_idx == nrows {
            break;
        }
    }
    let free_cols: Vec<usize> =
        (0..unknowns).filter(|&c| pivot_of_col[c] == usize::MAX).collect();
    let mut kernel_vectors: Vec<Vec<u64>> = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0u64; unknowns];
        v[fc] = 1;
        for c in 0..unknowns {
            let p = pivot_of_col[c];
            if p != usize::MAX {
                v[c] = field.neg(&mat[p][fc]);
            }
        }
        kernel_vectors.push(v);
    }

    let to_syzygy = |v: &[u64]| -> Vec<Polynomial<PrimeField>> {
        gens.iter()
            .enumerate()
            .map(|(gi, _)| {
                let terms: Vec<(Monomial, u64)> = coeff_monos
                    .iter()
                    .enumerate()
                    .map(|(mi, m)| (m.clone(), v[gi * coeff_monos.len() + mi]))
                    .filter(|(_, c)| *c != 0)
                    .collect();
                Polynomial::from_terms(ring, terms).unwrap()
            })
            .collect()
    };

    let computed = syzygies_of_polynomials(ring, gens, budget).map_err(|e| e.to_string())?;
    // Sanity: computed syzygies really annihilate the generators.
    for s in &computed {
        let mut acc = Polynomial::zero(ring);
        for (a, g) in s.iter().zip(gens.iter()) {
            acc = acc.add(&a.mul(g));
        }
        if !acc.is_zero() {
            return Err("computed syzygy does not annihilate the generators".into());
        }
    }

    // Every brute-force kernel vector must be generated by the computed
    // syzygies: membership via module Groebner basis.
    let cols: Vec<ModuleVec<PrimeField>> = computed
        .iter()
        .map(|s| ModuleVec::from_dense(s.clone()))
        .collect();
    let order = ModuleOrder::top();
    let gb = module_groebner(ring, &order, &cols, budget).map_err(|e| e.to_string())?;
    for v in &kernel_vectors {
        let brute = ModuleVec::from_dense(to_syzygy(v));
        if brute.is_zero() {
            continue;
        }
        let reduced = module_normal_form(ring, &order, &brute, &gb);
        if !reduced.is_zero() {
            return Err("brute-force kernel vector escapes the computed syzygy module".into());
        }
    }

    // Conversely, low-degree computed syzygies must lie in the brute span.
    for s in &computed {
        let within = s
            .iter()
            .all(|a| a.total_degree().unwrap_or(0) <= coeff_bound);
        if !within {
            continue;
        }
        let mut flat = vec![0u64; unknowns];
        for (gi, a) in s.iter().enumerate() {
            for (m, c) in a.terms() {
                let mi = coeff_monos.iter().position(|e| e == m).expect("in range");
                flat[gi * coeff_monos.len() + mi] = *c;
            }
        }
        if !in_span(&field, &kernel_vectors, &flat) {
            return Err("computed syzygy escapes the brute-force kernel".into());
        }
    }
    Ok(())
}

fn in_span(field: &PrimeField, basis: &[Vec<u64>], v: &[u64]) -> bool {
    let mut rows: Vec<Vec<u64>> = basis.to_vec();
    let before = rank_of(field, rows.clone());
    rows.push(v.to_vec());
    rank_of(field, rows) == before
}

fn rank_of(field: &PrimeField, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut row_idx = 0;
    for col in 0..ncols {
        let Some(p) = (row_idx..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(row_idx, p);
        let inv = field.inv(&rows[row_idx][col]).unwrap();
        for c in 0..ncols {
            rows[row_idx][c] = field.mul(&rows[row_idx][c], &inv);
        }
        for r in 0..rows.len() {
            if r != row_idx && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..ncols {
                    let sub = field.mul(&factor, &rows[row_idx][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        row_idx += 1;
        if row_idx == rows.len() {
            break;
        }
    }
    rank
}

/// Full normal form of a module vector against a module Groebner basis.
fn module_normal_form(
    ring: &PolyRing<PrimeField>,
    order: &ModuleOrder,
    v: &ModuleVec<PrimeField>,
    gb: &[ModuleVec<PrimeField>],
) -> ModuleVec<PrimeField> {
    let field = *ring.field();
    let mut work = v.clone();
    let lead = |w: &ModuleVec<PrimeField>| -> Option<(usize, Monomial, u64)> {
        let mut best: Option<(usize, Monomial, u64)> = None;
        for (pos, p) in w.entries() {
            let (m, c) = p.terms().first()?;
            let better = match &best {
                None => true,
                Some((bp, bm, _)) => match ring.cmp_monomials(m, bm) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => pos < bp,
                },
            };
            if better {
                best = Some((*pos, m.clone(), *c));
            }
        }
        best
    };
    let _ = order;
    'outer: loop {
        let Some((pos, lm, lc)) = lead(&work) else { return work };
        for g in gb {
            let Some((gp, gm, gc)) = lead(g) else { continue };
            if gp == pos && gm.divides(&lm) {
                let q = gm.quotient_of(&lm).expect("divides");
                let c = field.div(&lc, &gc).unwrap();
                work = work.sub_scaled(&c, &q, g);
                continue 'outer;
            }
        }
        return work;
    }
}
