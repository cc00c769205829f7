//! The corpus runner: executes every metadata-declared check in a directory
//! of presentation files, in parallel, with a deterministic report.

use crate::ops;
use crate::presfile::{self, ideal_to_string, Bundle, ExpectKey, TypedBundle};
use crate::report::{input_digest, CaseReport, CheckRecord, RunReport, Status};
use std::path::{Path, PathBuf};
use workbench_core::{
    check_conditions, edd_from_report, minimal_primes, singular_locus, stability_evidence,
    Budget, Error, Field, MonomialOrder,
};

/// True for errors that mean "the cap fired", mapped to exit code 3.
pub fn is_budget_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded { .. }
            | Error::SaturationDiverged(_)
            | Error::MinorsTooLarge { .. }
            | Error::ResolutionTooLong(_, _)
            | Error::TooManyVariables(_)
    )
}

fn record<F: Field>(
    bundle_text: &str,
    case: &str,
    op: &str,
    outcome: Result<(String, Option<String>, Status), Error>,
    budget_hit: &mut bool,
) -> CheckRecord {
    match outcome {
        Ok((result, expected, status)) => CheckRecord {
            case: case.to_string(),
            operation: op.to_string(),
            inputs: input_digest(bundle_text, op),
            result,
            expected,
            status,
        },
        Err(e) => {
            if is_budget_error(&e) {
                *budget_hit = true;
            }
            CheckRecord {
                case: case.to_string(),
                operation: op.to_string(),
                inputs: input_digest(bundle_text, op),
                result: format!("error: {e}"),
                expected: None,
                status: Status::Fail,
            }
        }
    }
}

fn pass_fail(matches: bool) -> Status {
    if matches {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn run_case_typed<F: Field>(
    bundle: &Bundle<F>,
    text: &str,
    case: &str,
    budget: &Budget,
    budget_hit: &mut bool,
) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for (key, _line) in &bundle.file.expects {
        let op = key.operation_name();
        let outcome: Result<(String, Option<String>, Status), Error> = (|| match key {
            ExpectKey::Dim(expected) => {
                let dim = bundle.relations_ideal()?.krull_dimension(budget)?;
                Ok((dim.to_string(), Some(expected.to_string()), pass_fail(dim == *expected)))
            }
            ExpectKey::Edd(expected) => {
                let ideal = bundle.relations_ideal()?;
                let report = minimal_primes(&ideal, budget)?;
                if !report.certified {
                    return Ok((
                        "uncertified decomposition".into(),
                        Some(expected.to_string()),
                        Status::SkippedUncertified,
                    ));
                }
                let e = edd_from_report(&ideal, &report, budget)?;
                Ok((e.edd.to_string(), Some(expected.to_string()), pass_fail(e.edd == *expected)))
            }
            ExpectKey::MinPrimes(expected_raw) => {
                let ideal = bundle.relations_ideal()?;
                let report = minimal_primes(&ideal, budget)?;
                if !report.certified {
                    return Ok((
                        "uncertified decomposition".into(),
                        None,
                        Status::SkippedUncertified,
                    ));
                }
                let mut expected_ideals = Vec::new();
                for gens in expected_raw {
                    expected_ideals.push(
                        bundle
                            .parse_ideal(gens)
                            .map_err(|e| Error::Internal(format!("minprimes metadata: {e}")))?,
                    );
                }
                // Set equality at the ideal level.
                let mut matches = expected_ideals.len() == report.primes.len();
                if matches {
                    for e in &expected_ideals {
                        let mut found = false;
                        for p in &report.primes {
                            if p.equals(e, budget)? {
                                found = true;
                                break;
                            }
                        }
                        if !found {
                            matches = false;
                            break;
                        }
                    }
                }
                let result: Vec<String> = report.primes.iter().map(ideal_to_string).collect();
                let expected: Vec<String> = expected_ideals.iter().map(ideal_to_string).collect();
                Ok((
                    format!("{{{}}}", result.join(", ")),
                    Some(format!("{{{}}}", expected.join(", "))),
                    pass_fail(matches),
                ))
            }
            ExpectKey::Sing(expected_raw) => {
                let pres = ops::presentation_of(bundle, budget)?;
                let expected = bundle
                    .parse_ideal(expected_raw)
                    .map_err(|e| Error::Internal(format!("sing metadata: {e}")))?;
                let locus = singular_locus(&pres, Some(&expected), budget)?;
                match locus.provenance {
                    workbench_core::LocusProvenance::JacobianCriterion => {
                        // Computed independently; compare varieties.
                        let matches = locus.sing_generators.radical_equals(&expected, budget)?;
                        Ok((
                            ideal_to_string(&locus.sing_generators),
                            Some(ideal_to_string(&expected)),
                            pass_fail(matches),
                        ))
                    }
                    workbench_core::LocusProvenance::CorpusSupplied => Ok((
                        format!("corpus-supplied {}", ideal_to_string(&locus.sing_generators)),
                        Some(ideal_to_string(&expected)),
                        Status::Pass,
                    )),
                }
            }
            ExpectKey::Jn(n, expected_raw) => {
                let pres = ops::presentation_of(bundle, budget)?;
                let jn = pres.jn_ideal(*n, budget)?;
                let expected_gens = bundle
                    .parse_ideal(expected_raw)
                    .map_err(|e| Error::Internal(format!("jn metadata: {e}")))?;
                let expected = expected_gens.sum(pres.relations())?;
                let matches = jn.value_in_s().equals(&expected, budget)?;
                Ok((
                    ideal_to_string(jn.value_in_s()),
                    Some(ideal_to_string(&expected)),
                    pass_fail(matches),
                ))
            }
            ExpectKey::CondII(n, expected) | ExpectKey::CondIII(n, expected) => {
                let pres = ops::presentation_of(bundle, budget)?;
                let supplied = match ops::supplied_sing(bundle) {
                    Some(gens) => Some(
                        bundle
                            .parse_ideal(&gens)
                            .map_err(|e| Error::Internal(format!("sing metadata: {e}")))?,
                    ),
                    None => None,
                };
                let locus = singular_locus(&pres, supplied.as_ref(), budget)?;
                let checked = check_conditions(&pres, *n, &locus, budget)?;
                let which = match key {
                    ExpectKey::CondII(_, _) => format!("cond_ii({n})"),
                    _ => format!("cond_iii({n})"),
                };
                let got = checked.checks[&which];
                Ok((got.to_string(), Some(expected.to_string()), pass_fail(got == *expected)))
            }
        })();
        records.push(record::<F>(text, case, &op, outcome, budget_hit));
    }
    // Ext-bound stability evidence runs for every case, metadata or not.
    let stability_outcome: Result<(String, Option<String>, Status), Error> = (|| {
        let pres = ops::presentation_of(bundle, budget)?;
        let d = pres.dim();
        let pairs = workbench_core::default_stability_pairs(&pres, budget)?;
        let range: Vec<usize> = vec![d + 1, d + 2, d + 3];
        let report = stability_evidence(&pres, &pairs, &range, budget)?;
        Ok((
            format!("radicals agree = {}", report.radicals_agree),
            Some("radicals agree = true".to_string()),
            pass_fail(report.radicals_agree),
        ))
    })();
    let d_label = "stability(d+1..d+3)";
    records.push(record::<F>(text, case, d_label, stability_outcome, budget_hit));
    records
}

fn run_case(
    path: &Path,
    order: MonomialOrder,
    budget: &Budget,
    budget_hit: &mut bool,
) -> CaseReport {
    let case = path
        .file_name()
        .map(|n| n.to_string_lossy().to_string())
        .unwrap_or_else(|| path.display().to_string());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return CaseReport {
                case: case.clone(),
                records: vec![CheckRecord {
                    case,
                    operation: "read".into(),
                    inputs: String::new(),
                    result: format!("error: {e}"),
                    expected: None,
                    status: Status::Fail,
                }],
            }
        }
    };
    match presfile::load(&text, order) {
        Ok(TypedBundle::Q(bundle)) => CaseReport {
            case: case.clone(),
            records: run_case_typed(&bundle, &text, &case, budget, budget_hit),
        },
        Ok(TypedBundle::Gf(bundle)) => CaseReport {
            case: case.clone(),
            records: run_case_typed(&bundle, &text, &case, budget, budget_hit),
        },
        Err(e) => CaseReport {
            case: case.clone(),
            records: vec![CheckRecord {
                case,
                operation: "parse".into(),
                inputs: input_digest(&text, "parse"),
                result: format!("error: {e}"),
                expected: None,
                status: Status::Fail,
            }],
        },
    }
}

pub struct RunOutcome {
    pub report: RunReport,
    pub budget_hit: bool,
}

/// Runs every `.pres` file under `dir`; per-case failures never abort.
pub fn run_corpus(
    dir: &Path,
    jobs: usize,
    order: MonomialOrder,
    budget: &Budget,
) -> std::io::Result<RunOutcome> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "pres").unwrap_or(false))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<(CaseReport, bool)> = pool.install(|| {
        use rayon::prelude::*;
        files
            .par_iter()
            .map(|path| {
                let mut budget_hit = false;
                let report = run_case(path, order, budget, &mut budget_hit);
                (report, budget_hit)
            })
            .collect()
    });
    let budget_hit = results.iter().any(|(_, hit)| *hit);
    let cases = results.into_iter().map(|(r, _)| r).collect();
    Ok(RunOutcome { report: RunReport::new(cases, jobs), budget_hit })
}
