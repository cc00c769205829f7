//! Generic command implementations shared by the binary and the tests.

use crate::presfile::{ideal_to_string, serialize_presentation, Bundle, ExpectKey, FieldSpec};
use serde_json::{json, Value};
use workbench_core::{
    check_conditions, check_presentation_invariance, counterexample_builder, edd_from_report,
    edd_reducer, minimal_primes, minimize_presentation, singular_locus, square_zero_algebra,
    stability_evidence, tensor_presentation, variety_contains, Budget, Error, Field, Ideal,
    Presentation,
};

/// Uniform command result: human text, JSON payload, and a pass flag that
/// drives the exit code for boolean-valued commands.
pub struct CmdOutput {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn out(text: String, json: Value) -> CmdOutput {
    CmdOutput { text, json, ok: true }
}

fn out_bool(label: &str, value: bool, extra: Value) -> CmdOutput {
    let mut json = json!({"schema": 1, "operation": label, "result": value});
    if let (Value::Object(map), Value::Object(extra)) = (&mut json, extra) {
        map.extend(extra);
    }
    CmdOutput { text: format!("{value}"), json, ok: value }
}

pub fn presentation_of<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<Presentation<F>, Error> {
    Presentation::new(&bundle.ring, bundle.relations.clone(), budget)
}

/// The sing metadata of a file, if present.
pub fn supplied_sing<F: Field>(bundle: &Bundle<F>) -> Option<Vec<String>> {
    bundle.file.expects.iter().find_map(|(key, _)| match key {
        ExpectKey::Sing(gens) => Some(gens.clone()),
        _ => None,
    })
}

pub fn cmd_groebner<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let ideal = bundle.relations_ideal()?;
    let gb = ideal.groebner(budget)?;
    let elements: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
    let text = if elements.is_empty() { "(0)".to_string() } else { elements.join("\n") };
    Ok(out(text, json!({"schema": 1, "operation": "groebner", "basis": elements})))
}

pub fn cmd_dim<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let ideal = bundle.relations_ideal()?;
    let dim = ideal.krull_dimension(budget)?;
    Ok(out(format!("dim = {dim}"), json!({"schema": 1, "operation": "dim", "dim": dim})))
}

pub fn cmd_edd<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let ideal = bundle.relations_ideal()?;
    let report = workbench_core::edd(&ideal, budget)?;
    let text = format!(
        "edd = {} (dim {}, component dims {:?})",
        report.edd, report.dim_r, report.component_dims
    );
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": "edd",
            "edd": report.edd,
            "dim": report.dim_r,
            "component_dims": report.component_dims,
        }),
    ))
}

pub fn cmd_minprimes<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let ideal = bundle.relations_ideal()?;
    let report = minimal_primes(&ideal, budget)?;
    let primes: Vec<String> = report.primes.iter().map(ideal_to_string).collect();
    let mut text = primes.join("\n");
    text.push_str(&format!(
        "\ncertified: {} ({})",
        report.certified,
        report.method.as_str()
    ));
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": "minprimes",
            "primes": primes,
            "certified": report.certified,
            "method": report.method.as_str(),
        }),
    ))
}

pub fn cmd_jacobian<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let jac = pres.jacobian_matrix();
    let mut rows = Vec::new();
    for i in 0..jac.rows() {
        let row: Vec<String> = (0..jac.cols()).map(|j| jac.get(i, j).to_string()).collect();
        rows.push(row);
    }
    let text = rows
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(out(
        text,
        json!({"schema": 1, "operation": "jacobian", "rows": jac.rows(), "cols": jac.cols(), "entries": rows}),
    ))
}

pub fn cmd_minors<F: Field>(bundle: &Bundle<F>, r: i64, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let minors = pres.jacobian_matrix().minors_ideal(r, budget)?;
    let text = ideal_to_string(&minors);
    Ok(out(
        text.clone(),
        json!({"schema": 1, "operation": format!("minors({r})"), "ideal": text}),
    ))
}

pub fn cmd_jn<F: Field>(bundle: &Bundle<F>, n: i64, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let jn = pres.jn_ideal(n, budget)?;
    let text = ideal_to_string(jn.value_in_s());
    Ok(out(
        text.clone(),
        json!({
            "schema": 1,
            "operation": format!("jn({n})"),
            "preimage_in_s": text,
            "codim": pres.codim(),
        }),
    ))
}

pub fn cmd_contains<F: Field>(
    bundle: &Bundle<F>,
    outer: &Ideal<F>,
    inner: &Ideal<F>,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let _ = bundle;
    let result = variety_contains(outer, inner, budget)?;
    Ok(out_bool("contains", result, json!({})))
}

pub fn cmd_radical_member<F: Field>(
    bundle: &Bundle<F>,
    f: &workbench_core::Polynomial<F>,
    ideal: &Ideal<F>,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let _ = bundle;
    let result = ideal.contains_in_radical(f, budget)?;
    Ok(out_bool("radical-member", result, json!({})))
}

pub fn cmd_sing<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let supplied = match supplied_sing(bundle) {
        Some(gens) => Some(
            bundle
                .parse_ideal(&gens)
                .map_err(|e| Error::Internal(format!("sing metadata: {e}")))?,
        ),
        None => None,
    };
    let locus = singular_locus(&pres, supplied.as_ref(), budget)?;
    let empty = locus.sing_generators.is_unit_ideal(budget)?;
    let text = if empty {
        format!("sing = empty ({})", locus.provenance.as_str())
    } else {
        format!(
            "sing = V{} ({})",
            ideal_to_string(&locus.sing_generators),
            locus.provenance.as_str()
        )
    };
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": "sing",
            "ideal": ideal_to_string(&locus.sing_generators),
            "empty": empty,
            "provenance": locus.provenance.as_str(),
        }),
    ))
}

pub fn cmd_check<F: Field>(bundle: &Bundle<F>, n: i64, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let supplied = match supplied_sing(bundle) {
        Some(gens) => Some(
            bundle
                .parse_ideal(&gens)
                .map_err(|e| Error::Internal(format!("sing metadata: {e}")))?,
        ),
        None => None,
    };
    let locus = singular_locus(&pres, supplied.as_ref(), budget)?;
    let checked = check_conditions(&pres, n, &locus, budget)?;
    let mut lines = Vec::new();
    for (key, value) in &checked.checks {
        lines.push(format!("{key} = {value}"));
    }
    for note in &checked.notes {
        lines.push(format!("note: {note}"));
    }
    let all = checked.checks.values().all(|v| *v);
    Ok(CmdOutput {
        text: lines.join("\n"),
        json: json!({
            "schema": 1,
            "operation": format!("check({n})"),
            "checks": checked.checks,
            "notes": checked.notes,
        }),
        ok: all,
    })
}

fn family_module<F: Field>(
    pres: &Presentation<F>,
    name: &str,
    budget: &Budget,
) -> Result<workbench_core::FpModule<F>, Error> {
    let family = workbench_core::default_module_family(pres, budget)?;
    family
        .into_iter()
        .find(|m| m.label() == name)
        .ok_or_else(|| Error::ConstructionInapplicable(format!("no module named {name} in the default family")))
}

pub fn cmd_ext_ann<F: Field>(
    bundle: &Bundle<F>,
    i: usize,
    pair: &str,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let (m_name, n_name) = pair
        .split_once(',')
        .ok_or_else(|| Error::ConstructionInapplicable("pair must look like k,R".into()))?;
    let m = family_module(&pres, m_name.trim(), budget)?;
    let n = family_module(&pres, n_name.trim(), budget)?;
    let report = workbench_core::ext_annihilator(&m, &n, i, budget)?;
    let text = format!(
        "Ann Ext^{i}({}, {}) = {}\nnote: {}",
        m.label(),
        n.label(),
        ideal_to_string(&report.ann),
        report.note
    );
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": format!("ext-ann({i})"),
            "pair": [m.label(), n.label()],
            "ann": ideal_to_string(&report.ann),
            "note": report.note,
        }),
    ))
}

pub fn cmd_ca_bound<F: Field>(bundle: &Bundle<F>, i: usize, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let family = workbench_core::default_module_family(&pres, budget)?;
    // Ordered pairs over the leading three default modules keep the CLI
    // default affordable; richer families go through the library API.
    let take = family.iter().take(3).cloned().collect::<Vec<_>>();
    let mut pairs = Vec::new();
    for m in &take {
        for n in &take {
            pairs.push((m.clone(), n.clone()));
        }
    }
    let labels: Vec<String> = take.iter().map(|m| m.label().to_string()).collect();
    let report = workbench_core::ca_upper_bound(&pres, i, &pairs, budget)?;
    let text = format!(
        "ca^{i} upper bound = {}\nfamily: ordered pairs over {{{}}}\nnote: {}",
        ideal_to_string(&report.ann),
        labels.join(", "),
        report.note
    );
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": format!("ca-bound({i})"),
            "bound": ideal_to_string(&report.ann),
            "family": labels,
            "note": report.note,
        }),
    ))
}

pub fn cmd_stability<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let d = pres.dim();
    let pairs = workbench_core::default_stability_pairs(&pres, budget)?;
    let range: Vec<usize> = vec![d + 1, d + 2, d + 3];
    let report = stability_evidence(&pres, &pairs, &range, budget)?;
    let bounds: Vec<Value> = report
        .bounds
        .iter()
        .map(|(i, b)| json!({"i": i, "bound": ideal_to_string(b)}))
        .collect();
    let text = format!(
        "stability over i in {:?}: radicals agree = {}\nnote: {}",
        range, report.radicals_agree, report.note
    );
    Ok(CmdOutput {
        text,
        json: json!({
            "schema": 1,
            "operation": "stability",
            "range": range,
            "bounds": bounds,
            "radicals_agree": report.radicals_agree,
            "note": report.note,
        }),
        ok: report.radicals_agree,
    })
}

pub fn cmd_minimize<F: Field>(bundle: &Bundle<F>, budget: &Budget) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let (small, changed) = minimize_presentation(&pres, budget)?;
    let text = format!(
        "{}{}",
        if changed { "" } else { "# unchanged: no eliminable generator\n" },
        serialize_presentation(bundle.file.field, &small)
    );
    Ok(out(
        text.clone(),
        json!({"schema": 1, "operation": "minimize", "changed": changed, "presentation": text}),
    ))
}

pub fn cmd_construct_tensor<F: Field>(
    b1: &Bundle<F>,
    b2: &Bundle<F>,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let p1 = presentation_of(b1, budget)?;
    let p2 = presentation_of(b2, budget)?;
    let t = tensor_presentation(&p1, &p2, budget)?;
    let text = serialize_presentation(b1.file.field, &t);
    Ok(out(
        text.clone(),
        json!({"schema": 1, "operation": "construct-tensor", "presentation": text}),
    ))
}

pub fn construct_square_zero<F: Field>(
    field: F,
    spec: FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let p = square_zero_algebra(field, n, budget)?;
    let text = serialize_presentation(spec, &p);
    Ok(out(
        text.clone(),
        json!({"schema": 1, "operation": "construct-square-zero", "presentation": text}),
    ))
}

pub fn cmd_construct_reduce_edd<F: Field>(
    bundle: &Bundle<F>,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let report = minimal_primes(pres.relations(), budget)?;
    let reduced = edd_reducer(&pres, &report, budget)?;
    let new_edd = edd_from_report(
        reduced.relations(),
        &minimal_primes(reduced.relations(), budget)?,
        budget,
    )?;
    let text = format!(
        "# edd after reduction: {}\n{}",
        new_edd.edd,
        serialize_presentation(bundle.file.field, &reduced)
    );
    Ok(out(
        text.clone(),
        json!({
            "schema": 1,
            "operation": "construct-reduce-edd",
            "edd": new_edd.edd,
            "presentation": text,
        }),
    ))
}

pub fn cmd_construct_counterexample<F: Field>(
    bundle: &Bundle<F>,
    prime: &Ideal<F>,
    n: i64,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let pres = presentation_of(bundle, budget)?;
    let pair = counterexample_builder(&pres, prime, n, budget)?;
    let w2 = serialize_presentation(bundle.file.field, &pair.cond_ii_witness);
    let w3 = serialize_presentation(bundle.file.field, &pair.cond_iii_witness);
    let text = format!(
        "# witness violating cond_ii({n})\n{w2}\n# witness violating cond_iii({n})\n{w3}# multiplier: {}",
        pair.multiplier
    );
    Ok(out(
        text,
        json!({
            "schema": 1,
            "operation": format!("construct-counterexample({n})"),
            "witness_ii": w2,
            "witness_iii": w3,
            "multiplier": pair.multiplier.to_string(),
        }),
    ))
}

/// Invariance check used when comparing two presentation files under a
/// substitution map given on the command line.
pub fn cmd_invariance<F: Field>(
    b1: &Bundle<F>,
    b2: &Bundle<F>,
    iso: &[workbench_core::Polynomial<F>],
    inverse: &[workbench_core::Polynomial<F>],
    n: i64,
    budget: &Budget,
) -> Result<CmdOutput, Error> {
    let p1 = presentation_of(b1, budget)?;
    let p2 = presentation_of(b2, budget)?;
    let equal = check_presentation_invariance(&p1, &p2, iso, inverse, n, budget)?;
    Ok(out_bool("invariance", equal, json!({"n": n})))
}
