use std::fmt::Write as _;

use drg_core::endpoint1::{build_model, consistency_report, multiplicities, ConsistencyReport, Endpoint1Model};
use drg_core::exactla::{fmt_rat, rat};
use drg_core::params::{
    check_hypotheses, classical_to_array, spectrum_from_array, ClassicalParameters, HypothesisReport, IntersectionArray,
};
use serde_json::{json, Value};

use crate::json;
use crate::Failure;

pub struct ParamsOutcome {
    pub report: Value,
    pub text: String,
    pub ok: bool,
}

pub fn array_json(arr: &IntersectionArray) -> Value {
    json!({
        "D": arr.d,
        "b": json::rats(arr.b_seq()),
        "c": json::rats(arr.c_seq()),
        "a": json::rats(&arr.a),
        "k": json::rat(&arr.k),
        "k_i": json::rats(&arr.k_i),
    })
}

fn hypotheses_json(h: &HypothesisReport) -> Value {
    json!({
        "diameter_at_least_3": h.diameter_at_least_3,
        "negative_type": h.negative_type,
        "a1_nonzero": h.a1_nonzero,
        "not_near_polygon": h.not_near_polygon,
        "strict_inequalities": h.strict_inequalities,
        "integrality": h.integrality,
        "passes": h.passes(),
        "failures": h.failures,
        "note": h.note,
    })
}

fn checks_json(c: &ConsistencyReport) -> Value {
    json!({
        "spectrum_contained": c.spectrum_contained,
        "trace_consistent": c.trace_consistent,
        "gram_positive_definite": c.gram_positive_definite,
        "self_adjoint": c.self_adjoint,
        "grading": c.grading,
        "e1a2_on_w": c.e1a2_on_w,
        "block_determinants": c.block_determinants,
        "leading_minors": json::rats(&c.leading_minors),
        "charpoly": json::rats(c.charpoly.coeffs()),
        "passes": c.passes(),
    })
}

pub fn model_json(m: &Endpoint1Model, c: &ConsistencyReport) -> Value {
    json!({
        "eta": json::rat(&m.eta),
        "dim": m.dim,
        "basis_labels": m.basis_labels,
        "grades": m.grades,
        "L": json::matrix(&m.l),
        "F": json::matrix(&m.f),
        "R": json::matrix(&m.r),
        "A": json::matrix(&m.a),
        "gram": json::matrix(&m.gram),
        "multiplicity": json::rat(&m.multiplicity),
        "spectrum": json::spectrum(&c.spectrum),
        "checks": checks_json(c),
    })
}

pub fn run(p: &ClassicalParameters) -> Result<ParamsOutcome, Failure> {
    let arr = classical_to_array(p).map_err(Failure::from_input)?;
    let hyp = check_hypotheses(p);
    let spectrum = spectrum_from_array(&arr).ok();
    let mut text = String::new();
    let _ = writeln!(text, "parameters D={} b={} alpha={} beta={} (synthetic)", p.d, p.b, p.alpha, p.beta);
    let _ = writeln!(
        text,
        "b = {{{}}}  c = {{{}}}  a = {{{}}}",
        join(arr.b_seq()),
        join(arr.c_seq()),
        join(&arr.a)
    );
    let _ = writeln!(text, "k_i = {}", join(&arr.k_i));
    if let Some(s) = &spectrum {
        let _ = writeln!(text, "spectrum = {}", join(s));
    }
    let _ = writeln!(text, "hypotheses: {}", if hyp.passes() { "pass" } else { "fail" });
    for f in &hyp.failures {
        let _ = writeln!(text, "  - {f}");
    }

    let mut ok = true;
    let mut models = Vec::new();
    let mut mults = Value::Null;
    let mut model_errors = Vec::new();
    if hyp.passes() {
        match multiplicities(&arr) {
            Ok((m1, m2)) => {
                mults = json!({ "mu_minus_one": json::rat(&m1), "mu_a1": json::rat(&m2) });
                let _ = writeln!(text, "multiplicities: mu_-1 = {m1}, mu_a1 = {m2}");
            }
            Err(e) => {
                ok = false;
                model_errors.push(e.to_string());
            }
        }
        for eta in [rat(-1), arr.a1()] {
            let built = build_model(&arr, p, &eta).and_then(|m| consistency_report(&m, &arr).map(|c| (m, c)));
            match built {
                Ok((m, c)) => {
                    ok &= c.passes();
                    let _ = writeln!(
                        text,
                        "model eta = {}: dim {}, spectrum {}, checks {}",
                        fmt_rat(&eta),
                        m.dim,
                        c.spectrum.iter().map(|(v, k)| format!("{v}^{k}")).collect::<Vec<_>>().join(" "),
                        if c.passes() { "pass" } else { "FAIL" }
                    );
                    models.push(model_json(&m, &c));
                }
                Err(e) => {
                    ok = false;
                    model_errors.push(format!("eta = {}: {e}", fmt_rat(&eta)));
                }
            }
        }
    } else {
        let _ = writeln!(text, "no models built");
    }
    for e in &model_errors {
        let _ = writeln!(text, "error: {e}");
    }

    let report = json!({
        "parameters": {
            "D": p.d,
            "b": p.b,
            "alpha": json::rat(&p.alpha),
            "beta": json::rat(&p.beta),
        },
        "synthetic": true,
        "intersection_array": array_json(&arr),
        "spectrum": spectrum.as_deref().map_or(Value::Null, json::rats),
        "hypotheses": hypotheses_json(&hyp),
        "multiplicities": mults,
        "models": models,
        "errors": model_errors,
        "ok": ok,
    });
    Ok(ParamsOutcome { report, text, ok })
}

fn join(xs: &[drg_core::Rat]) -> String {
    xs.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}
