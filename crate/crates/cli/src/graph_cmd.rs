use std::fmt::Write as _;
use std::thread;

use drg_core::endpoint1::{build_model, consistency_report, crosscheck_with_graph};
use drg_core::graph::{bose_mesner, verify_drg, Graph};
use drg_core::local::{
    build_partition, check_identity, find_kites_parallelograms, gate, local_graph, BaseContext, ConfigurationKind,
    GateMode, IdentityReport, IDENTITY_IDS,
};
use drg_core::params::classical_fits;
use drg_core::tmodules::{decompose, Decomposition};
use drg_core::{exactla::rat, Error};
use serde_json::{json, Map, Value};

use crate::json;
use crate::params_cmd::array_json;
use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Part {
    All,
    Identities,
    Decomposition,
}

pub struct GraphArgs {
    pub edges: Vec<(String, String)>,
    pub base_vertex: String,
    pub neighbor: Option<String>,
    pub identity: String,
    pub ordering: Option<Vec<usize>>,
    pub seed: u64,
    pub workers: usize,
    pub part: Part,
}

pub struct GraphOutcome {
    pub report: Value,
    pub text: String,
    pub ok: bool,
}

fn vertex(g: &Graph, label: &str) -> Result<usize, Failure> {
    g.vertex_by_label(label).ok_or_else(|| Failure::input(format!("no vertex labelled `{label}`")))
}

fn scope_error(e: Error) -> Failure {
    match e {
        Error::IrrationalSpectrum { .. } | Error::RootSearchExhausted => Failure::out_of_scope(e.to_string()),
        other => Failure::check(other.to_string()),
    }
}

/// Runs the selected identities on `workers` threads; results keep the
/// order of `ids`.
fn run_identities(
    ctx: &BaseContext<'_>,
    partition: Option<&drg_core::local::LocalPartition>,
    ids: &[&str],
    gate: &drg_core::local::Gate,
    workers: usize,
) -> Vec<IdentityReport> {
    let chunk = ids.len().div_ceil(workers.max(1)).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = ids
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|id| check_identity(ctx, partition, id, gate).expect("ids are validated"))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("identity worker panicked")).collect()
    })
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "id": r.id,
        "applicable": r.applicable,
        "holds": r.holds,
        "reason": r.reason,
        "witness": r.witness,
    })
}

fn decomposition_json(dec: &Decomposition) -> Value {
    let modules: Vec<Value> = dec
        .modules
        .iter()
        .map(|m| {
            json!({
                "dim": m.dim(),
                "endpoint": m.endpoint,
                "diameter": m.diameter,
                "per_grade_dims": m.per_grade_dims,
                "local_eigenvalue": m.local_eigenvalue.as_ref().map(json::rat),
                "multiplicity_class": m.multiplicity_class,
                "primary": m.is_primary,
            })
        })
        .collect();
    json!({
        "dims": dec.dims(),
        "modules": modules,
        "multiplicity_classes": dec.multiplicity_classes,
    })
}

pub fn run(args: &GraphArgs) -> Result<GraphOutcome, Failure> {
    let ids: Vec<&str> = if args.identity == "all" {
        IDENTITY_IDS.to_vec()
    } else if let Some(id) = IDENTITY_IDS.iter().find(|id| **id == args.identity) {
        vec![*id]
    } else {
        return Err(Failure::input(Error::UnknownIdentity(args.identity.clone()).to_string()));
    };

    let g = Graph::from_edge_list(&args.edges).map_err(Failure::from_input)?;
    let x = vertex(&g, &args.base_vertex)?;
    let z = args.neighbor.as_deref().map(|l| vertex(&g, l)).transpose()?;
    if let Some(z) = z {
        if !g.adjacent(x, z) {
            return Err(Failure::input(Error::NotAdjacent(x, z).to_string()));
        }
    }
    let drg = verify_drg(&g).map_err(|e| match e {
        Error::NotDrg(_) => Failure::not_drg(e.to_string()),
        other => Failure::input(other.to_string()),
    })?;
    let arr = &drg.array;
    let bm = bose_mesner(&drg).map_err(scope_error)?;

    let ordering = match &args.ordering {
        Some(o) if bm.qpoly_orderings.contains(o) => Some(o.clone()),
        Some(o) => {
            return Err(Failure::input(format!(
                "{o:?} is not a Q-polynomial ordering; available: {:?}",
                bm.qpoly_orderings
            )))
        }
        None if bm.qpoly_orderings.len() == 1 => Some(bm.qpoly_orderings[0].clone()),
        None => None,
    };
    let ctx = BaseContext::new(&g, &drg, x, ordering.as_deref().map(|o| (&bm, o))).map_err(scope_error)?;

    let mut text = String::new();
    let mut ok = true;
    let mut report = Map::new();
    let _ = writeln!(text, "n = {}, diameter = {}, k = {}", g.n(), arr.d, arr.k);
    let _ = writeln!(
        text,
        "intersection array {{{}; {}}}",
        arr.b_seq().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        arr.c_seq().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(text, "krein parameters nonnegative: {}", bm.krein_nonnegative());
    let _ = writeln!(text, "Q-polynomial orderings: {:?}", bm.qpoly_orderings);
    if bm.qpoly_orderings.len() > 1 && ordering.is_none() {
        let _ = writeln!(text, "several Q-polynomial orderings; pass --ordering to select A*");
    }
    report.insert("n".into(), json!(g.n()));
    report.insert("diameter".into(), json!(arr.d));
    report.insert("intersection_array".into(), array_json(arr));
    report.insert("krein_nonneg".into(), json!(bm.krein_nonnegative()));
    report.insert("qpoly_orderings".into(), json!(bm.qpoly_orderings));
    report.insert("selected_ordering".into(), json!(ordering));
    report.insert(
        "eigenvalues".into(),
        Value::Array(
            bm.eigenvalues
                .iter()
                .zip(&bm.multiplicities)
                .map(|(t, m)| json!({ "eigenvalue": json::rat(t), "multiplicity": json::rat(m) }))
                .collect(),
        ),
    );
    report.insert("base_vertex".into(), json!(args.base_vertex));
    report.insert("neighbor".into(), json!(args.neighbor));
    report.insert("seed".into(), json!(args.seed));

    if args.part == Part::All {
        let lg = local_graph(&g, x).ok();
        report.insert(
            "local_graph".into(),
            lg.map_or(Value::Null, |lg| {
                json!({
                    "eigenvalues": json::spectrum(&lg.eigenvalues),
                    "clique_partition": lg.clique_partition.map(|parts| parts
                        .iter()
                        .map(|p| p.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>()),
                })
            }),
        );
        let configs = find_kites_parallelograms(&g, &drg.distances, arr.d);
        let count = |kind| {
            (2..=arr.d).map(|len| configs.iter().filter(|c| c.kind == kind && c.length == len).count()).collect::<Vec<_>>()
        };
        report.insert(
            "configurations".into(),
            json!({
                "lengths": (2..=arr.d).collect::<Vec<_>>(),
                "kites": count(ConfigurationKind::Kite),
                "parallelograms": count(ConfigurationKind::Parallelogram),
            }),
        );
    }

    let mut dec = None;
    if args.part != Part::Identities {
        let d = decompose(&ctx, args.seed).map_err(|e| Failure::check(e.to_string()))?;
        let valid = d.validate(&ctx);
        let _ = writeln!(text, "decomposition dims {:?}, classes {:?}", d.dims(), d.multiplicity_classes);
        if let Err(why) = &valid {
            ok = false;
            let _ = writeln!(text, "decomposition invalid: {why}");
        }
        let mut dj = decomposition_json(&d);
        dj["valid"] = json!(valid.is_ok());
        report.insert("decomposition".into(), dj);
        dec = Some(d);
    }

    let gt = gate(arr, GateMode::Auto);
    report.insert("gate".into(), json!({ "applicable": gt.applicable, "reason": gt.reason }));
    if args.part != Part::Decomposition {
        let partition = z.map(|z| build_partition(&ctx, z)).transpose().map_err(|e| Failure::check(e.to_string()))?;
        let reports = run_identities(&ctx, partition.as_ref(), &ids, &gt, args.workers);
        let gate_reason = gt.reason.clone().unwrap_or_default();
        if !gt.applicable {
            let _ = writeln!(text, "gated identities do not apply: {gate_reason}");
        }
        for r in &reports {
            let status = match r.holds {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "not applicable",
            };
            let _ = write!(text, "{}: {status}", r.id);
            if let Some(w) = &r.witness {
                let _ = write!(text, " ({w})");
            } else if let Some(reason) = r.reason.as_ref().filter(|why| r.holds.is_none() && **why != gate_reason) {
                let _ = write!(text, " ({reason})");
            }
            text.push('\n');
            ok &= r.holds != Some(false);
        }
        report.insert("identities".into(), Value::Array(reports.iter().map(identity_json).collect()));
    }

    let mut cross = Value::Null;
    if let (Some(d), true) = (&dec, gt.applicable) {
        let fit = classical_fits(arr).into_iter().find(|p| p.b < -1);
        if let Some(p) = fit {
            let models: Result<Vec<_>, _> = [rat(-1), arr.a1()]
                .into_iter()
                .map(|eta| {
                    let m = build_model(arr, &p, &eta)?;
                    consistency_report(&m, arr)?;
                    Ok::<_, Error>(m)
                })
                .collect();
            let result = models.and_then(|ms| crosscheck_with_graph(arr, &ms, d));
            cross = match result {
                Ok(c) => {
                    ok &= c.passes();
                    json!({
                        "endpoint1_classes": c.endpoint1_classes,
                        "observed": c.observed,
                        "matched_class": c.matched_class,
                        "multiplicities_match": c.multiplicities_match,
                        "passes": c.passes(),
                    })
                }
                Err(e) => {
                    ok = false;
                    json!({ "error": e.to_string() })
                }
            };
        }
    }
    report.insert("crosscheck".into(), cross);
    report.insert("ok".into(), json!(ok));
    Ok(GraphOutcome { report: Value::Object(report), text, ok })
}
