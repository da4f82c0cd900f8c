//! Browser bindings. Every export takes plain strings or integers and returns a
//! JSON string, so the same functions are testable natively.
//! Failures come back as `{"error": "..."}`.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use specgap::bounds::bound_report;
use specgap::certify::{certify_min_degree, certify_non_complete, SLACK_TOL};
use specgap::format::{parse_auto, to_graph6};
use specgap::generators::Family;
use specgap::graph::Graph;
use specgap::rigidity::{classify_equality, edge_removal_demo, equality_eigenbasis};
use specgap::spectral::{spectrum, MULTIPLICITY_TOL};

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| json!({ "error": e.to_string() }))
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// A family string like `glued_complete:4`, or a pasted graph6 / edge-list text.
fn resolve(input: &str) -> Result<Graph, String> {
    let input = input.trim();
    if input.contains(':') {
        let fam: Family = input
            .parse()
            .map_err(|e: specgap::GraphError| e.to_string())?;
        fam.generate().map_err(|e| e.to_string())
    } else {
        parse_auto(input).map_err(|e| e.to_string())
    }
}

fn analyze_graph(g: &Graph) -> Result<Value, String> {
    let sp = spectrum(g).map_err(|e| e.to_string())?;
    let bounds = bound_report(g, false).map_err(|e| e.to_string())?;
    let grouped: Vec<Value> = sp
        .grouped(MULTIPLICITY_TOL)
        .into_iter()
        .map(|(v, m)| json!({ "value": if v.abs() < 1e-12 { 0.0 } else { v }, "multiplicity": m }))
        .collect();
    let (verdict, eigenbasis) = if g.n() >= 3 && !g.is_complete() {
        let v = classify_equality(g).map_err(|e| e.to_string())?;
        let basis = if v.is_equality() {
            let b = equality_eigenbasis(g, &v).map_err(|e| e.to_string())?;
            Some(
                b.multiplicities()
                    .into_iter()
                    .map(|(q, m)| json!({ "value": q.to_string(), "multiplicity": m }))
                    .collect::<Vec<_>>(),
            )
        } else {
            None
        };
        (Some(to_json(&v)), basis)
    } else {
        (None, None)
    };
    Ok(json!({
        "graph6": to_graph6(g),
        "n": g.n(),
        "m": g.edge_count(),
        "edges": g.edges(),
        "lambda_n": sp.lambda_max(),
        "spectrum": grouped,
        "components": sp.components,
        "residual": sp.max_residual(),
        "bounds": to_json(&bounds),
        "verdict": verdict,
        "explicit_spectrum": eigenbasis,
    }))
}

/// Spectrum, every applicable bound and the equality verdict.
#[wasm_bindgen]
pub fn analyze(input: &str) -> String {
    respond(resolve(input).and_then(|g| analyze_graph(&g)))
}

/// Witness certificate with its per-vertex audit. `method` is `non_complete` or `min_degree`.
#[wasm_bindgen]
pub fn certificate(input: &str, method: &str) -> String {
    respond(resolve(input).and_then(|g| {
        let (cert, audit) = match method {
            "non_complete" => certify_non_complete(&g),
            "min_degree" => certify_min_degree(&g),
            other => return Err(format!("unknown method {other:?}")),
        }
        .map_err(|e| e.to_string())?;
        let lambda = spectrum(&g).map_err(|e| e.to_string())?.lambda_max();
        Ok(json!({
            "record": to_json(&cert.record(&g, &audit)),
            "audit": to_json(&audit.entries),
            "min_slack": audit.min_slack(),
            "holds": audit.holds(SLACK_TOL),
            "lambda_n": lambda,
            "edges": g.edges(),
            "n": g.n(),
        }))
    }))
}

/// Two `K_k` sharing a vertex, with `λ_n` after each single-edge addition.
#[wasm_bindgen]
pub fn edge_removal(k: u32) -> String {
    respond(
        edge_removal_demo(k as usize)
            .map(|r| {
                let g =
                    specgap::generators::glued_complete(k as usize).expect("k checked by the demo");
                let mut v = to_json(&r);
                v["edges"] = json!(g.edges());
                v
            })
            .map_err(|e| e.to_string()),
    )
}
