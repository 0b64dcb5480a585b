//! Browser bindings. Every export takes plain strings and returns a JSON
//! string; failures come back as `{"error": {"kind", "message"}}` so the
//! page never has to catch exceptions.

use std::sync::Arc;

use leavitt_core::semisimple::matrix_decomposition;
use leavitt_core::toeplitz::{rcfm_representation, toeplitz_graph};
use leavitt_core::{parse_element_in, parse_graph, Error, Field};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string(),
    }
}

/// Normal form of `expr` over the graph described by `graph_src`.
#[wasm_bindgen]
pub fn normal_form(graph_src: &str, expr: &str, field: &str) -> String {
    respond((|| {
        let field: Field = field.parse()?;
        let g = Arc::new(parse_graph(graph_src)?);
        let x = parse_element_in(&g, field, expr)?;
        Ok(json!({
            "graph": g.name(),
            "normal_form": x.to_string(),
            "terms": x.support_len(),
            "grade": x.homogeneous_degree(),
        }))
    })())
}

/// Matrix blocks of an acyclic graph, one per sink.
#[wasm_bindgen]
pub fn decompose(graph_src: &str) -> String {
    respond((|| {
        let g = Arc::new(parse_graph(graph_src)?);
        let report = matrix_decomposition(&g)?.report();
        Ok(serde_json::to_value(report).expect("report serializes"))
    })())
}

/// The `size × size` window of left multiplication by `expr` in the
/// Toeplitz algebra, on the basis `w, f, ef, eef, …`.
#[wasm_bindgen]
pub fn toeplitz_window(expr: &str, size: usize) -> String {
    respond((|| {
        let g = Arc::new(toeplitz_graph());
        let x = parse_element_in(&g, Field::Rationals, expr)?;
        let w = rcfm_representation(&x, size)?;
        Ok(json!({
            "element": x.to_string(),
            "size": w.size,
            "validity_bound": w.validity_bound,
            "bandwidth": w.bandwidth(),
            "finitely_supported": w.finitely_supported,
            "matrix": w.matrix,
        }))
    })())
}

/// The Toeplitz graph in the text format, to seed the editor.
#[wasm_bindgen]
pub fn toeplitz_source() -> String {
    toeplitz_graph().to_dsl()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn normal_form_round_trip() {
        let r = parse(&normal_form(&toeplitz_source(), "e*e' + f*f'", "q"));
        assert_eq!(r["normal_form"], "v");
        let r = parse(&normal_form("graph G\nvertex v\n", "w", "q"));
        assert_eq!(r["error"]["kind"], "unknown_identifier");
        let r = parse(&normal_form(&toeplitz_source(), "v", "fp:6"));
        assert_eq!(r["error"]["kind"], "invalid_field");
    }

    #[test]
    fn decompose_a2() {
        let r = parse(&decompose("graph A2\nvertex u\nvertex w\nedge f u w\n"));
        assert_eq!(r["sizes"], json!([2]));
        assert_eq!(parse(&decompose(&toeplitz_source()))["error"]["kind"], "has_cycle");
    }

    #[test]
    fn window() {
        let r = parse(&toeplitz_window("e", 4));
        assert_eq!(r["matrix"], json!([["0", "0", "0", "0"], ["0", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]]));
        assert_eq!(r["validity_bound"], 3);
        assert_eq!(parse(&toeplitz_window("e*e*e", 3))["error"]["kind"], "window_too_small");
    }
}
