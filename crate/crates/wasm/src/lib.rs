//! Browser bindings. Each exported function takes plain strings and numbers
//! and returns a JSON string; the `*_json` functions behind them are ordinary
//! Rust and are tested natively.

use cliqueband::oracle::DEFAULT_BUDGET;
use cliqueband::{
    align_max_edges_to_dim1, construct, exact_min_spread, harper_numbering, Arrangement,
    BoundsReport, Shape,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; bigger shapes are a CLI job.
const MAX_VOLUME: usize = 4096;
const MAX_CUBE_DIM: u32 = 10;

/// Accepts `3 4 5`, `3x4x5` or `3,4,5`.
pub fn parse_dims(text: &str) -> Result<Shape, String> {
    let dims = text
        .split(|c: char| c.is_whitespace() || c == 'x' || c == 'X' || c == ',' || c == '×')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("not a dimension: {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Shape::new(&dims).map_err(|e| e.to_string())
}

fn describe(a: &Arrangement) -> Value {
    let (line, width) = a.widest_line();
    let cells = a.shape().line_cells(&line).expect("line of this shape");
    json!({
        "shape": a.shape(),
        "values": a.values(),
        "spread": a.spread(),
        "monotonic": a.is_monotonic(),
        "widest_line": { "axis": line.axis, "cells": cells, "width": width },
    })
}

/// Construction plus bounds for a shape, with its widest line marked.
pub fn construct_json(dims: &str) -> Result<String, String> {
    let shape = parse_dims(dims)?;
    if shape.volume() > MAX_VOLUME {
        return Err(format!("the demo stops at {MAX_VOLUME} cells"));
    }
    let built = construct(&shape).map_err(|e| e.to_string())?;
    let mut out = describe(&built.arrangement);
    out["lower"] = built.lower.into();
    out["upper"] = built.upper.into();
    if shape.ndim() >= 2 {
        let general = BoundsReport::general(&shape).map_err(|e| e.to_string())?;
        out["general"] = json!({ "lower": general.lower, "upper": general.upper_formula });
    }
    Ok(out.to_string())
}

/// Exact optimum for a small shape, or the reason it was not attempted.
pub fn exact_json(dims: &str) -> Result<String, String> {
    let shape = parse_dims(dims)?;
    let r = exact_min_spread(&shape, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut out = describe(&r.witness);
    out["optimum"] = r.optimum.into();
    out["nodes"] = r.nodes.into();
    Ok(out.to_string())
}

/// Optimal numbering of the d-cube, raw or with its widest edges aligned.
pub fn hypercube_json(d: u32, aligned: bool) -> Result<String, String> {
    if d > MAX_CUBE_DIM {
        return Err(format!("the demo stops at d = {MAX_CUBE_DIM}"));
    }
    let mut num = harper_numbering(d).map_err(|e| e.to_string())?;
    if aligned {
        num = align_max_edges_to_dim1(&num).map_err(|e| e.to_string())?;
    }
    let edges: Vec<Value> = num
        .max_edges()
        .iter()
        .map(|e| {
            json!({
                "low": num.bit_string(e.low),
                "high": num.bit_string(e.high),
                "coordinate": e.coordinate,
            })
        })
        .collect();
    Ok(json!({
        "d": d,
        "order": num.bit_strings(),
        "bandwidth": num.bandwidth(),
        "max_edges": edges,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construct_shape(dims: &str) -> Result<String, JsError> {
    js(construct_json(dims))
}

#[wasm_bindgen]
pub fn exact_shape(dims: &str) -> Result<String, JsError> {
    js(exact_json(dims))
}

#[wasm_bindgen]
pub fn hypercube(d: u32, aligned: bool) -> Result<String, JsError> {
    js(hypercube_json(d, aligned))
}
