//! Browser bindings for the maxker library.
//!
//! Every export takes plain strings and returns a JSON string. Failures come
//! back as `{"error": {"code", "message"}}` instead of a thrown exception.

use std::sync::Arc;

use maxker::{maxkernel, Elem, Error, FieldCtx, LinearizedPoly, Method, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest field accepted by the kernel map (one cell per (a_0, a_1)).
pub const MAP_MAX_ORDER: u32 = 256;

fn render(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": { "code": e.code(), "message": e.to_string() } }).to_string(),
    }
}

fn load(field: &str, poly: &str) -> Result<LinearizedPoly> {
    let ctx = Arc::new(FieldCtx::from_spec(field.trim())?);
    LinearizedPoly::parse(&ctx, poly.trim())
}

pub fn check_poly_value(field: &str, poly: &str, method: &str) -> Result<Value> {
    let f = load(field, poly)?;
    let method: Method = method.trim().parse()?;
    let report = maxkernel::check_report(&f, method, None)?;
    let mut v = serde_json::to_value(report).expect("report serializes");
    v["poly"] = json!(f.to_string());
    v["field"] = json!(f.ctx().spec_string());
    Ok(v)
}

/// Kernel dimension of x^{σ^2} - a_1 x^σ - a_0 for every (a_0, a_1).
pub fn kernel_map_value(field: &str, s: i64) -> Result<Value> {
    let ctx = Arc::new(FieldCtx::from_spec(field.trim())?);
    if ctx.order() > MAP_MAX_ORDER {
        return Err(Error::Precondition(format!("kernel map needs a field of order at most {MAP_MAX_ORDER}")));
    }
    let elems: Vec<Elem> = ctx.elements().collect();
    let mut rows = Vec::with_capacity(elems.len());
    let mut max_kernel = 0usize;
    for &a0 in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for &a1 in &elems {
            let dim = LinearizedPoly::monic_from_lower(&ctx, s, &[a0, a1])?.kernel_dim();
            if dim == 2 {
                max_kernel += 1;
            }
            row.push(dim);
        }
        rows.push(row);
    }
    Ok(json!({
        "field": ctx.spec_string(),
        "q": ctx.q(),
        "s": s,
        "order": ctx.order(),
        "max_kernel": max_kernel,
        "dims": rows,
    }))
}

pub fn splitting_field_value(field: &str, poly: &str, cap: u64) -> Result<Value> {
    let f = load(field, poly)?;
    let d = maxkernel::splitting_field_degree(&f, cap)?;
    let ctx = f.ctx();
    Ok(json!({
        "poly": f.to_string(),
        "m": d.m,
        "extension_degree": d.extension_degree,
        "splitting_field": format!("F_{{{}^{}}}", ctx.order(), d.extension_degree),
        "extension_beyond_q_polynomials": d.extension_beyond_q_polynomials,
    }))
}

#[wasm_bindgen]
pub fn check_poly(field: &str, poly: &str, method: &str) -> String {
    render(check_poly_value(field, poly, method))
}

#[wasm_bindgen]
pub fn kernel_map(field: &str, s: i32) -> String {
    render(kernel_map_value(field, s as i64))
}

#[wasm_bindgen]
pub fn splitting_field(field: &str, poly: &str, cap: u32) -> String {
    render(splitting_field_value(field, poly, cap as u64))
}
