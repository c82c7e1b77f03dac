//! wasm-bindgen exports for the browser demo. Each export returns a JSON
//! string; errors surface as JS exceptions carrying the library message.

use cmlt::classify::{classify_anomalous, classify_positivity, classify_symmetry};
use cmlt::constants::{varpi, Method};
use cmlt::counts::count_traces;
use cmlt::frobenius::CurveSpec;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `x` the page will sieve; keeps the tab responsive.
pub const MAX_X: u64 = 20_000_000;

pub fn constant_json(d: i64, g: i64, r: i64, cutoff: u64) -> Result<String, String> {
    let rep = varpi(d, g, r, cutoff, Method::Accelerated).map_err(|e| e.to_string())?;
    let model = CurveSpec::new(d, g).map_err(|e| e.to_string())?.model();
    Ok(json!({ "model": model, "report": rep }).to_string())
}

pub fn classify_json(d: i64, g: i64, r: i64, mode: &str) -> Result<String, String> {
    let verdict = match mode {
        "positivity" => classify_positivity(d, g, r),
        "symmetry" => classify_symmetry(d, g, r),
        "anomalous" => classify_anomalous(d, g),
        _ => return Err(format!("unknown mode {mode}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&verdict).unwrap())
}

pub fn traces_json(d: i64, g: i64, x: u64, r_min: i64, r_max: i64) -> Result<String, String> {
    if x > MAX_X {
        return Err(format!("x is limited to {MAX_X} in the browser"));
    }
    let curve = CurveSpec::new(d, g).map_err(|e| e.to_string())?;
    let hist = count_traces(&curve, x, r_min, r_max).map_err(|e| e.to_string())?;
    let scale = (x as f64).sqrt() / (x as f64).ln();
    let rows: Vec<_> = hist
        .counts
        .iter()
        .map(|(&r, &n)| {
            let predicted = varpi(d, g, r, 100_000, Method::Accelerated).ok().map(|v| v.varpi * scale);
            json!({ "r": r, "count": n, "predicted": predicted })
        })
        .collect();
    Ok(json!({
        "model": curve.model(),
        "x": x,
        "good_primes": hist.good_primes,
        "overflow": hist.overflow,
        "rows": rows,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn constant(d: i32, g: f64, r: i32, cutoff: u32) -> Result<String, JsValue> {
    constant_json(d as i64, g as i64, r as i64, cutoff as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(d: i32, g: f64, r: i32, mode: &str) -> Result<String, JsValue> {
    classify_json(d as i64, g as i64, r as i64, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn traces(d: i32, g: f64, x: f64, r_min: i32, r_max: i32) -> Result<String, JsValue> {
    traces_json(d as i64, g as i64, x as u64, r_min as i64, r_max as i64).map_err(|e| JsValue::from_str(&e))
}
