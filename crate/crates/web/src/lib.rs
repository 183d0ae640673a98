//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes the system as COPS-style text and returns a report,
//! either human-readable or JSON.

use wasm_bindgen::prelude::*;

use ctrs_core::engine::ground_terms;
use ctrs_core::report;
use ctrs_core::{check_level_confluence, diamond_fuzz, parse, Bounds, Engine};

/// Largest seed size the page accepts; bigger seed sets stall the tab.
pub const MAX_SEED_SIZE: usize = 6;

fn out(json: bool, value: serde_json::Value, text: String) -> String {
    if json {
        serde_json::to_string_pretty(&value).expect("JSON values serialize")
    } else {
        text
    }
}

pub fn check_report(source: &str, json: bool) -> Result<String, String> {
    let spec = parse(source).map_err(|e| e.to_string())?;
    let v = check_level_confluence(&spec.ctrs, &Bounds::default());
    Ok(out(json, report::verdict_json(&v), report::render_verdict(&v)))
}

pub fn successors_report(source: &str, term: &str, level: usize, json: bool) -> Result<String, String> {
    let spec = parse(source).map_err(|e| e.to_string())?;
    let t = spec.parse_term(term).map_err(|e| format!("term: {e}"))?;
    let bounds = Bounds::default();
    let engine = Engine::new(&spec.ctrs, bounds);
    let succ = engine.epar_successors(&t, level).map_err(|e| e.to_string())?;
    Ok(out(json, report::epar_json(&t, level, &succ, &bounds), report::render_epar(&t, level, &succ)))
}

pub fn diamond_report(source: &str, m: usize, n: usize, seed_size: usize, json: bool) -> Result<String, String> {
    if seed_size > MAX_SEED_SIZE {
        return Err(format!("seed size is limited to {MAX_SEED_SIZE} in the browser"));
    }
    let spec = parse(source).map_err(|e| e.to_string())?;
    let bounds = Bounds::default();
    let engine = Engine::new(&spec.ctrs, bounds);
    let seeds = ground_terms(spec.ctrs.signature(), seed_size);
    let r = diamond_fuzz(&engine, &seeds, m, n).map_err(|e| e.to_string())?;
    Ok(out(json, report::diamond_json(&r, &bounds), report::render_diamond(&r)))
}

#[wasm_bindgen]
pub fn check(source: &str, json: bool) -> Result<String, JsError> {
    check_report(source, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn successors(source: &str, term: &str, level: usize, json: bool) -> Result<String, JsError> {
    successors_report(source, term, level, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn diamond(source: &str, m: usize, n: usize, seed_size: usize, json: bool) -> Result<String, JsError> {
    diamond_report(source, m, n, seed_size, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn example_system() -> String {
    ctrs_core::corpus::FIB.to_string()
}
