//! Browser bindings. Each export wraps a plain function returning
//! `Result<String, String>` so the logic stays testable off the browser.

use wasm_bindgen::prelude::*;

use ctab::lab::{self, ModelUnderTest};
use ctab::logic::{evaluate, parse};
use ctab::text::{parse_mapping, parse_structure, render_decomposition, render_pretty, render_tsv};
use ctab::{Base, TableAlgebra};

/// Largest case count accepted from the page.
pub const MAX_CASES: usize = 2000;

pub fn eval_query_text(structure: &str, query: &str, format: &str) -> Result<String, String> {
    let structure = parse_structure(structure).map_err(|e| format!("structure: {e}"))?;
    let phi = parse(query).map_err(|e| format!("query: {e}"))?;
    let table = evaluate(&phi, &structure, &TableAlgebra::new(structure.base().clone())).map_err(|e| e.to_string())?;
    match format {
        "tsv" => Ok(render_tsv(&table)),
        "pretty" => Ok(render_pretty(&table)),
        other => Err(format!("unknown format `{other}`")),
    }
}

pub fn decompose_text(map: &str, dom: &str, cod: &str) -> Result<String, String> {
    let lambda = parse_mapping(map, dom, cod).map_err(|e| e.to_string())?;
    Ok(render_decomposition(&lambda, &lambda.decompose()))
}

pub fn check_axioms_text(model: &str, base: &str, cases: usize, seed: u64) -> Result<String, String> {
    if cases > MAX_CASES {
        return Err(format!("at most {MAX_CASES} cases per law"));
    }
    let model = match model {
        "standard" => ModelUnderTest::Standard(Base::from_letters(base)),
        "bogus" => ModelUnderTest::bogus(Base::from_letters(if base.is_empty() { "g" } else { base })).map_err(|e| e.to_string())?,
        "empty-base" => ModelUnderTest::DegenerateEmptyBase,
        other => return Err(format!("unknown model `{other}`")),
    };
    let report = lab::check_all(&model, cases, seed).map_err(|e| e.to_string())?;
    Ok(report.to_string())
}

#[wasm_bindgen]
pub fn eval_query(structure: &str, query: &str, format: &str) -> Result<String, JsError> {
    eval_query_text(structure, query, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decompose_mapping(map: &str, dom: &str, cod: &str) -> Result<String, JsError> {
    decompose_text(map, dom, cod).map_err(|e| JsError::new(&e))
}

/// Takes 32-bit numbers so the page can pass plain JS numbers.
#[wasm_bindgen]
pub fn check_axioms(model: &str, base: &str, cases: u32, seed: u32) -> Result<String, JsError> {
    check_axioms_text(model, base, cases as usize, u64::from(seed)).map_err(|e| JsError::new(&e))
}
