//! Browser bindings. Every entry point returns a JSON string; errors become
//! JavaScript exceptions carrying the library's message.

use braidcover::burau::{alexander_of_closure, knot_determinant};
use braidcover::cover::cover_form;
use braidcover::intlinalg::big_to_json;
use braidcover::presentation::{tietze_simplify, vk_presentation, VkMode};
use braidcover::report::{report_for, TIETZE_BUDGET};
use braidcover::{BraidWord, Factorization, Fixtures};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Full ledger entry for the `n`-th pair of surfaces.
#[wasm_bindgen]
pub fn family_member(n: usize) -> Result<String, JsError> {
    if n > 64 {
        return Err(err("n is capped at 64 in the browser"));
    }
    let fx = Fixtures::default();
    let r = report_for(n, &fx).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}

/// Alexander polynomial and determinant of the closure of a braid word.
#[wasm_bindgen]
pub fn alexander(word: &str, strands: usize) -> Result<String, JsError> {
    let b = BraidWord::parse(strands, word).map_err(err)?;
    let delta = alexander_of_closure(&b).map_err(err)?;
    let det = knot_determinant(&b).ok();
    let out = json!({
        "braid": b.to_string(),
        "components": b.permutation().cycle_count(),
        "alexander": delta.to_string(),
        "determinant": det.as_ref().map(big_to_json),
    });
    Ok(out.to_string())
}

/// Cover homology and complement group of a factorization given in the
/// text format (`m k` header, then `i : w` lines).
#[wasm_bindgen]
pub fn analyze_factorization(text: &str) -> Result<String, JsError> {
    let f = Factorization::parse(text).map_err(err)?;
    let fx = Fixtures::default();
    let c = cover_form(&f, fx.epsilon).map_err(err)?;
    let t = tietze_simplify(&vk_presentation(&f, VkMode::Single), TIETZE_BUDGET);
    let mut out = c.to_json();
    out["pi1"] = json!(t.presentation.to_string());
    out["product"] = json!(f.product().to_string());
    Ok(out.to_string())
}
