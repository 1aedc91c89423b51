//! Browser bindings: build a family's representation, check it against the
//! family, and draw the threshold circuit of a Boolean-anchor representation.

use nnrep::constructions::bundled;
use nnrep::oracle::equiv_check;
use nnrep::repr::Model;
use nnrep::transforms::{convert_to, hnn_to_depth2, hnn_to_depth3, hnn_to_depth3_slice, Depth3Variant, Metrics};
use nnrep::{Error, FamilySpec, Result};
use wasm_bindgen::prelude::*;

/// Largest arity the page will check exhaustively.
pub const PAGE_ARITY_CAP: usize = 16;

fn family(literal: &str) -> Result<FamilySpec> {
    let spec: FamilySpec = literal.trim().parse()?;
    if spec.arity() > PAGE_ARITY_CAP {
        return Err(Error::InvalidParams(format!(
            "{spec} has {} inputs; the page checks at most {PAGE_ARITY_CAP}",
            spec.arity()
        )));
    }
    Ok(spec)
}

/// `{"representation", "metrics", "passes"}` for a family literal such as
/// `xor:4`, converted to `target` when that is not empty.
pub fn construct_json(literal: &str, target: &str) -> Result<String> {
    let mut m = bundled(family(literal)?)?;
    let mut passes = Vec::new();
    if !target.is_empty() {
        let (out, reports) = convert_to(m, target)?;
        m = out;
        passes = reports.into_iter().map(|r| r.pass).collect();
    }
    let repr: serde_json::Value = serde_json::from_str(&m.to_json())?;
    let doc = serde_json::json!({ "representation": repr, "metrics": Metrics::of(&m), "passes": passes });
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Equivalence report of a representation document against a family literal.
pub fn verify_json(model: &str, literal: &str) -> Result<String> {
    let m = Model::from_json(model)?;
    let spec = family(literal)?;
    Ok(serde_json::to_string_pretty(&equiv_check(&spec, m.as_evaluator())?)?)
}

/// Graphviz text for one of `depth3`, `slice` or `depth2`.
pub fn circuit_dot(model: &str, variant: &str) -> Result<String> {
    let Model::Nn(r) = Model::from_json(model)? else {
        return Err(Error::InvalidParams("circuits need an nn representation".into()));
    };
    let pass = match variant {
        "depth3" => hnn_to_depth3(&r, Depth3Variant::Smallest)?,
        "slice" => hnn_to_depth3_slice(&r)?,
        "depth2" => hnn_to_depth2(&r)?,
        other => return Err(Error::InvalidParams(format!("unknown circuit variant {other:?}"))),
    };
    Ok(pass.output.to_dot())
}

#[wasm_bindgen]
pub fn construct(literal: &str, target: &str) -> std::result::Result<String, JsError> {
    Ok(construct_json(literal, target)?)
}

#[wasm_bindgen]
pub fn verify(model: &str, literal: &str) -> std::result::Result<String, JsError> {
    Ok(verify_json(model, literal)?)
}

#[wasm_bindgen]
pub fn circuit(model: &str, variant: &str) -> std::result::Result<String, JsError> {
    Ok(circuit_dot(model, variant)?)
}
