//! Anchor-count lower bounds from hypercube components.

use serde::{Deserialize, Serialize};

use crate::boolfn::{components, BoolFn};
use crate::error::{Error, Result};
use crate::oracle::equiv::equiv_check;
use crate::repr::NNRep;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub components: usize,
    pub anchors: usize,
    /// Whether `r` computes `f` on every input.
    pub computes: bool,
    /// `anchors ≥ components`; a false value with `computes` true signals a bug.
    pub holds: bool,
}

/// Compares the anchor count of a Boolean-anchor representation of `f` with
/// the number of components of `f⁻¹(1)`.
pub fn component_bound_check(f: &BoolFn, r: &NNRep) -> Result<BoundCheck> {
    if !r.is_boolean() || !r.embedding().is_identity() {
        return Err(Error::InvalidRepr(
            "component bound applies to Boolean anchors without an embedding".into(),
        ));
    }
    let computes = equiv_check(f, r)?.is_equal();
    let c = components(f);
    Ok(BoundCheck { components: c, anchors: r.anchor_count(), computes, holds: r.anchor_count() >= c })
}
