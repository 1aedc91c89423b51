//! Threshold circuits computing Boolean-anchor nearest-neighbor representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::IntForm;
use crate::repr::nn::distance_form;
use crate::repr::{Gate, NNRep, ThresholdCircuit, Wire};
use crate::transforms::knn::require_well_defined;
use crate::transforms::report::{BoundCheck, Pass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Depth3Variant {
    /// OR over positives of the AND over negatives of `[Δ(x,q) > Δ(x,p)]`.
    OrAnd,
    /// AND over negatives of the OR over positives of the same comparators.
    AndOr,
    /// Whichever of the two has fewer gates.
    Smallest,
}

/// Gate firing iff `form(x) ≥ 0`, with weights divided by their gcd.
fn nonneg_gate(form: &IntForm) -> Gate {
    let g = form.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let inputs = form
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (Wire::Input(i), c / &g))
        .collect();
    Gate::threshold(inputs, (-&form.constant).div_ceil(&g))
}

/// Hamming-distance forms of the positive and negative anchors.
fn hamming_forms(r: &NNRep) -> Result<(Vec<IntForm>, Vec<IntForm>)> {
    if !r.is_boolean() {
        return Err(Error::InvalidParams("circuit emission needs Boolean anchors".into()));
    }
    let forms = |pts: &[Vec<_>]| -> Vec<IntForm> {
        pts.iter()
            .map(|p| distance_form(r.embedding(), p).to_integer().expect("Boolean anchors give integer distances"))
            .collect()
    };
    Ok((forms(r.positive()), forms(r.negative())))
}

struct Builder {
    gates: Vec<Gate>,
}

impl Builder {
    fn push(&mut self, g: Gate) -> Wire {
        self.gates.push(g);
        Wire::Gate(self.gates.len() - 1)
    }

    fn finish(self, arity: usize) -> Result<ThresholdCircuit> {
        let out = self.gates.len() - 1;
        ThresholdCircuit::new(arity, self.gates, out)
    }
}

/// Depth-three circuit over pairwise comparators `[Δ(x,q) - Δ(x,p) ≥ 1]`.
pub fn hnn_to_depth3(r: &NNRep, variant: Depth3Variant) -> Result<Pass<ThresholdCircuit>> {
    let (dp, dq) = hamming_forms(r)?;
    require_well_defined(r)?;
    let (np, nq) = (dp.len(), dq.len());
    let variant = match variant {
        Depth3Variant::Smallest if nq < np => Depth3Variant::AndOr,
        Depth3Variant::Smallest => Depth3Variant::OrAnd,
        v => v,
    };
    let mut b = Builder { gates: Vec::new() };
    let mut cmp = vec![vec![Wire::Input(0); nq]; np];
    for (i, p) in dp.iter().enumerate() {
        for (j, q) in dq.iter().enumerate() {
            cmp[i][j] = b.push(nonneg_gate(&q.plus(&p.negated()).shift(&BigInt::from(-1))));
        }
    }
    let middle: Vec<Wire> = match variant {
        Depth3Variant::AndOr => (0..nq).map(|j| b.push(Gate::or((0..np).map(|i| cmp[i][j])))).collect(),
        _ => (0..np).map(|i| b.push(Gate::and(cmp[i].iter().copied()))).collect(),
    };
    let (top, name) = match variant {
        Depth3Variant::AndOr => (Gate::and(middle), "hnn-to-depth3-and-or"),
        _ => (Gate::or(middle), "hnn-to-depth3-or-and"),
    };
    b.push(top);
    let out = b.finish(r.arity())?;
    let inner = if variant == Depth3Variant::AndOr { nq } else { np };
    let bounds = vec![
        BoundCheck::eq("gates = |P||N| + middle + 1", np * nq + inner + 1, out.size()),
        BoundCheck::le("first-level weight <= dim", BigInt::from(r.dim()), first_level_weight(&out)),
    ];
    Ok(Pass::build(name, r, out, bounds))
}

fn first_level_weight(c: &ThresholdCircuit) -> BigInt {
    c.gates()
        .iter()
        .zip(c.gate_depths())
        .filter(|(_, d)| *d == 1)
        .map(|(g, _)| g.max_abs_weight())
        .max()
        .unwrap_or_default()
}

/// `[Δ ≤ i]` and `[Δ ≥ i]` as threshold gates.
fn at_most(d: &IntForm, i: usize) -> Gate {
    nonneg_gate(&d.negated().shift(&BigInt::from(i)))
}

fn at_least(d: &IntForm, i: usize) -> Gate {
    nonneg_gate(&d.shift(&BigInt::from(-(i as i64))))
}

/// OR over radii `i ≤ dim` and positives `p` of `[Δ(x,p) ≤ i] ∧ ⋀_q [Δ(x,q) ≥ i]`.
pub fn hnn_to_depth3_slice(r: &NNRep) -> Result<Pass<ThresholdCircuit>> {
    let (dp, dq) = hamming_forms(r)?;
    require_well_defined(r)?;
    let d = r.dim();
    let mut b = Builder { gates: Vec::new() };
    let near: Vec<Vec<Wire>> = dp.iter().map(|p| (0..=d).map(|i| b.push(at_most(p, i))).collect()).collect();
    let far: Vec<Vec<Wire>> = dq.iter().map(|q| (0..=d).map(|i| b.push(at_least(q, i))).collect()).collect();
    let mut terms = Vec::new();
    for i in 0..=d {
        for p in &near {
            terms.push(b.push(Gate::and(std::iter::once(p[i]).chain(far.iter().map(|q| q[i])))));
        }
    }
    b.push(Gate::or(terms));
    let out = b.finish(r.arity())?;
    let m = dp.len() + dq.len();
    let bounds = vec![BoundCheck::le("gates <= (dim+1)m + (dim+1)|P| + 1", (d + 1) * m + (d + 1) * dp.len() + 1, out.size())];
    Ok(Pass::build("hnn-to-depth3-slice", r, out, bounds))
}

/// One threshold gate over the `[Δ ≤ i]`, `[Δ ≥ i]` indicators. The indicator
/// `[Δ = i]` is `[Δ ≤ i] + [Δ ≥ i] - 1`; at `i = 0` and `i = dim` one of the two
/// is constant and is dropped. Distance `i` to a positive anchor weighs
/// `m^(3(dim-i)+1)`, to a negative anchor `-m^(3(dim-i))`.
pub fn hnn_to_depth2(r: &NNRep) -> Result<Pass<ThresholdCircuit>> {
    let (dp, dq) = hamming_forms(r)?;
    require_well_defined(r)?;
    let d = r.dim();
    let m = BigInt::from(dp.len() + dq.len());
    let mut b = Builder { gates: Vec::new() };
    let mut top = Vec::new();
    let mut constant = BigInt::zero();
    let anchors = dp.iter().map(|f| (f, true)).chain(dq.iter().map(|f| (f, false)));
    for (f, positive) in anchors {
        for i in 0..=d {
            let exp = 3 * (d - i) as u32 + positive as u32;
            let w: BigInt = Pow::pow(&m, exp);
            let w = if positive { w } else { -w };
            if i < d {
                top.push((b.push(at_most(f, i)), w.clone()));
            }
            if i > 0 {
                top.push((b.push(at_least(f, i)), w.clone()));
            }
            if 0 < i && i < d {
                constant -= &w;
            }
        }
    }
    b.push(Gate::threshold(top, -constant));
    let out = b.finish(r.arity())?;
    let first = out.first_level_gates();
    let bounds = vec![
        BoundCheck::eq("first-level gates = 2 dim m", 2 * d * (dp.len() + dq.len()), first),
        BoundCheck::eq("gates = 2 dim m + 1", 2 * d * (dp.len() + dq.len()) + 1, out.size()),
    ];
    Ok(Pass::build("hnn-to-depth2", r, out, bounds))
}
