//! Size and weight reports for conversion passes.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::repr::Model;

/// Size metrics of a representation, recomputed from the object itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bit_complexity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boolean_anchors: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_left: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_right: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub list_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_level_gates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clauses: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<String>,
}

impl Metrics {
    pub fn of(m: &Model) -> Metrics {
        let arity = Some(m.as_evaluator().arity());
        match m {
            Model::Nn(r) => Metrics {
                arity,
                anchors: Some(r.anchor_count()),
                positive: Some(r.positive().len()),
                negative: Some(r.negative().len()),
                dim: Some(r.dim()),
                bit_complexity: Some(r.bit_complexity().bits),
                boolean_anchors: Some(r.is_boolean()),
                ..Default::default()
            },
            Model::Knn(r) => Metrics {
                arity,
                anchors: Some(r.anchor_count()),
                positive: Some(r.positive().len()),
                negative: Some(r.negative().len()),
                dim: Some(r.dim()),
                bit_complexity: Some(r.bit_complexity().bits),
                boolean_anchors: Some(r.is_boolean()),
                k: Some(r.k()),
                ..Default::default()
            },
            Model::Mpptf(r) => Metrics {
                arity,
                terms: Some(r.terms()),
                left: Some(r.left().len()),
                right: Some(r.right().len()),
                max_weight: Some(r.max_weight().to_string()),
                ..Default::default()
            },
            Model::Kstat(r) => Metrics {
                arity,
                forms: Some(r.terms()),
                left: Some(r.left().len()),
                right: Some(r.right().len()),
                k_left: Some(r.k_left()),
                k_right: Some(r.k_right()),
                max_weight: Some(r.max_weight().to_string()),
                ..Default::default()
            },
            Model::LabeledKstat(r) => Metrics {
                arity,
                forms: Some(r.forms().len()),
                k: Some(r.k()),
                max_weight: Some(r.max_weight().to_string()),
                ..Default::default()
            },
            Model::DecisionList(r) => Metrics {
                arity,
                list_length: Some(r.len()),
                max_weight: Some(r.max_weight().to_string()),
                ..Default::default()
            },
            Model::Circuit(r) => Metrics {
                arity,
                gates: Some(r.size()),
                first_level_gates: Some(r.first_level_gates()),
                depth: Some(r.depth()),
                max_weight: Some(r.max_weight().to_string()),
                ..Default::default()
            },
            Model::SymMaj(r) => Metrics { arity, gates: Some(r.gates().len()), ..Default::default() },
            Model::SymAnd(r) => Metrics { arity, clauses: Some(r.clauses().len()), ..Default::default() },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// The metric must equal the stated count.
    Eq,
    /// The metric must not exceed the stated limit.
    Le,
}

/// A size guarantee checked against the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub relation: Relation,
    pub limit: String,
    pub actual: String,
    pub met: bool,
}

impl BoundCheck {
    pub fn eq<T: PartialEq + Display>(name: &str, limit: T, actual: T) -> BoundCheck {
        BoundCheck {
            name: name.into(),
            relation: Relation::Eq,
            met: actual == limit,
            limit: limit.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn le<T: PartialOrd + Display>(name: &str, limit: T, actual: T) -> BoundCheck {
        BoundCheck {
            name: name.into(),
            relation: Relation::Le,
            met: actual <= limit,
            limit: limit.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassReport {
    pub pass: String,
    pub source: String,
    pub target: String,
    pub source_metrics: Metrics,
    pub metrics: Metrics,
    pub bounds: Vec<BoundCheck>,
}

impl PassReport {
    pub fn new(pass: &str, source: &Model, target: &Model, bounds: Vec<BoundCheck>) -> PassReport {
        PassReport {
            pass: pass.into(),
            source: source.tag().into(),
            target: target.tag().into(),
            source_metrics: Metrics::of(source),
            metrics: Metrics::of(target),
            bounds,
        }
    }

    pub fn all_met(&self) -> bool {
        self.bounds.iter().all(|b| b.met)
    }
}

/// Output of a pass together with its report.
#[derive(Clone, Debug)]
pub struct Pass<T> {
    pub output: T,
    pub report: PassReport,
}

impl<T: Clone + Into<Model>> Pass<T> {
    pub(crate) fn build<S: Clone + Into<Model>>(name: &str, source: &S, output: T, bounds: Vec<BoundCheck>) -> Pass<T> {
        let report = PassReport::new(name, &source.clone().into(), &output.clone().into(), bounds);
        Pass { output, report }
    }
}
