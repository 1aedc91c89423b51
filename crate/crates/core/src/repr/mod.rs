//! Representation models and their exact evaluators.

pub mod circuit;
pub mod dlist;
pub mod ineq;
pub mod nn;
pub mod sym;

use serde::{Deserialize, Serialize};

pub use circuit::{Cmp, Gate, ThresholdCircuit, Wire};
pub use dlist::{DecisionList, ListKind};
pub use ineq::{KStat, LabeledKStat, MpPTF};
pub use nn::{int_point, BitComplexity, KNNRep, NNRep, Point};
pub use sym::{SymAndCircuit, SymMajCircuit};

use crate::error::{Error, Result, MAX_ARITY};
use crate::eval::{map_cube, Evaluator, Value};

/// Any representation document, dispatched on its `"model"` tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Nn(NNRep),
    Knn(KNNRep),
    Mpptf(MpPTF),
    Kstat(KStat),
    LabeledKstat(LabeledKStat),
    DecisionList(DecisionList),
    Circuit(ThresholdCircuit),
    SymMaj(SymMajCircuit),
    SymAnd(SymAndCircuit),
}

impl Model {
    pub fn tag(&self) -> &'static str {
        match self {
            Model::Nn(_) => "nn",
            Model::Knn(_) => "knn",
            Model::Mpptf(_) => "mpptf",
            Model::Kstat(_) => "kstat",
            Model::LabeledKstat(_) => "labeled_kstat",
            Model::DecisionList(d) => d.kind().tag(),
            Model::Circuit(_) => "circuit",
            Model::SymMaj(_) => "sym_maj",
            Model::SymAnd(_) => "sym_and",
        }
    }

    pub fn as_evaluator(&self) -> &dyn Evaluator {
        match self {
            Model::Nn(r) => r,
            Model::Knn(r) => r,
            Model::Mpptf(r) => r,
            Model::Kstat(r) => r,
            Model::LabeledKstat(r) => r,
            Model::DecisionList(r) => r,
            Model::Circuit(r) => r,
            Model::SymMaj(r) => r,
            Model::SymAnd(r) => r,
        }
    }

    pub fn from_json(text: &str) -> Result<Model> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let tag = v
            .get("model")
            .and_then(|t| t.as_str())
            .ok_or_else(|| Error::Parse("document has no \"model\" tag".into()))?
            .to_string();
        let m = match tag.as_str() {
            "nn" => Model::Nn(serde_json::from_value(v)?),
            "knn" => Model::Knn(serde_json::from_value(v)?),
            "mpptf" => Model::Mpptf(serde_json::from_value(v)?),
            "kstat" => Model::Kstat(serde_json::from_value(v)?),
            "labeled_kstat" => Model::LabeledKstat(serde_json::from_value(v)?),
            "ldl" | "eldl" => Model::DecisionList(serde_json::from_value(v)?),
            "circuit" => Model::Circuit(serde_json::from_value(v)?),
            "sym_maj" => Model::SymMaj(serde_json::from_value(v)?),
            "sym_and" => Model::SymAnd(serde_json::from_value(v)?),
            other => return Err(Error::Parse(format!("unknown model {other:?}"))),
        };
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let s = match self {
            Model::Nn(r) => serde_json::to_string(r),
            Model::Knn(r) => serde_json::to_string(r),
            Model::Mpptf(r) => serde_json::to_string(r),
            Model::Kstat(r) => serde_json::to_string(r),
            Model::LabeledKstat(r) => serde_json::to_string(r),
            Model::DecisionList(r) => serde_json::to_string(r),
            Model::Circuit(r) => serde_json::to_string(r),
            Model::SymMaj(r) => serde_json::to_string(r),
            Model::SymAnd(r) => serde_json::to_string(r),
        };
        s.expect("representations always serialize")
    }
}

macro_rules! model_from {
    ($($t:ty => $v:ident),*) => {
        $(impl From<$t> for Model {
            fn from(r: $t) -> Model {
                Model::$v(r)
            }
        })*
    };
}

model_from!(NNRep => Nn, KNNRep => Knn, MpPTF => Mpptf, KStat => Kstat, LabeledKStat => LabeledKstat,
    DecisionList => DecisionList, ThresholdCircuit => Circuit, SymMajCircuit => SymMaj, SymAndCircuit => SymAnd);

impl Evaluator for Model {
    fn arity(&self) -> usize {
        self.as_evaluator().arity()
    }
    fn value(&self, x: &[bool]) -> Value {
        self.as_evaluator().value(x)
    }
}

/// Inputs at which a representation leaves its output undefined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellDefinedReport {
    pub inputs_checked: u64,
    /// Indices `Σ x_i 2^(i-1)` of undefined inputs, ascending.
    pub undefined: Vec<u64>,
}

impl WellDefinedReport {
    pub fn is_well_defined(&self) -> bool {
        self.undefined.is_empty()
    }
}

/// Exhaustive scan for undefined outputs.
pub fn well_defined<E: Evaluator + ?Sized>(r: &E) -> Result<WellDefinedReport> {
    let n = r.arity();
    if n > MAX_ARITY {
        return Err(Error::ArityCap(n));
    }
    let flags = map_cube(n, |i| r.value_at(i) == Value::Undefined);
    let undefined = flags.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i as u64).collect();
    Ok(WellDefinedReport { inputs_checked: 1 << n, undefined })
}
