//! Threshold circuits with integer weights.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};

/// A gate input: circuit input `x_i` (1-based in text) or an earlier gate (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wire {
    Input(usize),
    Gate(usize),
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Input(i) => write!(f, "x{}", i + 1),
            Wire::Gate(g) => write!(f, "g{g}"),
        }
    }
}

impl FromStr for Wire {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid wire {s:?}"));
        if let Some(i) = s.strip_prefix('x') {
            let i: usize = i.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            Ok(Wire::Input(i - 1))
        } else if let Some(g) = s.strip_prefix('g') {
            Ok(Wire::Gate(g.parse().map_err(|_| bad())?))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Wire {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Wire {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    /// Fires when `⟨w, in⟩ ≥ θ`.
    Ge,
    /// Fires when `⟨w, in⟩ = θ`.
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub inputs: Vec<(Wire, BigInt)>,
    pub threshold: BigInt,
    pub cmp: Cmp,
}

impl Gate {
    pub fn threshold(inputs: Vec<(Wire, BigInt)>, threshold: impl Into<BigInt>) -> Gate {
        Gate { inputs, threshold: threshold.into(), cmp: Cmp::Ge }
    }

    pub fn and(wires: impl IntoIterator<Item = Wire>) -> Gate {
        let inputs: Vec<_> = wires.into_iter().map(|w| (w, BigInt::from(1))).collect();
        let t = inputs.len() as i64;
        Gate::threshold(inputs, t)
    }

    pub fn or(wires: impl IntoIterator<Item = Wire>) -> Gate {
        Gate::threshold(wires.into_iter().map(|w| (w, BigInt::from(1))).collect(), 1)
    }

    /// True iff every input is 0.
    pub fn nor(wires: impl IntoIterator<Item = Wire>) -> Gate {
        Gate::threshold(wires.into_iter().map(|w| (w, BigInt::from(-1))).collect(), 0)
    }

    /// True iff some input is 0.
    pub fn nand(wires: impl IntoIterator<Item = Wire>) -> Gate {
        let inputs: Vec<_> = wires.into_iter().map(|w| (w, BigInt::from(-1))).collect();
        let t = 1 - inputs.len() as i64;
        Gate::threshold(inputs, t)
    }

    pub fn max_abs_weight(&self) -> BigInt {
        self.inputs.iter().map(|(_, w)| w.abs()).max().unwrap_or_default()
    }

    fn fires<T: PartialOrd>(&self, sum: T, threshold: T) -> bool {
        match self.cmp {
            Cmp::Ge => sum >= threshold,
            Cmp::Eq => sum == threshold,
        }
    }
}

#[derive(Clone, Debug)]
struct SmallGate {
    inputs: Vec<(Wire, i64)>,
    threshold: i64,
}

/// Gates listed in topological order; each gate reads inputs and earlier gates.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "CircuitDoc", try_from = "CircuitDoc")]
pub struct ThresholdCircuit {
    arity: usize,
    gates: Vec<Gate>,
    output: usize,
    small: Option<Vec<SmallGate>>,
}

impl PartialEq for ThresholdCircuit {
    fn eq(&self, o: &Self) -> bool {
        self.arity == o.arity && self.gates == o.gates && self.output == o.output
    }
}

impl Eq for ThresholdCircuit {}

impl ThresholdCircuit {
    pub fn new(arity: usize, gates: Vec<Gate>, output: usize) -> Result<ThresholdCircuit> {
        if output >= gates.len() {
            return Err(Error::InvalidRepr(format!("output gate g{output} does not exist")));
        }
        for (g, gate) in gates.iter().enumerate() {
            for (w, _) in &gate.inputs {
                let ok = match *w {
                    Wire::Input(i) => i < arity,
                    Wire::Gate(h) => h < g,
                };
                if !ok {
                    return Err(Error::InvalidRepr(format!("gate g{g} reads {w}, which is not available")));
                }
            }
        }
        let fits = |v: &BigInt| v.bits() <= 40;
        let small = gates
            .iter()
            .all(|g| fits(&g.threshold) && g.inputs.len() < 1 << 20 && g.inputs.iter().all(|(_, w)| fits(w)))
            .then(|| {
                gates
                    .iter()
                    .map(|g| SmallGate {
                        inputs: g.inputs.iter().map(|(w, v)| (*w, v.to_i64().unwrap())).collect(),
                        threshold: g.threshold.to_i64().unwrap(),
                    })
                    .collect()
            });
        Ok(ThresholdCircuit { arity, gates, output, small })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Number of gates; inputs are not counted.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Depth of each gate, inputs having depth 0.
    pub fn gate_depths(&self) -> Vec<usize> {
        let mut depth = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = g
                .inputs
                .iter()
                .map(|(w, _)| match *w {
                    Wire::Input(_) => 0,
                    Wire::Gate(h) => depth[h],
                })
                .max()
                .unwrap_or(0);
            depth.push(d + 1);
        }
        depth
    }

    pub fn depth(&self) -> usize {
        self.gate_depths()[self.output]
    }

    /// Number of gates reading only circuit inputs.
    pub fn first_level_gates(&self) -> usize {
        self.gate_depths().iter().filter(|&&d| d == 1).count()
    }

    pub fn max_weight(&self) -> BigInt {
        self.gates.iter().map(Gate::max_abs_weight).max().unwrap_or_default()
    }

    /// Values of every gate at `x`.
    pub fn gate_values(&self, x: &[bool]) -> Vec<bool> {
        let mut vals: Vec<bool> = Vec::with_capacity(self.gates.len());
        let read = |vals: &[bool], w: Wire| match w {
            Wire::Input(i) => x[i],
            Wire::Gate(h) => vals[h],
        };
        match &self.small {
            Some(small) => {
                for (g, s) in self.gates.iter().zip(small) {
                    let sum: i64 = s.inputs.iter().filter(|(w, _)| read(&vals, *w)).map(|(_, v)| v).sum();
                    vals.push(g.fires(sum, s.threshold));
                }
            }
            None => {
                for g in &self.gates {
                    let sum: BigInt = g.inputs.iter().filter(|(w, _)| read(&vals, *w)).map(|(_, v)| v).sum();
                    vals.push(g.fires(&sum, &g.threshold));
                }
            }
        }
        vals
    }

    /// Graphviz rendering: inputs as circles, gates as boxes labeled with their
    /// comparison, edges labeled with weights, the output doubly outlined.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=BT;\n");
        for i in 0..self.arity {
            let _ = writeln!(s, "  x{} [shape=circle];", i + 1);
        }
        for (g, gate) in self.gates.iter().enumerate() {
            let op = match gate.cmp {
                Cmp::Ge => ">=",
                Cmp::Eq => "==",
            };
            let extra = if g == self.output { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  g{g} [shape=box, label=\"g{g}: {op} {}\"{extra}];", gate.threshold);
            for (w, v) in &gate.inputs {
                let _ = writeln!(s, "  {w} -> g{g} [label=\"{v}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

impl Evaluator for ThresholdCircuit {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.gate_values(x)[self.output])
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct GateDoc {
    inputs: Vec<Wire>,
    weights: Vec<String>,
    threshold: String,
    cmp: Cmp,
}

#[derive(Clone, Serialize, Deserialize)]
struct CircuitDoc {
    model: String,
    arity: usize,
    /// Informational; recomputed on load.
    #[serde(default)]
    size: usize,
    #[serde(default)]
    depth: usize,
    #[serde(default)]
    max_weight: String,
    output: Wire,
    gates: Vec<GateDoc>,
}

impl From<ThresholdCircuit> for CircuitDoc {
    fn from(c: ThresholdCircuit) -> Self {
        CircuitDoc {
            model: "circuit".into(),
            arity: c.arity,
            size: c.size(),
            depth: c.depth(),
            max_weight: c.max_weight().to_string(),
            output: Wire::Gate(c.output),
            gates: c
                .gates
                .into_iter()
                .map(|g| GateDoc {
                    inputs: g.inputs.iter().map(|(w, _)| *w).collect(),
                    weights: g.inputs.iter().map(|(_, v)| v.to_string()).collect(),
                    threshold: g.threshold.to_string(),
                    cmp: g.cmp,
                })
                .collect(),
        }
    }
}

impl TryFrom<CircuitDoc> for ThresholdCircuit {
    type Error = Error;
    fn try_from(d: CircuitDoc) -> Result<Self> {
        if d.model != "circuit" {
            return Err(Error::InvalidRepr(format!("expected model \"circuit\", found {:?}", d.model)));
        }
        let int = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid integer {s:?}")));
        let mut gates = Vec::with_capacity(d.gates.len());
        for g in d.gates {
            if g.inputs.len() != g.weights.len() {
                return Err(Error::InvalidRepr("gate inputs and weights differ in length".into()));
            }
            let weights = g.weights.iter().map(|w| int(w)).collect::<Result<Vec<_>>>()?;
            gates.push(Gate { inputs: g.inputs.into_iter().zip(weights).collect(), threshold: int(&g.threshold)?, cmp: g.cmp });
        }
        let Wire::Gate(output) = d.output else {
            return Err(Error::InvalidRepr("the output must be a gate".into()));
        };
        ThresholdCircuit::new(d.arity, gates, output)
    }
}
