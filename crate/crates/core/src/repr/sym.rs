//! Two-level circuits with a symmetric top gate: SYM∘MAJ and SYM∘AND.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cnf::CnfDnf;
use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};
use crate::form::IntForm;

fn check_top(top: &[bool], s: usize) -> Result<()> {
    if top.len() == s + 1 {
        Ok(())
    } else {
        Err(Error::InvalidRepr(format!(
            "symmetric top gate needs {} entries (one per count 0..={s}), got {}",
            s + 1,
            top.len()
        )))
    }
}

fn bits_to_u8(b: &[bool]) -> Vec<u8> {
    b.iter().map(|&v| v as u8).collect()
}

fn u8_to_bits(b: &[u8]) -> Result<Vec<bool>> {
    b.iter()
        .map(|&v| match v {
            0 | 1 => Ok(v == 1),
            _ => Err(Error::InvalidRepr(format!("table entry {v} is not 0 or 1"))),
        })
        .collect()
}

/// A symmetric function of threshold gates. Gate `i` outputs 1 iff `L_i(x) > 0`;
/// the top gate outputs `top[#firing gates]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SymMajDoc", try_from = "SymMajDoc")]
pub struct SymMajCircuit {
    arity: usize,
    gates: Vec<IntForm>,
    top: Vec<bool>,
}

impl SymMajCircuit {
    pub fn new(arity: usize, gates: Vec<IntForm>, top: Vec<bool>) -> Result<SymMajCircuit> {
        if gates.iter().any(|g| g.arity() != arity) {
            return Err(Error::InvalidRepr("gate arity differs from circuit arity".into()));
        }
        check_top(&top, gates.len())?;
        Ok(SymMajCircuit { arity, gates, top })
    }

    /// Builds from gates `⟨w, x⟩ ≥ θ`, shifting each to `⟨w, x⟩ − θ + 1 > 0`.
    pub fn from_threshold_gates(arity: usize, gates: &[(Vec<BigInt>, BigInt)], top: Vec<bool>) -> Result<SymMajCircuit> {
        let forms = gates
            .iter()
            .map(|(w, t)| IntForm::new(w.clone(), BigInt::from(1) - t))
            .collect();
        SymMajCircuit::new(arity, forms, top)
    }

    pub fn gates(&self) -> &[IntForm] {
        &self.gates
    }

    pub fn top(&self) -> &[bool] {
        &self.top
    }
}

impl Evaluator for SymMajCircuit {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        let count = self.gates.iter().filter(|g| g.eval(x) > BigInt::zero()).count();
        Value::from_bool(self.top[count])
    }
}

/// A symmetric function of conjunctions. Each clause is a nonempty list of
/// signed literals (`i` for `x_i`, `-i` for its negation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SymAndDoc", try_from = "SymAndDoc")]
pub struct SymAndCircuit {
    arity: usize,
    clauses: Vec<Vec<i64>>,
    top: Vec<bool>,
}

impl SymAndCircuit {
    pub fn new(arity: usize, clauses: Vec<Vec<i64>>, top: Vec<bool>) -> Result<SymAndCircuit> {
        if clauses.is_empty() {
            return Err(Error::InvalidRepr("at least one clause is required".into()));
        }
        if clauses.iter().any(Vec::is_empty) {
            return Err(Error::InvalidRepr("clauses must be nonempty".into()));
        }
        CnfDnf::new(arity, crate::cnf::FormulaKind::Dnf, clauses.clone())?;
        check_top(&top, clauses.len())?;
        Ok(SymAndCircuit { arity, clauses, top })
    }

    /// Inner product mod 2 of `x_1..x_n` with `x_{n+1}..x_{2n}`.
    pub fn inner_product(n: usize) -> SymAndCircuit {
        let clauses = (1..=n as i64).map(|i| vec![i, i + n as i64]).collect();
        let top = (0..=n).map(|c| c % 2 == 1).collect();
        SymAndCircuit::new(2 * n, clauses, top).expect("valid preset")
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    pub fn top(&self) -> &[bool] {
        &self.top
    }

    pub fn satisfied(&self, x: &[bool]) -> usize {
        self.clauses.iter().filter(|c| c.iter().all(|&l| CnfDnf::literal(x, l))).count()
    }
}

impl Evaluator for SymAndCircuit {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.top[self.satisfied(x)])
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct SymMajDoc {
    model: String,
    arity: usize,
    gates: Vec<IntForm>,
    top: Vec<u8>,
}

impl From<SymMajCircuit> for SymMajDoc {
    fn from(c: SymMajCircuit) -> Self {
        SymMajDoc { model: "sym_maj".into(), arity: c.arity, gates: c.gates, top: bits_to_u8(&c.top) }
    }
}

impl TryFrom<SymMajDoc> for SymMajCircuit {
    type Error = Error;
    fn try_from(d: SymMajDoc) -> Result<Self> {
        if d.model != "sym_maj" {
            return Err(Error::InvalidRepr(format!("expected model \"sym_maj\", found {:?}", d.model)));
        }
        SymMajCircuit::new(d.arity, d.gates, u8_to_bits(&d.top)?)
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct SymAndDoc {
    model: String,
    arity: usize,
    clauses: Vec<Vec<i64>>,
    top: Vec<u8>,
}

impl From<SymAndCircuit> for SymAndDoc {
    fn from(c: SymAndCircuit) -> Self {
        SymAndDoc { model: "sym_and".into(), arity: c.arity, clauses: c.clauses, top: bits_to_u8(&c.top) }
    }
}

impl TryFrom<SymAndDoc> for SymAndCircuit {
    type Error = Error;
    fn try_from(d: SymAndDoc) -> Result<Self> {
        if d.model != "sym_and" {
            return Err(Error::InvalidRepr(format!("expected model \"sym_and\", found {:?}", d.model)));
        }
        SymAndCircuit::new(d.arity, d.clauses, u8_to_bits(&d.top)?)
    }
}
