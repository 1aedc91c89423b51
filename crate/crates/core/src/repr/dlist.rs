//! Linear and exact linear decision lists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};
use crate::form::IntForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ListKind {
    /// Entries fire when `form(x) ≥ 0`.
    Ldl,
    /// Entries fire when `form(x) = 0`.
    Eldl,
}

impl ListKind {
    pub fn tag(self) -> &'static str {
        match self {
            ListKind::Ldl => "ldl",
            ListKind::Eldl => "eldl",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub form: IntForm,
    pub output: u8,
}

/// First firing entry decides; no entry firing yields 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ListDoc", try_from = "ListDoc")]
pub struct DecisionList {
    arity: usize,
    kind: ListKind,
    entries: Vec<(IntForm, bool)>,
}

impl DecisionList {
    pub fn new(arity: usize, kind: ListKind, entries: Vec<(IntForm, bool)>) -> Result<DecisionList> {
        if let Some((f, _)) = entries.iter().find(|(f, _)| f.arity() != arity) {
            return Err(Error::InvalidRepr(format!(
                "query with {} coefficients in an arity-{arity} list",
                f.arity()
            )));
        }
        Ok(DecisionList { arity, kind, entries })
    }

    pub fn kind(&self) -> ListKind {
        self.kind
    }

    pub fn entries(&self) -> &[(IntForm, bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_weight(&self) -> num_bigint::BigInt {
        self.entries.iter().map(|(f, _)| f.max_abs_coeff()).max().unwrap_or_default()
    }

    /// Index of the first firing entry.
    pub fn firing(&self, x: &[bool]) -> Option<usize> {
        self.entries.iter().position(|(f, _)| {
            let v = f.eval(x);
            match self.kind {
                ListKind::Ldl => v >= num_bigint::BigInt::default(),
                ListKind::Eldl => v == num_bigint::BigInt::default(),
            }
        })
    }
}

impl Evaluator for DecisionList {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.firing(x).is_some_and(|i| self.entries[i].1))
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct ListDoc {
    model: ListKind,
    arity: usize,
    entries: Vec<Entry>,
}

impl From<DecisionList> for ListDoc {
    fn from(d: DecisionList) -> Self {
        ListDoc {
            model: d.kind,
            arity: d.arity,
            entries: d.entries.into_iter().map(|(form, b)| Entry { form, output: b as u8 }).collect(),
        }
    }
}

impl TryFrom<ListDoc> for DecisionList {
    type Error = Error;
    fn try_from(d: ListDoc) -> Result<Self> {
        let entries = d
            .entries
            .into_iter()
            .map(|e| match e.output {
                0 | 1 => Ok((e.form, e.output == 1)),
                o => Err(Error::InvalidRepr(format!("output {o} is not 0 or 1"))),
            })
            .collect::<Result<_>>()?;
        DecisionList::new(d.arity, d.model, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eldl_examples() {
        let d = DecisionList::new(1, ListKind::Eldl, vec![(IntForm::from_i64(&[1], -1), true)]).unwrap();
        assert_eq!(d.eval(&[true]).unwrap(), Value::One);
        assert_eq!(d.eval(&[false]).unwrap(), Value::Zero);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"model":"eldl","arity":1,"entries":[{"form":{"coeffs":["1"],"const":"-1"},"output":1}]}"#
        );
        assert_eq!(serde_json::from_str::<DecisionList>(&text).unwrap(), d);
    }

    #[test]
    fn ldl_first_entry_wins() {
        let d = DecisionList::new(
            1,
            ListKind::Ldl,
            vec![(IntForm::from_i64(&[-1], 0), false), (IntForm::from_i64(&[0], 0), true)],
        )
        .unwrap();
        assert_eq!(d.eval(&[false]).unwrap(), Value::Zero);
        assert_eq!(d.eval(&[true]).unwrap(), Value::One);
        let empty = DecisionList::new(2, ListKind::Ldl, vec![]).unwrap();
        assert_eq!(empty.eval(&[true, true]).unwrap(), Value::Zero);
    }
}
