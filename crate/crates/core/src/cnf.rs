//! CNF and DNF formulas over signed literals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaKind {
    Cnf,
    Dnf,
}

/// Clauses are lists of literals; `i` stands for `x_i` and `-i` for its negation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CnfDoc")]
pub struct CnfDnf {
    pub arity: usize,
    pub kind: FormulaKind,
    pub clauses: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct CnfDoc {
    arity: usize,
    kind: FormulaKind,
    clauses: Vec<Vec<i64>>,
}

impl TryFrom<CnfDoc> for CnfDnf {
    type Error = Error;
    fn try_from(d: CnfDoc) -> Result<Self> {
        CnfDnf::new(d.arity, d.kind, d.clauses)
    }
}

impl CnfDnf {
    pub fn new(arity: usize, kind: FormulaKind, clauses: Vec<Vec<i64>>) -> Result<CnfDnf> {
        for clause in &clauses {
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > arity {
                    return Err(Error::InvalidParams(format!(
                        "literal {lit} is outside variables 1..={arity}"
                    )));
                }
                if clause.contains(&-lit) {
                    return Err(Error::InvalidParams(format!(
                        "clause {clause:?} contains x{v} and its negation"
                    )));
                }
            }
        }
        Ok(CnfDnf { arity, kind, clauses })
    }

    pub fn literal(x: &[bool], lit: i64) -> bool {
        let v = x[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    pub fn eval_point(&self, x: &[bool]) -> bool {
        match self.kind {
            FormulaKind::Cnf => self.clauses.iter().all(|c| c.iter().any(|&l| Self::literal(x, l))),
            FormulaKind::Dnf => self.clauses.iter().any(|c| c.iter().all(|&l| Self::literal(x, l))),
        }
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }
}

/// `standard CNF/DNF semantics`, arity-checked.
pub fn cnf_eval(c: &CnfDnf, x: &[bool]) -> Result<bool> {
    crate::eval::check_arity(c.arity, x.len())?;
    Ok(c.eval_point(x))
}

impl Evaluator for CnfDnf {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.eval_point(x))
    }
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// CNF that holds iff every consecutive block of `k` variables has weight exactly `k/2`.
///
/// Each block contributes, for every `(k/2+1)`-subset of its variables, one clause
/// forbidding all ones and one forbidding all zeros.
pub fn exact_half_cnf(n: usize, k: usize) -> Result<CnfDnf> {
    if k == 0 || !k.is_multiple_of(2) || !n.is_multiple_of(k) {
        return Err(Error::InvalidParams(format!("block size {k} must be even and divide {n}")));
    }
    let mut clauses = Vec::new();
    for block in 0..n / k {
        let vars: Vec<usize> = (block * k + 1..=block * k + k).collect();
        for s in subsets(&vars, k / 2 + 1) {
            clauses.push(s.iter().map(|&v| -(v as i64)).collect());
            clauses.push(s.iter().map(|&v| v as i64).collect());
        }
    }
    CnfDnf::new(n, FormulaKind::Cnf, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BoolFn;

    #[test]
    fn semantics() {
        let c = CnfDnf::new(2, FormulaKind::Cnf, vec![vec![1, -2]]).unwrap();
        assert!(!cnf_eval(&c, &[false, true]).unwrap());
        let d = CnfDnf::new(2, FormulaKind::Dnf, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        assert!(cnf_eval(&d, &[true, true]).unwrap());
        let empty = CnfDnf::new(3, FormulaKind::Cnf, vec![]).unwrap();
        assert!(cnf_eval(&empty, &[false, true, false]).unwrap());
        assert!(cnf_eval(&empty, &[false]).is_err());
    }

    #[test]
    fn rejects_bad_clauses() {
        assert!(CnfDnf::new(2, FormulaKind::Cnf, vec![vec![1, -1]]).is_err());
        assert!(CnfDnf::new(2, FormulaKind::Cnf, vec![vec![3]]).is_err());
        assert!(CnfDnf::new(2, FormulaKind::Cnf, vec![vec![0]]).is_err());
    }

    #[test]
    fn json_shape() {
        let c = CnfDnf::new(2, FormulaKind::Dnf, vec![vec![1, -2]]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"arity":2,"kind":"dnf","clauses":[[1,-2]]}"#);
        assert_eq!(serde_json::from_str::<CnfDnf>(&s).unwrap(), c);
        assert!(serde_json::from_str::<CnfDnf>(r#"{"arity":1,"kind":"cnf","clauses":[[2]]}"#).is_err());
    }

    #[test]
    fn exact_half_counts() {
        let count = |n, k| BoolFn::tabulate(&exact_half_cnf(n, k).unwrap()).unwrap().count_ones();
        assert_eq!(count(2, 2), 2);
        assert_eq!(count(4, 2), 4);
        assert_eq!(count(4, 4), 6);
        let f = BoolFn::tabulate(&exact_half_cnf(2, 2).unwrap()).unwrap();
        assert_eq!(f.ones().collect::<Vec<_>>(), vec![1, 2]);
        assert!(exact_half_cnf(6, 4).is_err());
        assert!(exact_half_cnf(3, 3).is_err());
    }
}
