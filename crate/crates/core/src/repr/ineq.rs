//! Inequality models over integer forms: min-plus threshold functions,
//! two-sided k-statistics and labeled k-statistics.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};
use crate::form::{with_values, FormBank, IntForm};

fn check_forms(arity: usize, forms: &[IntForm]) -> Result<()> {
    match forms.iter().find(|f| f.arity() != arity) {
        Some(f) => Err(Error::InvalidRepr(format!(
            "form with {} coefficients in an arity-{arity} model",
            f.arity()
        ))),
        None => Ok(()),
    }
}

fn check_model(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::InvalidRepr(format!("expected model {expected:?}, found {found:?}")))
    }
}

fn max_weight<'a>(forms: impl IntoIterator<Item = &'a IntForm>) -> BigInt {
    forms.into_iter().map(IntForm::max_abs_coeff).max().unwrap_or_default()
}

/// `min_i L_i(x) ≤ min_j R_j(x)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "TwoSidedDoc", try_from = "TwoSidedDoc")]
pub struct MpPTF {
    arity: usize,
    left: Vec<IntForm>,
    right: Vec<IntForm>,
    bank: FormBank,
}

impl PartialEq for MpPTF {
    fn eq(&self, o: &Self) -> bool {
        self.arity == o.arity && self.left == o.left && self.right == o.right
    }
}

impl Eq for MpPTF {}

impl MpPTF {
    pub fn new(arity: usize, left: Vec<IntForm>, right: Vec<IntForm>) -> Result<MpPTF> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidRepr("both sides need at least one form".into()));
        }
        check_forms(arity, &left)?;
        check_forms(arity, &right)?;
        let bank = FormBank::new(left.iter().chain(&right));
        Ok(MpPTF { arity, left, right, bank })
    }

    pub fn left(&self) -> &[IntForm] {
        &self.left
    }

    pub fn right(&self) -> &[IntForm] {
        &self.right
    }

    pub fn terms(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Largest absolute coefficient (constants excluded).
    pub fn max_weight(&self) -> BigInt {
        max_weight(self.left.iter().chain(&self.right))
    }

    /// Largest absolute coefficient or constant, at least 1.
    pub fn max_entry(&self) -> BigInt {
        self.left
            .iter()
            .chain(&self.right)
            .flat_map(|f| f.coeffs.iter().chain([&f.constant]))
            .map(num_traits::Signed::abs)
            .max()
            .unwrap_or_default()
            .max(BigInt::from(1))
    }
}

impl Evaluator for MpPTF {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        let l = self.left.len();
        with_values!(self.bank.values(self.left.iter().chain(&self.right), x), |v| {
            Value::from_bool(v[..l].iter().min() <= v[l..].iter().min())
        })
    }
}

/// `(L(x))_(k_l) < (R(x))_(k_r)`, comparing order statistics of the two sides.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "TwoSidedDoc", try_from = "TwoSidedDoc")]
pub struct KStat {
    arity: usize,
    left: Vec<IntForm>,
    right: Vec<IntForm>,
    k_left: usize,
    k_right: usize,
    bank: FormBank,
}

impl PartialEq for KStat {
    fn eq(&self, o: &Self) -> bool {
        self.arity == o.arity
            && self.left == o.left
            && self.right == o.right
            && self.k_left == o.k_left
            && self.k_right == o.k_right
    }
}

impl Eq for KStat {}

impl KStat {
    pub fn new(arity: usize, left: Vec<IntForm>, right: Vec<IntForm>, k_left: usize, k_right: usize) -> Result<KStat> {
        check_forms(arity, &left)?;
        check_forms(arity, &right)?;
        if k_left == 0 || k_left > left.len() || k_right == 0 || k_right > right.len() {
            return Err(Error::InvalidRepr(format!(
                "statistics ({k_left}, {k_right}) out of range for {} and {} forms",
                left.len(),
                right.len()
            )));
        }
        let bank = FormBank::new(left.iter().chain(&right));
        Ok(KStat { arity, left, right, k_left, k_right, bank })
    }

    pub fn left(&self) -> &[IntForm] {
        &self.left
    }

    pub fn right(&self) -> &[IntForm] {
        &self.right
    }

    pub fn k_left(&self) -> usize {
        self.k_left
    }

    pub fn k_right(&self) -> usize {
        self.k_right
    }

    pub fn terms(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn max_weight(&self) -> BigInt {
        max_weight(self.left.iter().chain(&self.right))
    }
}

impl Evaluator for KStat {
    fn arity(&self) -> usize {
        self.arity
    }
    // the body is shared by the i64 and BigInt paths
    #[allow(clippy::clone_on_copy)]
    fn value(&self, x: &[bool]) -> Value {
        let l = self.left.len();
        with_values!(self.bank.values(self.left.iter().chain(&self.right), x), |v| {
            let mut v = v;
            let (a, b) = v.split_at_mut(l);
            let a = a.select_nth_unstable(self.k_left - 1).1.clone();
            let b = b.select_nth_unstable(self.k_right - 1).1.clone();
            Value::from_bool(a < b)
        })
    }
}

/// One list of forms with labels: the output is 1 iff some form attaining the
/// k-th smallest value carries label 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "LabeledDoc", try_from = "LabeledDoc")]
pub struct LabeledKStat {
    arity: usize,
    forms: Vec<IntForm>,
    labels: Vec<bool>,
    k: usize,
    bank: FormBank,
}

impl PartialEq for LabeledKStat {
    fn eq(&self, o: &Self) -> bool {
        self.arity == o.arity && self.forms == o.forms && self.labels == o.labels && self.k == o.k
    }
}

impl Eq for LabeledKStat {}

impl LabeledKStat {
    pub fn new(arity: usize, forms: Vec<IntForm>, labels: Vec<bool>, k: usize) -> Result<LabeledKStat> {
        check_forms(arity, &forms)?;
        if forms.len() != labels.len() {
            return Err(Error::InvalidRepr(format!("{} forms but {} labels", forms.len(), labels.len())));
        }
        if k == 0 || k > forms.len() {
            return Err(Error::InvalidRepr(format!("k = {k} out of range for {} forms", forms.len())));
        }
        let bank = FormBank::new(&forms);
        Ok(LabeledKStat { arity, forms, labels, k, bank })
    }

    pub fn forms(&self) -> &[IntForm] {
        &self.forms
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_weight(&self) -> BigInt {
        max_weight(&self.forms)
    }

    /// Values of all forms at `x`, for callers inspecting tie structure.
    pub fn values(&self, x: &[bool]) -> Vec<BigInt> {
        self.forms.iter().map(|f| f.eval(x)).collect()
    }
}

impl Evaluator for LabeledKStat {
    fn arity(&self) -> usize {
        self.arity
    }
    // the body is shared by the i64 and BigInt paths
    #[allow(clippy::clone_on_copy)]
    fn value(&self, x: &[bool]) -> Value {
        with_values!(self.bank.values(&self.forms, x), |v| {
            let mut sorted = v.clone();
            let kth = sorted.select_nth_unstable(self.k - 1).1.clone();
            Value::from_bool(v.iter().zip(&self.labels).any(|(val, &lab)| lab && *val == kth))
        })
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct TwoSidedDoc {
    model: String,
    arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k_left: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k_right: Option<usize>,
    left: Vec<IntForm>,
    right: Vec<IntForm>,
}

impl From<MpPTF> for TwoSidedDoc {
    fn from(m: MpPTF) -> Self {
        TwoSidedDoc { model: "mpptf".into(), arity: m.arity, k_left: None, k_right: None, left: m.left, right: m.right }
    }
}

impl From<KStat> for TwoSidedDoc {
    fn from(s: KStat) -> Self {
        TwoSidedDoc {
            model: "kstat".into(),
            arity: s.arity,
            k_left: Some(s.k_left),
            k_right: Some(s.k_right),
            left: s.left,
            right: s.right,
        }
    }
}

impl TryFrom<TwoSidedDoc> for MpPTF {
    type Error = Error;
    fn try_from(d: TwoSidedDoc) -> Result<Self> {
        check_model(&d.model, "mpptf")?;
        if d.k_left.is_some() || d.k_right.is_some() {
            return Err(Error::InvalidRepr("an mpptf document has no statistics".into()));
        }
        MpPTF::new(d.arity, d.left, d.right)
    }
}

impl TryFrom<TwoSidedDoc> for KStat {
    type Error = Error;
    fn try_from(d: TwoSidedDoc) -> Result<Self> {
        check_model(&d.model, "kstat")?;
        let missing = || Error::InvalidRepr("kstat document needs k_left and k_right".into());
        KStat::new(d.arity, d.left, d.right, d.k_left.ok_or_else(missing)?, d.k_right.ok_or_else(missing)?)
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct LabeledDoc {
    model: String,
    arity: usize,
    k: usize,
    forms: Vec<IntForm>,
    labels: Vec<u8>,
}

impl From<LabeledKStat> for LabeledDoc {
    fn from(s: LabeledKStat) -> Self {
        LabeledDoc {
            model: "labeled_kstat".into(),
            arity: s.arity,
            k: s.k,
            forms: s.forms,
            labels: s.labels.iter().map(|&b| b as u8).collect(),
        }
    }
}

impl TryFrom<LabeledDoc> for LabeledKStat {
    type Error = Error;
    fn try_from(d: LabeledDoc) -> Result<Self> {
        check_model(&d.model, "labeled_kstat")?;
        let labels = d
            .labels
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(Error::InvalidRepr(format!("label {b} is not 0 or 1"))),
            })
            .collect::<Result<_>>()?;
        LabeledKStat::new(d.arity, d.forms, labels, d.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &[i64], k: i64) -> IntForm {
        IntForm::from_i64(c, k)
    }

    #[test]
    fn mpptf_examples() {
        let m = MpPTF::new(1, vec![f(&[1], 0)], vec![f(&[-1], 1)]).unwrap();
        assert_eq!(m.eval(&[false]).unwrap(), Value::One);
        assert_eq!(m.eval(&[true]).unwrap(), Value::Zero);
        let tie = MpPTF::new(1, vec![f(&[1], 0)], vec![f(&[1], 0)]).unwrap();
        assert_eq!(tie.eval(&[false]).unwrap(), Value::One);
        assert_eq!(tie.eval(&[true]).unwrap(), Value::One);
        assert!(MpPTF::new(1, vec![], vec![f(&[1], 0)]).is_err());
        assert!(MpPTF::new(2, vec![f(&[1], 0)], vec![f(&[1], 0)]).is_err());
    }

    #[test]
    fn kstat_examples() {
        let s = KStat::new(0, vec![f(&[], 1), f(&[], 4)], vec![f(&[], 2), f(&[], 3)], 2, 2).unwrap();
        assert_eq!(s.eval(&[]).unwrap(), Value::Zero);
        let strict = KStat::new(1, vec![f(&[1], 0)], vec![f(&[1], 0)], 1, 1).unwrap();
        assert_eq!(strict.eval(&[true]).unwrap(), Value::Zero);
        assert!(KStat::new(0, vec![f(&[], 1)], vec![f(&[], 2)], 2, 1).is_err());
    }

    #[test]
    fn labeled_examples() {
        let s = LabeledKStat::new(
            0,
            vec![f(&[], 0), f(&[], 0), f(&[], 4), f(&[], -4)],
            vec![true, false, false, false],
            2,
        )
        .unwrap();
        assert_eq!(s.eval(&[]).unwrap(), Value::One);
    }

    #[test]
    fn json_roundtrip() {
        let s = KStat::new(1, vec![f(&[3], -2)], vec![f(&[0], 1), f(&[1], 1)], 1, 2).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<KStat>(&text).unwrap(), s);
        assert!(serde_json::from_str::<MpPTF>(&text).is_err());
        let l = LabeledKStat::new(1, vec![f(&[1], 0), f(&[-1], 0)], vec![true, false], 1).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.contains(r#""labels":[1,0]"#));
        assert_eq!(serde_json::to_string(&serde_json::from_str::<LabeledKStat>(&text).unwrap()).unwrap(), text);
    }
}
