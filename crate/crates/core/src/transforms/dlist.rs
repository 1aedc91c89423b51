//! Decision-list lowerings: min-plus threshold functions to LDLs and ELDLs to
//! labeled k-statistics.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::form::IntForm;
use crate::repr::{DecisionList, LabeledKStat, ListKind, MpPTF};
use crate::transforms::report::{BoundCheck, Pass};

/// Cap on the number of distinct values a single form may take.
const MAX_ATTAINABLE: usize = 1 << 20;

/// Every value `f` takes on the cube, ascending.
pub fn attainable_values(f: &IntForm) -> Result<BTreeSet<BigInt>> {
    let mut sums = BTreeSet::from([f.constant.clone()]);
    for c in f.coeffs.iter().filter(|c| **c != BigInt::default()) {
        let shifted: Vec<BigInt> = sums.iter().map(|s| s + c).collect();
        sums.extend(shifted);
        if sums.len() > MAX_ATTAINABLE {
            return Err(Error::InvalidParams(format!(
                "a form takes more than {MAX_ATTAINABLE} distinct values"
            )));
        }
    }
    Ok(sums)
}

/// Forms are scaled by the term count and given distinct residues (left side
/// first, so cross-side ties go left). The list then asks `L(x) ≤ a` for every
/// attainable value `a` in ascending order, answering with the side of `L`.
/// Entries after the first query that fires everywhere are unreachable and
/// dropped.
pub fn mpptf_to_ldl(m: &MpPTF) -> Result<Pass<DecisionList>> {
    let n = m.arity();
    let p = BigInt::from(m.terms());
    let sides = m.left().iter().map(|f| (f, true)).chain(m.right().iter().map(|f| (f, false)));
    let mut queries = Vec::new();
    let mut total = 0usize;
    for (r, (f, output)) in sides.enumerate() {
        let g = f.scale(&p).shift(&BigInt::from(r));
        let values = attainable_values(&g)?;
        total += values.len();
        let top = values.last().cloned().expect("a form takes at least one value");
        for a in values {
            queries.push((a, g.clone(), output, top.clone()));
        }
    }
    queries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut entries = Vec::new();
    for (a, g, output, top) in queries {
        let always = a >= top;
        entries.push((g.negated().shift(&a), output));
        if always {
            break;
        }
    }
    let out = DecisionList::new(n, ListKind::Ldl, entries)?;
    let bounds = vec![BoundCheck::le("list length <= attainable values", total, out.len())];
    Ok(Pass::build("mpptf-to-ldl", m, out, bounds))
}

/// A sentinel query `0 = 0 → 0` makes the list total. Query `i` becomes the
/// pair `±(M·L_i + i)` with `M = 2s + 3`; only the primary carries the output
/// bit. The `(s + 2)`-th smallest value is `|M·L_j + j|` for the first firing
/// query `j`, since non-firing pairs sit beyond `±(s + 3)`.
pub fn eldl_to_kstat(d: &DecisionList) -> Result<Pass<LabeledKStat>> {
    if d.kind() != ListKind::Eldl {
        return Err(Error::InvalidParams("eldl-to-kstat needs an exact decision list".into()));
    }
    let n = d.arity();
    let s = d.len();
    let big_m = BigInt::from(2 * s + 3);
    let sentinel = (IntForm::constant(BigInt::default(), n), false);
    let (mut forms, mut labels) = (Vec::new(), Vec::new());
    for (i, (f, output)) in d.entries().iter().chain(std::iter::once(&sentinel)).enumerate() {
        let primary = f.scale(&big_m).shift(&BigInt::from(i));
        forms.push(primary.negated());
        labels.push(false);
        forms.push(primary);
        labels.push(*output);
    }
    let k = s + 2;
    let out = LabeledKStat::new(n, forms, labels, k)?;
    let bounds = vec![
        BoundCheck::eq("forms = 2(s + 1)", 2 * (s + 1), out.forms().len()),
        BoundCheck::eq("k = s + 2", s + 2, out.k()),
    ];
    Ok(Pass::build("eldl-to-kstat", d, out, bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Value;
    use crate::oracle::equiv_check;

    fn f(c: &[i64], k: i64) -> IntForm {
        IntForm::from_i64(c, k)
    }

    #[test]
    fn ldl_from_one_variable_split() {
        let m = MpPTF::new(1, vec![f(&[1], 0)], vec![f(&[-1], 1)]).unwrap();
        let pass = mpptf_to_ldl(&m).unwrap();
        let d = &pass.output;
        // forms 2x1 and 3 - 2x1; values 0 (left), 1 (right), 2 (left, always)
        assert_eq!(d.len(), 3);
        assert_eq!(d.entries()[0], (f(&[-2], 0), true));
        assert_eq!(d.entries()[1], (f(&[2], -2), false));
        assert_eq!(d.entries()[2], (f(&[-2], 2), true));
        assert_eq!(d.eval(&[false]).unwrap(), Value::from(true));
        assert_eq!(d.eval(&[true]).unwrap(), Value::from(false));
        assert!(pass.report.all_met());
        assert!(equiv_check(&m, d).unwrap().is_equal());
    }

    #[test]
    fn constant_left_minimum_fires_first() {
        let m = MpPTF::new(2, vec![f(&[0, 0], -10)], vec![f(&[1, 1], 0)]).unwrap();
        let d = mpptf_to_ldl(&m).unwrap().output;
        assert_eq!(d.len(), 1);
        assert!(equiv_check(&m, &d).unwrap().is_equal());
    }

    #[test]
    fn attainable_values_of_small_form() {
        let v: Vec<i64> = attainable_values(&f(&[2, 2, -1], 1))
            .unwrap()
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn eldl_single_query() {
        let d = DecisionList::new(1, ListKind::Eldl, vec![(f(&[1], -1), true)]).unwrap();
        let pass = eldl_to_kstat(&d).unwrap();
        let s = &pass.output;
        assert_eq!(s.k(), 3);
        let mut forms = s.forms().to_vec();
        forms.sort_by_key(|g| g.constant.clone());
        assert_eq!(forms, vec![f(&[5], -5), f(&[0], -1), f(&[0], 1), f(&[-5], 5)]);
        assert_eq!(s.eval(&[true]).unwrap(), Value::from(true));
        assert_eq!(s.eval(&[false]).unwrap(), Value::from(false));
        assert!(pass.report.all_met());
    }

    #[test]
    fn empty_eldl_is_constant_zero() {
        let d = DecisionList::new(3, ListKind::Eldl, vec![]).unwrap();
        let s = eldl_to_kstat(&d).unwrap().output;
        for i in 0..8u64 {
            assert_eq!(s.value_at(i).as_bool(), Some(false));
        }
    }

    #[test]
    fn eldl_with_shared_zeros() {
        // x1 + x2 - 1 = 0 → 0, then x1 - x2 = 0 → 1, then x1 - 1 = 0 → 1
        let d = DecisionList::new(
            2,
            ListKind::Eldl,
            vec![(f(&[1, 1], -1), false), (f(&[1, -1], 0), true), (f(&[1, 0], -1), true)],
        )
        .unwrap();
        let s = eldl_to_kstat(&d).unwrap().output;
        assert!(equiv_check(&d, &s).unwrap().is_equal());
    }
}
