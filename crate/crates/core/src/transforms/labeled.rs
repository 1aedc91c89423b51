//! Two-sided k-statistics and labeled k-statistics.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::oracle::{equiv_check, EquivStatus};
use crate::repr::{KStat, LabeledKStat};
use crate::transforms::knn::separate;
use crate::transforms::report::{BoundCheck, Pass};

/// After separating all values, each left value `v` becomes `K` copies
/// `v + j/K` and each right value `K + 1` copies `v + j/(K+1)` (scaled by
/// `K(K+1)`), where `K = k_l + k_r`. Copy `j` is labeled 1 iff `j ≥ k_l`, and the
/// statistic index is `K² = (K−1)(K+1) + 1`.
pub fn twosided_to_labeled(s: &KStat) -> Result<Pass<LabeledKStat>> {
    let (left, right) = separate(s.left(), s.right());
    let kl = s.k_left();
    let big_k = kl + s.k_right();
    let scale = BigInt::from(big_k * (big_k + 1));
    let mut forms = Vec::with_capacity(big_k * left.len() + (big_k + 1) * right.len());
    let mut labels = Vec::with_capacity(forms.capacity());
    for f in &left {
        let base = f.scale(&scale);
        for j in 0..big_k {
            forms.push(base.shift(&BigInt::from(j * (big_k + 1))));
            labels.push(j >= kl);
        }
    }
    for f in &right {
        let base = f.scale(&scale);
        for j in 0..=big_k {
            forms.push(base.shift(&BigInt::from(j * big_k)));
            labels.push(j >= kl);
        }
    }
    let k = (big_k - 1) * (big_k + 1) + 1;
    let out = LabeledKStat::new(s.arity(), forms, labels, k)?;
    let bounds = vec![
        BoundCheck::eq(
            "forms = (k_l+k_r)·l1 + (k_l+k_r+1)·l2",
            big_k * s.left().len() + (big_k + 1) * s.right().len(),
            out.forms().len(),
        ),
        BoundCheck::eq("k = (k_l+k_r-1)(k_l+k_r+1) + 1", k, out.k()),
    ];
    Ok(Pass::build("twosided-to-labeled", s, out, bounds))
}

/// Values are first made distinct and even: every form is multiplied by `2p`
/// and shifted by its own even residue, label-1 forms taking the smaller
/// residues. Each form `L` then contributes `L` and `L + 1` to opposite sides:
/// `L` on the left when its label is 1, on the right when it is 0. Both
/// statistics equal `k`, so the comparison is decided by the k-th form's label.
///
/// Under the existential tie rule a tie at the k-th value with mixed labels
/// cannot always survive the residue shift; such instances are detected by an
/// exhaustive check and rejected with the first offending input.
pub fn labeled_to_twosided(s: &LabeledKStat) -> Result<Pass<KStat>> {
    let p = s.forms().len();
    let scale = BigInt::from(2 * p);
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&i| !s.labels()[i]);
    let mut rank = vec![0; p];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let one = BigInt::from(1);
    let (mut left, mut right) = (Vec::with_capacity(p), Vec::with_capacity(p));
    for (i, (f, &label)) in s.forms().iter().zip(s.labels()).enumerate() {
        let base = f.scale(&scale).shift(&BigInt::from(2 * rank[i]));
        let bumped = base.shift(&one);
        if label {
            left.push(base);
            right.push(bumped);
        } else {
            right.push(base);
            left.push(bumped);
        }
    }
    let out = KStat::new(s.arity(), left, right, s.k(), s.k())?;
    if s.arity() <= crate::error::MAX_ARITY {
        let check = equiv_check(&out, s)?;
        if check.status != EquivStatus::Equal {
            let at = check.witness.map(|w| w.index).unwrap_or_default();
            return Err(Error::InvalidParams(format!(
                "labeled instance has a mixed-label tie at the k-th value (input index {at}) that a two-sided statistic cannot reproduce"
            )));
        }
    }
    let bounds = vec![
        BoundCheck::eq("forms = 2p", 2 * s.forms().len(), out.terms()),
        BoundCheck::eq("k_l = k_r = k", s.k(), out.k_left()),
    ];
    Ok(Pass::build("labeled-to-twosided", s, out, bounds))
}

/// Whether some input puts forms with both labels at the k-th value.
pub fn has_mixed_ties(s: &LabeledKStat) -> Option<u64> {
    (0..1u64 << s.arity()).find(|&i| {
        let x = crate::eval::bits_of(i, s.arity());
        let vals = s.values(&x);
        let mut sorted = vals.clone();
        sorted.sort();
        let v = &sorted[s.k() - 1];
        let labels: Vec<bool> = vals.iter().zip(s.labels()).filter(|(a, _)| *a == v).map(|(_, &c)| c).collect();
        labels.contains(&true) && labels.contains(&false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Value;

    fn f(c: &[i64], k: i64) -> crate::IntForm {
        crate::IntForm::from_i64(c, k)
    }

    #[test]
    fn forward_single_variable() {
        let s = KStat::new(1, vec![f(&[1], 0)], vec![f(&[-1], 1)], 1, 1).unwrap();
        let pass = twosided_to_labeled(&s).unwrap();
        assert_eq!((pass.output.forms().len(), pass.output.k()), (5, 4));
        assert!(pass.report.all_met());
        assert!(equiv_check(&pass.output, &s).unwrap().is_equal());
    }

    #[test]
    fn backward_and_round_trip() {
        let s = LabeledKStat::new(2, vec![f(&[1, 0], 0), f(&[0, 1], 3), f(&[4, -2], 1)], vec![true, false, true], 2)
            .unwrap();
        assert_eq!(has_mixed_ties(&s), None);
        let two = labeled_to_twosided(&s).unwrap().output;
        assert!(equiv_check(&two, &s).unwrap().is_equal());
        let again = twosided_to_labeled(&two).unwrap().output;
        assert!(equiv_check(&again, &s).unwrap().is_equal());
    }

    #[test]
    fn mixed_ties_are_detected() {
        // Values (0, 0) with labels (0, 1) and k = 1: the existential rule says 1,
        // and label-1 forms take the smaller residues, so this tie is reproduced.
        let s = LabeledKStat::new(0, vec![f(&[], 0), f(&[], 0)], vec![false, true], 1).unwrap();
        assert_eq!(s.eval(&[]).unwrap(), Value::One);
        assert_eq!(has_mixed_ties(&s), Some(0));
        let two = labeled_to_twosided(&s);
        assert!(two.is_ok(), "label-1 forms are placed first, so this tie is reproduced");
        let s = LabeledKStat::new(0, vec![f(&[], 0), f(&[], 0)], vec![true, false], 2).unwrap();
        assert_eq!(s.eval(&[]).unwrap(), Value::One);
        assert!(labeled_to_twosided(&s).is_err());
    }

    #[test]
    fn constant_labeled_instance() {
        let s = LabeledKStat::new(2, vec![f(&[1, 1], 0), f(&[-1, 0], 0)], vec![true, true], 1).unwrap();
        let two = labeled_to_twosided(&s).unwrap().output;
        for i in 0..4 {
            assert_eq!(two.value_at(i), Value::One);
        }
    }
}
