//! kNN representations, min-plus threshold functions and two-sided k-statistics.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::form::{IntForm, LinearForm};
use crate::rational::Rational;
use crate::repr::{well_defined, KNNRep, KStat, MpPTF};
use crate::transforms::nn_mpptf::rational_anchors;
use crate::transforms::report::{BoundCheck, Pass};

pub(crate) fn require_well_defined<E: Evaluator + ?Sized>(r: &E) -> Result<()> {
    match well_defined(r)?.undefined.first() {
        Some(&i) => Err(Error::IllDefined(i)),
        None => Ok(()),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        visit(&c);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < m - k + i {
                break;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// A constant form that never wins against the first form of the other side.
fn losing_dummy(other: &IntForm) -> IntForm {
    LinearForm::constant(other.range().1 + 1, other.arity())
}

/// One summed distance form per k-subset of the anchors (in lexicographic order
/// over positives then negatives); a subset goes left iff it has at least as
/// many positive as negative anchors.
pub fn knn_to_mpptf(r: &KNNRep) -> Result<Pass<MpPTF>> {
    require_well_defined(r)?;
    let kernel = r.distance_kernel();
    let np = r.positive().len();
    let (m, k) = (kernel.len(), r.k());
    let (mut left, mut right) = (Vec::new(), Vec::new());
    subsets(m, k, |s| {
        let sum = s[1..].iter().fold(kernel[s[0]].clone(), |acc, &i| acc.plus(&kernel[i]));
        let pos = s.iter().filter(|&&i| i < np).count();
        if 2 * pos >= k {
            left.push(sum);
        } else {
            right.push(sum);
        }
    });
    let genuine = left.len() + right.len();
    if right.is_empty() {
        right.push(losing_dummy(&left[0]));
    } else if left.is_empty() {
        left.push(losing_dummy(&right[0]));
    }
    let out = MpPTF::new(r.arity(), left, right)?;
    let bounds = vec![BoundCheck::eq("subset terms = C(m, k)", binom(m, k), genuine)];
    Ok(Pass::build("knn-to-mpptf", r, out, bounds))
}

/// `1 + max (|constant| + Σ|coefficients|)`: every form's value lies strictly inside `(−B, B)`.
pub fn dummy_bound(forms: &[&IntForm]) -> BigInt {
    forms.iter().map(|f| f.l1_bound()).max().unwrap_or_default() + 1
}

/// Pads the side with the smaller statistic index with constants `−B−1, −B−2, …`
/// below every genuine value, raising its index to match the other side.
pub fn kstat_equalize(s: &KStat) -> Result<Pass<KStat>> {
    let all: Vec<&IntForm> = s.left().iter().chain(s.right()).collect();
    let b = dummy_bound(&all);
    let (kl, kr) = (s.k_left(), s.k_right());
    let pad = |forms: &[IntForm], count: usize| -> Vec<IntForm> {
        let mut out = forms.to_vec();
        for i in 1..=count {
            out.push(LinearForm::constant(-&b - BigInt::from(i), s.arity()));
        }
        out
    };
    let out = if kl < kr {
        KStat::new(s.arity(), pad(s.left(), kr - kl), s.right().to_vec(), kr, kr)?
    } else {
        KStat::new(s.arity(), s.left().to_vec(), pad(s.right(), kl - kr), kl, kl)?
    };
    let bounds = vec![BoundCheck::eq("dummy forms = |k_l − k_r|", kl.abs_diff(kr), out.terms() - s.terms())];
    Ok(Pass::build("kstat-equalize", s, out, bounds))
}

/// Positive distance forms on the left with statistic `⌈k/2⌉`, negative on the
/// right with `⌊k/2⌋ + 1`, then equalized. Sides with too few forms are padded
/// with constants above every genuine value.
pub fn knn_to_kstat(r: &KNNRep) -> Result<Pass<KStat>> {
    require_well_defined(r)?;
    let kernel = r.distance_kernel();
    let np = r.positive().len();
    let k = r.k();
    let (kl, kr) = (k.div_ceil(2), k / 2 + 1);
    let all: Vec<&IntForm> = kernel.iter().collect();
    let high = LinearForm::constant(dummy_bound(&all), r.arity());
    let mut left = kernel[..np].to_vec();
    let mut right = kernel[np..].to_vec();
    while left.len() < kl {
        left.push(high.clone());
    }
    while right.len() < kr {
        right.push(high.clone());
    }
    let raw = KStat::new(r.arity(), left, right, kl, kr)?;
    let out = kstat_equalize(&raw)?.output;
    let t = out.k_left();
    let bounds = vec![
        BoundCheck::eq("k_l = k_r", out.k_left(), out.k_right()),
        BoundCheck::eq("statistic = floor(k/2) + 1", k / 2 + 1, t),
    ];
    Ok(Pass::build("knn-to-kstat", r, out, bounds))
}

/// Scales every form by the form count and adds distinct residues, right forms
/// receiving the smaller ones: strict comparisons are kept, ties resolve to
/// "left is larger", and all values become pairwise distinct.
pub(crate) fn separate(left: &[IntForm], right: &[IntForm]) -> (Vec<IntForm>, Vec<IntForm>) {
    let p = BigInt::from(left.len() + right.len());
    let r: Vec<IntForm> = right.iter().enumerate().map(|(i, f)| f.scale(&p).shift(&BigInt::from(i))).collect();
    let l: Vec<IntForm> = left
        .iter()
        .enumerate()
        .map(|(i, f)| f.scale(&p).shift(&BigInt::from(right.len() + i)))
        .collect();
    (l, r)
}

/// Equalizes the statistics to `t`, separates all values, and places anchors whose
/// distances are the separated forms (left forms positive) with `k = 2t − 1`.
pub fn kstat_to_knn(s: &KStat) -> Result<Pass<KNNRep>> {
    let eq = kstat_equalize(s)?.output;
    let t = eq.k_left();
    let (left, right) = separate(eq.left(), eq.right());
    let forms: Vec<(&IntForm, Rational)> = left.iter().chain(&right).map(|f| (f, Rational::zero())).collect();
    let (embedding, mut anchors) = rational_anchors(s.arity(), &forms)?;
    let neg = anchors.split_off(left.len());
    let out = KNNRep::new(s.arity(), embedding, anchors, neg, 2 * t - 1)?;
    let bounds = vec![
        BoundCheck::eq("k = 2t - 1", 2 * t - 1, out.k()),
        BoundCheck::eq("anchors = forms after equalizing", eq.terms(), out.anchor_count()),
    ];
    Ok(Pass::build("kstat-to-knn", s, out, bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Value;
    use crate::oracle::equiv_check;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn example() -> KNNRep {
        KNNRep::plain(vec![vec![q("1")], vec![q("7/4")]], vec![vec![q("0")], vec![q("1/4")]], 3).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        let mut seen = Vec::new();
        subsets(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut all = 0;
        subsets(3, 3, |_| all += 1);
        assert_eq!(all, 1);
    }

    #[test]
    fn knn_to_mpptf_example() {
        let m = knn_to_mpptf(&example()).unwrap().output;
        assert_eq!(m.terms(), 4);
        let min = |fs: &[IntForm], x: bool| fs.iter().map(|f| f.eval(&[x])).min().unwrap();
        assert_eq!((min(m.left(), true), min(m.right(), true)), (BigInt::from(18), BigInt::from(25)));
        assert_eq!((min(m.left(), false), min(m.right(), false)), (BigInt::from(65), BigInt::from(17)));
        assert!(equiv_check(&m, &example()).unwrap().is_equal());
    }

    #[test]
    fn knn_kstat_both_ways() {
        let s = knn_to_kstat(&example()).unwrap().output;
        assert_eq!((s.k_left(), s.k_right()), (2, 2));
        assert!(equiv_check(&s, &example()).unwrap().is_equal());
        let back = kstat_to_knn(&s).unwrap().output;
        assert!(equiv_check(&back, &example()).unwrap().is_equal());
    }

    #[test]
    fn even_k_needs_unequal_statistics() {
        // A = {2}, B = {1, 3}: the two nearest are {1, 2}, a tie in labels, so the output is 1.
        let r = KNNRep::plain(vec![vec![q("2")]], vec![vec![q("1")], vec![q("3")]], 2).unwrap();
        assert!(well_defined(&r).unwrap().is_well_defined());
        assert_eq!(r.eval(&[false]).unwrap(), Value::One);
        let s = knn_to_kstat(&r).unwrap().output;
        assert_eq!(s.k_left(), 2);
        assert!(equiv_check(&s, &r).unwrap().is_equal());
    }

    #[test]
    fn equalize_examples() {
        let f = IntForm::from_i64(&[3], -2);
        assert_eq!(dummy_bound(&[&f]), BigInt::from(6));
        let s = KStat::new(
            1,
            vec![IntForm::from_i64(&[1], 0)],
            vec![IntForm::from_i64(&[-1], 1), IntForm::from_i64(&[0], 0)],
            1,
            2,
        )
        .unwrap();
        let e = kstat_equalize(&s).unwrap().output;
        assert_eq!((e.k_left(), e.k_right(), e.left().len()), (2, 2, 2));
        assert!(equiv_check(&e, &s).unwrap().is_equal());
        let same = KStat::new(1, vec![IntForm::from_i64(&[1], 0)], vec![IntForm::from_i64(&[0], 0)], 1, 1).unwrap();
        assert_eq!(kstat_equalize(&same).unwrap().output, same);
    }

    #[test]
    fn ill_defined_sources_are_rejected() {
        let r = KNNRep::plain(vec![vec![q("1")]], vec![vec![q("0")], vec![q("2")]], 2).unwrap();
        assert_eq!(knn_to_mpptf(&r).unwrap_err(), Error::IllDefined(1));
        assert_eq!(r.eval(&[true]).unwrap(), Value::Undefined);
    }
}
