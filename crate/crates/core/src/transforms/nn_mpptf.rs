//! Nearest-neighbor representations to and from min-plus threshold functions.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::boolfn::{SubstEntry, Substitution};
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::form::IntForm;
use crate::oracle::four_square;
use crate::rational::Rational;
use crate::repr::{KNNRep, MpPTF, NNRep, Point};
use crate::transforms::report::{BoundCheck, Pass};

/// One form per anchor, `Δ(v(x), p)` scaled to integers; positive anchors on the left.
pub fn nn_to_mpptf(r: &NNRep) -> Result<Pass<MpPTF>> {
    let np = r.positive().len();
    let kernel = r.distance_kernel();
    let out = MpPTF::new(r.arity(), kernel[..np].to_vec(), kernel[np..].to_vec())?;
    let mut bounds = vec![BoundCheck::eq("terms = |P| + |N|", r.anchor_count(), out.terms())];
    if r.is_boolean() {
        bounds.push(BoundCheck::le("max weight <= dim", BigInt::from(r.dim()), out.max_weight()));
    }
    Ok(Pass::build("nn-to-mpptf", r, out, bounds))
}

/// Drops every coordinate on which all anchors agree. Such a coordinate adds
/// the same amount to every distance, so nearest-neighbor decisions are unchanged.
pub fn drop_common_columns(r: &NNRep) -> Result<NNRep> {
    let (embedding, pos, neg) = common_columns(r.embedding(), r.positive(), r.negative());
    NNRep::new(r.arity(), embedding, pos, neg)
}

/// kNN variant of [`drop_common_columns`].
pub fn drop_common_columns_knn(r: &KNNRep) -> Result<KNNRep> {
    let (embedding, pos, neg) = common_columns(r.embedding(), r.positive(), r.negative());
    KNNRep::new(r.arity(), embedding, pos, neg, r.k())
}

fn common_columns(
    v: &Substitution,
    pos: &[Point],
    neg: &[Point],
) -> (Substitution, Vec<Point>, Vec<Point>) {
    let first = &pos[0];
    let keep: Vec<usize> = (0..v.target_arity())
        .filter(|&j| pos.iter().chain(neg).any(|p| p[j] != first[j]))
        .collect();
    let project = |ps: &[Point]| -> Vec<Point> {
        ps.iter().map(|p| keep.iter().map(|&j| p[j].clone()).collect()).collect()
    };
    let entries = keep.iter().map(|&j| v.entries()[j]).collect();
    let embedding = Substitution::new(v.source_arity(), entries).expect("subset of a valid embedding");
    (embedding, project(pos), project(neg))
}

/// Details of the Boolean-anchor block construction.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    /// Block length per variable (largest preprocessed coefficient).
    pub block: Vec<BigInt>,
    /// Shared offset added to every preprocessed form.
    pub offset: BigInt,
    /// Number of constant-1 coordinates.
    pub constants: BigInt,
}

fn usize_of(v: &BigInt, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidParams(format!("{what} {v} is too large to materialize")))
}

/// Preprocessed forms: doubled with `+1` on the right, shifted so that every
/// coefficient and constant is nonnegative, then doubled again.
fn preprocess(m: &MpPTF) -> (Vec<IntForm>, usize) {
    let n = m.arity();
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let mut forms: Vec<IntForm> = m.left().iter().map(|f| f.scale(&two)).collect();
    forms.extend(m.right().iter().map(|f| f.scale(&two).shift(&one)));
    for k in 0..n {
        let neg = forms.iter().map(|f| -&f.coeffs[k]).max().unwrap().max(BigInt::zero());
        for f in &mut forms {
            f.coeffs[k] += &neg;
        }
    }
    let neg_const = forms.iter().map(|f| -&f.constant).max().unwrap().max(BigInt::zero());
    for f in &mut forms {
        f.constant += &neg_const;
        *f = f.scale(&two);
    }
    (forms, m.left().len())
}

/// Boolean anchors in blocks: variable `x_k` is repeated `t_k` times and a form
/// with coefficient `a` gets the block `0^((t+a)/2) 1^((t-a)/2)`; a final block of
/// constant-1 coordinates absorbs the constants.
pub fn mpptf_to_hnn(m: &MpPTF) -> Result<Pass<NNRep>> {
    let (out, _) = mpptf_to_hnn_layout(m)?;
    Ok(out)
}

pub fn mpptf_to_hnn_layout(m: &MpPTF) -> Result<(Pass<NNRep>, BlockLayout)> {
    let n = m.arity();
    let (forms, nl) = preprocess(m);
    let t: Vec<BigInt> = (0..n).map(|k| forms.iter().map(|f| f.coeffs[k].clone()).max().unwrap()).collect();
    let slack = |f: &IntForm| -> BigInt {
        f.coeffs.iter().zip(&t).map(|(a, tk)| (tk - a) / 2).sum::<BigInt>()
    };
    let offset = forms
        .iter()
        .map(|f| slack(f) - &f.constant)
        .max()
        .unwrap()
        .max(BigInt::zero());
    let max_const = forms.iter().map(|f| f.constant.clone()).max().unwrap();
    let constants = &offset + &max_const;

    let mut entries = Vec::new();
    for (k, tk) in t.iter().enumerate() {
        entries.extend(std::iter::repeat_n(SubstEntry::Var(k), usize_of(tk, "block length")?));
    }
    entries.extend(std::iter::repeat_n(SubstEntry::One, usize_of(&constants, "constant block")?));
    let embedding = Substitution::new(n, entries)?;

    let zero = Rational::zero();
    let one = Rational::one();
    let mut anchors = Vec::with_capacity(forms.len());
    for f in &forms {
        let mut p: Point = Vec::with_capacity(embedding.target_arity());
        for (a, tk) in f.coeffs.iter().zip(&t) {
            let zeros = usize_of(&((tk + a) / 2), "block")?;
            let ones = usize_of(&((tk - a) / 2), "block")?;
            p.extend(std::iter::repeat_n(zero.clone(), zeros));
            p.extend(std::iter::repeat_n(one.clone(), ones));
        }
        let z = &offset + &f.constant - slack(f);
        if z.is_negative() || z > constants {
            return Err(Error::Invariant(format!("constant offset {z} outside 0..={constants}")));
        }
        let z = usize_of(&z, "offset")?;
        p.extend(std::iter::repeat_n(zero.clone(), z));
        p.extend(std::iter::repeat_n(one.clone(), usize_of(&constants, "constant block")? - z));
        anchors.push(p);
    }
    let neg = anchors.split_off(nl);
    let mut r = NNRep::new(n, embedding, anchors, neg)?;

    let w = m.max_entry();
    let limit = BigInt::from(12 * n) * &w + BigInt::from(8) * &w;
    if BigInt::from(r.dim()) > limit {
        r = drop_common_columns(&r)?;
    }
    let bounds = vec![
        BoundCheck::eq("anchors = terms", m.terms(), r.anchor_count()),
        BoundCheck::le("dim <= 12nW + 8W", limit, BigInt::from(r.dim())),
        BoundCheck::le(
            "constant coordinates <= 4nW + 8W",
            BigInt::from(4 * n) * &w + BigInt::from(8) * &w,
            BigInt::from(r.embedding().entries().iter().filter(|e| **e == SubstEntry::One).count()),
        ),
    ];
    let layout = BlockLayout { block: t, offset, constants };
    Ok((Pass::build("mpptf-to-hnn", m, r, bounds), layout))
}

/// Anchors whose squared distance to `(x, 1, 1, 1, 1)` equals `F(x) + shift + Θ`
/// for each form `F`, with one offset `Θ ≥ 0` shared by all forms. Variable
/// coordinates are `(1−a)/2`; the four constant coordinates carry a four-square
/// decomposition of the remaining constant.
pub(crate) fn rational_anchors(n: usize, forms: &[(&IntForm, Rational)]) -> Result<(Substitution, Vec<Point>)> {
    let half = Rational::half();
    let one = Rational::one();
    let prepared: Vec<(Point, Rational, Rational)> = forms
        .iter()
        .map(|(f, shift)| {
            let p: Point = f.coeffs.iter().map(|a| (&one - &Rational::from(a)) * &half).collect();
            let base: Rational = p.iter().map(Rational::square).sum();
            (p, Rational::from(&f.constant) + shift, base)
        })
        .collect();
    let offset = prepared
        .iter()
        .map(|(_, theta, base)| base - theta)
        .max()
        .unwrap_or_default()
        .max(Rational::zero());
    let mut anchors = Vec::with_capacity(prepared.len());
    for (mut p, theta, base) in prepared {
        let residual = &theta + &offset - &base;
        if residual.is_negative() {
            return Err(Error::Invariant(format!("negative residual {residual}")));
        }
        let squares = four_square(&residual)?;
        p.extend(squares.iter().map(|s| &one - s));
        anchors.push(p);
    }
    let mut entries: Vec<SubstEntry> = (0..n).map(SubstEntry::Var).collect();
    entries.extend([SubstEntry::One; 4]);
    Ok((Substitution::new(n, entries)?, anchors))
}

/// Rational anchors `(1−a)/2` on the variables plus four constant-1 coordinates
/// whose squared distances sum to the form's constant (after a shared offset).
/// Right forms are shifted by `1/2` so that ties cannot occur.
pub fn mpptf_to_nn(m: &MpPTF) -> Result<Pass<NNRep>> {
    let n = m.arity();
    let forms: Vec<(&IntForm, Rational)> = m
        .left()
        .iter()
        .map(|f| (f, Rational::zero()))
        .chain(m.right().iter().map(|f| (f, Rational::half())))
        .collect();
    let (embedding, mut anchors) = rational_anchors(n, &forms)?;
    let decomposed = anchors.len();
    let neg = anchors.split_off(m.left().len());
    let r = NNRep::new(n, embedding, anchors, neg)?;
    let bounds = vec![
        BoundCheck::eq("anchors = terms", m.terms(), r.anchor_count()),
        BoundCheck::eq("dim = n + 4", n + 4, r.dim()),
        BoundCheck::eq("verified four-square decompositions", m.terms(), decomposed),
    ];
    Ok(Pass::build("mpptf-to-nn", m, r, bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Value;
    use crate::oracle::equiv_check;
    use crate::repr::nn::int_point;

    fn simple() -> MpPTF {
        MpPTF::new(1, vec![IntForm::from_i64(&[1], 0)], vec![IntForm::from_i64(&[-1], 1)]).unwrap()
    }

    #[test]
    fn nn_to_mpptf_single_variable() {
        let r = NNRep::plain(vec![int_point(&[0])], vec![int_point(&[1])]).unwrap();
        let m = nn_to_mpptf(&r).unwrap().output;
        assert_eq!(m.left(), &[IntForm::from_i64(&[1], 0)]);
        assert_eq!(m.right(), &[IntForm::from_i64(&[-1], 1)]);
    }

    #[test]
    fn block_construction_example() {
        let (pass, layout) = mpptf_to_hnn_layout(&simple()).unwrap();
        let r = pass.output;
        assert_eq!(r.dim(), 14);
        assert_eq!((layout.offset, layout.constants), (BigInt::zero(), BigInt::from(6)));
        let bits = |p: &Point| p.iter().map(|c| if c.is_zero() { '0' } else { '1' }).collect::<String>();
        assert_eq!(bits(&r.positive()[0]), "00000000111111");
        assert_eq!(bits(&r.negative()[0]), "00001111001111");
        assert_eq!(r.eval(&[false]).unwrap(), Value::One);
        assert_eq!(r.eval(&[true]).unwrap(), Value::Zero);
        assert!(pass.report.all_met());
    }

    #[test]
    fn rational_construction_example() {
        let pass = mpptf_to_nn(&simple()).unwrap();
        let r = pass.output;
        assert_eq!(r.dim(), 5);
        assert_eq!(r.positive()[0][0], Rational::zero());
        assert_eq!(r.negative()[0][0], Rational::one());
        assert!(equiv_check(&r, &simple()).unwrap().is_equal());
    }

    #[test]
    fn common_columns_are_removable() {
        let r = mpptf_to_hnn(&simple()).unwrap().output;
        let d = drop_common_columns(&r).unwrap();
        assert!(d.dim() < r.dim());
        assert!(equiv_check(&r, &d).unwrap().is_equal());
    }
}
