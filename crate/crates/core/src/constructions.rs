//! Explicit representations of specific functions and families.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::boolfn::{components, BoolFn, FamilySpec};
use crate::cnf::{exact_half_cnf, CnfDnf, FormulaKind};
use crate::error::{Error, Result};
use crate::form::{IntForm, LinearForm};
use crate::oracle::far_dummy;
use crate::rational::Rational;
use crate::repr::{int_point, Model, MpPTF, NNRep, Point, SymAndCircuit, SymMajCircuit};

/// One positive anchor per DNF term around a negative center `(1/2, …)`.
///
/// A term's anchor puts its first literal at 1 (0 if negated), its other
/// literals at 3/2 (−1/2 if negated) and every other coordinate at 1/2. Inputs
/// satisfying the term are at distance `(n-1)/4` from it, all others at least
/// `(n+3)/4`, while the center is at `n/4` from everything. CNFs are negated
/// into DNFs and the labels swapped back.
pub fn cnf_to_nn(c: &CnfDnf) -> Result<NNRep> {
    let n = c.arity;
    if let Some(i) = c.clauses.iter().position(|cl| cl.is_empty()) {
        return Err(Error::InvalidParams(format!("clause {} is empty", i + 1)));
    }
    if n == 0 {
        return Err(Error::InvalidParams("cnf-to-nn needs at least one variable".into()));
    }
    let half = Rational::half();
    let center = vec![half.clone(); n];
    let mut terms: Vec<Point> = c
        .clauses
        .iter()
        .map(|cl| {
            let mut p = vec![half.clone(); n];
            for (j, &lit) in cl.iter().enumerate() {
                // a CNF clause is a DNF term of the negation after flipping literals
                let positive = (lit > 0) == (c.kind == FormulaKind::Dnf);
                let v = lit.unsigned_abs() as usize - 1;
                p[v] = match (j, positive) {
                    (0, true) => Rational::one(),
                    (0, false) => Rational::zero(),
                    (_, true) => Rational::new(3, 2),
                    (_, false) => Rational::new(-1, 2),
                };
            }
            p
        })
        .collect();
    if terms.is_empty() {
        terms.push(far_dummy(n));
    }
    match c.kind {
        FormulaKind::Dnf => NNRep::plain(terms, vec![center]),
        FormulaKind::Cnf => NNRep::plain(vec![center], terms),
    }
}

/// `3n` Boolean anchors in `2n` dimensions: the unit vectors `e_j` are positive
/// and the doubled vectors `(e_i, e_i)` negative.
pub fn disj_hnn(n: usize) -> Result<NNRep> {
    if n == 0 {
        return Err(Error::InvalidParams("disjointness needs n >= 1".into()));
    }
    let unit = |js: &[usize]| {
        let mut v = vec![0; 2 * n];
        for &j in js {
            v[j] = 1;
        }
        int_point(&v)
    };
    let pos = (0..2 * n).map(|j| unit(&[j])).collect();
    let neg = (0..n).map(|i| unit(&[i, n + i])).collect();
    NNRep::plain(pos, neg)
}

/// Parity as `L_i = i² − 2i·|x|` for `i = 0..=n`, odd `i` on the left. The
/// minimum is at `i = |x|`, uniquely, since `L_i = (i − |x|)² − |x|²`.
pub fn xor_mpptf(n: usize) -> Result<MpPTF> {
    if n == 0 {
        return Err(Error::InvalidParams("parity gadget needs n >= 1".into()));
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for i in 0..=n as i64 {
        let f = IntForm::from_i64(&vec![-2 * i; n], i * i);
        if i % 2 == 1 {
            left.push(f);
        } else {
            right.push(f);
        }
    }
    MpPTF::new(n, left, right)
}

/// `L_k = (k+1)(1 − x_k − y_k)` over inputs `(x, y)`: odd `k` on the left, even
/// `k` and the constant −1 on the right. The largest satisfied pair `K` gives
/// the unique minimum `−(K+1)`; with none satisfied the −1 wins.
pub fn omb_and2_mpptf(n: usize) -> Result<MpPTF> {
    if n == 0 {
        return Err(Error::InvalidParams("OMB of AND2 gadget needs n >= 1".into()));
    }
    let mut left = Vec::new();
    let mut right = vec![LinearForm::constant(BigInt::from(-1), 2 * n)];
    for k in 1..=n {
        let w = (k + 1) as i64;
        let mut coeffs = vec![0; 2 * n];
        coeffs[k - 1] = -w;
        coeffs[n + k - 1] = -w;
        let f = IntForm::from_i64(&coeffs, w);
        if k % 2 == 1 {
            left.push(f);
        } else {
            right.push(f);
        }
    }
    MpPTF::new(2 * n, left, right)
}

/// The explicit representation bundled for a family: parity and OMB∘AND2 as
/// min-plus functions, disjointness with Boolean anchors, inner product as a
/// SYM∘AND circuit, majority as a one-gate SYM∘MAJ circuit and the exact-half
/// CNF through [`cnf_to_nn`].
pub fn bundled(spec: FamilySpec) -> Result<Model> {
    spec.validate()?;
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::InvalidParams(format!("{} needs n >= 1", spec.name())))
        } else {
            Ok(n)
        }
    };
    Ok(match spec {
        FamilySpec::Xor(n) => xor_mpptf(n)?.into(),
        FamilySpec::OmbAnd2(n) => omb_and2_mpptf(n)?.into(),
        FamilySpec::Disj(n) => disj_hnn(n)?.into(),
        FamilySpec::Ip(n) => SymAndCircuit::inner_product(positive(n)?).into(),
        FamilySpec::Maj(n) => {
            let gate = (vec![BigInt::from(1); positive(n)?], BigInt::from(n.div_ceil(2)));
            SymMajCircuit::from_threshold_gates(n, &[gate], vec![false, true])?.into()
        }
        FamilySpec::ExactHalfCnf { n, k } => cnf_to_nn(&exact_half_cnf(n, k)?)?.into(),
        other => return Err(Error::InvalidParams(format!("no bundled construction for {}", other.name()))),
    })
}

/// Component count of a CNF's satisfying set against the expected count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCertificate {
    pub components: usize,
    pub expected: String,
    pub matches: bool,
}

/// The exact-half CNF on `n/k` blocks, with its `C(k, k/2)^(n/k)` isolated
/// satisfying assignments counted by search over the cube. Each component
/// needs its own anchor in any Boolean-anchor representation.
pub fn many_component_cnf(n: usize, k: usize) -> Result<(CnfDnf, ComponentCertificate)> {
    let c = exact_half_cnf(n, k)?;
    let f = BoolFn::tabulate(&c)?;
    let found = components(&f);
    let block: BigInt = (0..k / 2).fold(BigInt::from(1), |acc, i| acc * (k - i) / (i + 1));
    let expected = num_traits::pow(block, n / k);
    let matches = BigInt::from(found) == expected;
    Ok((c, ComponentCertificate { components: found, expected: expected.to_string(), matches }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{family, FamilySpec};
    use crate::eval::{Evaluator, Value};
    use crate::oracle::equiv_check;
    use crate::repr::well_defined;

    #[test]
    fn dnf_single_term() {
        let c = CnfDnf::new(2, FormulaKind::Dnf, vec![vec![1, 2]]).unwrap();
        let r = cnf_to_nn(&c).unwrap();
        assert_eq!(r.positive()[0], vec![Rational::one(), Rational::new(3, 2)]);
        assert_eq!(r.negative()[0], vec![Rational::half(), Rational::half()]);
        let p = &r.positive()[0];
        assert_eq!(r.distance_direct(&[true, true], p), Rational::new(1, 4));
        assert_eq!(r.eval(&[true, true]).unwrap(), Value::One);
        assert!(equiv_check(&c, &r).unwrap().is_equal());
    }

    #[test]
    fn equality_of_two_bits() {
        let c = CnfDnf::new(2, FormulaKind::Dnf, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        let r = cnf_to_nn(&c).unwrap();
        assert_eq!(r.anchor_count(), 3);
        assert!(equiv_check(&c, &r).unwrap().is_equal());
    }

    #[test]
    fn cnf_and_constants() {
        let c = CnfDnf::new(3, FormulaKind::Cnf, vec![vec![1, -2], vec![2, 3, -1], vec![-3]]).unwrap();
        assert!(equiv_check(&c, &cnf_to_nn(&c).unwrap()).unwrap().is_equal());
        for kind in [FormulaKind::Dnf, FormulaKind::Cnf] {
            let c = CnfDnf::new(2, kind, vec![]).unwrap();
            let r = cnf_to_nn(&c).unwrap();
            assert!(well_defined(&r).unwrap().is_well_defined());
            assert!(equiv_check(&c, &r).unwrap().is_equal());
        }
        let bad = CnfDnf::new(2, FormulaKind::Dnf, vec![vec![]]).unwrap();
        assert!(cnf_to_nn(&bad).is_err());
    }

    #[test]
    fn disjointness() {
        let r = disj_hnn(2).unwrap();
        assert_eq!(r.eval(&[true, false, false, true]).unwrap(), Value::One);
        assert_eq!(r.eval(&[true, false, true, false]).unwrap(), Value::Zero);
        assert_eq!(disj_hnn(4).unwrap().anchor_count(), 12);
        for n in 1..=4 {
            let r = disj_hnn(n).unwrap();
            assert!(r.is_boolean());
            assert!(equiv_check(&family(FamilySpec::Disj(n)).unwrap(), &r).unwrap().is_equal());
        }
    }

    #[test]
    fn parity_gadget() {
        let m = xor_mpptf(3).unwrap();
        assert_eq!(m.terms(), 4);
        assert_eq!(m.eval(&[true, true, false]).unwrap(), Value::Zero);
        assert_eq!(m.eval(&[true, false, false]).unwrap(), Value::One);
        for n in 1..=6 {
            let m = xor_mpptf(n).unwrap();
            assert_eq!(m.terms(), n + 1);
            assert!(equiv_check(&family(FamilySpec::Xor(n)).unwrap(), &m).unwrap().is_equal());
        }
    }

    #[test]
    fn omb_and2_gadget() {
        let m = omb_and2_mpptf(2).unwrap();
        assert_eq!(m.eval(&[true, false, true, false]).unwrap(), Value::One);
        assert_eq!(m.eval(&[true, true, true, true]).unwrap(), Value::Zero);
        assert_eq!(m.value_at(0), Value::Zero);
        for n in 1..=5 {
            let m = omb_and2_mpptf(n).unwrap();
            assert_eq!(m.terms(), n + 1);
            assert!(equiv_check(&family(FamilySpec::OmbAnd2(n)).unwrap(), &m).unwrap().is_equal());
        }
    }

    #[test]
    fn bundled_families() {
        for spec in [FamilySpec::Xor(3), FamilySpec::OmbAnd2(2), FamilySpec::Disj(2), FamilySpec::Ip(2), FamilySpec::Maj(5)] {
            let m = bundled(spec).unwrap();
            assert!(equiv_check(&spec, m.as_evaluator()).unwrap().is_equal(), "{spec}");
        }
        let m = bundled(FamilySpec::ExactHalfCnf { n: 4, k: 2 }).unwrap();
        assert_eq!(m.tag(), "nn");
        assert!(bundled(FamilySpec::Omb(3)).is_err());
        assert!(bundled(FamilySpec::Maj(0)).is_err());
    }

    #[test]
    fn component_counts() {
        for (n, k, want) in [(4, 2, 4), (6, 2, 8), (4, 4, 6), (6, 6, 20)] {
            let (_, cert) = many_component_cnf(n, k).unwrap();
            assert_eq!(cert.components, want, "n={n} k={k}");
            assert!(cert.matches);
        }
        assert!(many_component_cnf(5, 2).is_err());
    }
}
