//! Symmetric-top circuits: SYM∘MAJ to labeled k-statistics and SYM∘AND to kNN.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::oracle::equiv_check;
use crate::rational::Rational;
use crate::repr::{KNNRep, LabeledKStat, Point, SymAndCircuit, SymMajCircuit};
use crate::transforms::report::{BoundCheck, Pass};

/// Largest arity at which the SYM∘AND anchors are re-checked exhaustively.
const EXHAUSTIVE_GUARD_ARITY: usize = 16;

/// Gate forms are scaled by `s + 2` and joined by the constants `1..=s+1`.
/// With `c` gates positive, the `(s + 1)`-th smallest value is the constant
/// `c + 1`, labeled `top(c)`.
pub fn sym_maj_to_kstat(c: &SymMajCircuit) -> Result<Pass<LabeledKStat>> {
    let n = c.arity();
    let s = c.gates().len();
    let scale = BigInt::from(s + 2);
    let mut forms: Vec<_> = c.gates().iter().map(|g| g.scale(&scale)).collect();
    let mut labels = vec![false; s];
    for i in 1..=s + 1 {
        forms.push(crate::form::LinearForm::constant(BigInt::from(i), n));
        labels.push(c.top()[i - 1]);
    }
    let out = LabeledKStat::new(n, forms, labels, s + 1)?;
    let bounds = vec![
        BoundCheck::eq("forms = 2s + 1", 2 * s + 1, out.forms().len()),
        BoundCheck::eq("k = s + 1", s + 1, out.k()),
    ];
    Ok(Pass::build("sym-maj-to-kstat", c, out, bounds))
}

/// Clause anchor shift for clause `i` (0-based) and label `j`, with `c` literals.
fn epsilon(i: usize, j: usize, c: usize, s: usize) -> Rational {
    let c2 = (c + 2) as i64;
    Rational::new(1, c2) - Rational::new((2 * i + j) as i64, 64 * (s as i64 + 1) * c2 * c2)
}

fn phi(e: &Rational) -> Rational {
    e - &e.square()
}

/// Anchors around the cube center `a = (1/2, …)`. Each clause contributes a
/// pair of anchors that sit closer than `n/4 - β` exactly when the clause is
/// satisfied and beyond `n/4` otherwise. Pairs of "ladder" anchors
/// `a ± δ e_1` fill the band between, so that after the satisfied pairs the
/// majority among the `2s + 1` nearest is decided by one ladder anchor whose
/// label is `top(t)` for `t` satisfied clauses.
pub fn sym_and_to_knn(c: &SymAndCircuit) -> Result<Pass<KNNRep>> {
    let n = c.arity();
    let s = c.clauses().len();
    if n == 0 {
        return Err(Error::InvalidParams("sym-and-to-knn needs at least one input".into()));
    }
    let half = Rational::half();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    let mut beta: Option<Rational> = None;
    for (i, clause) in c.clauses().iter().enumerate() {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize - 1).collect();
        vars.sort_unstable();
        vars.dedup();
        let width = vars.len();
        for j in 0..2 {
            let e = epsilon(i, j, width, s);
            let margin = Rational::from(2) - Rational::from(2) * &e - Rational::from(width as i64) * phi(&e);
            if margin <= Rational::zero() {
                return Err(Error::Invariant(format!(
                    "clause {}: unsatisfied distance gap 2 - 2e - c(e - e^2) = {margin} is not positive",
                    i + 1
                )));
            }
            let firing = Rational::from(width as i64) * phi(&e);
            beta = Some(match beta {
                Some(b) if b <= firing => b,
                _ => firing,
            });
            let mut p: Point = vec![half.clone(); n];
            for &l in clause {
                let v = l.unsigned_abs() as usize - 1;
                p[v] = if l > 0 { Rational::new(3, 2) - &e } else { Rational::new(-1, 2) + &e };
            }
            if j == 1 {
                pos.push(p);
            } else {
                neg.push(p);
            }
        }
    }
    let beta = beta.expect("at least one clause");
    let denom = 4 * (2 * s as i64 + 3);
    for i in 1..=s + 1 {
        for j in 0..2 {
            let delta = Rational::new((2 * i + j) as i64, denom) * &beta;
            if phi(&delta) >= beta {
                return Err(Error::Invariant(format!(
                    "ladder shift {delta} reaches the satisfied-clause band {beta}"
                )));
            }
            let label = (j == 1) == c.top()[i - 1];
            for sign in [1, -1] {
                let mut q: Point = vec![half.clone(); n];
                q[0] = &half + &(Rational::from(sign) * &delta);
                if label {
                    pos.push(q);
                } else {
                    neg.push(q);
                }
            }
        }
    }
    let out = KNNRep::plain(pos, neg, 2 * s + 1)?;
    if n <= EXHAUSTIVE_GUARD_ARITY {
        let report = equiv_check(c, &out)?;
        if let Some(w) = report.witness {
            return Err(Error::Invariant(format!("anchors disagree with the circuit at input {}", w.input)));
        }
    }
    let bounds = vec![
        BoundCheck::eq("anchors = 6s + 4", 6 * s + 4, out.anchor_count()),
        BoundCheck::eq("k = 2s + 1", 2 * s + 1, out.k()),
    ];
    Ok(Pass::build("sym-and-to-knn", c, out, bounds))
}
