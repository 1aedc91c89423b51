//! Seeded random instance generators shared by the integration tests.
#![allow(dead_code)]

use nnrep::oracle::equiv_check;
use nnrep::repr::{well_defined, DecisionList, KNNRep, KStat, LabeledKStat, ListKind, MpPTF, SymAndCircuit, SymMajCircuit};
use nnrep::transforms::labeled::has_mixed_ties;
use nnrep::{CnfDnf, Evaluator, FormulaKind, IntForm, Rational};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn form(rng: &mut StdRng, n: usize, w: i64) -> IntForm {
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-w..=w)).collect();
    IntForm::from_i64(&coeffs, rng.gen_range(-w..=w))
}

/// Random clause over distinct variables with random signs.
pub fn clause(rng: &mut StdRng, n: usize, max_width: usize) -> Vec<i64> {
    let width = rng.gen_range(1..=max_width.min(n));
    let mut vars: Vec<i64> = (1..=n as i64).collect();
    vars.shuffle(rng);
    vars.truncate(width);
    vars.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
}

pub fn cnf_or_dnf(rng: &mut StdRng, n: usize, m: usize) -> CnfDnf {
    let kind = if rng.gen_bool(0.5) { FormulaKind::Dnf } else { FormulaKind::Cnf };
    let clauses = (0..m).map(|_| clause(rng, n, 5)).collect();
    CnfDnf::new(n, kind, clauses).unwrap()
}

/// Integer min-plus function with `n ≤ 6`, entries in `[-w, w]` and 2..=6 terms.
pub fn mpptf(rng: &mut StdRng) -> MpPTF {
    let n = rng.gen_range(1..=6);
    let w = rng.gen_range(1..=4);
    let terms = rng.gen_range(2..=6);
    let l = rng.gen_range(1..terms);
    let forms: Vec<IntForm> = (0..terms).map(|_| form(rng, n, w)).collect();
    MpPTF::new(n, forms[..l].to_vec(), forms[l..].to_vec()).unwrap()
}

fn coordinate(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-3..=6), rng.gen_range(1..=4))
}

/// Well-defined kNN with `n ≤ 6`, `m ≤ 8` anchors and `k ≤ 5`.
pub fn knn(rng: &mut StdRng) -> KNNRep {
    loop {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(2..=8);
        let np = rng.gen_range(1..m);
        let k = rng.gen_range(1..=m.min(5));
        let mut pts = |c: usize| (0..c).map(|_| (0..n).map(|_| coordinate(rng)).collect()).collect::<Vec<Vec<_>>>();
        let (pos, neg) = (pts(np), pts(m - np));
        let Ok(r) = KNNRep::plain(pos, neg, k) else { continue };
        if well_defined(&r).unwrap().is_well_defined() {
            return r;
        }
    }
}

/// Two-sided statistic with at most 8 forms in total.
pub fn kstat(rng: &mut StdRng) -> KStat {
    let n = rng.gen_range(1..=6);
    let p = rng.gen_range(2..=8);
    let l = rng.gen_range(1..p);
    let forms: Vec<IntForm> = (0..p).map(|_| form(rng, n, 3)).collect();
    let (kl, kr) = (rng.gen_range(1..=l), rng.gen_range(1..=p - l));
    KStat::new(n, forms[..l].to_vec(), forms[l..].to_vec(), kl, kr).unwrap()
}

/// Labeled statistic with at most 8 forms. With `tie_free`, instances where a
/// tie at the k-th value mixes labels are redrawn; the second value counts the
/// redraws.
pub fn labeled(rng: &mut StdRng, tie_free: bool) -> (LabeledKStat, usize) {
    let mut redrawn = 0;
    loop {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(1..=8);
        let forms = (0..p).map(|_| form(rng, n, 3)).collect();
        let labels = (0..p).map(|_| rng.gen_bool(0.5)).collect();
        let s = LabeledKStat::new(n, forms, labels, rng.gen_range(1..=p)).unwrap();
        if !tie_free || has_mixed_ties(&s).is_none() {
            return (s, redrawn);
        }
        redrawn += 1;
    }
}

/// Symmetric function of `s` gates as a table of `s + 1` bits.
pub fn top(rng: &mut StdRng, s: usize) -> Vec<bool> {
    (0..=s).map(|_| rng.gen_bool(0.5)).collect()
}

/// SYM∘MAJ circuit with `s ≤ 6` gates `⟨w, x⟩ ≥ θ`, `n ≤ 8`, `|w| ≤ 3`.
pub fn sym_maj(rng: &mut StdRng) -> SymMajCircuit {
    let n = rng.gen_range(1..=8);
    let s = rng.gen_range(1..=6);
    let gates: Vec<(Vec<BigInt>, BigInt)> = (0..s)
        .map(|_| {
            let w = (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
            (w, BigInt::from(rng.gen_range(-3..=3)))
        })
        .collect();
    let t = top(rng, s);
    SymMajCircuit::from_threshold_gates(n, &gates, t).unwrap()
}

/// SYM∘AND circuit with `s ≤ 5` terms of any fan-in over `n ≤ 8` inputs.
pub fn sym_and(rng: &mut StdRng) -> SymAndCircuit {
    let n = rng.gen_range(1..=8);
    let s = rng.gen_range(1..=5);
    let clauses = (0..s).map(|_| clause(rng, n, n)).collect();
    let t = top(rng, s);
    SymAndCircuit::new(n, clauses, t).unwrap()
}

/// Exact decision list with `s ≤ 5` queries over `n ≤ 6` inputs, `|w| ≤ 3`.
pub fn eldl(rng: &mut StdRng) -> DecisionList {
    let n = rng.gen_range(1..=6);
    let s = rng.gen_range(0..=5);
    let entries = (0..s)
        .map(|_| {
            let mut f = form(rng, n, 3);
            for c in f.coeffs.iter_mut() {
                if rng.gen_bool(0.5) {
                    *c = BigInt::default();
                }
            }
            // zero at a random point, so the query fires somewhere
            let x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            f.constant -= f.eval(&x);
            (f, rng.gen_bool(0.5))
        })
        .collect();
    DecisionList::new(n, ListKind::Eldl, entries).unwrap()
}

pub fn equal<A: Evaluator + ?Sized, B: Evaluator + ?Sized>(a: &A, b: &B) -> bool {
    equiv_check(a, b).unwrap().is_equal()
}
