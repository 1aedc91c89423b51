//! Acceptance suite: each criterion runs on fixed-seed corpora and prints one
//! PASS/FAIL line with its runtime. Criteria listed in `KNOWN_RED` are expected
//! to fail for a documented mathematical reason and do not fail the run.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nnrep::constructions::{cnf_to_nn, disj_hnn, many_component_cnf, omb_and2_mpptf, xor_mpptf};
use nnrep::oracle::{component_bound_check, min_hnn_search, SearchConfig};
use nnrep::repr::{KNNRep, KStat, NNRep, SymAndCircuit};
use nnrep::transforms::*;
use nnrep::{bits_of, family, Evaluator, FamilySpec, IntForm, LinearForm};
use num_bigint::BigInt;

/// Criteria that cannot hold as literally stated, with the reason.
const KNOWN_RED: &[(usize, &str)] = &[(
    7,
    "the symmetric index t = floor((k+1)/2) is wrong for even k: anchors A = {2}, B = {1, 3} on a line with \
     k = 2 have a positive in the 2 nearest, yet A_(1) = 2 > B_(1) = 1",
)];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Corpora shared by several criteria.
struct Shared {
    mpptfs: Vec<nnrep::repr::MpPTF>,
    knns: Vec<KNNRep>,
    hnns: Vec<NNRep>,
}

fn c1() -> Outcome {
    let mut rng = rng(1);
    let mut by_n = [0u64; 11];
    let (mut ok, mut worst) = (true, 0u64);
    for i in 0..200 {
        let n = 2 + i % 9;
        let m = rand::Rng::gen_range(&mut rng, 1..=15);
        let c = cnf_or_dnf(&mut rng, n, m);
        let r = cnf_to_nn(&c).unwrap();
        let bits = r.bit_complexity().bits;
        by_n[n] = by_n[n].max(bits);
        worst = worst.max(bits);
        ok &= r.anchor_count() == m + 1 && equal(&c, &r);
    }
    let maxima = &by_n[2..];
    let constant = maxima.iter().all(|&b| b == maxima[0]);
    outcome(
        ok && constant,
        format!("200 formulas, m+1 anchors and EQUAL: {ok}; largest coordinate size per n = 2..10: {maxima:?} bits"),
    )
}

fn c2() -> Outcome {
    let ok = (1..=12).all(|n| {
        let m = xor_mpptf(n).unwrap();
        m.terms() == n + 1 && equal(&family(FamilySpec::Xor(n)).unwrap(), &m)
    });
    outcome(ok, "parity gadgets n = 1..12 have n+1 terms and are EQUAL")
}

fn c3() -> Outcome {
    let ok = (1..=5).all(|n| {
        let r = disj_hnn(n).unwrap();
        r.anchor_count() == 3 * n && r.is_boolean() && equal(&family(FamilySpec::Disj(n)).unwrap(), &r)
    });
    outcome(ok, "disjointness n = 1..5: 3n Boolean anchors, EQUAL")
}

fn c4(s: &mut Shared) -> Outcome {
    let mut ok = true;
    let mut widest = 0;
    for m in &s.mpptfs {
        let pass = mpptf_to_hnn(m).unwrap();
        let n = m.arity() as i64;
        let w = m.max_entry();
        let limit = BigInt::from(12 * n) * &w + BigInt::from(8) * &w;
        let r = pass.output;
        ok &= r.is_boolean() && BigInt::from(r.dim()) <= limit && equal(m, &r);
        widest = widest.max(r.dim());
        s.hnns.push(r);
    }
    outcome(ok, format!("100 min-plus functions to Boolean anchors within 12nW+8W dims (widest {widest}), EQUAL"))
}

fn c5(s: &Shared) -> Outcome {
    let mut ok = true;
    for m in &s.mpptfs {
        let pass = mpptf_to_nn(m).unwrap();
        let squares = pass.report.bounds.iter().find(|b| b.name.contains("four-square")).unwrap();
        let r = &pass.output;
        ok &= r.dim() == m.arity() + 4 && squares.met && r.anchor_count() == m.terms() && equal(m, r);
    }
    outcome(ok, "100 min-plus functions to rational anchors in n+4 dims, four-square identities verified, EQUAL")
}

/// Number of k-subsets with at least as many positives as negatives.
fn left_subsets(np: usize, nn: usize, k: usize) -> usize {
    (0..=k).filter(|&j| 2 * j >= k).map(|j| binom(np, j) * binom(nn, k - j)).sum()
}

fn c6(s: &Shared) -> Outcome {
    let (mut ok, mut dummies, mut singles) = (true, 0, 0);
    for r in &s.knns {
        let (np, nn, k) = (r.positive().len(), r.negative().len(), r.k());
        let total = binom(np + nn, k);
        let left = left_subsets(np, nn, k);
        let one_sided = left == 0 || left == total;
        dummies += one_sided as usize;
        let m = knn_to_mpptf(r).unwrap().output;
        ok &= m.terms() == total + one_sided as usize && m.left().len() == left + (left == 0) as usize;
        ok &= equal(r, &m);
        if k == 1 {
            singles += 1;
            ok &= m == nn_to_mpptf(&r.to_nn()).unwrap().output;
        }
    }
    outcome(
        ok,
        format!(
            "100 kNN: C(m,k) subset terms, EQUAL; {singles} k=1 outputs identical to the 1-NN conversion; \
             {dummies} one-sided splits carry one extra losing constant term"
        ),
    )
}

/// The symmetric-index reading: distance forms of P against N, both at
/// `t = floor((k+1)/2)`, a short side padded with forms above every value.
fn literal_t(r: &KNNRep) -> KStat {
    let kernel = r.distance_kernel();
    let np = r.positive().len();
    let t = r.k().div_ceil(2);
    let top: BigInt = kernel.iter().map(|f| f.range().1).max().unwrap() + 1;
    let pad = |mut v: Vec<IntForm>| {
        while v.len() < t {
            v.push(LinearForm::constant(top.clone(), r.arity()));
        }
        v
    };
    KStat::new(r.arity(), pad(kernel[..np].to_vec()), pad(kernel[np..].to_vec()), t, t).unwrap()
}

fn c7(s: &Shared) -> Outcome {
    let (mut ok, mut odd_at_t, mut even, mut even_wrong) = (true, true, 0, 0);
    for r in &s.knns {
        let k = r.k();
        let st = knn_to_kstat(r).unwrap().output;
        let back = kstat_to_knn(&st).unwrap().output;
        ok &= equal(r, &st) && equal(&st, &back) && equal(r, &back);
        let literal = equal(r, &literal_t(r));
        if k % 2 == 1 {
            odd_at_t &= st.k_left() == k.div_ceil(2) && literal;
        } else {
            even += 1;
            even_wrong += !literal as usize;
        }
    }
    // the line example with k = 2: positive at 2, negatives at 1 and 3, input 0 mapped to the origin
    let pt = |v: i64| vec![nnrep::Rational::from(v)];
    let line = KNNRep::plain(vec![pt(-2)], vec![pt(-1), pt(-3)], 2).unwrap();
    let line_wrong = literal_t(&line).value_at(0) != line.value_at(0);
    outcome(
        ok && odd_at_t && even_wrong == 0 && !line_wrong,
        format!(
            "both directions and the round trip EQUAL on 100 kNN: {ok}; odd k at t: {odd_at_t}; \
             t on even k: wrong on {even_wrong} of {even} instances and on the line example ({line_wrong}); \
             even k is exact with indices (k/2, k/2+1)"
        ),
    )
}

fn c8() -> Outcome {
    let mut rng = rng(8);
    let mut ok = true;
    for _ in 0..100 {
        let s = kstat(&mut rng);
        let kk = s.k_left() + s.k_right();
        let out = twosided_to_labeled(&s).unwrap().output;
        ok &= out.forms().len() == kk * s.left().len() + (kk + 1) * s.right().len();
        ok &= out.k() == (kk - 1) * (kk + 1) + 1 && equal(&s, &out);
    }
    let mut redrawn = 0;
    for _ in 0..100 {
        let (s, r) = labeled(&mut rng, true);
        redrawn += r;
        let out = labeled_to_twosided(&s).unwrap().output;
        ok &= out.terms() == 2 * s.forms().len() && equal(&s, &out);
    }
    outcome(
        ok,
        format!(
            "forward: 100 two-sided instances with exact form count and k, EQUAL; backward: 100 labeled \
             instances EQUAL ({redrawn} draws with a mixed-label tie at the k-th value skipped)"
        ),
    )
}

fn c9(s: &Shared) -> Outcome {
    let mut ok = true;
    for m in &s.mpptfs {
        let n = m.arity();
        let attainable: usize = m
            .left()
            .iter()
            .chain(m.right())
            .map(|f| {
                let mut v: Vec<BigInt> = (0..1u64 << n).map(|i| f.eval(&bits_of(i, n))).collect();
                v.sort();
                v.dedup();
                v.len()
            })
            .sum();
        let d = mpptf_to_ldl(m).unwrap().output;
        ok &= d.len() <= attainable && equal(m, &d);
    }
    outcome(ok, "100 min-plus functions to linear decision lists within the attainable-value count, EQUAL")
}

fn c10() -> Outcome {
    let mut rng = rng(10);
    let mut ok = true;
    for _ in 0..100 {
        let c = sym_maj(&mut rng);
        let s = c.gates().len();
        let out = sym_maj_to_kstat(&c).unwrap().output;
        ok &= out.forms().len() == 2 * s + 1 && out.k() == s + 1 && equal(&c, &out);
    }
    outcome(ok, "100 SYM of MAJ circuits: 2s+1 forms, k = s+1, EQUAL")
}

fn c11() -> Outcome {
    let mut ok = true;
    for n in [2, 3] {
        let r = sym_and_to_knn(&SymAndCircuit::inner_product(n)).unwrap().output;
        ok &= r.anchor_count() == 6 * n + 4 && r.k() == 2 * n + 1;
        ok &= nnrep::repr::well_defined(&r).unwrap().is_well_defined();
        ok &= equal(&family(FamilySpec::Ip(n)).unwrap(), &r);
    }
    let mut rng = rng(11);
    for _ in 0..50 {
        let c = sym_and(&mut rng);
        let r = sym_and_to_knn(&c).unwrap().output;
        ok &= r.anchor_count() == 6 * c.clauses().len() + 4 && equal(&c, &r);
    }
    outcome(ok, "inner product n = 2, 3 with 6n+4 anchors and k = 2n+1; 50 random SYM of AND circuits EQUAL")
}

fn c12() -> Outcome {
    let mut rng = rng(12);
    let ok = (0..100).all(|_| {
        let d = eldl(&mut rng);
        equal(&d, &eldl_to_kstat(&d).unwrap().output)
    });
    outcome(ok, "100 exact decision lists to labeled statistics, EQUAL")
}

fn c13(s: &Shared) -> Outcome {
    let mut reps: Vec<NNRep> = (1..=5).map(|n| disj_hnn(n).unwrap()).collect();
    for spec in [FamilySpec::Maj(3), FamilySpec::Xor(2)] {
        reps.push(min_hnn_search(&family(spec).unwrap(), &SearchConfig::default()).unwrap().witness);
    }
    reps.extend(s.hnns.iter().cloned());
    let mut ok = true;
    for r in &reps {
        let (p, q, d) = (r.positive().len(), r.negative().len(), r.dim());
        let m = p + q;
        let c3 = hnn_to_depth3(r, Depth3Variant::Smallest).unwrap().output;
        let sl = hnn_to_depth3_slice(r).unwrap().output;
        let c2 = hnn_to_depth2(r).unwrap().output;
        ok &= c3.size() == p * q + p.min(q) + 1 && c3.depth() == 3;
        ok &= sl.size() <= (d + 1) * m + (d + 1) * p + 1;
        ok &= c2.first_level_gates() == 2 * d * m && c2.depth() == 2;
        ok &= equal(r, &c3) && equal(r, &sl) && equal(r, &c2);
    }
    outcome(ok, format!("{} Boolean-anchor representations, three circuit forms each, sizes exact, EQUAL", reps.len()))
}

fn c14() -> Outcome {
    let mut ok = true;
    let mut found = Vec::new();
    let mut witnesses = Vec::new();
    for (spec, want) in [(FamilySpec::Maj(4), 4), (FamilySpec::Xor(2), 4), (FamilySpec::Maj(3), 2)] {
        let f = family(spec).unwrap();
        let res = min_hnn_search(&f, &SearchConfig::default()).unwrap();
        ok &= res.m == want;
        found.push(format!("{spec} = {}", res.m));
        witnesses.push((f, res.witness));
    }
    for n in 1..=5 {
        witnesses.push((family(FamilySpec::Disj(n)).unwrap(), disj_hnn(n).unwrap()));
    }
    for (f, r) in &witnesses {
        let b = component_bound_check(f, r).unwrap();
        ok &= b.computes && b.holds;
    }
    let (_, cert) = many_component_cnf(8, 2).unwrap();
    ok &= cert.components == 16 && cert.matches;
    outcome(
        ok,
        format!(
            "least anchor counts {}; component bound holds on {} representations; exact-half CNF n=8 k=2 has {} components",
            found.join(", "),
            witnesses.len(),
            cert.components
        ),
    )
}

fn c15(s: &Shared) -> Outcome {
    let mut ok = true;
    for r in &s.knns {
        let m = knn_to_mpptf(r).unwrap().output;
        let nn = mpptf_to_nn(&m).unwrap().output;
        ok &= nn.anchor_count() == m.terms() && equal(r, &nn);
    }
    outcome(
        ok,
        "sign-rank lower bounds are not reproduced; the kNN to min-plus to NN chain gives one anchor per subset term \
         and is EQUAL on the 100 kNN corpus",
    )
}

fn main() -> ExitCode {
    let mut rng8 = rng(4);
    let mut knn_rng = rng(6);
    let mut shared = Shared {
        mpptfs: (0..100).map(|_| mpptf(&mut rng8)).collect(),
        knns: (0..100).map(|_| knn(&mut knn_rng)).collect(),
        hnns: Vec::new(),
    };
    // the two-block gadget has no criterion of its own
    assert!(equal(&family(FamilySpec::OmbAnd2(3)).unwrap(), &omb_and2_mpptf(3).unwrap()));

    type Run<'a> = Box<dyn FnOnce(&mut Shared) -> Outcome + 'a>;
    let criteria: Vec<(usize, &str, u64, Run)> = vec![
        (1, "CNF/DNF to NN", 60, Box::new(|_| c1())),
        (2, "parity min-plus gadget", 10, Box::new(|_| c2())),
        (3, "disjointness with Boolean anchors", 10, Box::new(|_| c3())),
        (4, "min-plus to Boolean anchors", 120, Box::new(c4)),
        (5, "min-plus to rational anchors", 120, Box::new(|s| c5(s))),
        (6, "kNN to min-plus", 120, Box::new(|s| c6(s))),
        (7, "kNN and two-sided statistics", 120, Box::new(|s| c7(s))),
        (8, "two-sided and labeled statistics", 120, Box::new(|_| c8())),
        (9, "min-plus to linear decision list", 60, Box::new(|s| c9(s))),
        (10, "SYM of MAJ to labeled statistic", 120, Box::new(|_| c10())),
        (11, "SYM of AND to kNN", 300, Box::new(|_| c11())),
        (12, "exact decision list to labeled statistic", 120, Box::new(|_| c12())),
        (13, "threshold circuit emission", 120, Box::new(|s| c13(s))),
        (14, "least anchor counts and component bounds", 600, Box::new(|_| c14())),
        (15, "scope of lower bounds", 120, Box::new(|s| c15(s))),
    ];
    let mut unexpected = Vec::new();
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let o = run(&mut shared);
        let took = start.elapsed();
        let ok = o.ok && took <= Duration::from_secs(budget);
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        let tag = match (ok, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (documented)",
            (false, None) => "FAIL",
        };
        println!("{tag} [{id:>2}] {title}: {} [{:.2}s of {budget}s]", o.detail, took.as_secs_f64());
        if let (false, Some((_, why))) = (ok, known) {
            println!("       reason: {why}");
        }
        if !ok && known.is_none() {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
