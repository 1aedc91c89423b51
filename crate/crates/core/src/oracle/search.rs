//! Exhaustive search for the fewest Boolean anchors representing a function.
//!
//! An anchor lies at distance 0 from its own point, so a representation of `f`
//! must label every anchor `p` with `f(p)`. Candidates are therefore plain
//! `m`-subsets of the cube, enumerated in lexicographic order of point indices.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::boolfn::BoolFn;
use crate::error::{Error, Result};
use crate::eval::bits_of;
use crate::rational::Rational;
use crate::repr::NNRep;

/// Largest arity accepted by the search.
pub const MAX_SEARCH_ARITY: usize = 5;

/// Default cap on candidate evaluations.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const CHUNK: u128 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Examined {
    pub m: usize,
    pub candidates: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Minimal anchor count.
    pub m: usize,
    /// True when `f` is constant and the witness pairs one anchor with a far dummy of the other label.
    pub dummy_anchor: bool,
    pub examined: Vec<Examined>,
    pub witness: NNRep,
}

#[derive(Clone, Debug, Default)]
pub struct SearchConfig {
    pub budget: Option<u64>,
    pub checkpoint: Option<PathBuf>,
}

/// Resumable search state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub target: String,
    pub m: usize,
    /// Rank of the next unexamined candidate at size `m`.
    pub cursor: String,
    pub examined: Vec<Examined>,
    pub best: Option<NNRep>,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The `rank`-th `m`-subset of `0..n` in lexicographic order.
fn unrank(mut rank: u128, n: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    let mut c = 0;
    for i in 0..m {
        loop {
            let count = binom(n - c - 1, m - i - 1);
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let m = c.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if c[i] < n - m + i {
            c[i] += 1;
            for j in i + 1..m {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Target {
    n: usize,
    values: Vec<bool>,
}

impl Target {
    fn represents(&self, anchors: &[usize]) -> bool {
        let (mut has_pos, mut has_neg) = (false, false);
        for &a in anchors {
            if self.values[a] {
                has_pos = true;
            } else {
                has_neg = true;
            }
        }
        if !(has_pos && has_neg) {
            return false;
        }
        (0..1usize << self.n).all(|x| {
            let (mut dp, mut dn) = (u32::MAX, u32::MAX);
            for &a in anchors {
                let d = (x ^ a).count_ones();
                if self.values[a] {
                    dp = dp.min(d);
                } else {
                    dn = dn.min(d);
                }
            }
            if self.values[x] {
                dp < dn
            } else {
                dn < dp
            }
        })
    }

    /// First success in ranks `[from, to)`, scanning in rank order.
    fn scan(&self, m: usize, from: u128, to: u128) -> Option<(u128, Vec<usize>)> {
        let points = 1usize << self.n;
        let chunks = (to - from).div_ceil(CHUNK);
        let scan_chunk = |c: u128| {
            let start = from + c * CHUNK;
            let end = (start + CHUNK).min(to);
            let mut comb = unrank(start, points, m);
            let mut rank = start;
            while rank < end {
                if self.represents(&comb) {
                    return Some((rank, comb));
                }
                rank += 1;
                if !next_combination(&mut comb, points) {
                    break;
                }
            }
            None
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..chunks as u64).into_par_iter().find_map_first(|c| scan_chunk(c as u128))
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..chunks).find_map(scan_chunk)
        }
    }
}

fn witness(n: usize, f: &BoolFn, anchors: &[usize]) -> Result<NNRep> {
    let point = |a: usize| bits_of(a as u64, n).into_iter().map(|b| Rational::from(b as i64)).collect();
    let (pos, neg): (Vec<usize>, Vec<usize>) = anchors.iter().partition(|&&a| f.get(a as u64));
    NNRep::plain(pos.into_iter().map(point).collect(), neg.into_iter().map(point).collect())
}

/// A point at distance greater than `n` from every cube point.
pub fn far_dummy(n: usize) -> Vec<Rational> {
    vec![Rational::from(-2); n.max(1)]
}

fn constant_witness(f: &BoolFn) -> Result<SearchResult> {
    let n = f.arity();
    let corner = vec![Rational::zero(); n];
    let (pos, neg) = if f.get(0) { (corner, far_dummy(n)) } else { (far_dummy(n), corner) };
    Ok(SearchResult {
        m: 1,
        dummy_anchor: true,
        examined: vec![Examined { m: 1, candidates: 1 }],
        witness: NNRep::plain(vec![pos], vec![neg])?,
    })
}

fn save(path: &Option<PathBuf>, cp: &Checkpoint) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(cp)?)?;
    }
    Ok(())
}

/// Finds the least `m` such that some `m` Boolean anchors represent `f`, with
/// every smaller `m` exhausted.
pub fn min_hnn_search(f: &BoolFn, config: &SearchConfig) -> Result<SearchResult> {
    let n = f.arity();
    if n > MAX_SEARCH_ARITY {
        return Err(Error::InvalidParams(format!(
            "anchor search supports arity up to {MAX_SEARCH_ARITY}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParams("search needs arity at least 1".into()));
    }
    let ones = f.count_ones();
    if ones == 0 || ones == f.len() {
        return constant_witness(f);
    }
    let target = Target { n, values: (0..f.len()).map(|i| f.get(i)).collect() };
    let points = 1usize << n;
    let budget = config.budget.unwrap_or(DEFAULT_BUDGET) as u128;

    let mut cp = Checkpoint { target: f.to_hex(), m: 1, cursor: "0".into(), examined: Vec::new(), best: None };
    if let Some(path) = &config.checkpoint {
        if path.exists() {
            let saved: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if saved.target != cp.target {
                return Err(Error::InvalidParams(format!(
                    "checkpoint belongs to {}, not {}",
                    saved.target, cp.target
                )));
            }
            cp = saved;
        }
    }
    if let Some(best) = &cp.best {
        return Ok(SearchResult {
            m: cp.m,
            dummy_anchor: false,
            examined: cp.examined.clone(),
            witness: best.clone(),
        });
    }
    let mut cursor: u128 = cp.cursor.parse().map_err(|_| Error::Parse("bad checkpoint cursor".into()))?;
    let mut spent: u128 = cp.examined.iter().map(|e| e.candidates as u128).sum::<u128>() + cursor;

    for m in cp.m..=points {
        let total = binom(points, m);
        let mut examined_m: u128 = if m == cp.m { cursor } else { 0 };
        if m != cp.m {
            cursor = 0;
        }
        while cursor < total {
            let room = budget.saturating_sub(spent);
            if room == 0 {
                cp.m = m;
                cp.cursor = cursor.to_string();
                save(&config.checkpoint, &cp)?;
                return Err(Error::BudgetExhausted(budget as u64));
            }
            let to = total.min(cursor + room.min(CHUNK * 256));
            if let Some((rank, comb)) = target.scan(m, cursor, to) {
                let found = rank - cursor + 1;
                examined_m += found;
                let mut examined = std::mem::take(&mut cp.examined);
                examined.push(Examined { m, candidates: examined_m as u64 });
                let w = witness(n, f, &comb)?;
                cp = Checkpoint {
                    target: cp.target,
                    m,
                    cursor: (rank + 1).to_string(),
                    examined: examined.clone(),
                    best: Some(w.clone()),
                };
                save(&config.checkpoint, &cp)?;
                return Ok(SearchResult { m, dummy_anchor: false, examined, witness: w });
            }
            spent += to - cursor;
            examined_m += to - cursor;
            cursor = to;
            cp.m = m;
            cp.cursor = cursor.to_string();
            save(&config.checkpoint, &cp)?;
        }
        cp.examined.push(Examined { m, candidates: examined_m as u64 });
        cp.m = m + 1;
        cp.cursor = "0".into();
        cursor = 0;
    }
    Err(Error::Invariant("every non-constant function has a representation using all points".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_ranks() {
        let mut c = unrank(0, 5, 3);
        assert_eq!(c, vec![0, 1, 2]);
        for r in 1..binom(5, 3) {
            assert!(next_combination(&mut c, 5));
            assert_eq!(unrank(r, 5, 3), c);
        }
        assert!(!next_combination(&mut c, 5));
        assert_eq!(binom(32, 16), 601_080_390);
    }

    #[test]
    fn small_minimums() {
        use crate::boolfn::{family, FamilySpec};
        let cfg = SearchConfig::default();
        let maj3 = min_hnn_search(&family(FamilySpec::Maj(3)).unwrap(), &cfg).unwrap();
        assert_eq!(maj3.m, 2);
        assert_eq!(maj3.examined[0], Examined { m: 1, candidates: 8 });
        assert_eq!(min_hnn_search(&family(FamilySpec::Xor(2)).unwrap(), &cfg).unwrap().m, 4);
        let c = min_hnn_search(&BoolFn::constant(2, true).unwrap(), &cfg).unwrap();
        assert!(c.dummy_anchor && c.m == 1);
    }

    #[test]
    fn budget_and_resume() {
        use crate::boolfn::{family, FamilySpec};
        let dir = std::env::temp_dir().join(format!("nnrep-search-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let f = family(FamilySpec::Xor(2)).unwrap();
        let tight = SearchConfig { budget: Some(5), checkpoint: Some(dir.clone()) };
        assert_eq!(min_hnn_search(&f, &tight), Err(Error::BudgetExhausted(5)));
        let cp: Checkpoint = serde_json::from_str(&std::fs::read_to_string(&dir).unwrap()).unwrap();
        assert_eq!((cp.m, cp.cursor.as_str()), (2, "1"));
        let resumed = SearchConfig { budget: None, checkpoint: Some(dir.clone()) };
        let r = min_hnn_search(&f, &resumed).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(r, min_hnn_search(&f, &SearchConfig::default()).unwrap());
        std::fs::remove_file(&dir).unwrap();
    }
}
