//! Truth tables, named families, input substitutions and hypercube components.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, MAX_ARITY};
use crate::eval::{bits_of, check_arity, map_cube, Evaluator, Value};

/// A Boolean function stored as a packed truth table. Bit `Σ x_i 2^(i-1)` holds `f(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    arity: usize,
    words: Vec<u64>,
}

impl BoolFn {
    pub fn from_truth_table(bits: &[bool], n: usize) -> Result<BoolFn> {
        if n > MAX_ARITY {
            return Err(Error::ArityCap(n));
        }
        if bits.len() != 1usize << n {
            return Err(Error::TableLength { arity: n, got: bits.len() });
        }
        let mut f = BoolFn::constant(n, false)?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                f.set(i as u64, true);
            }
        }
        Ok(f)
    }

    pub fn constant(n: usize, value: bool) -> Result<BoolFn> {
        if n > MAX_ARITY {
            return Err(Error::ArityCap(n));
        }
        let len = 1usize << n;
        let mut words = vec![if value { u64::MAX } else { 0 }; len.div_ceil(64)];
        if len < 64 {
            words[0] &= (1u64 << len) - 1;
        }
        Ok(BoolFn { arity: n, words })
    }

    /// Materializes any total evaluator. Undefined points are an error.
    pub fn tabulate<E: Evaluator + ?Sized>(e: &E) -> Result<BoolFn> {
        let n = e.arity();
        if n > MAX_ARITY {
            return Err(Error::ArityCap(n));
        }
        let values = map_cube(n, |i| e.value_at(i));
        let mut f = BoolFn::constant(n, false)?;
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Value::One => f.set(i as u64, true),
                Value::Zero => {}
                Value::Undefined => return Err(Error::IllDefined(i as u64)),
            }
        }
        Ok(f)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> u64 {
        1u64 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, index: u64) -> bool {
        (self.words[(index >> 6) as usize] >> (index & 63)) & 1 == 1
    }

    fn set(&mut self, index: u64, value: bool) {
        let w = &mut self.words[(index >> 6) as usize];
        if value {
            *w |= 1 << (index & 63);
        } else {
            *w &= !(1 << (index & 63));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn complement(&self) -> BoolFn {
        let mut f = BoolFn::constant(self.arity, true).unwrap();
        for (w, s) in f.words.iter_mut().zip(&self.words) {
            *w &= !s;
        }
        f
    }

    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).filter(move |&i| self.get(i))
    }

    /// Lowercase hex, least significant nibble first, prefixed with `n=<arity>:`.
    pub fn to_hex(&self) -> String {
        let nibbles = (self.len() as usize).div_ceil(4);
        let mut s = format!("n={}:", self.arity);
        for j in 0..nibbles {
            let mut v = 0u32;
            for b in 0..4 {
                let idx = (4 * j + b) as u64;
                if idx < self.len() && self.get(idx) {
                    v |= 1 << b;
                }
            }
            s.push(char::from_digit(v, 16).unwrap());
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<BoolFn> {
        let bad = || Error::Parse(format!("invalid truth table {s:?}"));
        let rest = s.trim().strip_prefix("n=").ok_or_else(bad)?;
        let (n, hex) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if n > MAX_ARITY {
            return Err(Error::ArityCap(n));
        }
        let len = 1u64 << n;
        if hex.len() != (len as usize).div_ceil(4) {
            return Err(Error::TableLength { arity: n, got: hex.len() * 4 });
        }
        let mut f = BoolFn::constant(n, false)?;
        for (j, c) in hex.chars().enumerate() {
            let v = c.to_digit(16).filter(|_| !c.is_ascii_uppercase()).ok_or_else(bad)?;
            for b in 0..4 {
                let idx = (4 * j + b) as u64;
                if v >> b & 1 == 1 {
                    if idx >= len {
                        return Err(bad());
                    }
                    f.set(idx, true);
                }
            }
        }
        Ok(f)
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Evaluator for BoolFn {
    fn arity(&self) -> usize {
        self.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.get(crate::eval::index_of(x)))
    }
    fn value_at(&self, index: u64) -> Value {
        Value::from_bool(self.get(index))
    }
}

/// Named parametric families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Maj(usize),
    Xor(usize),
    /// Inner product mod 2 of `x = x_1..x_n` and `y = x_{n+1}..x_{2n}`.
    Ip(usize),
    Disj(usize),
    /// Parity of the largest index set to one; 0 on the all-zero input.
    Omb(usize),
    OmbAnd2(usize),
    ExactHalfCnf { n: usize, k: usize },
    /// `⋀_{i≤n} ⋁_{j≤width} (x_ij ∧ y_ij)`, with `x_ij` at position `(i-1)·width + j`.
    AndOrAnd { n: usize, width: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        match *self {
            FamilySpec::ExactHalfCnf { n, k } => {
                if k == 0 || k % 2 != 0 || n % k != 0 {
                    return bad("exact-half-cnf needs an even block size k dividing n");
                }
            }
            FamilySpec::AndOrAnd { width: 0, .. } => return bad("and-or-and needs width >= 1"),
            _ => {}
        }
        if self.arity() > 64 {
            return bad("arity above 64 is not supported even pointwise");
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        match *self {
            FamilySpec::Maj(n) | FamilySpec::Xor(n) | FamilySpec::Omb(n) => n,
            FamilySpec::Ip(n) | FamilySpec::Disj(n) | FamilySpec::OmbAnd2(n) => 2 * n,
            FamilySpec::ExactHalfCnf { n, .. } => n,
            FamilySpec::AndOrAnd { n, width } => 2 * n * width,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Maj(_) => "maj",
            FamilySpec::Xor(_) => "xor",
            FamilySpec::Ip(_) => "ip",
            FamilySpec::Disj(_) => "disj",
            FamilySpec::Omb(_) => "omb",
            FamilySpec::OmbAnd2(_) => "omb-and2",
            FamilySpec::ExactHalfCnf { .. } => "exact-half-cnf",
            FamilySpec::AndOrAnd { .. } => "and-or-and",
        }
    }

    /// Pointwise evaluation, valid at any arity.
    pub fn eval_point(&self, x: &[bool]) -> bool {
        let weight = |s: &[bool]| s.iter().filter(|&&b| b).count();
        match *self {
            FamilySpec::Maj(n) => 2 * weight(x) >= n,
            FamilySpec::Xor(_) => weight(x) % 2 == 1,
            FamilySpec::Ip(n) => (0..n).filter(|&i| x[i] && x[n + i]).count() % 2 == 1,
            FamilySpec::Disj(n) => (0..n).all(|i| !(x[i] && x[n + i])),
            FamilySpec::Omb(_) => omb(x.iter().copied()),
            FamilySpec::OmbAnd2(n) => omb((0..n).map(|i| x[i] && x[n + i])),
            FamilySpec::ExactHalfCnf { k, .. } => x.chunks(k).all(|b| 2 * weight(b) == k),
            FamilySpec::AndOrAnd { n, width } => {
                let half = n * width;
                (0..n).all(|i| (0..width).any(|j| x[i * width + j] && x[half + i * width + j]))
            }
        }
    }

    pub fn materialize(&self) -> Result<BoolFn> {
        family(*self)
    }
}

fn omb(bits: impl Iterator<Item = bool>) -> bool {
    // positions are 1-based; no set bit counts as index 0 (even)
    let last = bits.enumerate().filter(|(_, b)| *b).map(|(i, _)| i + 1).last().unwrap_or(0);
    last % 2 == 1
}

impl Evaluator for FamilySpec {
    fn arity(&self) -> usize {
        FamilySpec::arity(self)
    }
    fn value(&self, x: &[bool]) -> Value {
        Value::from_bool(self.eval_point(x))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Maj(n)
            | FamilySpec::Xor(n)
            | FamilySpec::Ip(n)
            | FamilySpec::Disj(n)
            | FamilySpec::Omb(n)
            | FamilySpec::OmbAnd2(n) => write!(f, "family:{}:{}", self.name(), n),
            FamilySpec::ExactHalfCnf { n, k } => write!(f, "family:{}:{}:{}", self.name(), n, k),
            FamilySpec::AndOrAnd { n, width } => write!(f, "family:{}:{}:{}", self.name(), n, width),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts `family:<name>:<n>[:<param>]` or the same without the `family:` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("family:").unwrap_or(s);
        let parts: Vec<&str> = body.split(':').collect();
        let bad = || Error::InvalidParams(format!("unknown family literal {s:?}"));
        let num = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let name = parts[0].to_ascii_lowercase().replace('_', "-");
        let spec = match (name.as_str(), parts.len()) {
            ("maj", 2) => FamilySpec::Maj(num(1)?),
            ("xor", 2) => FamilySpec::Xor(num(1)?),
            ("ip", 2) => FamilySpec::Ip(num(1)?),
            ("disj", 2) => FamilySpec::Disj(num(1)?),
            ("omb", 2) => FamilySpec::Omb(num(1)?),
            ("omb-and2", 2) => FamilySpec::OmbAnd2(num(1)?),
            ("exact-half-cnf", 3) => FamilySpec::ExactHalfCnf { n: num(1)?, k: num(2)? },
            ("and-or-and", 3) => FamilySpec::AndOrAnd { n: num(1)?, width: num(2)? },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Materializes a family's truth table.
pub fn family(spec: FamilySpec) -> Result<BoolFn> {
    spec.validate()?;
    let n = spec.arity();
    if n > MAX_ARITY {
        return Err(Error::ArityCap(n));
    }
    let bits = map_cube(n, |i| spec.eval_point(&bits_of(i, n)));
    BoolFn::from_truth_table(&bits, n)
}

/// One coordinate of a substitution's output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubstEntry {
    /// Zero-based source variable.
    Var(usize),
    Zero,
    One,
}

impl fmt::Display for SubstEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstEntry::Var(i) => write!(f, "x{}", i + 1),
            SubstEntry::Zero => f.write_str("0"),
            SubstEntry::One => f.write_str("1"),
        }
    }
}

impl FromStr for SubstEntry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(SubstEntry::Zero),
            "1" => Ok(SubstEntry::One),
            _ => s
                .strip_prefix('x')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| SubstEntry::Var(i - 1))
                .ok_or_else(|| Error::Parse(format!("invalid embedding token {s:?}"))),
        }
    }
}

/// Maps `{0,1}^source` into `{0,1}^target` by duplicating variables and adding constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    source_arity: usize,
    map: Vec<SubstEntry>,
}

impl Substitution {
    pub fn new(source_arity: usize, map: Vec<SubstEntry>) -> Result<Substitution> {
        for e in &map {
            if let SubstEntry::Var(i) = e {
                if *i >= source_arity {
                    return Err(Error::InvalidParams(format!(
                        "substitution refers to x{} but the source arity is {source_arity}",
                        i + 1
                    )));
                }
            }
        }
        Ok(Substitution { source_arity, map })
    }

    pub fn identity(n: usize) -> Substitution {
        Substitution { source_arity: n, map: (0..n).map(SubstEntry::Var).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.len() == self.source_arity
            && self.map.iter().enumerate().all(|(i, e)| *e == SubstEntry::Var(i))
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.map.len()
    }

    pub fn entries(&self) -> &[SubstEntry] {
        &self.map
    }

    pub fn apply_unchecked(&self, x: &[bool]) -> Vec<bool> {
        self.map
            .iter()
            .map(|e| match *e {
                SubstEntry::Var(i) => x[i],
                SubstEntry::Zero => false,
                SubstEntry::One => true,
            })
            .collect()
    }

    pub fn apply(&self, x: &[bool]) -> Result<Vec<bool>> {
        check_arity(self.source_arity, x.len())?;
        Ok(self.apply_unchecked(x))
    }

    pub fn tokens(&self) -> Vec<String> {
        self.map.iter().map(|e| e.to_string()).collect()
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tokens().serialize(s)
    }
}

/// Embeddings deserialize without their source arity; owners re-validate with
/// [`Substitution::new`] once the arity is known.
impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tokens = Vec::<String>::deserialize(d)?;
        let map = tokens
            .iter()
            .map(|t| t.parse::<SubstEntry>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let source_arity = map
            .iter()
            .filter_map(|e| if let SubstEntry::Var(i) = e { Some(i + 1) } else { None })
            .max()
            .unwrap_or(0);
        Ok(Substitution { source_arity, map })
    }
}

impl Substitution {
    pub(crate) fn with_source_arity(mut self, n: usize) -> Result<Substitution> {
        if self.source_arity > n {
            return Err(Error::InvalidRepr(format!(
                "embedding refers to x{} but the arity is {n}",
                self.source_arity
            )));
        }
        self.source_arity = n;
        Ok(self)
    }
}

/// `g(v(x))`.
pub fn apply_substitution<E: Evaluator + ?Sized>(g: &E, v: &Substitution, x: &[bool]) -> Result<Value> {
    check_arity(g.arity(), v.target_arity())?;
    let y = v.apply(x)?;
    Ok(g.value(&y))
}

/// Number of connected components of `f⁻¹(1)` in the Hamming cube graph.
pub fn components(f: &BoolFn) -> usize {
    let n = f.arity();
    let mut seen = BoolFn::constant(n, false).unwrap();
    let mut queue = VecDeque::new();
    let mut count = 0;
    for start in 0..f.len() {
        if !f.get(start) || seen.get(start) {
            continue;
        }
        count += 1;
        seen.set(start, true);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for b in 0..n {
                let u = v ^ (1 << b);
                if f.get(u) && !seen.get(u) {
                    seen.set(u, true);
                    queue.push_back(u);
                }
            }
        }
    }
    count
}
