//! Nearest-neighbor and k-nearest-neighbor representations with an input embedding.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::boolfn::{SubstEntry, Substitution};
use crate::error::{Error, Result};
use crate::eval::{Evaluator, Value};
use crate::form::{with_values, FormBank, IntForm, LinearForm, RationalForm};
use crate::rational::{common_denominator, Rational};

pub type Point = Vec<Rational>;

/// Labeled anchors in the embedded space, with the squared-distance forms
/// pulled back to the source variables and scaled to integers.
#[derive(Clone, Debug)]
struct Anchors {
    arity: usize,
    embedding: Substitution,
    positive: Vec<Point>,
    negative: Vec<Point>,
    kernel: Vec<IntForm>,
    bank: FormBank,
}

impl PartialEq for Anchors {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.embedding == other.embedding
            && self.positive == other.positive
            && self.negative == other.negative
    }
}

impl Eq for Anchors {}

/// `Δ(v(x), p)` as a rational affine form in `x`: `⟨1−2p, v(x)⟩ + ‖p‖²` with the
/// embedding folded into coefficients and constant.
pub fn distance_form(embedding: &Substitution, p: &[Rational]) -> RationalForm {
    let mut coeffs = vec![Rational::zero(); embedding.source_arity()];
    let mut constant: Rational = p.iter().map(Rational::square).sum();
    for (entry, pj) in embedding.entries().iter().zip(p) {
        let c = Rational::one() - pj - pj;
        match *entry {
            SubstEntry::Var(i) => coeffs[i] += &c,
            SubstEntry::One => constant += &c,
            SubstEntry::Zero => {}
        }
    }
    LinearForm::new(coeffs, constant)
}

/// Scales rational forms by the least common denominator of all their entries.
pub fn integer_forms(forms: &[RationalForm]) -> (Vec<IntForm>, BigInt) {
    let d = common_denominator(forms.iter().flat_map(|f| f.coeffs.iter().chain([&f.constant])));
    let scale = Rational::from(&d);
    let ints = forms
        .iter()
        .map(|f| f.scale(&scale).to_integer().expect("common denominator clears all fractions"))
        .collect();
    (ints, d)
}

impl Anchors {
    fn new(arity: usize, embedding: Substitution, positive: Vec<Point>, negative: Vec<Point>) -> Result<Anchors> {
        let embedding = Substitution::new(arity, embedding.entries().to_vec())?;
        let dim = embedding.target_arity();
        if positive.is_empty() || negative.is_empty() {
            return Err(Error::InvalidRepr("both anchor sets must be nonempty".into()));
        }
        for p in positive.iter().chain(&negative) {
            if p.len() != dim {
                return Err(Error::InvalidRepr(format!(
                    "anchor has {} coordinates but the embedded dimension is {dim}",
                    p.len()
                )));
            }
        }
        if let Some(p) = positive.iter().find(|p| negative.contains(p)) {
            return Err(Error::InvalidRepr(format!("anchor {p:?} is both positive and negative")));
        }
        let rational: Vec<RationalForm> =
            positive.iter().chain(&negative).map(|p| distance_form(&embedding, p)).collect();
        let (kernel, _) = integer_forms(&rational);
        let bank = FormBank::new(&kernel);
        Ok(Anchors { arity, embedding, positive, negative, kernel, bank })
    }

    fn dim(&self) -> usize {
        self.embedding.target_arity()
    }

    fn nn_value(&self, x: &[bool]) -> Value {
        let np = self.positive.len();
        with_values!(self.bank.values(&self.kernel, x), |v| {
            let best_p = v[..np].iter().min().unwrap();
            let best_n = v[np..].iter().min().unwrap();
            match best_p.cmp(best_n) {
                std::cmp::Ordering::Less => Value::One,
                std::cmp::Ordering::Greater => Value::Zero,
                std::cmp::Ordering::Equal => Value::Undefined,
            }
        })
    }

    fn knn_value(&self, x: &[bool], k: usize) -> Value {
        let np = self.positive.len();
        with_values!(self.bank.values(&self.kernel, x), |v| {
            let mut order: Vec<usize> = (0..v.len()).collect();
            order.sort_by(|&a, &b| v[a].cmp(&v[b]));
            if k < v.len() && v[order[k - 1]] == v[order[k]] {
                return Value::Undefined;
            }
            let pos = order[..k].iter().filter(|&&i| i < np).count();
            Value::from_bool(2 * pos >= k)
        })
    }

    fn bit_complexity(&self) -> BitComplexity {
        let bits = self
            .positive
            .iter()
            .chain(&self.negative)
            .flatten()
            .map(Rational::bit_size)
            .max()
            .unwrap_or(0);
        BitComplexity { bits, anchors: self.positive.len() + self.negative.len(), dim: self.dim() }
    }

    fn is_boolean(&self) -> bool {
        self.positive
            .iter()
            .chain(&self.negative)
            .flatten()
            .all(|c| c.is_zero() || *c == Rational::one())
    }
}

/// Report of the largest anchor coordinate size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitComplexity {
    pub bits: u64,
    pub anchors: usize,
    pub dim: usize,
}

macro_rules! anchor_accessors {
    () => {
        /// Source arity.
        pub fn arity(&self) -> usize {
            self.a.arity
        }

        /// Embedded (ambient) dimension.
        pub fn dim(&self) -> usize {
            self.a.dim()
        }

        pub fn embedding(&self) -> &Substitution {
            &self.a.embedding
        }

        pub fn positive(&self) -> &[Point] {
            &self.a.positive
        }

        pub fn negative(&self) -> &[Point] {
            &self.a.negative
        }

        pub fn anchor_count(&self) -> usize {
            self.a.positive.len() + self.a.negative.len()
        }

        /// True iff every anchor coordinate is 0 or 1.
        pub fn is_boolean(&self) -> bool {
            self.a.is_boolean()
        }

        pub fn bit_complexity(&self) -> BitComplexity {
            self.a.bit_complexity()
        }

        /// Squared distance forms scaled by a common positive factor, positives first.
        pub fn distance_kernel(&self) -> &[IntForm] {
            &self.a.kernel
        }

        /// `Σ (v(x)_j − p_j)²` computed coordinate by coordinate.
        pub fn distance_direct(&self, x: &[bool], p: &[Rational]) -> Rational {
            self.a
                .embedding
                .apply_unchecked(x)
                .iter()
                .zip(p)
                .map(|(&b, pj)| (Rational::from(b as i64) - pj).square())
                .sum()
        }

        /// The same distance via the expanded form `⟨1−2p, v(x)⟩ + ‖p‖²`.
        pub fn distance_expanded(&self, x: &[bool], p: &[Rational]) -> Rational {
            distance_form(&self.a.embedding, p).eval(x)
        }
    };
}

/// Nearest-neighbor representation. The embedding realizes subfunctions:
/// the represented function is `x ↦ NN(v(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "NNDoc", try_from = "NNDoc")]
pub struct NNRep {
    a: Anchors,
}

impl NNRep {
    pub fn new(arity: usize, embedding: Substitution, positive: Vec<Point>, negative: Vec<Point>) -> Result<NNRep> {
        Ok(NNRep { a: Anchors::new(arity, embedding, positive, negative)? })
    }

    /// Representation without an embedding (`ñ = n`).
    pub fn plain(positive: Vec<Point>, negative: Vec<Point>) -> Result<NNRep> {
        let n = positive.first().map_or(0, Vec::len);
        NNRep::new(n, Substitution::identity(n), positive, negative)
    }

    anchor_accessors!();

    /// Same anchors read as a kNN representation.
    pub fn with_k(&self, k: usize) -> Result<KNNRep> {
        KNNRep::from_anchors(self.a.clone(), k)
    }
}

impl Evaluator for NNRep {
    fn arity(&self) -> usize {
        self.a.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        self.a.nn_value(x)
    }
}

/// k-nearest-neighbor representation: the output is the majority label (ties
/// to 1) among the k nearest anchors, provided they are strictly separated
/// from the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "NNDoc", try_from = "NNDoc")]
pub struct KNNRep {
    a: Anchors,
    k: usize,
}

impl KNNRep {
    pub fn new(
        arity: usize,
        embedding: Substitution,
        positive: Vec<Point>,
        negative: Vec<Point>,
        k: usize,
    ) -> Result<KNNRep> {
        KNNRep::from_anchors(Anchors::new(arity, embedding, positive, negative)?, k)
    }

    pub fn plain(positive: Vec<Point>, negative: Vec<Point>, k: usize) -> Result<KNNRep> {
        let n = positive.first().map_or(0, Vec::len);
        KNNRep::new(n, Substitution::identity(n), positive, negative, k)
    }

    fn from_anchors(a: Anchors, k: usize) -> Result<KNNRep> {
        let m = a.positive.len() + a.negative.len();
        if k == 0 || k > m {
            return Err(Error::InvalidRepr(format!("k = {k} must lie in 1..={m}")));
        }
        Ok(KNNRep { a, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    anchor_accessors!();

    pub fn to_nn(&self) -> NNRep {
        NNRep { a: self.a.clone() }
    }
}

impl Evaluator for KNNRep {
    fn arity(&self) -> usize {
        self.a.arity
    }
    fn value(&self, x: &[bool]) -> Value {
        self.a.knn_value(x, self.k)
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct NNDoc {
    model: String,
    arity: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    embedding: Substitution,
    positive: Vec<Point>,
    negative: Vec<Point>,
}

impl NNDoc {
    fn from_anchors(model: &str, a: Anchors, k: Option<usize>) -> NNDoc {
        NNDoc {
            model: model.into(),
            arity: a.arity,
            dim: a.dim(),
            k,
            embedding: a.embedding,
            positive: a.positive,
            negative: a.negative,
        }
    }

    fn anchors(self, model: &str) -> Result<(Anchors, Option<usize>)> {
        if self.model != model {
            return Err(Error::InvalidRepr(format!("expected model {model:?}, found {:?}", self.model)));
        }
        if self.dim != self.embedding.target_arity() {
            return Err(Error::InvalidRepr(format!(
                "dim {} disagrees with an embedding of length {}",
                self.dim,
                self.embedding.target_arity()
            )));
        }
        let embedding = self.embedding.with_source_arity(self.arity)?;
        Ok((Anchors::new(self.arity, embedding, self.positive, self.negative)?, self.k))
    }
}

impl From<NNRep> for NNDoc {
    fn from(r: NNRep) -> Self {
        NNDoc::from_anchors("nn", r.a, None)
    }
}

impl From<KNNRep> for NNDoc {
    fn from(r: KNNRep) -> Self {
        NNDoc::from_anchors("knn", r.a, Some(r.k))
    }
}

impl TryFrom<NNDoc> for NNRep {
    type Error = Error;
    fn try_from(d: NNDoc) -> Result<Self> {
        if d.k.is_some() {
            return Err(Error::InvalidRepr("an nn document has no k".into()));
        }
        Ok(NNRep { a: d.anchors("nn")?.0 })
    }
}

impl TryFrom<NNDoc> for KNNRep {
    type Error = Error;
    fn try_from(d: NNDoc) -> Result<Self> {
        let (a, k) = d.anchors("knn")?;
        KNNRep::from_anchors(a, k.ok_or_else(|| Error::InvalidRepr("knn document needs k".into()))?)
    }
}

/// Parses a point written as integers, e.g. `&[1, 0]`.
pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| Rational::from(c)).collect()
}
