//! Affine forms over Boolean variables.

use std::fmt::Display;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

/// Scalars usable as form coefficients.
pub trait Scalar:
    Clone + PartialEq + Ord + Display + FromStr + Zero + std::fmt::Debug + Send + Sync
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Mul<&'a Self, Output = Self> + Neg<Output = Self>,
{
}

impl Scalar for BigInt {}
impl Scalar for Rational {}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

/// `⟨coeffs, x⟩ + constant`, evaluated at Boolean points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<T> {
    pub coeffs: Vec<T>,
    pub constant: T,
}

/// Integer-coefficient form; the only form type accepted by the inequality models.
pub type IntForm = LinearForm<BigInt>;
pub type RationalForm = LinearForm<Rational>;

impl<T: Scalar> LinearForm<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T> + Neg<Output = T>,
{
    pub fn new(coeffs: Vec<T>, constant: T) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn constant(value: T, arity: usize) -> Self {
        LinearForm { coeffs: vec![T::zero(); arity], constant: value }
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[bool]) -> T {
        debug_assert_eq!(x.len(), self.coeffs.len());
        let mut acc = self.constant.clone();
        for (c, &b) in self.coeffs.iter().zip(x) {
            if b {
                acc = &acc + c;
            }
        }
        acc
    }

    pub fn scale(&self, by: &T) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
            constant: &self.constant * by,
        }
    }

    pub fn shift(&self, by: &T) -> Self {
        LinearForm { coeffs: self.coeffs.clone(), constant: &self.constant + by }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity());
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn negated(&self) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }
}

impl IntForm {
    pub fn from_i64(coeffs: &[i64], constant: i64) -> IntForm {
        LinearForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(constant))
    }

    /// Largest absolute coefficient (constant excluded).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `|constant| + Σ|coeff|`, an upper bound on |value| over the cube.
    pub fn l1_bound(&self) -> BigInt {
        self.coeffs.iter().fold(self.constant.abs(), |acc, c| acc + c.abs())
    }

    /// Smallest and largest values attained on the cube.
    pub fn range(&self) -> (BigInt, BigInt) {
        let mut lo = self.constant.clone();
        let mut hi = self.constant.clone();
        for c in &self.coeffs {
            if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        (lo, hi)
    }

    pub fn to_rational(&self) -> RationalForm {
        LinearForm::new(
            self.coeffs.iter().map(Rational::from).collect(),
            Rational::from(&self.constant),
        )
    }

    /// Machine-word copy when every partial sum is guaranteed to fit in an i64.
    pub fn to_small(&self) -> Option<SmallForm> {
        if self.l1_bound().bits() > 62 {
            return None;
        }
        Some(SmallForm {
            coeffs: self.coeffs.iter().map(|c| c.to_i64().unwrap()).collect(),
            constant: self.constant.to_i64().unwrap(),
        })
    }
}

impl RationalForm {
    /// Integer copy if every entry is integral.
    pub fn to_integer(&self) -> Option<IntForm> {
        let coeffs = self.coeffs.iter().map(|c| c.to_integer()).collect::<Option<Vec<_>>>()?;
        Some(LinearForm::new(coeffs, self.constant.to_integer()?))
    }

    pub fn is_integer(&self) -> bool {
        self.constant.is_integer() && self.coeffs.iter().all(Rational::is_integer)
    }
}

/// i64 mirror of an [`IntForm`] used on hot evaluation paths.
#[derive(Clone, Debug)]
pub struct SmallForm {
    coeffs: Vec<i64>,
    constant: i64,
}

impl SmallForm {
    #[inline]
    pub fn eval(&self, x: &[bool]) -> i64 {
        let mut acc = self.constant;
        for (c, &b) in self.coeffs.iter().zip(x) {
            if b {
                acc += c;
            }
        }
        acc
    }
}

/// Machine-word mirrors of a list of integer forms, present only when every
/// form's value range fits in an i64.
#[derive(Clone, Debug, Default)]
pub(crate) struct FormBank {
    small: Option<Vec<SmallForm>>,
}

pub(crate) enum Values {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl FormBank {
    pub(crate) fn new<'a>(forms: impl IntoIterator<Item = &'a IntForm>) -> FormBank {
        FormBank { small: forms.into_iter().map(IntForm::to_small).collect() }
    }

    /// `forms` must be the same sequence the bank was built from.
    pub(crate) fn values<'a>(&self, forms: impl IntoIterator<Item = &'a IntForm>, x: &[bool]) -> Values {
        match &self.small {
            Some(small) => Values::Small(small.iter().map(|f| f.eval(x)).collect()),
            None => Values::Big(forms.into_iter().map(|f| f.eval(x)).collect()),
        }
    }
}

/// Runs the same generic body on either value representation.
macro_rules! with_values {
    ($vals:expr, |$v:ident| $body:expr) => {
        match $vals {
            $crate::form::Values::Small($v) => $body,
            $crate::form::Values::Big($v) => $body,
        }
    };
}
pub(crate) use with_values;

#[derive(Serialize, Deserialize)]
struct FormDoc {
    coeffs: Vec<String>,
    #[serde(rename = "const")]
    constant: String,
}

impl<T: Display> Serialize for LinearForm<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormDoc {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            constant: self.constant.to_string(),
        }
        .serialize(s)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for LinearForm<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = FormDoc::deserialize(d)?;
        let parse = |s: &str| {
            s.trim().parse::<T>().map_err(|_| D::Error::custom(format!("invalid scalar {s:?}")))
        };
        Ok(LinearForm {
            coeffs: doc.coeffs.iter().map(|c| parse(c)).collect::<Result<_, _>>()?,
            constant: parse(&doc.constant)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_bounds() {
        let f = IntForm::from_i64(&[3], -2);
        assert_eq!(f.eval(&[true]), BigInt::from(1));
        assert_eq!(f.eval(&[false]), BigInt::from(-2));
        assert_eq!(f.l1_bound(), BigInt::from(5));
        assert_eq!(f.range(), (BigInt::from(-2), BigInt::from(1)));
        assert_eq!(f.to_small().unwrap().eval(&[true]), 1);
    }

    #[test]
    fn json_shape() {
        let f = IntForm::from_i64(&[1, -2], 3);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":["1","-2"],"const":"3"}"#);
        let back: IntForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let r: RationalForm = serde_json::from_str(r#"{"coeffs":["1/2"],"const":"-3/4"}"#).unwrap();
        assert_eq!(r.constant, Rational::new(-3, 4));
        assert!(!r.is_integer());
    }
}
