//! Common evaluation interface shared by truth tables and representations.

use crate::error::{Error, Result};

/// Output of a representation at one input. `Undefined` marks a tie that the
/// strict definitions leave unresolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Zero,
    One,
    Undefined,
}

impl Value {
    pub fn from_bool(b: bool) -> Value {
        if b {
            Value::One
        } else {
            Value::Zero
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::Zero => Some(false),
            Value::One => Some(true),
            Value::Undefined => None,
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::from_bool(b)
    }
}

/// Anything that maps points of `{0,1}^arity` to a [`Value`].
pub trait Evaluator: Sync {
    fn arity(&self) -> usize;

    /// Evaluates without checking `x.len()`; callers guarantee the arity.
    fn value(&self, x: &[bool]) -> Value;

    fn eval(&self, x: &[bool]) -> Result<Value> {
        check_arity(self.arity(), x.len())?;
        Ok(self.value(x))
    }

    fn value_at(&self, index: u64) -> Value {
        self.value(&bits_of(index, self.arity()))
    }
}

impl<E: Evaluator + ?Sized> Evaluator for &E {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn value(&self, x: &[bool]) -> Value {
        (**self).value(x)
    }
}

impl<E: Evaluator + ?Sized + Send> Evaluator for Box<E> {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn value(&self, x: &[bool]) -> Value {
        (**self).value(x)
    }
}

pub(crate) fn check_arity(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::ArityMismatch { expected, got })
    }
}

/// Point with `x_i` at bit `i-1` of `index`.
pub fn bits_of(index: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (index >> i) & 1 == 1).collect()
}

pub fn index_of(x: &[bool]) -> u64 {
    x.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
}

/// Runs `f` over every index in `0..2^n` and collects the results in index order.
pub(crate) fn map_cube<T: Send>(n: usize, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    let total = 1u64 << n;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..total).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).map(f).collect()
    }
}

/// First index in `0..2^n` where `f` returns `Some`, scanning in index order.
pub(crate) fn find_first_in_cube<T: Send>(
    n: usize,
    f: impl Fn(u64) -> Option<T> + Sync + Send,
) -> Option<T> {
    let total = 1u64 << n;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..total).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).find_map(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        for i in 0..64 {
            assert_eq!(index_of(&bits_of(i, 6)), i);
        }
        assert_eq!(bits_of(1, 3), vec![true, false, false]);
    }
}
