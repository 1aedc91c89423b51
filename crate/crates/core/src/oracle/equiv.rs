//! Exhaustive equivalence checking.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_ARITY};
use crate::eval::{bits_of, check_arity, find_first_in_cube, Evaluator, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquivStatus {
    Equal,
    Mismatch,
    IllDefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// `Σ x_i 2^(i-1)`.
    pub index: u64,
    /// `x_1 x_2 … x_n` as a 0/1 string.
    pub input: String,
    pub left: Option<u8>,
    pub right: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub status: EquivStatus,
    pub witness: Option<Witness>,
    /// Inputs examined in index order up to and including the witness.
    pub inputs_checked: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl EquivReport {
    pub fn is_equal(&self) -> bool {
        self.status == EquivStatus::Equal
    }
}

fn bit(v: Value) -> Option<u8> {
    v.as_bool().map(u8::from)
}

// wasm32-unknown-unknown has no clock; timings read zero there
#[cfg(not(target_arch = "wasm32"))]
fn timer() -> std::time::Instant {
    std::time::Instant::now()
}

#[cfg(not(target_arch = "wasm32"))]
fn elapsed(start: std::time::Instant) -> Duration {
    start.elapsed()
}

#[cfg(target_arch = "wasm32")]
fn timer() {}

#[cfg(target_arch = "wasm32")]
fn elapsed(_: ()) -> Duration {
    Duration::ZERO
}

/// Compares two evaluators on every point of `{0,1}^n`. The first input (in
/// index order) where either side is undefined or the sides differ becomes the
/// witness; its kind decides between `ILL_DEFINED` and `MISMATCH`.
pub fn equiv_check<A: Evaluator + ?Sized, B: Evaluator + ?Sized>(a: &A, b: &B) -> Result<EquivReport> {
    let n = a.arity();
    check_arity(n, b.arity())?;
    if n > MAX_ARITY {
        return Err(Error::ArityCap(n));
    }
    let start = timer();
    let found = find_first_in_cube(n, |i| {
        let (va, vb) = (a.value_at(i), b.value_at(i));
        (va == Value::Undefined || vb == Value::Undefined || va != vb).then_some((i, va, vb))
    });
    let wall_time = elapsed(start);
    Ok(match found {
        None => EquivReport { status: EquivStatus::Equal, witness: None, inputs_checked: 1 << n, wall_time },
        Some((index, va, vb)) => {
            let status = if va == Value::Undefined || vb == Value::Undefined {
                EquivStatus::IllDefined
            } else {
                EquivStatus::Mismatch
            };
            let input = bits_of(index, n).iter().map(|&b| if b { '1' } else { '0' }).collect();
            EquivReport {
                status,
                witness: Some(Witness { index, input, left: bit(va), right: bit(vb) }),
                inputs_checked: index + 1,
                wall_time,
            }
        }
    })
}
