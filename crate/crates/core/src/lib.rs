//! Exact representations of Boolean functions by nearest-neighbor rules,
//! min-plus threshold functions, k-statistics, decision lists and threshold
//! circuits, with conversions between them and exhaustive equivalence checks.

pub mod boolfn;
pub mod cnf;
pub mod constructions;
pub mod error;
pub mod eval;
pub mod form;
pub mod oracle;
pub mod rational;
pub mod repr;
pub mod transforms;

pub use boolfn::{apply_substitution, components, family, BoolFn, FamilySpec, SubstEntry, Substitution};
pub use cnf::{cnf_eval, exact_half_cnf, CnfDnf, FormulaKind};
pub use error::{Error, Result, MAX_ARITY};
pub use eval::{bits_of, Evaluator, Value};
pub use form::{IntForm, LinearForm, RationalForm};
pub use rational::Rational;
