//! Exact number systems and dense linear algebra over them.
//!
//! Three fields are provided: [`Rational`], the Eisenstein field [`Eisenstein`]
//! (ℚ(ω) with ω² + ω + 1 = 0) and prime fields [`PrimeField`] with p ≡ 1 mod 3.

mod bernoulli;
mod eisenstein;
mod matrix;
mod prime;
mod rational;

pub use bernoulli::{bernoulli, bernoulli_table, binomial};
pub use eisenstein::Eisenstein;
pub use matrix::{same_span, Echelon, ExactMatrix, RankKernel};
pub use prime::{PrimeField, PrimeFieldElement};
pub use rational::Rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("entries from different field instances")]
    MixedFields,
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not a prime congruent to 1 mod 3")]
    BadModulus(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A field whose elements know enough about their own field to build
/// zeros and ones. Prime fields carry their modulus, so constants are
/// produced from an existing element.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Whether `other` lives in the same field instance.
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
}

/// Fields with a canonical global instance.
pub trait ConstField: Field {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
}
