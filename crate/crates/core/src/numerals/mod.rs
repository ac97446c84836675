//! Alternate binary numeral systems.
//!
//! All digit strings are displayed big-endian: the digit for the largest
//! weight is leftmost. [`BitString::reversed`](crate::bitio::BitString::reversed)
//! converts to the little-endian reading.

mod fibonacci;
mod golden;
mod phinary;
mod positional;
mod prime;

use std::fmt::{Debug, Display};

use num_traits::{PrimInt, Signed, Unsigned};
use thiserror::Error;

pub use fibonacci::{
    enumerate_representations, fib_weights, greedy_encode, weighted_decode, zeckendorf_encode,
    WeightVector,
};
pub use golden::{
    golden_numeral_decode, golden_numeral_encode, golden_sequence, golden_word, GoldenParseError,
    MAX_GOLDEN_PARSES,
};
pub use phinary::{phinary_decode, phinary_encode, PhinaryNumeral, ZPhi};
pub use positional::digits_value;
pub use prime::{default_prime_width, prime_encode, prime_terms, prime_weights};

/// Unsigned machine integers usable as weights and encoded values.
pub trait WeightInt: PrimInt + Unsigned + Debug + Display {}
impl<T: PrimInt + Unsigned + Debug + Display> WeightInt for T {}

/// Signed machine integers usable as coefficients of `a + b·φ`.
pub trait PairInt: PrimInt + Signed + Debug + Display {}
impl<T: PrimInt + Signed + Debug + Display> PairInt for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumeralError {
    #[error("value does not fit in {0} digits")]
    Overflow(usize),
    #[error("arithmetic overflow in the chosen integer type")]
    IntegerOverflow,
    #[error("expected {expected} digits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{a} + {b}·φ is not an integer")]
    NotInteger { a: i128, b: i128 },
    #[error("digit {digit:?} out of range for base {base}")]
    DigitOutOfRange { digit: char, base: u32 },
    #[error("base must be in 2..=36, got {0}")]
    InvalidBase(u32),
    #[error("{0} has no representation as a sum of distinct weights")]
    Unrepresentable(u128),
    #[error("invalid numeral syntax: {0}")]
    Syntax(String),
    #[error("width must be at least 1")]
    ZeroWidth,
}
