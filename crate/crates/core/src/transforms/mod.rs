//! Parametric bit, digit and letter transforms.

mod boustro;
mod digits;
mod permutation;
mod splice;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitio::BitString;
use crate::SymbolId;

pub use boustro::{boustrophedon, boustrophedon_bits, BoustroParams};
pub use digits::digit_shift;
pub use permutation::{LetterPermutation, PermReader};
pub use splice::{
    golden_splice, golden_unsplice, splice_with, unsplice_with, GoldenKeystream, Keystream,
    SpliceParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("stride must be at least 1")]
    ZeroStride,
    #[error("{bits} bits cannot come from splicing with stride {stride}")]
    BadLength { bits: usize, stride: usize },
    #[error("inserted bit {index} does not match the keystream")]
    KeystreamMismatch { index: usize },
    #[error("symbol {0} is outside the permutation's domain")]
    UnknownSymbol(SymbolId),
    #[error("mapping is not a bijection at symbol {0}")]
    NotAPermutation(SymbolId),
    #[error("invalid transform step {0:?}")]
    Syntax(String),
}

/// One reversible step applied to the encoded bit stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformStep {
    Boustro(BoustroParams),
    Splice(SpliceParams),
}

impl TransformStep {
    pub fn apply(&self, bits: &BitString) -> Result<BitString, TransformError> {
        match self {
            Self::Boustro(p) => Ok(boustrophedon_bits(bits, *p)),
            Self::Splice(p) => golden_splice(bits, *p),
        }
    }

    pub fn invert(&self, bits: &BitString) -> Result<BitString, TransformError> {
        match self {
            Self::Boustro(p) => Ok(boustrophedon_bits(bits, *p)),
            Self::Splice(p) => golden_unsplice(bits, *p),
        }
    }
}

/// Applies `steps` in order.
pub fn apply_chain(steps: &[TransformStep], bits: &BitString) -> Result<BitString, TransformError> {
    steps.iter().try_fold(bits.clone(), |b, s| s.apply(&b))
}

/// Undoes `steps`, last step first.
pub fn invert_chain(
    steps: &[TransformStep],
    bits: &BitString,
) -> Result<BitString, TransformError> {
    steps
        .iter()
        .rev()
        .try_fold(bits.clone(), |b, s| s.invert(&b))
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Boustro(p) => write!(f, "boustro start={} jump={}", p.start, p.jump),
            Self::Splice(p) => write!(
                f,
                "splice stride={} offset={} verify={}",
                p.stride, p.offset, p.verify as u8
            ),
        }
    }
}

impl FromStr for TransformStep {
    type Err = TransformError;

    /// Parses the [`Display`](fmt::Display) form; omitted attributes take
    /// their defaults.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TransformError::Syntax(s.to_string());
        let mut parts = s.split_whitespace();
        let kind = parts.next().ok_or_else(bad)?;
        let mut attrs = std::collections::BTreeMap::new();
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.parse().map_err(|_| bad())?;
            if attrs.insert(k, v).is_some() {
                return Err(bad());
            }
        }
        let mut take = |k: &str, default: usize| attrs.remove(k).unwrap_or(default);
        let step = match kind {
            "boustro" => Self::Boustro(BoustroParams {
                start: take("start", 0),
                jump: take("jump", 0),
            }),
            "splice" => {
                let stride = take("stride", 3);
                let offset = take("offset", 0);
                let verify = match take("verify", 0) {
                    0 => false,
                    1 => true,
                    _ => return Err(bad()),
                };
                if stride == 0 {
                    return Err(TransformError::ZeroStride);
                }
                Self::Splice(SpliceParams {
                    stride,
                    offset,
                    verify,
                })
            }
            _ => return Err(bad()),
        };
        if attrs.is_empty() {
            Ok(step)
        } else {
            Err(bad())
        }
    }
}
