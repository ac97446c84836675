use crate::bitio::BitString;
use crate::numerals::golden_sequence;

use super::TransformError;

/// Source of inserted bits.
pub trait Keystream {
    /// `n` bits starting at position `offset`.
    fn bits(&self, offset: usize, n: usize) -> BitString;
}

/// The golden sequence `1011010110110...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GoldenKeystream;

impl Keystream for GoldenKeystream {
    fn bits(&self, offset: usize, n: usize) -> BitString {
        golden_sequence(offset + n).slice(offset, offset + n)
    }
}

/// After every `stride` payload bits one keystream bit is inserted, reading
/// the keystream from position `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpliceParams {
    pub stride: usize,
    pub offset: usize,
    /// Check removed bits against the keystream when unsplicing.
    pub verify: bool,
}

impl Default for SpliceParams {
    fn default() -> Self {
        Self {
            stride: 3,
            offset: 0,
            verify: false,
        }
    }
}

pub fn splice_with(
    bits: &BitString,
    p: SpliceParams,
    ks: &dyn Keystream,
) -> Result<BitString, TransformError> {
    if p.stride == 0 {
        return Err(TransformError::ZeroStride);
    }
    let inserts = bits.len() / p.stride;
    let key = ks.bits(p.offset, inserts);
    let mut out = BitString::with_capacity(bits.len() + inserts);
    for (i, b) in bits.iter().enumerate() {
        out.push(b);
        if (i + 1) % p.stride == 0 {
            out.push(
                key.get((i + 1) / p.stride - 1)
                    .expect("keystream long enough"),
            );
        }
    }
    Ok(out)
}

pub fn unsplice_with(
    bits: &BitString,
    p: SpliceParams,
    ks: &dyn Keystream,
) -> Result<BitString, TransformError> {
    if p.stride == 0 {
        return Err(TransformError::ZeroStride);
    }
    let len = bits.len();
    // n + n/stride is strictly increasing in n, so at most one n fits.
    let n = len * p.stride / (p.stride + 1) + 1;
    let n = (n.saturating_sub(2)..=n)
        .rev()
        .find(|&n| n + n / p.stride == len)
        .ok_or(TransformError::BadLength {
            bits: len,
            stride: p.stride,
        })?;
    let key = if p.verify {
        ks.bits(p.offset, n / p.stride)
    } else {
        BitString::new()
    };
    let mut out = BitString::with_capacity(n);
    for (i, b) in bits.iter().enumerate() {
        if (i + 1) % (p.stride + 1) == 0 {
            let index = (i + 1) / (p.stride + 1) - 1;
            if p.verify && key.get(index) != Some(b) {
                return Err(TransformError::KeystreamMismatch { index });
            }
        } else {
            out.push(b);
        }
    }
    Ok(out)
}

pub fn golden_splice(bits: &BitString, p: SpliceParams) -> Result<BitString, TransformError> {
    splice_with(bits, p, &GoldenKeystream)
}

pub fn golden_unsplice(bits: &BitString, p: SpliceParams) -> Result<BitString, TransformError> {
    unsplice_with(bits, p, &GoldenKeystream)
}
