//! Bit strings and their byte packing.
//!
//! Bits are always most-significant-first inside a byte, both when packing
//! and when displaying. Reversing the order of a byte is an explicit
//! operation ([`reverse_byte_bits`]), never an ambient mode.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BitError {
    #[error("bit length {bits} exceeds the {available} bits available in the buffer")]
    LengthExceedsBuffer { bits: usize, available: usize },
    #[error("non-zero padding bits after bit {0}")]
    NonZeroPadding(usize),
    #[error("invalid bit character {0:?}")]
    InvalidChar(char),
    #[error("value needs more than {0} bits")]
    ValueTooWide(usize),
}

/// An ordered run of bits with an explicit length that need not be a
/// multiple of eight.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The low `width` bits of `value`, most significant first.
    pub fn from_u64(value: u64, width: usize) -> Result<Self, BitError> {
        if width < 64 && value >> width != 0 {
            return Err(BitError::ValueTooWide(width));
        }
        let bits = (0..width)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        Ok(Self { bits })
    }

    /// Interprets up to 64 bits as an unsigned big-endian integer.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString::from_bits(self.bits[start..end].to_vec())
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True when two set bits are adjacent anywhere in the string.
    pub fn has_adjacent_ones(&self) -> bool {
        self.bits.windows(2).any(|w| w[0] && w[1])
    }

    /// The same bits in the opposite order (big-endian <-> little-endian display).
    pub fn reversed(&self) -> BitString {
        BitString::from_bits(self.bits.iter().rev().copied().collect())
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = BitError;

    /// Parses `0`/`1` characters; spaces and underscores are accepted as
    /// visual separators and skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | '_' => {}
                other => return Err(BitError::InvalidChar(other)),
            }
        }
        Ok(Self { bits })
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

/// Packs bits MSB-first into bytes, zero-filling the final byte.
///
/// Returns the bytes and the number of pad bits (0..=7).
pub fn pack(bits: &BitString) -> (Vec<u8>, u8) {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, b) in bits.iter().enumerate() {
        if b {
            out[i / 8] |= 0x80 >> (i % 8);
        }
    }
    let pad = ((8 - bits.len() % 8) % 8) as u8;
    (out, pad)
}

/// Inverse of [`pack`]. Bits past `bit_len` must be zero.
pub fn unpack(bytes: &[u8], bit_len: usize) -> Result<BitString, BitError> {
    let available = bytes.len() * 8;
    if bit_len > available {
        return Err(BitError::LengthExceedsBuffer {
            bits: bit_len,
            available,
        });
    }
    let bit_at = |i: usize| bytes[i / 8] & (0x80 >> (i % 8)) != 0;
    if let Some(i) = (bit_len..available).find(|&i| bit_at(i)) {
        return Err(BitError::NonZeroPadding(i));
    }
    Ok((0..bit_len).map(bit_at).collect())
}

/// Bit `i` of the result is bit `7 - i` of the input.
pub fn reverse_byte_bits(b: u8) -> u8 {
    b.reverse_bits()
}

/// Consecutive non-overlapping groups of `k` bits plus the trailing partial group.
///
/// # Panics
/// If `k` is zero.
pub fn group(bits: &BitString, k: usize) -> (Vec<BitString>, BitString) {
    assert!(k >= 1, "group width must be at least 1");
    let chunks = bits.as_slice().chunks_exact(k);
    let remainder = BitString::from_bits(chunks.remainder().to_vec());
    let groups = chunks.map(|c| BitString::from_bits(c.to_vec())).collect();
    (groups, remainder)
}

/// Bits of a byte slice, MSB-first.
pub fn bits_of_bytes(bytes: &[u8]) -> BitString {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
        .collect()
}

/// Magic prefix of a ciphertext frame.
pub const FRAME_MAGIC: &[u8; 4] = b"WTC1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame does not start with WTC1")]
    BadMagic,
    #[error("frame header truncated")]
    Truncated,
    #[error("frame declares {bits} bits but carries {bytes} payload bytes")]
    LengthMismatch { bits: u64, bytes: usize },
    #[error(transparent)]
    Bits(#[from] BitError),
}

/// `WTC1`, an 8-byte big-endian bit count, then the MSB-first packed payload.
pub fn encode_frame(bits: &BitString) -> Vec<u8> {
    let (payload, _) = pack(bits);
    let mut out = Vec::with_capacity(12 + payload.len());
    out.extend_from_slice(FRAME_MAGIC);
    out.extend_from_slice(&(bits.len() as u64).to_be_bytes());
    out.extend_from_slice(&payload);
    out
}

pub fn decode_frame(bytes: &[u8]) -> Result<BitString, FrameError> {
    if bytes.len() < 4 || &bytes[..4] != FRAME_MAGIC {
        return Err(if bytes.len() < 4 && FRAME_MAGIC.starts_with(bytes) {
            FrameError::Truncated
        } else {
            FrameError::BadMagic
        });
    }
    let header: [u8; 8] = bytes
        .get(4..12)
        .ok_or(FrameError::Truncated)?
        .try_into()
        .expect("slice of length 8");
    let bits = u64::from_be_bytes(header);
    let payload = &bytes[12..];
    if (payload.len() as u64) != bits.div_ceil(8) {
        return Err(FrameError::LengthMismatch {
            bits,
            bytes: payload.len(),
        });
    }
    Ok(unpack(payload, bits as usize)?)
}
