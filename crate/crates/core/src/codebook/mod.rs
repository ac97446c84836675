//! Fixed-width code tables with "don't care" noise bits.
//!
//! A table maps symbol ids to codewords of `width` bits. Positions selected by
//! the noise mask carry random filler on every encode and are ignored on
//! decode, so codewords must be distinct once masked.

mod format;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::bitio::{self, BitString};
use crate::keyfile::FormatError;
use crate::numerals::{zeckendorf_encode, NumeralError};
use crate::rng::{fingerprint, SplitMix64};
use crate::SymbolId;

pub(crate) use format::check_version;
pub use format::TableReader;

pub const MAX_WIDTH: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodebookError {
    #[error("{symbols} symbols do not fit in {capacity} masked codewords")]
    CapacityExceeded { symbols: u128, capacity: u128 },
    #[error("width must be in 1..={MAX_WIDTH}, got {0}")]
    InvalidWidth(usize),
    #[error("noise bits ({noise}) must be fewer than the width ({width})")]
    TooMuchNoise { noise: usize, width: usize },
    #[error("symbol {0:#x} is not in the table")]
    UnknownSymbol(SymbolId),
    #[error("{bits} bits is not a multiple of the {width}-bit codeword width")]
    UnalignedLength { bits: usize, width: usize },
    #[error("group {index} ({code}) is not a codeword of this table")]
    UnknownCodeword { index: usize, code: BitString },
    #[error("symbols {0:#x} and {1:#x} share a masked codeword")]
    Collision(SymbolId, SymbolId),
    #[error("duplicate symbol {0:#x}")]
    DuplicateSymbol(SymbolId),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Numeral(#[from] NumeralError),
}

/// Injective symbol → codeword map with a noise mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    width: usize,
    /// Bit `width-1-i` set ⇔ display position `i` is noise.
    noise_mask: u32,
    /// Codewords with their noise positions cleared.
    entries: BTreeMap<SymbolId, u32>,
    reverse: HashMap<u32, SymbolId>,
    fingerprint: u64,
}

fn full_mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

fn check_width(width: usize) -> Result<(), CodebookError> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(CodebookError::InvalidWidth(width))
    }
}

impl CodeTable {
    /// Builds a table from explicit codewords, masking each one and checking
    /// injectivity.
    pub fn from_entries(
        width: usize,
        noise_mask: u32,
        entries: impl IntoIterator<Item = (SymbolId, u32)>,
        fingerprint: u64,
    ) -> Result<Self, CodebookError> {
        check_width(width)?;
        let keep = full_mask(width) & !noise_mask;
        let mut table = CodeTable {
            width,
            noise_mask: noise_mask & full_mask(width),
            entries: BTreeMap::new(),
            reverse: HashMap::new(),
            fingerprint,
        };
        for (sym, code) in entries {
            let masked = code & keep;
            if table.entries.contains_key(&sym) {
                return Err(CodebookError::DuplicateSymbol(sym));
            }
            if let Some(&other) = table.reverse.get(&masked) {
                return Err(CodebookError::Collision(other, sym));
            }
            table.entries.insert(sym, masked);
            table.reverse.insert(masked, sym);
        }
        Ok(table)
    }

    /// Seeded table over symbols `0..symbols`.
    pub fn generate(
        width: usize,
        symbols: u32,
        seed: u64,
        noise_bits: usize,
    ) -> Result<Self, CodebookError> {
        let ids: Vec<SymbolId> = (0..symbols).collect();
        Self::generate_for(width, &ids, seed, noise_bits)
    }

    /// Seeded table over an explicit list of symbol ids.
    ///
    /// SplitMix64 seeded with `seed` first shuffles the display positions
    /// (the first `noise_bits` become noise), then draws distinct payload
    /// values by a sparse Fisher-Yates over `0..2^(width-noise_bits)`. Payload
    /// bits fill the remaining positions left to right, most significant first.
    pub fn generate_for(
        width: usize,
        symbols: &[SymbolId],
        seed: u64,
        noise_bits: usize,
    ) -> Result<Self, CodebookError> {
        check_width(width)?;
        if noise_bits >= width {
            return Err(CodebookError::TooMuchNoise {
                noise: noise_bits,
                width,
            });
        }
        let payload_bits = width - noise_bits;
        let capacity = 1u64 << payload_bits;
        if symbols.len() as u64 > capacity {
            return Err(CodebookError::CapacityExceeded {
                symbols: symbols.len() as u128,
                capacity: capacity as u128,
            });
        }
        let mut rng = SplitMix64::new(seed);
        let mut positions: Vec<usize> = (0..width).collect();
        rng.shuffle(&mut positions);
        let mut noise_positions = positions[..noise_bits].to_vec();
        noise_positions.sort_unstable();
        let payload_positions: Vec<usize> = (0..width)
            .filter(|p| !noise_positions.contains(p))
            .collect();
        let noise_mask = noise_positions
            .iter()
            .fold(0u32, |m, &p| m | 1 << (width - 1 - p));

        let mut swapped: HashMap<u64, u64> = HashMap::new();
        let mut entries = Vec::with_capacity(symbols.len());
        for (i, &sym) in symbols.iter().enumerate() {
            let i = i as u64;
            let j = i + rng.below(capacity - i);
            let vi = *swapped.get(&i).unwrap_or(&i);
            let vj = *swapped.get(&j).unwrap_or(&j);
            swapped.insert(j, vi);
            swapped.insert(i, vj);
            let code = payload_positions
                .iter()
                .enumerate()
                .fold(0u32, |c, (k, &p)| {
                    let bit = (vj >> (payload_bits - 1 - k)) & 1;
                    c | (bit as u32) << (width - 1 - p)
                });
            entries.push((sym, code));
        }
        Self::from_entries(width, noise_mask, entries, fingerprint(seed))
    }

    /// Plain base-2: symbol `n` ↦ `n` in `width` bits, for `n < symbols`.
    pub fn identity(width: usize, symbols: u32) -> Result<Self, CodebookError> {
        check_width(width)?;
        let capacity = 1u64 << width.min(63);
        if symbols as u64 > capacity {
            return Err(CodebookError::CapacityExceeded {
                symbols: symbols as u128,
                capacity: capacity as u128,
            });
        }
        Self::from_entries(width, 0, (0..symbols).map(|s| (s, s)), 0)
    }

    /// Zeckendorf digits of each id in `payload_width` bits, preceded by
    /// `noise_bits` noise positions.
    pub fn zeckendorf(
        payload_width: usize,
        noise_bits: usize,
        symbols: &[SymbolId],
    ) -> Result<Self, CodebookError> {
        let width = payload_width + noise_bits;
        check_width(width)?;
        let noise_mask = full_mask(width) & !full_mask(payload_width);
        let entries = symbols
            .iter()
            .map(|&s| {
                let bits = zeckendorf_encode(s as u64, payload_width)?;
                Ok((s, bits.to_u64().expect("at most 32 bits") as u32))
            })
            .collect::<Result<Vec<_>, CodebookError>>()?;
        Self::from_entries(width, noise_mask, entries, 0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn noise_mask(&self) -> BitString {
        BitString::from_u64(self.noise_mask as u64, self.width).expect("mask fits width")
    }

    pub fn noise_bits(&self) -> usize {
        self.noise_mask.count_ones() as usize
    }

    pub fn contains(&self, sym: SymbolId) -> bool {
        self.entries.contains_key(&sym)
    }

    /// Canonical codeword (noise positions zero).
    pub fn codeword(&self, sym: SymbolId) -> Option<BitString> {
        self.entries
            .get(&sym)
            .map(|&c| BitString::from_u64(c as u64, self.width).expect("codeword fits width"))
    }

    /// Symbols in ascending id order with their canonical codewords.
    pub fn entries(&self) -> impl Iterator<Item = (SymbolId, BitString)> + '_ {
        self.entries.iter().map(|(&s, &c)| {
            (
                s,
                BitString::from_u64(c as u64, self.width).expect("codeword fits width"),
            )
        })
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.entries.keys().copied()
    }

    /// Concatenated codewords; noise positions are filled from a SplitMix64
    /// stream seeded with `seed`, one draw per noise bit.
    pub fn encode_symbols(&self, data: &[SymbolId], seed: u64) -> Result<BitString, CodebookError> {
        let mut rng = SplitMix64::new(seed);
        let mut out = BitString::with_capacity(data.len() * self.width);
        for &sym in data {
            let code = *self
                .entries
                .get(&sym)
                .ok_or(CodebookError::UnknownSymbol(sym))?;
            for i in 0..self.width {
                let bit = 1u32 << (self.width - 1 - i);
                if self.noise_mask & bit != 0 {
                    out.push(rng.next_bit());
                } else {
                    out.push(code & bit != 0);
                }
            }
        }
        Ok(out)
    }

    pub fn decode_symbols(&self, bits: &BitString) -> Result<Vec<SymbolId>, CodebookError> {
        if !bits.len().is_multiple_of(self.width) {
            return Err(CodebookError::UnalignedLength {
                bits: bits.len(),
                width: self.width,
            });
        }
        let (groups, _) = bitio::group(bits, self.width);
        let keep = full_mask(self.width) & !self.noise_mask;
        groups
            .into_iter()
            .enumerate()
            .map(|(index, g)| {
                let masked = g.to_u64().expect("at most 32 bits") as u32 & keep;
                self.reverse
                    .get(&masked)
                    .copied()
                    .ok_or(CodebookError::UnknownCodeword { index, code: g })
            })
            .collect()
    }

    /// `WTKB1` text form.
    pub fn to_text(&self) -> String {
        let mut out = String::from(crate::keyfile::HEADER);
        out.push('\n');
        out.push_str("version=1\n");
        self.write_fields(&mut out);
        out
    }

    /// The `width`, `noise_mask`, `fingerprint` and `sym` lines alone.
    pub fn write_fields(&self, out: &mut String) {
        format::write_table(self, out);
    }

    pub fn from_text(text: &str) -> Result<Self, CodebookError> {
        let mut reader = TableReader::default();
        for field in crate::keyfile::fields(text)? {
            if field.key == "version" {
                format::check_version(&field)?;
                continue;
            }
            if !reader.accept(&field)? {
                return Err(
                    FormatError::new(field.line, format!("unknown field {:?}", field.key)).into(),
                );
            }
        }
        reader.finish(text.lines().count().max(1))
    }
}

/// Number of distinct injective tables of `symbols` codewords out of
/// `2^width`: the falling factorial `2^width · (2^width - 1) ··· (2^width - symbols + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCount {
    pub width: u32,
    pub symbols: u64,
    pub count: BigUint,
}

pub fn count_tables(width: u32, symbols: u64) -> Result<TableCount, CodebookError> {
    let space = BigUint::one() << width;
    if BigUint::from(symbols) > space {
        return Err(CodebookError::CapacityExceeded {
            symbols: symbols as u128,
            capacity: if width < 128 {
                1u128 << width
            } else {
                u128::MAX
            },
        });
    }
    let mut count = BigUint::one();
    let mut factor = space;
    for _ in 0..symbols {
        count *= &factor;
        factor -= 1u32;
    }
    Ok(TableCount {
        width,
        symbols,
        count,
    })
}
