use std::collections::{BTreeMap, BTreeSet};

use crate::keyfile::{Field, FormatError};
use crate::rng::{fingerprint, SplitMix64};
use crate::SymbolId;

use super::TransformError;

/// A bijection on symbol ids. Byte ids (`< 256`) that are not listed map to
/// themselves; identity ids must be listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LetterPermutation {
    map: BTreeMap<SymbolId, SymbolId>,
    fingerprint: u64,
}

impl LetterPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Checks that the pairs form a bijection of their own domain. Fixed
    /// points of bytes are dropped from the stored map.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (SymbolId, SymbolId)>,
        fingerprint: u64,
    ) -> Result<Self, TransformError> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if map.insert(a, b).is_some() {
                return Err(TransformError::NotAPermutation(a));
            }
        }
        let mut image = BTreeSet::new();
        for &b in map.values() {
            if !image.insert(b) {
                return Err(TransformError::NotAPermutation(b));
            }
        }
        if let Some(&x) = image
            .symmetric_difference(&map.keys().copied().collect())
            .next()
        {
            return Err(TransformError::NotAPermutation(x));
        }
        map.retain(|a, b| a != b || *a >= 256);
        Ok(Self { map, fingerprint })
    }

    /// Exchanges two letters in both cases.
    pub fn swap_letters(a: char, b: char) -> Self {
        let (la, lb) = (
            a.to_ascii_lowercase() as SymbolId,
            b.to_ascii_lowercase() as SymbolId,
        );
        let (ua, ub) = (
            a.to_ascii_uppercase() as SymbolId,
            b.to_ascii_uppercase() as SymbolId,
        );
        Self::from_pairs([(la, lb), (lb, la), (ua, ub), (ub, ua)], 0)
            .expect("a swap is a bijection")
    }

    /// Seeded shuffle of `a`..`z`, applied identically to `A`..`Z`.
    pub fn random_letters(seed: u64) -> Self {
        let mut image: Vec<u8> = (b'a'..=b'z').collect();
        SplitMix64::new(seed).shuffle(&mut image);
        let pairs = (b'a'..=b'z').zip(image).flat_map(|(a, b)| {
            [
                (a as SymbolId, b as SymbolId),
                (
                    a.to_ascii_uppercase() as SymbolId,
                    b.to_ascii_uppercase() as SymbolId,
                ),
            ]
        });
        Self::from_pairs(pairs, fingerprint(seed)).expect("a shuffle is a bijection")
    }

    /// Seeded shuffle of an explicit symbol set.
    pub fn random_over(symbols: &[SymbolId], seed: u64) -> Self {
        let mut image = symbols.to_vec();
        SplitMix64::new(seed).shuffle(&mut image);
        Self::from_pairs(symbols.iter().copied().zip(image), fingerprint(seed))
            .expect("a shuffle is a bijection")
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn apply(&self, sym: SymbolId) -> Result<SymbolId, TransformError> {
        match self.map.get(&sym) {
            Some(&s) => Ok(s),
            None if sym < 256 => Ok(sym),
            None => Err(TransformError::UnknownSymbol(sym)),
        }
    }

    pub fn apply_all(&self, symbols: &[SymbolId]) -> Result<Vec<SymbolId>, TransformError> {
        symbols.iter().map(|&s| self.apply(s)).collect()
    }

    /// Byte-wise application to text; only byte ids are involved.
    pub fn apply_text(&self, text: &str) -> Result<String, TransformError> {
        let bytes = text
            .bytes()
            .map(|b| {
                let s = self.apply(b as SymbolId)?;
                u8::try_from(s).map_err(|_| TransformError::UnknownSymbol(s))
            })
            .collect::<Result<Vec<u8>, _>>()?;
        String::from_utf8(bytes)
            .map_err(|_| TransformError::Syntax("permutation broke UTF-8".into()))
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
            fingerprint: self.fingerprint,
        }
    }

    /// Non-trivial pairs in ascending source order.
    pub fn pairs(&self) -> impl Iterator<Item = (SymbolId, SymbolId)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// `perm=<from>:<to>` lines.
    pub fn write_lines(&self, out: &mut String) {
        for (a, b) in self.pairs() {
            out.push_str(&format!("perm={a}:{b}\n"));
        }
    }
}

/// Collects `perm=` lines of a `WTKB1` document.
#[derive(Debug, Default)]
pub struct PermReader {
    pairs: Vec<(SymbolId, SymbolId)>,
    sources: BTreeMap<SymbolId, usize>,
    last_line: usize,
}

impl PermReader {
    pub fn accept(&mut self, field: &Field<'_>) -> Result<bool, FormatError> {
        if field.key != "perm" {
            return Ok(false);
        }
        let line = field.line;
        let parse = |s: &str| {
            s.trim()
                .parse::<SymbolId>()
                .map_err(|_| FormatError::new(line, format!("bad symbol id {s:?}")))
        };
        let (a, b) = field
            .value
            .split_once(':')
            .ok_or_else(|| FormatError::new(line, "expected perm=<from>:<to>"))?;
        let a = parse(a)?;
        if self.sources.insert(a, line).is_some() {
            return Err(FormatError::new(line, format!("symbol {a} mapped twice")));
        }
        self.pairs.push((a, parse(b)?));
        self.last_line = line;
        Ok(true)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn finish(self, fingerprint: u64) -> Result<Option<LetterPermutation>, FormatError> {
        if self.pairs.is_empty() {
            return Ok(None);
        }
        LetterPermutation::from_pairs(self.pairs, fingerprint)
            .map(Some)
            .map_err(|e| FormatError::new(self.last_line, e))
    }
}
