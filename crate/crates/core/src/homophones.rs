//! Identity symbols: extra ciphertext symbols for frequent letters so that
//! every symbol of the expanded alphabet occurs at a similar rate.
//!
//! Each lowercase letter owns a group whose first member is the letter's own
//! ASCII code; further members are identity ids numbered from
//! [`IDENTITY_BASE`]. Bytes that are not letters pass through unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::freq::FrequencyTable;
use crate::keyfile::{Field, FormatError};
use crate::rng::SplitMix64;
use crate::SymbolId;

/// First identity symbol id.
pub const IDENTITY_BASE: SymbolId = 256;

/// Extra symbols per rank under the fixed rule: 3 for the top letter, 2 for
/// each of the next nine.
pub const RULE_EXTRAS: [usize; 10] = [3, 2, 2, 2, 2, 2, 2, 2, 2, 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomophoneError {
    #[error("letter {0:?} has no homophone group")]
    UnknownLetter(char),
    #[error("symbol {0} is not in the homophone table")]
    UnknownSymbol(SymbolId),
    #[error("group for {0:?} must start with its own code")]
    MissingBase(char),
    #[error("symbol {0} appears in more than one place")]
    DuplicateSymbol(SymbolId),
    #[error("{0:?} is not a lowercase ASCII letter")]
    NotALetter(char),
    #[error("symbol {0} below {IDENTITY_BASE} cannot be an identity")]
    ReservedSymbol(SymbolId),
    #[error("decoded bytes are not valid UTF-8")]
    InvalidUtf8,
}

/// How occurrences of a letter are spread over its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HomophoneMode {
    /// Member counts differ by at most one; positions are a seeded shuffle.
    #[default]
    Balanced,
    /// Independent seeded draw for every occurrence.
    Uniform,
    /// Members in turn from a seeded starting member.
    RoundRobin,
}

impl FromStr for HomophoneMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "balanced" => Ok(Self::Balanced),
            "uniform" => Ok(Self::Uniform),
            "round-robin" => Ok(Self::RoundRobin),
            _ => Err(format!(
                "unknown homophone mode {s:?} (balanced, uniform, round-robin)"
            )),
        }
    }
}

impl fmt::Display for HomophoneMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Balanced => "balanced",
            Self::Uniform => "uniform",
            Self::RoundRobin => "round-robin",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomophoneTable {
    groups: BTreeMap<char, Vec<SymbolId>>,
    inverse: BTreeMap<SymbolId, char>,
}

impl HomophoneTable {
    /// Validates and indexes explicit groups.
    pub fn from_groups(groups: BTreeMap<char, Vec<SymbolId>>) -> Result<Self, HomophoneError> {
        let mut inverse = BTreeMap::new();
        for (&letter, members) in &groups {
            if !letter.is_ascii_lowercase() {
                return Err(HomophoneError::NotALetter(letter));
            }
            if members.first() != Some(&(letter as SymbolId)) {
                return Err(HomophoneError::MissingBase(letter));
            }
            for (i, &m) in members.iter().enumerate() {
                if i > 0 && m < IDENTITY_BASE {
                    return Err(HomophoneError::ReservedSymbol(m));
                }
                if inverse.insert(m, letter).is_some() {
                    return Err(HomophoneError::DuplicateSymbol(m));
                }
            }
        }
        Ok(Self { groups, inverse })
    }

    /// Groups of the given sizes for letters in rank order; identity ids are
    /// numbered consecutively in that order.
    fn from_ranked_sizes(sizes: &[(char, usize)]) -> Self {
        let mut next = IDENTITY_BASE;
        let groups = sizes
            .iter()
            .map(|&(letter, size)| {
                let mut members = vec![letter as SymbolId];
                members.extend(next..next + size as SymbolId - 1);
                next += size as SymbolId - 1;
                (letter, members)
            })
            .collect();
        Self::from_groups(groups).expect("constructed groups are valid")
    }

    /// Fixed rule: the most frequent letter gets 3 identities, the next nine
    /// get 2 each, the rest none. Ties rank alphabetically.
    pub fn build_rule_table(reference: &FrequencyTable) -> Self {
        let ranked = ranked_letters(reference);
        let sizes: Vec<(char, usize)> = ranked
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, 1 + RULE_EXTRAS.get(i).copied().unwrap_or(0)))
            .collect();
        Self::from_ranked_sizes(&sizes)
    }

    /// Each letter gets `max(1, round(freq / mean freq))` members, rounding
    /// halves up.
    pub fn build_formula_table(reference: &FrequencyTable) -> Self {
        let total = letter_total(reference);
        let sizes: Vec<(char, usize)> = ranked_letters(reference)
            .into_iter()
            .map(|c| {
                let count = reference.count(c.to_ascii_uppercase() as SymbolId);
                // round(26·count / total) in exact integer arithmetic
                let size = if total == 0 {
                    1
                } else {
                    (52 * count + total) / (2 * total)
                };
                (c, size.max(1) as usize)
            })
            .collect();
        Self::from_ranked_sizes(&sizes)
    }

    pub fn group(&self, letter: char) -> Option<&[SymbolId]> {
        self.groups
            .get(&letter.to_ascii_lowercase())
            .map(Vec::as_slice)
    }

    pub fn groups(&self) -> impl Iterator<Item = (char, &[SymbolId])> + '_ {
        self.groups.iter().map(|(&c, g)| (c, g.as_slice()))
    }

    pub fn letter_of(&self, sym: SymbolId) -> Option<char> {
        self.inverse.get(&sym).copied()
    }

    /// Number of distinct symbols across all groups.
    pub fn alphabet_size(&self) -> usize {
        self.inverse.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.inverse.keys().copied()
    }

    /// Replaces every letter by a member of its group. Letters are case-folded;
    /// other bytes pass through as their own ids.
    pub fn normalize(
        &self,
        text: &str,
        seed: u64,
        mode: HomophoneMode,
    ) -> Result<Vec<SymbolId>, HomophoneError> {
        let bytes = text.as_bytes();
        let mut positions: BTreeMap<char, Vec<usize>> = BTreeMap::new();
        let mut out: Vec<SymbolId> = Vec::with_capacity(bytes.len());
        for (i, &b) in bytes.iter().enumerate() {
            if b.is_ascii_alphabetic() {
                let c = b.to_ascii_lowercase() as char;
                if !self.groups.contains_key(&c) {
                    return Err(HomophoneError::UnknownLetter(c));
                }
                positions.entry(c).or_default().push(i);
                out.push(c as SymbolId);
            } else {
                out.push(b as SymbolId);
            }
        }
        let mut rng = SplitMix64::new(seed);
        for (c, pos) in positions {
            let members = &self.groups[&c];
            let g = members.len();
            match mode {
                HomophoneMode::Balanced => {
                    let mut order: Vec<usize> = (0..g).collect();
                    rng.shuffle(&mut order);
                    let mut picks: Vec<SymbolId> =
                        (0..pos.len()).map(|k| members[order[k % g]]).collect();
                    rng.shuffle(&mut picks);
                    for (p, s) in pos.into_iter().zip(picks) {
                        out[p] = s;
                    }
                }
                HomophoneMode::Uniform => {
                    for p in pos {
                        out[p] = members[rng.below(g as u64) as usize];
                    }
                }
                HomophoneMode::RoundRobin => {
                    let start = rng.below(g as u64) as usize;
                    for (k, p) in pos.into_iter().enumerate() {
                        out[p] = members[(start + k) % g];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`normalize`](Self::normalize), independent of the seed and mode.
    pub fn denormalize(&self, symbols: &[SymbolId]) -> Result<String, HomophoneError> {
        let bytes = symbols
            .iter()
            .map(|&s| match self.inverse.get(&s) {
                Some(&c) => Ok(c as u8),
                None if s < IDENTITY_BASE => Ok(s as u8),
                None => Err(HomophoneError::UnknownSymbol(s)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        String::from_utf8(bytes).map_err(|_| HomophoneError::InvalidUtf8)
    }

    /// Tally of the table's symbols in a stream, ignoring pass-through bytes.
    pub fn tally(&self, symbols: &[SymbolId]) -> FrequencyTable {
        symbols
            .iter()
            .copied()
            .filter(|s| self.inverse.contains_key(s))
            .collect()
    }

    /// `group=<letter>:<id>,<id>,...` lines in letter order.
    pub fn write_lines(&self, out: &mut String) {
        for (c, members) in &self.groups {
            let ids: Vec<String> = members.iter().map(SymbolId::to_string).collect();
            out.push_str(&format!("group={c}:{}\n", ids.join(",")));
        }
    }
}

fn letter_total(reference: &FrequencyTable) -> u64 {
    (b'A'..=b'Z').map(|c| reference.count(c as SymbolId)).sum()
}

/// `a`..`z` by descending count of the uppercase id, ties alphabetical.
fn ranked_letters(reference: &FrequencyTable) -> Vec<char> {
    let mut letters: Vec<char> = ('a'..='z').collect();
    letters.sort_by_key(|c| std::cmp::Reverse(reference.count(c.to_ascii_uppercase() as SymbolId)));
    letters
}

/// Collects `group=` lines of a `WTKB1` document.
#[derive(Debug, Default)]
pub struct GroupReader {
    groups: BTreeMap<char, Vec<SymbolId>>,
    seen: BTreeSet<SymbolId>,
}

impl GroupReader {
    /// Consumes a `group` field; returns false for any other key.
    pub fn accept(&mut self, field: &Field<'_>) -> Result<bool, FormatError> {
        if field.key != "group" {
            return Ok(false);
        }
        let line = field.line;
        let err = |e: HomophoneError| FormatError::new(line, e);
        let (letter, ids) = field
            .value
            .split_once(':')
            .ok_or_else(|| FormatError::new(line, "expected group=<letter>:<id>,..."))?;
        let mut chars = letter.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => c,
            _ => {
                return Err(FormatError::new(
                    line,
                    format!("bad group letter {letter:?}"),
                ))
            }
        };
        if self.groups.contains_key(&c) {
            return Err(FormatError::new(line, format!("duplicate group for {c:?}")));
        }
        let members = ids
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<SymbolId>()
                    .map_err(|_| FormatError::new(line, format!("bad symbol id {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if members.first() != Some(&(c as SymbolId)) {
            return Err(err(HomophoneError::MissingBase(c)));
        }
        for (i, &m) in members.iter().enumerate() {
            if i > 0 && m < IDENTITY_BASE {
                return Err(err(HomophoneError::ReservedSymbol(m)));
            }
            if !self.seen.insert(m) {
                return Err(err(HomophoneError::DuplicateSymbol(m)));
            }
        }
        self.groups.insert(c, members);
        Ok(true)
    }

    pub fn finish(self) -> Option<HomophoneTable> {
        if self.groups.is_empty() {
            return None;
        }
        Some(HomophoneTable::from_groups(self.groups).expect("groups validated line by line"))
    }
}
