//! Symbol tallies, frequency statistics, English letter reference and
//! Benford's first-digit law.

mod benford;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Float;
use thiserror::Error;

use crate::bitio::{self, BitString};
use crate::SymbolId;

pub use benford::{benford_distance, benford_expected, first_digit_counts, leading_digit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreqError {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("table has {distinct} distinct symbols but the alphabet size is {alphabet}")]
    AlphabetTooSmall { distinct: usize, alphabet: usize },
    #[error("digit {0} is outside 1..=9")]
    DigitOutOfRange(u32),
    #[error("no numbers given")]
    EmptyInput,
    #[error("{0:?} has no nonzero leading digit")]
    NoLeadingDigit(String),
    #[error("group width must be in 1..=32, got {0}")]
    InvalidGroupWidth(usize),
    #[error("unknown alphabet policy {0:?} (expected letters, bytes or groups:K)")]
    UnknownPolicy(String),
}

/// What counts as a symbol when tallying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphabetPolicy {
    /// `A`..`Z` after case folding (ids 65..=90); everything else ignored.
    Letters,
    /// Every byte.
    Bytes,
    /// Consecutive `k`-bit groups of the byte stream; a trailing partial group is dropped.
    Groups(usize),
}

impl FromStr for AlphabetPolicy {
    type Err = FreqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "letters" => Ok(Self::Letters),
            "bytes" => Ok(Self::Bytes),
            _ => {
                let k = s
                    .strip_prefix("groups:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| FreqError::UnknownPolicy(s.to_string()))?;
                if (1..=32).contains(&k) {
                    Ok(Self::Groups(k))
                } else {
                    Err(FreqError::InvalidGroupWidth(k))
                }
            }
        }
    }
}

impl fmt::Display for AlphabetPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Letters => f.write_str("letters"),
            Self::Bytes => f.write_str("bytes"),
            Self::Groups(k) => write!(f, "groups:{k}"),
        }
    }
}

/// Counts per symbol id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<SymbolId, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tally(data: &[u8], policy: AlphabetPolicy) -> Self {
        match policy {
            AlphabetPolicy::Letters => data
                .iter()
                .filter(|b| b.is_ascii_alphabetic())
                .map(|b| b.to_ascii_uppercase() as SymbolId)
                .collect(),
            AlphabetPolicy::Bytes => data.iter().map(|&b| b as SymbolId).collect(),
            AlphabetPolicy::Groups(k) => Self::tally_bits(&bitio::bits_of_bytes(data), k),
        }
    }

    /// Tally of `k`-bit groups (`1 ≤ k ≤ 32`); the trailing partial group is dropped.
    pub fn tally_bits(bits: &BitString, k: usize) -> Self {
        assert!((1..=32).contains(&k), "group width must be in 1..=32");
        let (groups, _) = bitio::group(bits, k);
        groups
            .iter()
            .map(|g| g.to_u64().expect("at most 32 bits") as SymbolId)
            .collect()
    }

    pub fn add(&mut self, sym: SymbolId, n: u64) {
        if n > 0 {
            *self.counts.entry(sym).or_insert(0) += n;
            self.total += n;
        }
    }

    pub fn count(&self, sym: SymbolId) -> u64 {
        self.counts.get(&sym).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Nonzero counts in ascending symbol order.
    pub fn counts(&self) -> impl Iterator<Item = (SymbolId, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    /// Percentage of the total; 0 for an empty table.
    pub fn percentage<F: Float>(&self, sym: SymbolId) -> F {
        if self.total == 0 {
            return F::zero();
        }
        let hundred = F::from(100.0).expect("float");
        F::from(self.count(sym)).expect("float") * hundred / F::from(self.total).expect("float")
    }

    /// Nonzero entries by descending count, ties by ascending id.
    pub fn ranked(&self) -> Vec<(SymbolId, u64)> {
        let mut v: Vec<_> = self.counts().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    /// Counts in descending order, without labels.
    pub fn count_profile(&self) -> Vec<u64> {
        self.ranked().into_iter().map(|(_, c)| c).collect()
    }

    pub fn top(&self) -> Option<SymbolId> {
        self.ranked().first().map(|&(s, _)| s)
    }

    /// Mean, spread and outliers over an alphabet of `alphabet_size` symbols.
    pub fn stats<F: Float>(&self, alphabet_size: usize) -> Result<FrequencyStats<F>, FreqError> {
        FrequencyStats::compute(self, alphabet_size)
    }
}

impl FromIterator<SymbolId> for FrequencyTable {
    fn from_iter<I: IntoIterator<Item = SymbolId>>(iter: I) -> Self {
        let mut t = Self::new();
        for s in iter {
            t.add(s, 1);
        }
        t
    }
}

/// Percent-scale summary of a table over a fixed alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyStats<F> {
    pub alphabet_size: usize,
    /// Always `100 / alphabet_size`.
    pub mean: F,
    /// Population standard deviation, with absent symbols counted at 0%.
    pub stddev: F,
    /// Symbols whose percentage exceeds `mean + stddev`, by descending count.
    pub exceptional: Vec<SymbolId>,
}

impl<F: Float> FrequencyStats<F> {
    pub fn compute(table: &FrequencyTable, alphabet_size: usize) -> Result<Self, FreqError> {
        if alphabet_size == 0 {
            return Err(FreqError::EmptyAlphabet);
        }
        if table.distinct() > alphabet_size {
            return Err(FreqError::AlphabetTooSmall {
                distinct: table.distinct(),
                alphabet: alphabet_size,
            });
        }
        let n = F::from(alphabet_size).expect("float");
        let mean = F::from(100.0).expect("float") / n;
        let absent = F::from(alphabet_size - table.distinct()).expect("float");
        let present = table.counts().fold(F::zero(), |acc, (s, _)| {
            let d = table.percentage::<F>(s) - mean;
            acc + d * d
        });
        let stddev = ((present + absent * mean * mean) / n).sqrt();
        let exceptional = table
            .ranked()
            .into_iter()
            .filter(|&(s, _)| table.percentage::<F>(s) > mean + stddev)
            .map(|(s, _)| s)
            .collect();
        Ok(Self {
            alphabet_size,
            mean,
            stddev,
            exceptional,
        })
    }
}

const ENGLISH: [f64; 26] = [
    0.082, 0.015, 0.025, 0.043, 0.127, 0.022, 0.020, 0.061, 0.070, 0.002, 0.008, 0.040, 0.024,
    0.067, 0.075, 0.019, 0.001, 0.060, 0.063, 0.091, 0.028, 0.010, 0.023, 0.001, 0.020, 0.001,
];

/// Letter probabilities keyed by uppercase ASCII id.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceDistribution<F> {
    probs: BTreeMap<SymbolId, F>,
}

impl<F: Float> ReferenceDistribution<F> {
    /// Published English single-letter frequencies (three decimals).
    pub fn english() -> Self {
        Self {
            probs: (b'A'..=b'Z')
                .zip(ENGLISH)
                .map(|(c, p)| (c as SymbolId, F::from(p).expect("float")))
                .collect(),
        }
    }

    /// Relative frequencies of a tally.
    pub fn from_table(t: &FrequencyTable) -> Self {
        let total = F::from(t.total()).expect("float");
        Self {
            probs: t
                .counts()
                .map(|(s, c)| (s, F::from(c).expect("float") / total))
                .collect(),
        }
    }

    pub fn probability(&self, sym: SymbolId) -> F {
        self.probs.get(&sym).copied().unwrap_or_else(F::zero)
    }

    pub fn total(&self) -> F {
        self.probs.values().fold(F::zero(), |a, &p| a + p)
    }

    /// Symbols by descending probability, ties by ascending id.
    pub fn ranked(&self) -> Vec<SymbolId> {
        let mut v: Vec<_> = self.probs.iter().map(|(&s, &p)| (s, p)).collect();
        v.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite").then(a.0.cmp(&b.0)));
        v.into_iter().map(|(s, _)| s).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    const PANGRAM: &str = "The quick brown fox jumped lazily over the sleepy dog.";

    fn id(c: char) -> SymbolId {
        c as SymbolId
    }

    #[test]
    fn pangram_counts() {
        let t = FrequencyTable::tally(PANGRAM.as_bytes(), AlphabetPolicy::Letters);
        assert_eq!(t.total(), 44);
        assert_eq!(t.count(id('E')), 6);
        assert_eq!(t.count(id('O')), 4);
        assert_eq!(t.count(id('L')), 3);
        assert_eq!(t.distinct(), 26);
        assert_eq!(t.top(), Some(id('E')));
        let pct: f64 = t.percentage(id('E'));
        assert!((pct - 600.0 / 44.0).abs() < 1e-12);
    }

    #[test]
    fn empty_and_uniform() {
        let t = FrequencyTable::tally(b"", AlphabetPolicy::Letters);
        assert_eq!(t.total(), 0);
        assert!(t.is_empty());
        let u: FrequencyTable = [1, 2, 3, 4, 1, 2, 3, 4].into_iter().collect();
        let s: FrequencyStats<f64> = u.stats(4).unwrap();
        assert_eq!(s.mean, 25.0);
        assert!(s.stddev.abs() < 1e-12);
        assert!(s.exceptional.is_empty());
        assert_eq!(u.stats::<f64>(0), Err(FreqError::EmptyAlphabet));
        assert!(u.stats::<f64>(3).is_err());
    }

    #[test]
    fn percentages_sum_to_100() {
        let t = FrequencyTable::tally(fixtures::CORPUS.as_bytes(), AlphabetPolicy::Bytes);
        let sum: f64 = t.counts().map(|(s, _)| t.percentage::<f64>(s)).sum();
        assert!((sum - 100.0).abs() < 1e-9);
        assert_eq!(t.counts().map(|(_, c)| c).sum::<u64>(), t.total());
    }

    #[test]
    fn stddev_matches_direct_formula() {
        let t = FrequencyTable::tally(PANGRAM.as_bytes(), AlphabetPolicy::Letters);
        let s: FrequencyStats<f64> = t.stats(26).unwrap();
        assert!((s.mean - 100.0 / 26.0).abs() < 1e-12);
        let pcts: Vec<f64> = (b'A'..=b'Z').map(|c| t.percentage(c as SymbolId)).collect();
        let var = pcts.iter().map(|p| (p - s.mean).powi(2)).sum::<f64>() / 26.0;
        assert!((s.stddev - var.sqrt()).abs() < 1e-12);
        assert_eq!(s.exceptional.first(), Some(&id('E')));
    }

    #[test]
    fn abstract_fixture_stats() {
        let t = fixtures::abstract_letter_table();
        assert_eq!(t.total(), 792);
        assert_eq!(t.count(id('E')), 96);
        let s: FrequencyStats<f64> = t.stats(26).unwrap();
        assert!((s.stddev - 3.4).abs() < 0.5, "{}", s.stddev);
        for c in ['E', 'T', 'O', 'A', 'S', 'N'] {
            assert!(s.exceptional.contains(&id(c)), "{c}");
        }
        let f32_stats: FrequencyStats<f32> = t.stats(26).unwrap();
        assert!((f32_stats.stddev as f64 - s.stddev).abs() < 1e-4);
    }

    #[test]
    fn groups_policy() {
        let t = FrequencyTable::tally(&[0xAB, 0xCD], AlphabetPolicy::Groups(4));
        assert_eq!(
            t.counts().collect::<Vec<_>>(),
            vec![(0xA, 1), (0xB, 1), (0xC, 1), (0xD, 1)]
        );
        let t = FrequencyTable::tally(&[0xFF, 0x00], AlphabetPolicy::Groups(12));
        assert_eq!(t.counts().collect::<Vec<_>>(), vec![(0xFF0, 1)]);
        assert_eq!("groups:12".parse(), Ok(AlphabetPolicy::Groups(12)));
        assert_eq!(
            "groups:0".parse::<AlphabetPolicy>(),
            Err(FreqError::InvalidGroupWidth(0))
        );
        assert!("words".parse::<AlphabetPolicy>().is_err());
        assert_eq!(AlphabetPolicy::Groups(8).to_string(), "groups:8");
    }

    #[test]
    fn english_reference() {
        let r = ReferenceDistribution::<f64>::english();
        assert_eq!(r.probability(id('E')), 0.127);
        assert!((r.total() - 1.0).abs() < 0.005);
        assert_eq!(
            &r.ranked()[..6],
            &[id('E'), id('T'), id('A'), id('O'), id('I'), id('N')]
        );
    }

    proptest! {
        #[test]
        fn tally_ignores_order(mut text in "[a-zA-Z ,.]{0,200}", seed in any::<u64>()) {
            let before = FrequencyTable::tally(text.as_bytes(), AlphabetPolicy::Letters);
            let mut bytes = std::mem::take(&mut text).into_bytes();
            crate::rng::SplitMix64::new(seed).shuffle(&mut bytes);
            prop_assert_eq!(FrequencyTable::tally(&bytes, AlphabetPolicy::Letters), before);
        }

        #[test]
        fn mean_depends_only_on_alphabet(text in "[a-z]{0,100}", n in 26usize..100) {
            let t = FrequencyTable::tally(text.as_bytes(), AlphabetPolicy::Letters);
            let s: FrequencyStats<f64> = t.stats(n).unwrap();
            prop_assert_eq!(s.mean, 100.0 / n as f64);
        }
    }
}
