//! Bundled test data: an English corpus, the pangram, a 26-letter tally and
//! a small wordlist.

use std::collections::BTreeSet;

use crate::freq::FrequencyTable;
use crate::rng::SplitMix64;
use crate::SymbolId;

/// Original English prose, several thousand letters.
pub const CORPUS: &str = include_str!("../assets/corpus.txt");

/// One lowercase word per line.
pub const WORDLIST: &str = include_str!("../assets/wordlist.txt");

pub const PANGRAM: &str = "The quick brown fox jumped lazily over the sleepy dog.";

/// Letter counts of a 792-letter English paragraph.
#[rustfmt::skip]
pub const ABSTRACT_LETTER_COUNTS: [(char, u64); 26] = [
    ('A', 67), ('B', 10), ('C', 36), ('D', 26), ('E', 96), ('F', 14), ('G', 21),
    ('H', 31), ('I', 45), ('J', 0), ('K', 6), ('L', 23), ('M', 29), ('N', 58),
    ('O', 71), ('P', 27), ('Q', 1), ('R', 41), ('S', 64), ('T', 75), ('U', 22),
    ('V', 6), ('W', 6), ('X', 1), ('Y', 16), ('Z', 0),
];

/// Seed used by [`abstract_letters`] when a fixed ordering is wanted.
pub const ABSTRACT_SEED: u64 = 0x0415_2024;

pub fn abstract_letter_table() -> FrequencyTable {
    let mut t = FrequencyTable::new();
    for (c, n) in ABSTRACT_LETTER_COUNTS {
        t.add(c as SymbolId, n);
    }
    t
}

/// The lowercase letters of [`ABSTRACT_LETTER_COUNTS`] in a seeded order.
pub fn abstract_letters(seed: u64) -> String {
    let mut letters: Vec<u8> = ABSTRACT_LETTER_COUNTS
        .iter()
        .flat_map(|&(c, n)| std::iter::repeat_n(c.to_ascii_lowercase() as u8, n as usize))
        .collect();
    SplitMix64::new(seed).shuffle(&mut letters);
    String::from_utf8(letters).expect("ascii")
}

/// Words of a one-word-per-line list, lowercased; blank lines skipped.
pub fn parse_wordlist(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.trim().to_ascii_lowercase())
        .filter(|l| !l.is_empty())
        .collect()
}

pub fn wordlist() -> BTreeSet<String> {
    parse_wordlist(WORDLIST)
}

/// `over`, `overt`, `the`, `he`: two ways to read "overthe".
pub fn toy_dictionary() -> BTreeSet<String> {
    ["over", "overt", "the", "he"]
        .iter()
        .map(|w| w.to_string())
        .collect()
}

/// Lowercase ASCII letters of `text`, everything else dropped.
pub fn letters_only(text: &str) -> String {
    text.chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freq::AlphabetPolicy;

    #[test]
    fn abstract_letters_match_counts() {
        let s = abstract_letters(ABSTRACT_SEED);
        assert_eq!(s.len(), 792);
        let t = FrequencyTable::tally(s.as_bytes(), AlphabetPolicy::Letters);
        assert_eq!(t, abstract_letter_table());
        assert_ne!(abstract_letters(1), s);
    }

    #[test]
    fn corpus_is_large_enough() {
        assert!(letters_only(CORPUS).len() >= 2000);
    }

    #[test]
    fn wordlist_has_pangram_words_but_no_short_prefixes() {
        let w = wordlist();
        for word in [
            "the", "quick", "brown", "fox", "jumped", "lazily", "over", "sleepy", "dog",
        ] {
            assert!(w.contains(word), "{word}");
        }
        for prefix in [
            "t", "th", "q", "qu", "qui", "quic", "b", "br", "bro", "brow", "f", "fo",
        ] {
            assert!(!w.contains(prefix), "{prefix}");
        }
    }
}
