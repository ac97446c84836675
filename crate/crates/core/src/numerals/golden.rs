//! The golden sequence (Fibonacci word) and numerals built from its words.
//!
//! `S_1 = "1"`, `S_2 = "10"`, `S_k = S_(k-1) · S_(k-2)`. Every `S_k` is a prefix
//! of the infinite word generated by `1 → 10, 0 → 1`. Concatenations of the
//! words are not uniquely decodable ("101" is both `S_3` and `S_2 S_1`), so the
//! decoder enumerates parses instead of assuming one.

use thiserror::Error;

use crate::bitio::BitString;

/// Parses reported by an ambiguous decode are capped at this many.
pub const MAX_GOLDEN_PARSES: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenParseError {
    #[error("ambiguous: {} parses{}", parses.len(), if *truncated { " (truncated)" } else { "" })]
    Ambiguous {
        parses: Vec<Vec<usize>>,
        truncated: bool,
    },
    #[error("no parse into golden words")]
    NoParse,
    #[error("golden word indices start at 1")]
    ZeroIndex,
}

/// `S_k` for `k >= 1`.
///
/// # Panics
/// If `k` is zero.
pub fn golden_word(k: usize) -> BitString {
    assert!(k >= 1, "golden word indices start at 1");
    let (mut prev, mut cur) = (vec![true], vec![true, false]);
    if k == 1 {
        return BitString::from_bits(prev);
    }
    for _ in 2..k {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    BitString::from_bits(cur)
}

/// The first `m` symbols of the infinite golden sequence.
pub fn golden_sequence(m: usize) -> BitString {
    let mut word = vec![true];
    while word.len() < m {
        word = word
            .iter()
            .flat_map(|&b| if b { vec![true, false] } else { vec![true] })
            .collect();
    }
    word.truncate(m);
    BitString::from_bits(word)
}

pub fn golden_numeral_encode(indices: &[usize]) -> Result<BitString, GoldenParseError> {
    let mut out = BitString::new();
    for &k in indices {
        if k == 0 {
            return Err(GoldenParseError::ZeroIndex);
        }
        out.extend_from(&golden_word(k));
    }
    Ok(out)
}

/// The unique parse of `s` into golden words, or every parse when there is
/// more than one (up to [`MAX_GOLDEN_PARSES`]).
pub fn golden_numeral_decode(s: &BitString) -> Result<Vec<usize>, GoldenParseError> {
    let bits = s.as_slice();
    let mut words = Vec::new();
    for k in 1.. {
        let w = golden_word(k);
        if w.len() > bits.len().max(1) {
            break;
        }
        words.push((k, w.into_bits()));
    }
    // dead[i]: no parse of bits[i..] exists
    let mut dead = vec![false; bits.len() + 1];
    let mut parses = Vec::new();
    let mut truncated = false;
    let mut path = Vec::new();
    walk(
        bits,
        0,
        &words,
        &mut dead,
        &mut path,
        &mut parses,
        &mut truncated,
    );
    match parses.len() {
        0 => Err(GoldenParseError::NoParse),
        1 => Ok(parses.pop().expect("one parse")),
        _ => Err(GoldenParseError::Ambiguous { parses, truncated }),
    }
}

fn walk(
    bits: &[bool],
    pos: usize,
    words: &[(usize, Vec<bool>)],
    dead: &mut [bool],
    path: &mut Vec<usize>,
    parses: &mut Vec<Vec<usize>>,
    truncated: &mut bool,
) -> bool {
    if pos == bits.len() {
        if parses.len() < MAX_GOLDEN_PARSES {
            parses.push(path.clone());
        } else {
            *truncated = true;
        }
        return true;
    }
    if dead[pos] || *truncated {
        return !dead[pos];
    }
    let mut any = false;
    // longest words first so the single-word reading comes first
    for (k, w) in words.iter().rev() {
        if bits[pos..].starts_with(w) {
            path.push(*k);
            any |= walk(bits, pos + w.len(), words, dead, path, parses, truncated);
            path.pop();
        }
    }
    if !any {
        dead[pos] = true;
    }
    any
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerals::fib_weights;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_prefixes() {
        assert_eq!(golden_sequence(13), bs("1011010110110"));
        assert_eq!(golden_sequence(1), bs("1"));
        assert_eq!(golden_sequence(8), bs("10110101"));
        assert_eq!(golden_sequence(0), bs(""));
    }

    #[test]
    fn words_follow_the_recurrence() {
        let fib = fib_weights::<u64>(20, false).unwrap();
        for k in 1..=20 {
            let w = golden_word(k);
            assert_eq!(w.len() as u64, fib.as_slice()[k - 1], "|S_{k}|");
            assert_eq!(golden_sequence(w.len()), w);
            if k >= 3 {
                let mut cat = golden_word(k - 1);
                cat.extend_from(&golden_word(k - 2));
                assert_eq!(cat, w);
            }
        }
    }

    #[test]
    fn decode_examples() {
        assert_eq!(golden_numeral_encode(&[3]).unwrap(), bs("101"));
        match golden_numeral_decode(&bs("101")) {
            Err(GoldenParseError::Ambiguous { parses, truncated }) => {
                assert_eq!(parses, vec![vec![3], vec![2, 1]]);
                assert!(!truncated);
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
        assert_eq!(golden_numeral_encode(&[1]).unwrap(), bs("1"));
        assert_eq!(golden_numeral_decode(&bs("1")).unwrap(), vec![1]);
        assert_eq!(
            golden_numeral_decode(&bs("0")),
            Err(GoldenParseError::NoParse)
        );
        assert_eq!(
            golden_numeral_decode(&bs("100")),
            Err(GoldenParseError::NoParse)
        );
        assert_eq!(
            golden_numeral_encode(&[0]),
            Err(GoldenParseError::ZeroIndex)
        );
    }

    /// Independent enumeration: split the string at every subset of cut
    /// points and keep splits whose pieces are all golden words.
    fn brute_parses(s: &str) -> Vec<Vec<usize>> {
        let words: Vec<String> = (1..=8).map(|k| golden_word(k).to_string()).collect();
        let n = s.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let mut pieces = Vec::new();
            let mut start = 0;
            for i in 1..n {
                if mask >> (i - 1) & 1 == 1 {
                    pieces.push(&s[start..i]);
                    start = i;
                }
            }
            pieces.push(&s[start..]);
            let idx: Option<Vec<usize>> = pieces
                .iter()
                .map(|p| words.iter().position(|w| w == p).map(|i| i + 1))
                .collect();
            if let Some(idx) = idx {
                out.push(idx);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn parse_sets_match_brute_force() {
        for s in ["101", "1010", "10110", "1011010", "11", "110101"] {
            let mut got = match golden_numeral_decode(&bs(s)) {
                Ok(p) => vec![p],
                Err(GoldenParseError::Ambiguous { parses, .. }) => parses,
                Err(_) => vec![],
            };
            got.sort();
            assert_eq!(got, brute_parses(s), "{s}");
        }
        // [2,2] = "1010": parses [2,2] and [3]? no: "101"+"0" fails; only [2,2]
        let enc = golden_numeral_encode(&[2, 2]).unwrap();
        assert_eq!(enc, bs("1010"));
        assert_eq!(brute_parses("1010"), vec![vec![2, 2]]);
    }

    #[test]
    fn long_inputs_are_capped() {
        let s = golden_numeral_encode(&[3; 20]).unwrap();
        match golden_numeral_decode(&s) {
            Err(GoldenParseError::Ambiguous { parses, truncated }) => {
                assert!(parses.len() <= MAX_GOLDEN_PARSES);
                assert!(parses.contains(&vec![3; 20]) || truncated);
                assert!(truncated);
            }
            other => panic!("{other:?}"),
        }
    }
}
