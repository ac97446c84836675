use std::collections::BTreeMap;

use crate::bitio::{self, BitString};
use crate::freq::{FrequencyTable, ReferenceDistribution};
use crate::SymbolId;

use super::CryptanalysisError;

/// A guessed symbol → letter correspondence.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub mapping: BTreeMap<SymbolId, char>,
    pub method: String,
    /// Filled in once the guess has been scored against a known plaintext.
    pub recovery_rate: Option<f64>,
}

impl AttackReport {
    pub fn guess(&self, sym: SymbolId) -> Option<char> {
        self.mapping.get(&sym).copied()
    }
}

/// Maps the i-th most frequent cipher symbol to the i-th most probable
/// reference letter. Cipher ties rank by symbol id; symbols past the end of
/// the reference stay unmapped.
pub fn rank_match_attack(
    cipher: &FrequencyTable,
    reference: &ReferenceDistribution<f64>,
) -> AttackReport {
    let mapping = cipher
        .ranked()
        .into_iter()
        .zip(reference.ranked())
        .filter_map(|((sym, _), letter)| {
            let c = char::from_u32(letter)?.to_ascii_lowercase();
            Some((sym, c))
        })
        .collect();
    AttackReport {
        mapping,
        method: "rank-match".into(),
        recovery_rate: None,
    }
}

/// Fraction of positions where the guessed letter equals the true one
/// (case-insensitive). An empty input scores 0.
pub fn score_recovery(
    report: &AttackReport,
    cipher: &[SymbolId],
    plain: &[char],
) -> Result<f64, CryptanalysisError> {
    if cipher.len() != plain.len() {
        return Err(CryptanalysisError::LengthMismatch {
            cipher: cipher.len(),
            plain: plain.len(),
        });
    }
    if cipher.is_empty() {
        return Ok(0.0);
    }
    let hits = cipher
        .iter()
        .zip(plain)
        .filter(|(s, p)| report.guess(**s) == Some(p.to_ascii_lowercase()))
        .count();
    Ok(hits as f64 / cipher.len() as f64)
}

/// Tallies `bits` in `width`-bit groups, runs the rank attack and scores it.
///
/// Groups need not line up with letters: group `j` is scored against the
/// letter whose share of the bit stream contains the group's first bit.
pub fn score_grouped(
    bits: &BitString,
    width: usize,
    plain: &[char],
    reference: &ReferenceDistribution<f64>,
) -> Result<AttackReport, CryptanalysisError> {
    if !(1..=32).contains(&width) {
        return Err(CryptanalysisError::InvalidGroupWidth(width));
    }
    let (groups, _) = bitio::group(bits, width);
    let symbols: Vec<SymbolId> = groups
        .iter()
        .map(|g| g.to_u64().expect("at most 32 bits") as SymbolId)
        .collect();
    let mut report = rank_match_attack(&symbols.iter().copied().collect(), reference);
    report.method = format!("rank-match/{width}");
    let aligned: Vec<char> = (0..symbols.len())
        .map(|j| plain[j * width * plain.len() / bits.len()])
        .collect();
    report.recovery_rate = Some(score_recovery(&report, &symbols, &aligned)?);
    Ok(report)
}
