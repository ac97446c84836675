use std::fmt;

use crate::bitio;
use crate::fixtures::letters_only;
use crate::freq::ReferenceDistribution;
use crate::pipeline::{BundleOptions, KeyBundle, Process};
use crate::rng::derive_seed;
use crate::transforms::LetterPermutation;

use super::{score_grouped, CryptanalysisError};

pub const MIN_CORPUS_LETTERS: usize = 1000;

/// What the attacker is up against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Letter permutation, one byte per letter.
    Substitution,
    /// Homophones only, 16-bit ids.
    P3,
    /// Homophones, permutation and a noisy code table.
    P4,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Substitution => "substitution",
            Case::P3 => "p3",
            Case::P4 => "p4",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Group widths the attacker tallies with.
    pub widths: Vec<usize>,
    pub reference: ReferenceDistribution<f64>,
    /// Bundle for the P4 case (its homophones also drive the P3 case);
    /// generated from `seed` when absent.
    pub bundle: Option<KeyBundle>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            widths: vec![8, 12, 16],
            reference: ReferenceDistribution::english(),
            bundle: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub case: Case,
    /// Recovery rate per tried group width.
    pub by_width: Vec<(usize, f64)>,
}

impl CaseResult {
    /// The attacker's best width.
    pub fn best(&self) -> f64 {
        self.by_width.iter().map(|&(_, r)| r).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub letters: usize,
    pub cases: Vec<CaseResult>,
}

impl ExperimentReport {
    pub fn case(&self, case: Case) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.case == case)
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "letters\t{}", self.letters)?;
        write!(f, "case")?;
        if let Some(c) = self.cases.first() {
            for (w, _) in &c.by_width {
                write!(f, "\tw{w}")?;
            }
        }
        writeln!(f, "\tbest")?;
        for c in &self.cases {
            write!(f, "{}", c.case)?;
            for (_, r) in &c.by_width {
                write!(f, "\t{r:.4}")?;
            }
            writeln!(f, "\t{:.4}", c.best())?;
        }
        Ok(())
    }
}

/// Encodes the letters of `corpus` three ways and runs the rank attack on
/// each ciphertext at every configured group width.
pub fn run_experiment(
    corpus: &str,
    config: &ExperimentConfig,
) -> Result<ExperimentReport, CryptanalysisError> {
    let text = letters_only(corpus);
    if text.len() < MIN_CORPUS_LETTERS {
        return Err(CryptanalysisError::CorpusTooSmall {
            letters: text.len(),
        });
    }
    let plain: Vec<char> = text.chars().collect();

    let p4 = match &config.bundle {
        Some(b) => b.clone(),
        None => KeyBundle::generate(
            Process::P4,
            derive_seed(config.seed, "p4"),
            &BundleOptions::default(),
        )?,
    };
    let p3 = KeyBundle {
        process: Process::P3,
        code_table: None,
        permutation: None,
        transforms: Vec::new(),
        ..p4.clone()
    };
    let substitution = LetterPermutation::random_letters(derive_seed(config.seed, "substitution"))
        .apply_text(&text)
        .map_err(crate::pipeline::PipelineError::from)?;

    let streams = [
        (
            Case::Substitution,
            bitio::bits_of_bytes(substitution.as_bytes()),
        ),
        (Case::P3, p3.encode_bits(&text)?),
        (Case::P4, p4.encode_bits(&text)?),
    ];
    let cases = streams
        .iter()
        .map(|(case, bits)| {
            let by_width = config
                .widths
                .iter()
                .map(|&w| {
                    let r = score_grouped(bits, w, &plain, &config.reference)?;
                    Ok((w, r.recovery_rate.unwrap_or(0.0)))
                })
                .collect::<Result<_, CryptanalysisError>>()?;
            Ok(CaseResult {
                case: *case,
                by_width,
            })
        })
        .collect::<Result<_, CryptanalysisError>>()?;
    Ok(ExperimentReport {
        letters: plain.len(),
        cases,
    })
}
