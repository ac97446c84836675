//! The four composed processes and their key bundle.
//!
//! | process | steps |
//! |---------|-------|
//! | P1 | bytes → code table → frame |
//! | P2 | letter permutation → P1 |
//! | P3 | homophones → 16-bit ids → frame |
//! | P4 | homophones → permutation of the expanded alphabet → code table → frame |
//!
//! Every process may add a chain of bit transforms before framing. Decoding
//! takes every parameter from the bundle and never guesses.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitio::{self, BitString, FrameError};
use crate::codebook::{self, CodeTable, CodebookError, TableReader};
use crate::fixtures;
use crate::freq::{AlphabetPolicy, FrequencyTable};
use crate::homophones::{GroupReader, HomophoneError, HomophoneMode, HomophoneTable};
use crate::keyfile::{self, FormatError, HEADER};
use crate::rng::derive_seed;
use crate::transforms::{
    apply_chain, invert_chain, LetterPermutation, PermReader, TransformError, TransformStep,
};
use crate::SymbolId;

/// Width of the plain id codes used to frame P3 output.
pub const P3_ID_BITS: usize = 16;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{process} bundle: {problem}")]
    InvalidBundle { process: Process, problem: String },
    #[error(transparent)]
    Codebook(#[from] CodebookError),
    #[error(transparent)]
    Homophone(#[from] HomophoneError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("symbol {0} does not fit a {P3_ID_BITS}-bit id")]
    SymbolTooWide(SymbolId),
    #[error("decoded bytes are not valid UTF-8")]
    InvalidUtf8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Process {
    P1,
    P2,
    P3,
    P4,
}

impl Process {
    pub const ALL: [Process; 4] = [Process::P1, Process::P2, Process::P3, Process::P4];

    fn needs_table(self) -> bool {
        self != Process::P3
    }

    fn needs_homophones(self) -> bool {
        matches!(self, Process::P3 | Process::P4)
    }

    fn needs_permutation(self) -> bool {
        matches!(self, Process::P2 | Process::P4)
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Process::P1 => "p1",
            Process::P2 => "p2",
            Process::P3 => "p3",
            Process::P4 => "p4",
        })
    }
}

impl FromStr for Process {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Process::P1),
            "p2" => Ok(Process::P2),
            "p3" => Ok(Process::P3),
            "p4" => Ok(Process::P4),
            _ => Err(format!("unknown process {s:?} (p1, p2, p3, p4)")),
        }
    }
}

/// How identity groups are sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HomophoneRule {
    /// +3 for the top letter, +2 for the next nine.
    #[default]
    Rule,
    /// `max(1, round(freq / mean))` members per letter.
    Formula,
}

impl FromStr for HomophoneRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rule" => Ok(Self::Rule),
            "formula" => Ok(Self::Formula),
            _ => Err(format!("unknown homophone rule {s:?} (rule, formula)")),
        }
    }
}

impl HomophoneRule {
    pub fn build(self, reference: &FrequencyTable) -> HomophoneTable {
        match self {
            Self::Rule => HomophoneTable::build_rule_table(reference),
            Self::Formula => HomophoneTable::build_formula_table(reference),
        }
    }
}

/// Everything needed to encode and decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyBundle {
    pub process: Process,
    pub code_table: Option<CodeTable>,
    pub homophones: Option<HomophoneTable>,
    pub homophone_mode: HomophoneMode,
    pub permutation: Option<LetterPermutation>,
    pub transforms: Vec<TransformStep>,
    pub noise_seed: u64,
    pub homophone_seed: u64,
    /// Lowercase ASCII letters before encoding.
    pub casefold: bool,
    /// Drop ASCII whitespace before encoding. Lossy.
    pub strip_spaces: bool,
}

/// Parameters for [`KeyBundle::generate`].
#[derive(Debug, Clone)]
pub struct BundleOptions {
    pub width: usize,
    pub noise_bits: usize,
    pub rule: HomophoneRule,
    pub reference: FrequencyTable,
    pub homophone_mode: HomophoneMode,
    pub transforms: Vec<TransformStep>,
    pub casefold: bool,
    pub strip_spaces: bool,
}

impl Default for BundleOptions {
    fn default() -> Self {
        Self {
            width: 16,
            noise_bits: 4,
            rule: HomophoneRule::Rule,
            reference: FrequencyTable::tally(fixtures::CORPUS.as_bytes(), AlphabetPolicy::Letters),
            homophone_mode: HomophoneMode::Balanced,
            transforms: Vec::new(),
            casefold: false,
            strip_spaces: false,
        }
    }
}

fn byte_ids() -> impl Iterator<Item = SymbolId> {
    0..256
}

impl KeyBundle {
    /// A fresh bundle whose tables and seeds all derive from `seed`.
    pub fn generate(
        process: Process,
        seed: u64,
        opts: &BundleOptions,
    ) -> Result<Self, PipelineError> {
        let homophones = process
            .needs_homophones()
            .then(|| opts.rule.build(&opts.reference));
        let permutation = match (process, &homophones) {
            (Process::P2, _) => Some(LetterPermutation::random_letters(derive_seed(
                seed,
                "permutation",
            ))),
            (Process::P4, Some(h)) => {
                let ids: Vec<SymbolId> = h.symbols().collect();
                Some(LetterPermutation::random_over(
                    &ids,
                    derive_seed(seed, "permutation"),
                ))
            }
            _ => None,
        };
        let code_table = if process.needs_table() {
            let mut ids: Vec<SymbolId> = byte_ids().collect();
            if let Some(h) = &homophones {
                ids.extend(h.symbols().filter(|&s| s >= 256));
            }
            Some(CodeTable::generate_for(
                opts.width,
                &ids,
                derive_seed(seed, "table"),
                opts.noise_bits,
            )?)
        } else {
            None
        };
        let bundle = Self {
            process,
            code_table,
            homophones,
            homophone_mode: opts.homophone_mode,
            permutation,
            transforms: opts.transforms.clone(),
            noise_seed: derive_seed(seed, "noise"),
            homophone_seed: derive_seed(seed, "homophones"),
            casefold: opts.casefold,
            strip_spaces: opts.strip_spaces,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    /// Checks that exactly the components of the process are present.
    pub fn validate(&self) -> Result<(), PipelineError> {
        let check = |needed: bool, present: bool, what: &str| {
            if needed == present {
                Ok(())
            } else {
                Err(PipelineError::InvalidBundle {
                    process: self.process,
                    problem: if needed {
                        format!("missing {what}")
                    } else {
                        format!("unexpected {what}")
                    },
                })
            }
        };
        check(
            self.process.needs_table(),
            self.code_table.is_some(),
            "code table",
        )?;
        check(
            self.process.needs_homophones(),
            self.homophones.is_some(),
            "homophone table",
        )?;
        check(
            self.process.needs_permutation(),
            self.permutation.is_some(),
            "permutation",
        )?;
        Ok(())
    }

    /// The text that decoding will return for `text`.
    pub fn canonical_text(&self, text: &str) -> String {
        let mut s: String = if self.strip_spaces {
            text.chars().filter(|c| !c.is_ascii_whitespace()).collect()
        } else {
            text.to_string()
        };
        if self.casefold || self.process.needs_homophones() {
            s.make_ascii_lowercase();
        }
        s
    }

    fn symbols_of(&self, text: &str) -> Result<Vec<SymbolId>, PipelineError> {
        let text = self.canonical_text(text);
        let text = match (self.process, &self.permutation) {
            (Process::P2, Some(p)) => p.apply_text(&text)?,
            _ => text,
        };
        let Some(h) = &self.homophones else {
            return Ok(text.bytes().map(SymbolId::from).collect());
        };
        let symbols = h.normalize(&text, self.homophone_seed, self.homophone_mode)?;
        match (self.process, &self.permutation) {
            (Process::P4, Some(p)) => Ok(p.apply_all(&symbols)?),
            _ => Ok(symbols),
        }
    }

    fn text_of(&self, symbols: Vec<SymbolId>) -> Result<String, PipelineError> {
        let symbols = match (self.process, &self.permutation) {
            (Process::P4, Some(p)) => p.inverse().apply_all(&symbols)?,
            _ => symbols,
        };
        let text = match &self.homophones {
            Some(h) => h.denormalize(&symbols)?,
            None => {
                let bytes = symbols
                    .iter()
                    .map(|&s| u8::try_from(s).map_err(|_| HomophoneError::UnknownSymbol(s)))
                    .collect::<Result<Vec<u8>, _>>()?;
                String::from_utf8(bytes).map_err(|_| PipelineError::InvalidUtf8)?
            }
        };
        match (self.process, &self.permutation) {
            (Process::P2, Some(p)) => Ok(p.inverse().apply_text(&text)?),
            _ => Ok(text),
        }
    }

    /// Payload bits before framing.
    pub fn encode_bits(&self, text: &str) -> Result<BitString, PipelineError> {
        self.validate()?;
        let symbols = self.symbols_of(text)?;
        let bits = match &self.code_table {
            Some(t) => t.encode_symbols(&symbols, self.noise_seed)?,
            None => {
                let mut bits = BitString::with_capacity(symbols.len() * P3_ID_BITS);
                for &s in &symbols {
                    let code = BitString::from_u64(s as u64, P3_ID_BITS)
                        .map_err(|_| PipelineError::SymbolTooWide(s))?;
                    bits.extend_from(&code);
                }
                bits
            }
        };
        Ok(apply_chain(&self.transforms, &bits)?)
    }

    pub fn decode_bits(&self, bits: &BitString) -> Result<String, PipelineError> {
        self.validate()?;
        let bits = invert_chain(&self.transforms, bits)?;
        let symbols = match &self.code_table {
            Some(t) => t.decode_symbols(&bits)?,
            None => {
                let (groups, rest) = bitio::group(&bits, P3_ID_BITS);
                if !rest.is_empty() {
                    return Err(CodebookError::UnalignedLength {
                        bits: bits.len(),
                        width: P3_ID_BITS,
                    }
                    .into());
                }
                groups
                    .iter()
                    .map(|g| g.to_u64().expect("16 bits") as SymbolId)
                    .collect()
            }
        };
        self.text_of(symbols)
    }

    /// `WTC1` frame of the encoded text.
    pub fn encode(&self, text: &str) -> Result<Vec<u8>, PipelineError> {
        Ok(bitio::encode_frame(&self.encode_bits(text)?))
    }

    pub fn decode(&self, frame: &[u8]) -> Result<String, PipelineError> {
        self.decode_bits(&bitio::decode_frame(frame)?)
    }

    /// Canonical `WTKB1` text.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\nversion=1\nprocess={}\n", self.process);
        out.push_str(&format!("casefold={}\n", self.casefold as u8));
        out.push_str(&format!("strip_spaces={}\n", self.strip_spaces as u8));
        out.push_str(&format!("noise_seed={}\n", self.noise_seed));
        out.push_str(&format!("homophone_seed={}\n", self.homophone_seed));
        out.push_str(&format!("homophone_mode={}\n", self.homophone_mode));
        for t in &self.transforms {
            out.push_str(&format!("transform={t}\n"));
        }
        if let Some(h) = &self.homophones {
            h.write_lines(&mut out);
        }
        if let Some(p) = &self.permutation {
            out.push_str(&format!("perm_fingerprint=0x{:016x}\n", p.fingerprint()));
            p.write_lines(&mut out);
        }
        if let Some(t) = &self.code_table {
            t.write_fields(&mut out);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PipelineError> {
        let fields = keyfile::fields(text)?;
        let end = text.lines().count().max(1);
        let mut process = None;
        let mut version = None;
        let (mut casefold, mut strip_spaces) = (None, None);
        let (mut noise_seed, mut homophone_seed) = (None, None);
        let mut mode = None;
        let mut perm_fingerprint: Option<u64> = None;
        let mut transforms = Vec::new();
        let mut table = TableReader::default();
        let mut groups = GroupReader::default();
        let mut perms = PermReader::default();
        for f in &fields {
            match f.key {
                "version" => {
                    set_once(&mut version, (), f)?;
                    codebook::check_version(f)?;
                }
                "process" => set_once(
                    &mut process,
                    f.value.parse().map_err(|e| FormatError::new(f.line, e))?,
                    f,
                )?,
                "casefold" => set_once(&mut casefold, keyfile::parse_flag(f)?, f)?,
                "strip_spaces" => set_once(&mut strip_spaces, keyfile::parse_flag(f)?, f)?,
                "noise_seed" => set_once(&mut noise_seed, keyfile::parse_u64(f)?, f)?,
                "homophone_seed" => set_once(&mut homophone_seed, keyfile::parse_u64(f)?, f)?,
                "homophone_mode" => set_once(
                    &mut mode,
                    f.value.parse().map_err(|e| FormatError::new(f.line, e))?,
                    f,
                )?,
                "transform" => {
                    transforms.push(f.value.parse().map_err(|e| FormatError::new(f.line, e))?)
                }
                "perm_fingerprint" => set_once(&mut perm_fingerprint, keyfile::parse_u64(f)?, f)?,
                _ => {
                    let consumed = table.accept(f)? || groups.accept(f)? || perms.accept(f)?;
                    if !consumed {
                        return Err(
                            FormatError::new(f.line, format!("unknown field {:?}", f.key)).into(),
                        );
                    }
                }
            }
        }
        let process: Process = process.ok_or_else(|| FormatError::new(end, "missing process"))?;
        let fingerprint = perm_fingerprint.unwrap_or(0);
        // an identity permutation has a fingerprint line but no perm= lines
        let permutation = if perms.is_empty() && perm_fingerprint.is_some() {
            Some(LetterPermutation::from_pairs([], fingerprint)?)
        } else {
            perms.finish(fingerprint)?
        };
        let code_table = if table.is_empty() {
            None
        } else {
            Some(table.finish(end)?)
        };
        let bundle = Self {
            process,
            code_table,
            homophones: groups.finish(),
            homophone_mode: mode.unwrap_or_default(),
            permutation,
            transforms,
            noise_seed: noise_seed.unwrap_or(0),
            homophone_seed: homophone_seed.unwrap_or(0),
            casefold: casefold.unwrap_or(false),
            strip_spaces: strip_spaces.unwrap_or(false),
        };
        bundle.validate().map_err(|e| FormatError::new(end, e))?;
        Ok(bundle)
    }
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    field: &keyfile::Field<'_>,
) -> Result<(), FormatError> {
    if slot.replace(value).is_some() {
        Err(FormatError::new(
            field.line,
            format!("duplicate {} field", field.key),
        ))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::PANGRAM;
    use crate::transforms::{BoustroParams, SpliceParams};
    use proptest::prelude::*;

    fn bundle(process: Process, seed: u64) -> KeyBundle {
        KeyBundle::generate(process, seed, &BundleOptions::default()).unwrap()
    }

    #[test]
    fn p1_zeckendorf_table_example() {
        let ids: Vec<SymbolId> = byte_ids().collect();
        let b = KeyBundle {
            process: Process::P1,
            code_table: Some(CodeTable::zeckendorf(12, 4, &ids).unwrap()),
            homophones: None,
            homophone_mode: HomophoneMode::Balanced,
            permutation: None,
            transforms: vec![],
            noise_seed: 9,
            homophone_seed: 0,
            casefold: false,
            strip_spaces: false,
        };
        let bits = b.encode_bits("A").unwrap();
        assert_eq!(bits.len(), 16);
        assert_eq!(bits.slice(4, 16).to_string(), "000100010010");
        assert_eq!(b.decode(&b.encode("A").unwrap()).unwrap(), "A");
        assert_eq!(
            b.encode("").unwrap(),
            bitio::encode_frame(&BitString::new())
        );
    }

    #[test]
    fn identity_permutation_reduces_p2_to_p1() {
        let p1 = bundle(Process::P1, 5);
        let mut p2 = p1.clone();
        p2.process = Process::P2;
        p2.permutation = Some(LetterPermutation::identity());
        assert_eq!(p1.encode(PANGRAM).unwrap(), p2.encode(PANGRAM).unwrap());
    }

    #[test]
    fn p2_with_e_q_swap_and_wrong_key() {
        let mut b = bundle(Process::P2, 6);
        b.permutation = Some(LetterPermutation::swap_letters('e', 'q'));
        let frame = b.encode(PANGRAM).unwrap();
        assert_eq!(b.decode(&frame).unwrap(), PANGRAM);
        let mut wrong = b.clone();
        wrong.permutation = Some(LetterPermutation::random_letters(77));
        let text = wrong.decode(&frame).unwrap();
        let tally = |s: &str| FrequencyTable::tally(s.as_bytes(), AlphabetPolicy::Letters);
        assert_ne!(tally(&text), tally(PANGRAM));
    }

    #[test]
    fn p3_seeds_change_ciphertext_not_plaintext() {
        let a = bundle(Process::P3, 1);
        let mut b = a.clone();
        b.homophone_seed ^= 1;
        let (fa, fb) = (a.encode(PANGRAM).unwrap(), b.encode(PANGRAM).unwrap());
        assert_ne!(fa, fb);
        assert_eq!(a.decode(&fa).unwrap(), PANGRAM.to_ascii_lowercase());
        assert_eq!(a.decode(&fb).unwrap(), PANGRAM.to_ascii_lowercase());
        assert_eq!(
            bitio::decode_frame(&fa).unwrap().len(),
            PANGRAM.len() * P3_ID_BITS
        );
    }

    #[test]
    fn p4_length_and_round_trip_with_transforms() {
        let opts = BundleOptions {
            transforms: vec![
                TransformStep::Boustro(BoustroParams { start: 1, jump: 2 }),
                TransformStep::Splice(SpliceParams {
                    stride: 3,
                    offset: 4,
                    verify: true,
                }),
            ],
            ..BundleOptions::default()
        };
        let b = KeyBundle::generate(Process::P4, 3, &opts).unwrap();
        let bits = b.encode_bits(PANGRAM).unwrap();
        let n = 16 * PANGRAM.len();
        assert_eq!(bits.len(), n + n / 3);
        assert_eq!(b.decode_bits(&bits).unwrap(), PANGRAM.to_ascii_lowercase());
        assert_eq!(b.decode(&b.encode("").unwrap()).unwrap(), "");
        assert_eq!(b.encode(PANGRAM).unwrap(), b.encode(PANGRAM).unwrap());
    }

    #[test]
    fn preprocessing_flags() {
        let opts = BundleOptions {
            casefold: true,
            strip_spaces: true,
            ..BundleOptions::default()
        };
        let b = KeyBundle::generate(Process::P1, 2, &opts).unwrap();
        let out = b.decode(&b.encode(PANGRAM).unwrap()).unwrap();
        assert_eq!(out, "thequickbrownfoxjumpedlazilyoverthesleepydog.");
    }

    #[test]
    fn bundle_text_round_trips() {
        for p in Process::ALL {
            let b = bundle(p, 11);
            let text = b.to_text();
            assert_eq!(KeyBundle::from_text(&text).unwrap(), b, "{p}");
        }
        let mut b = bundle(Process::P2, 1);
        b.permutation = Some(LetterPermutation::identity());
        assert_eq!(KeyBundle::from_text(&b.to_text()).unwrap(), b);
    }

    fn format_line(text: &str) -> usize {
        match KeyBundle::from_text(text) {
            Err(PipelineError::Format(e)) => e.line,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn bundle_parse_errors() {
        let p4 = bundle(Process::P4, 2).to_text();
        let without_groups: String = p4
            .lines()
            .filter(|l| !l.starts_with("group="))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(format_line(&without_groups) > 0);
        let mut lines: Vec<&str> = p4.lines().collect();
        let g = lines.iter().position(|l| l.starts_with("group=")).unwrap();
        lines.insert(g + 1, lines[g]);
        assert_eq!(format_line(&lines.join("\n")), g + 2);
        assert_eq!(format_line("WTKB1\nversion=1\nprocess=p1\ncolour=red\n"), 4);
        assert_eq!(format_line("WTKB1\nversion=1\n"), 2);
        assert_eq!(format_line("WTKB1\nprocess=p9\n"), 2);
    }

    #[test]
    fn invalid_bundle_is_rejected_before_encoding() {
        let mut b = bundle(Process::P1, 1);
        b.process = Process::P4;
        assert!(matches!(
            b.encode("x"),
            Err(PipelineError::InvalidBundle { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn every_process_round_trips(text in "[ -~\n]{0,300}", seed in 0u64..1000, p in 0usize..4) {
            let b = bundle(Process::ALL[p], seed);
            let frame = b.encode(&text).unwrap();
            prop_assert_eq!(b.decode(&frame).unwrap(), b.canonical_text(&text));
        }
    }
}
