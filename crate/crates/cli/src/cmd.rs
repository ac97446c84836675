//! Subcommand handlers.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use wt_core::bitio::{self, BitString};
use wt_core::codebook::{count_tables, CodeTable};
use wt_core::cryptanalysis::{
    dp_segment, greedy_segment, rank_match_attack, run_experiment, score_grouped, ExperimentConfig,
};
use wt_core::fixtures;
use wt_core::freq::ReferenceDistribution;
use wt_core::freq::{
    benford_distance, benford_expected, first_digit_counts, AlphabetPolicy, FrequencyTable,
};
use wt_core::numerals::{
    default_prime_width, enumerate_representations, fib_weights, golden_numeral_decode,
    golden_numeral_encode, greedy_encode, phinary_decode, phinary_encode, prime_encode,
    prime_weights, weighted_decode, zeckendorf_encode, GoldenParseError, PhinaryNumeral,
    WeightVector,
};
use wt_core::pipeline::{BundleOptions, KeyBundle, Process};
use wt_core::transforms::{
    boustrophedon_bits, digit_shift, golden_splice, golden_unsplice, BoustroParams,
    LetterPermutation, SpliceParams,
};

use crate::io::{read_input, read_text, Sink};
use crate::{
    AttackCmd, BundleCmd, BundleGenArgs, CodebookCmd, Command, DecodeArgs, EncodeArgs,
    ExperimentArgs, FrameIo, HomophonesCmd, NumeralCmd, SpliceArgs, System, TallyArgs,
    TransformCmd, UsageError,
};

/// Widest Fibonacci weight vector whose weights fit in a u64.
const MAX_FIB_WIDTH: usize = 90;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Numeral(c) => numeral(c),
        Command::Tally(a) => tally(a),
        Command::Benford { file } => benford(file.as_deref()),
        Command::Codebook(c) => codebook(c),
        Command::Homophones(c) => homophones(c),
        Command::Transform(c) => transform(c),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Bundle(BundleCmd::Gen(a)) => bundle_gen(a),
        Command::Attack(c) => attack(c),
        Command::Experiment(a) => experiment(a),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn stdout() -> Sink {
    Sink::default()
}

fn parse_value(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| usage(format!("expected a nonnegative integer, got {s:?}")))
}

/// Fibonacci weights of the given width, or the fewest whose greedy
/// expansion reaches `n`.
fn fib_vector(n: u64, width: Option<usize>, doubled: bool) -> Result<WeightVector<u64>> {
    if let Some(w) = width {
        return Ok(fib_weights(w, doubled)?);
    }
    let full = fib_weights::<u64>(MAX_FIB_WIDTH, doubled)?;
    let w = full
        .as_slice()
        .iter()
        .take_while(|&&x| x <= n)
        .count()
        .max(1);
    Ok(fib_weights(w, doubled)?)
}

fn to_radix(mut n: u64, base: u32) -> String {
    let mut digits = Vec::new();
    loop {
        digits
            .push(std::char::from_digit((n % base as u64) as u32, base).expect("digit below base"));
        n /= base as u64;
        if n == 0 {
            break;
        }
    }
    digits.iter().rev().collect()
}

fn numeral(cmd: NumeralCmd) -> Result<()> {
    match cmd {
        NumeralCmd::Enc {
            system,
            width,
            little_endian,
            value,
        } => {
            let text = match system {
                System::Golden => {
                    let indices = value
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| {
                            usage(format!(
                                "expected comma-separated word indices, got {value:?}"
                            ))
                        })?;
                    golden_numeral_encode(&indices)?.to_string()
                }
                System::Phi => phinary_encode(parse_value(&value)? as i64)?.to_string(),
                System::Base(b) => to_radix(parse_value(&value)?, b),
                System::Fib => {
                    let n = parse_value(&value)?;
                    let w = fib_vector(n, width, false)?.width();
                    zeckendorf_encode(n, w)?.to_string()
                }
                System::FibDoubled => {
                    let n = parse_value(&value)?;
                    greedy_encode(n, &fib_vector(n, width, true)?)?.to_string()
                }
                System::Prime => {
                    let n = parse_value(&value)?;
                    prime_encode(n, width.unwrap_or_else(|| default_prime_width(n)))?.to_string()
                }
            };
            let text = if little_endian {
                text.chars().rev().collect()
            } else {
                text
            };
            stdout().write_text(&format!("{text}\n"))
        }
        NumeralCmd::Dec {
            system,
            little_endian,
            digits,
        } => {
            let digits: String = if little_endian {
                digits.chars().rev().collect()
            } else {
                digits
            };
            let out = match system {
                System::Phi => {
                    phinary_decode::<i64>(&digits.parse::<PhinaryNumeral>()?)?.to_string()
                }
                System::Base(b) => wt_core::numerals::digits_value::<u64>(&digits, b)?.to_string(),
                System::Golden => {
                    let bits: BitString = digits.parse()?;
                    let join =
                        |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                    match golden_numeral_decode(&bits) {
                        Ok(p) => join(&p),
                        Err(GoldenParseError::Ambiguous { parses, truncated }) => {
                            eprintln!(
                                "wt: ambiguous: {} parses{}",
                                parses.len(),
                                if truncated { " (truncated)" } else { "" }
                            );
                            parses
                                .iter()
                                .map(|p| join(p))
                                .collect::<Vec<_>>()
                                .join("\n")
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                System::Fib | System::FibDoubled | System::Prime => {
                    let bits: BitString = digits.parse()?;
                    let w = match system {
                        System::Prime => prime_weights::<u64>(bits.len())?,
                        _ => fib_weights::<u64>(bits.len(), system == System::FibDoubled)?,
                    };
                    weighted_decode(&bits, &w)?.to_string()
                }
            };
            stdout().write_text(&format!("{out}\n"))
        }
        NumeralCmd::Enum {
            system,
            width,
            limit,
            value,
        } => {
            let w = match system {
                System::Fib => fib_weights::<u64>(width, false)?,
                System::FibDoubled => fib_weights::<u64>(width, true)?,
                System::Prime => prime_weights::<u64>(width)?,
                _ => return Err(usage("enum works over fib, fib-paper or prime weights")),
            };
            let mut out = String::new();
            for r in enumerate_representations(value, &w, limit) {
                writeln!(out, "{r}")?;
            }
            stdout().write_text(&out)
        }
    }
}

fn symbol_label(policy: AlphabetPolicy, sym: u32) -> String {
    match policy {
        AlphabetPolicy::Letters => {
            char::from_u32(sym).map_or_else(|| sym.to_string(), String::from)
        }
        AlphabetPolicy::Bytes => match u8::try_from(sym) {
            Ok(b) if b.is_ascii_graphic() => (b as char).to_string(),
            _ => format!("0x{sym:02x}"),
        },
        AlphabetPolicy::Groups(k) => {
            BitString::from_u64(sym as u64, k).map_or_else(|_| sym.to_string(), |b| b.to_string())
        }
    }
}

fn tally(args: TallyArgs) -> Result<()> {
    let data = read_input(args.file.as_deref())?;
    let table = match args.alphabet {
        AlphabetPolicy::Groups(k) => FrequencyTable::tally_bits(&bitio::bits_of_bytes(&data), k),
        p => FrequencyTable::tally(&data, p),
    };
    let mut out = String::new();
    for (sym, n) in table.ranked() {
        writeln!(out, "{}\t{n}", symbol_label(args.alphabet, sym))?;
    }
    if let Some(size) = args.stats {
        let s = table.stats::<f64>(size)?;
        writeln!(out, "# total\t{}", table.total())?;
        writeln!(out, "# mean\t{:.4}", s.mean)?;
        writeln!(out, "# stddev\t{:.4}", s.stddev)?;
        let ex: Vec<String> = s
            .exceptional
            .iter()
            .map(|&x| symbol_label(args.alphabet, x))
            .collect();
        writeln!(out, "# exceptional\t{}", ex.join(" "))?;
    }
    stdout().write_text(&out)
}

fn benford(file: Option<&Path>) -> Result<()> {
    let text = read_text(file)?;
    let counts = first_digit_counts(text.split_whitespace())?;
    let total: u64 = counts.iter().sum();
    let mut out = String::from("digit\tcount\tobserved\texpected\n");
    for (i, &c) in counts.iter().enumerate() {
        let d = i as u32 + 1;
        let observed = if total == 0 {
            0.0
        } else {
            c as f64 / total as f64
        };
        writeln!(
            out,
            "{d}\t{c}\t{observed:.4}\t{:.4}",
            benford_expected::<f64>(d)?
        )?;
    }
    let distance: f64 = benford_distance(text.split_whitespace())?;
    writeln!(out, "# distance\t{distance:.4}")?;
    stdout().write_text(&out)
}

fn codebook(cmd: CodebookCmd) -> Result<()> {
    match cmd {
        CodebookCmd::Gen {
            width,
            symbols,
            noise,
            seed,
            output,
        } => {
            let table = CodeTable::generate(width, symbols, seed, noise)?;
            Sink::new(output, false).write_text(&table.to_text())
        }
        CodebookCmd::Count { width, symbols } => {
            let c = count_tables(width, symbols)?;
            stdout().write_text(&format!("{}\n", c.count))
        }
        CodebookCmd::Check { file } => {
            let text = read_text(Some(&file))?;
            let table = CodeTable::from_text(&text).with_context(|| file.display().to_string())?;
            stdout().write_text(&format!(
                "ok\twidth={}\tsymbols={}\tnoise_bits={}\tfingerprint=0x{:016x}\n",
                table.width(),
                table.len(),
                table.noise_bits(),
                table.fingerprint()
            ))
        }
    }
}

fn reference_table(path: Option<&Path>) -> Result<FrequencyTable> {
    Ok(match path {
        Some(p) => FrequencyTable::tally(&read_input(Some(p))?, AlphabetPolicy::Letters),
        None => BundleOptions::default().reference,
    })
}

fn homophones(cmd: HomophonesCmd) -> Result<()> {
    let HomophonesCmd::Gen {
        mode,
        reference,
        replace,
        seed,
        process,
        output,
    } = cmd;
    if !matches!(process, Process::P3 | Process::P4) {
        return Err(usage("homophone bundles are p3 or p4"));
    }
    let opts = BundleOptions {
        rule: mode,
        reference: reference_table(reference.as_deref())?,
        homophone_mode: replace,
        ..BundleOptions::default()
    };
    let bundle = KeyBundle::generate(process, seed, &opts)?;
    Sink::new(output, false).write_text(&bundle.to_text())
}

fn bundle_gen(a: BundleGenArgs) -> Result<()> {
    let opts = BundleOptions {
        width: a.width,
        noise_bits: a.noise,
        rule: a.rule,
        reference: reference_table(a.reference.as_deref())?,
        homophone_mode: a.replace,
        transforms: a.transform,
        casefold: a.casefold,
        strip_spaces: a.strip_spaces,
    };
    let bundle = KeyBundle::generate(a.process, a.seed, &opts)?;
    Sink::new(a.output, false).write_text(&bundle.to_text())
}

fn read_frame(path: Option<&Path>) -> Result<BitString> {
    Ok(bitio::decode_frame(&read_input(path)?)?)
}

fn frame_transform(io: FrameIo, f: impl FnOnce(&BitString) -> Result<BitString>) -> Result<()> {
    let bits = read_frame(io.input.as_deref())?;
    let out = f(&bits)?;
    Sink::new(io.output, io.binary_stdout).write_binary(&bitio::encode_frame(&out))
}

fn splice_params(a: &SpliceArgs) -> SpliceParams {
    SpliceParams {
        stride: a.stride,
        offset: a.offset,
        verify: a.verify,
    }
}

fn transform(cmd: TransformCmd) -> Result<()> {
    match cmd {
        TransformCmd::Boustro { start, jump, io } => frame_transform(io, |b| {
            Ok(boustrophedon_bits(b, BoustroParams { start, jump }))
        }),
        TransformCmd::Splice(a) => {
            let p = splice_params(&a);
            frame_transform(a.io, |b| Ok(golden_splice(b, p)?))
        }
        TransformCmd::Unsplice(a) => {
            let p = splice_params(&a);
            frame_transform(a.io, |b| Ok(golden_unsplice(b, p)?))
        }
        TransformCmd::Digits {
            shift,
            input,
            output,
        } => {
            let text = read_text(input.as_deref())?;
            Sink::new(output, false).write_text(&digit_shift(&text, shift))
        }
        TransformCmd::Permute {
            seed,
            swap,
            inverse,
            input,
            output,
        } => {
            let perm = match (seed, swap) {
                (Some(s), None) => LetterPermutation::random_letters(s),
                (None, Some(pair)) => match pair.chars().collect::<Vec<_>>()[..] {
                    [a, b] if a.is_ascii_alphabetic() && b.is_ascii_alphabetic() => {
                        LetterPermutation::swap_letters(a, b)
                    }
                    _ => return Err(usage(format!("--swap takes two letters, got {pair:?}"))),
                },
                _ => return Err(usage("permute needs --seed or --swap")),
            };
            let perm = if inverse { perm.inverse() } else { perm };
            let text = read_text(input.as_deref())?;
            Sink::new(output, false).write_text(&perm.apply_text(&text)?)
        }
    }
}

fn load_bundle(path: &Path) -> Result<KeyBundle> {
    let text = read_text(Some(path))?;
    KeyBundle::from_text(&text).with_context(|| format!("bundle {}", path.display()))
}

fn encode(a: EncodeArgs) -> Result<()> {
    let bundle = load_bundle(&a.bundle)?;
    if let Some(p) = a.process {
        if p != bundle.process {
            return Err(usage(format!(
                "--process {p} does not match the {} bundle",
                bundle.process
            )));
        }
    }
    let text = read_text(a.io.input.as_deref())?;
    let frame = bundle.encode(&text)?;
    Sink::new(a.io.output, a.io.binary_stdout).write_binary(&frame)
}

fn decode(a: DecodeArgs) -> Result<()> {
    let bundle = load_bundle(&a.bundle)?;
    let frame = read_input(a.input.as_deref())?;
    let text = bundle.decode(&frame)?;
    Sink::new(a.output, false).write_text(&text)
}

fn attack(cmd: AttackCmd) -> Result<()> {
    match cmd {
        AttackCmd::Freq {
            group_bits,
            plain,
            frame,
        } => {
            if !(1..=32).contains(&group_bits) {
                return Err(usage(format!(
                    "--group-bits must be 1..=32, got {group_bits}"
                )));
            }
            let bits = read_frame(frame.as_deref())?;
            let reference = ReferenceDistribution::english();
            let table = FrequencyTable::tally_bits(&bits, group_bits);
            let report = match plain {
                Some(p) => {
                    let letters: Vec<char> = fixtures::letters_only(&read_text(Some(&p))?)
                        .chars()
                        .collect();
                    if letters.is_empty() || bits.is_empty() {
                        bail!("nothing to score: empty plaintext or ciphertext");
                    }
                    score_grouped(&bits, group_bits, &letters, &reference)?
                }
                None => rank_match_attack(&table, &reference),
            };
            let mut out = String::new();
            for (sym, n) in table.ranked() {
                let guess = report.guess(sym).map_or("-".to_string(), String::from);
                writeln!(
                    out,
                    "{}\t{n}\t{guess}",
                    symbol_label(AlphabetPolicy::Groups(group_bits), sym)
                )?;
            }
            if let Some(r) = report.recovery_rate {
                writeln!(out, "# recovery\t{r:.4}")?;
            }
            stdout().write_text(&out)
        }
        AttackCmd::Dict {
            wordlist,
            dp,
            trace,
            text,
        } => {
            let dict: BTreeSet<String> = match wordlist {
                Some(p) => fixtures::parse_wordlist(&read_text(Some(&p))?),
                None => fixtures::wordlist(),
            };
            let letters: String = read_text(text.as_deref())?
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect();
            let greedy = greedy_segment(&letters, &dict);
            let mut out = String::new();
            if trace {
                for d in &greedy.decisions {
                    writeln!(
                        out,
                        "{}\t{}",
                        if d.accepted { "accept" } else { "reject" },
                        d.candidate
                    )?;
                }
            }
            writeln!(out, "greedy\t{}", greedy.words.join(" "))?;
            writeln!(out, "residue\t{}", greedy.residue)?;
            if dp {
                let seg = dp_segment(&letters, &dict, 1);
                writeln!(out, "parses\t{}", seg.count)?;
                if let Some(w) = seg.witness() {
                    writeln!(out, "witness\t{}", w.join(" "))?;
                }
                writeln!(out, "dp-residue\t{}", seg.residue)?;
            }
            stdout().write_text(&out)
        }
    }
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let corpus = match &a.corpus {
        Some(p) => read_text(Some(p))?,
        None => fixtures::CORPUS.to_string(),
    };
    let bundle = a.bundle.as_deref().map(load_bundle).transpose()?;
    if let Some(b) = &bundle {
        if b.process != Process::P4 {
            return Err(usage(format!(
                "experiment needs a p4 bundle, got {}",
                b.process
            )));
        }
    }
    let config = ExperimentConfig {
        seed: a.seed,
        widths: a.widths,
        bundle,
        ..ExperimentConfig::default()
    };
    let report = run_experiment(&corpus, &config)?;
    stdout().write_text(&report.to_string())
}
