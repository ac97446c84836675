//! `wt`: command-line front end for wt-core.
//!
//! Exit status: 0 success, 1 usage error, 2 data or format error,
//! 3 verification failure (keystream mismatch, non-zero padding, unknown
//! codeword).

mod cmd;
mod io;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use wt_core::bitio::{BitError, FrameError};
use wt_core::codebook::CodebookError;
use wt_core::freq::AlphabetPolicy;
use wt_core::homophones::HomophoneMode;
use wt_core::pipeline::PipelineError;
use wt_core::pipeline::{HomophoneRule, Process};
use wt_core::transforms::TransformError;
use wt_core::transforms::TransformStep;

/// A command line that parsed but makes no sense.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(
    name = "wt",
    version,
    about = "Alternate binary numerals, code tables, homophones and frequency attacks"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode, decode and enumerate numerals.
    #[command(subcommand)]
    Numeral(NumeralCmd),
    /// Count symbols in a file.
    Tally(TallyArgs),
    /// Compare leading digits with Benford's law.
    Benford {
        /// Whitespace-separated decimal numbers (default: stdin).
        file: Option<PathBuf>,
    },
    /// Generate, count and check code tables.
    #[command(subcommand)]
    Codebook(CodebookCmd),
    /// Build identity-symbol tables.
    #[command(subcommand)]
    Homophones(HomophonesCmd),
    /// Bit, digit and letter transforms.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Encode text to a WTC1 frame with a key bundle.
    Encode(EncodeArgs),
    /// Decode a WTC1 frame with a key bundle.
    Decode(DecodeArgs),
    /// Generate key bundles.
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// Attacks that see only ciphertext.
    #[command(subcommand)]
    Attack(AttackCmd),
    /// Measure the rank attack against substitution, P3 and P4.
    Experiment(ExperimentArgs),
}

/// Numeral system: fib, fib-paper, phi, prime, golden, base:B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    /// Zeckendorf digits over weights 1, 2, 3, 5, ...
    Fib,
    /// Greedy digits over weights 1, 1, 2, 3, ...
    FibDoubled,
    /// Golden ratio base.
    Phi,
    /// Sums of distinct primes and 1.
    Prime,
    /// Concatenated golden words, given as comma-separated word indices.
    Golden,
    /// Ordinary positional base.
    Base(u32),
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "fib" => Self::Fib,
            "fib-paper" => Self::FibDoubled,
            "phi" => Self::Phi,
            "prime" => Self::Prime,
            "golden" => Self::Golden,
            "base" => Self::Base(10),
            _ => match s.strip_prefix("base:").map(str::parse) {
                Some(Ok(b)) if (2..=36).contains(&b) => Self::Base(b),
                _ => {
                    return Err(format!(
                        "unknown system {s:?} (fib, fib-paper, phi, prime, golden, base:B)"
                    ))
                }
            },
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum NumeralCmd {
    /// Value to digits.
    Enc {
        #[arg(long)]
        system: System,
        /// Digit count (default: the fewest that fit).
        #[arg(long)]
        width: Option<usize>,
        /// Print the smallest weight first.
        #[arg(long)]
        little_endian: bool,
        value: String,
    },
    /// Digits to value.
    Dec {
        #[arg(long)]
        system: System,
        /// Digits are written smallest weight first.
        #[arg(long)]
        little_endian: bool,
        digits: String,
    },
    /// Every digit pattern of a value over a weight vector.
    Enum {
        #[arg(long)]
        system: System,
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        value: u64,
    },
}

#[derive(Debug, Args)]
pub struct TallyArgs {
    /// letters, bytes or groups:K
    #[arg(long, default_value = "letters")]
    pub alphabet: AlphabetPolicy,
    /// Also print mean, standard deviation and exceptional symbols over this many symbols.
    #[arg(long)]
    pub stats: Option<usize>,
    /// Input file (default: stdin).
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CodebookCmd {
    /// Seeded random table in WTKB1 form.
    Gen {
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        symbols: u32,
        #[arg(long, default_value_t = 0)]
        noise: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Number of distinct injective tables.
    Count {
        #[arg(long)]
        width: u32,
        #[arg(long)]
        symbols: u64,
    },
    /// Parse and validate a WTKB1 codebook.
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum HomophonesCmd {
    /// Key bundle with a homophone table built from a reference text.
    Gen {
        #[arg(long, default_value = "rule")]
        mode: HomophoneRule,
        /// Reference text to tally (default: the bundled corpus).
        #[arg(long = "ref")]
        reference: Option<PathBuf>,
        /// How letters are spread over their group: balanced, uniform or round-robin.
        #[arg(long, default_value = "balanced")]
        replace: HomophoneMode,
        #[arg(long)]
        seed: u64,
        /// p3 or p4.
        #[arg(long, default_value = "p3")]
        process: Process,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FrameIo {
    /// Input frame (default: stdin).
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Output frame (default: stdout, with --binary-stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub binary_stdout: bool,
}

#[derive(Debug, Args)]
pub struct SpliceArgs {
    #[arg(long, default_value_t = 3)]
    pub stride: usize,
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
    /// Check removed bits against the keystream.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub io: FrameIo,
}

#[derive(Debug, Subcommand)]
pub enum TransformCmd {
    /// Reverse the bits of selected bytes of a frame.
    Boustro {
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value_t = 0)]
        jump: usize,
        #[command(flatten)]
        io: FrameIo,
    },
    /// Insert golden-sequence bits into a frame.
    Splice(SpliceArgs),
    /// Remove golden-sequence bits from a frame.
    Unsplice(SpliceArgs),
    /// Add K to every decimal digit of a text.
    Digits {
        #[arg(long)]
        shift: u32,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a letter permutation to a text.
    Permute {
        /// Seeded random permutation of a..z.
        #[arg(long, conflicts_with = "swap")]
        seed: Option<u64>,
        /// Exchange two letters, e.g. `eq`.
        #[arg(long)]
        swap: Option<String>,
        /// Apply the inverse permutation.
        #[arg(long)]
        inverse: bool,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Expected process; must match the bundle.
    #[arg(long)]
    pub process: Option<Process>,
    #[arg(long)]
    pub bundle: PathBuf,
    #[command(flatten)]
    pub io: FrameIo,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BundleCmd {
    /// Fresh bundle with every table derived from the seed.
    Gen(BundleGenArgs),
}

#[derive(Debug, Args)]
pub struct BundleGenArgs {
    #[arg(long)]
    pub process: Process,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub width: usize,
    #[arg(long, default_value_t = 4)]
    pub noise: usize,
    #[arg(long, default_value = "rule")]
    pub rule: HomophoneRule,
    #[arg(long = "ref")]
    pub reference: Option<PathBuf>,
    #[arg(long, default_value = "balanced")]
    pub replace: HomophoneMode,
    /// Transform step, e.g. "boustro start=0 jump=1" or "splice stride=3 offset=0 verify=1"; repeatable.
    #[arg(long)]
    pub transform: Vec<TransformStep>,
    #[arg(long)]
    pub casefold: bool,
    #[arg(long)]
    pub strip_spaces: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AttackCmd {
    /// Rank-match attack on a frame tallied in fixed-width groups.
    Freq {
        #[arg(long, default_value_t = 8)]
        group_bits: usize,
        /// Known plaintext for scoring the guess.
        #[arg(long)]
        plain: Option<PathBuf>,
        /// Frame file (default: stdin).
        frame: Option<PathBuf>,
    },
    /// Split a text with its spaces removed back into words.
    Dict {
        /// One word per line (default: the bundled list).
        #[arg(long)]
        wordlist: Option<PathBuf>,
        /// Also count every full segmentation.
        #[arg(long)]
        dp: bool,
        /// Print each accept/reject decision of the greedy pass.
        #[arg(long)]
        trace: bool,
        /// Text file (default: stdin).
        text: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Corpus (default: the bundled corpus).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// P4 bundle to attack (default: generated from --seed).
    #[arg(long)]
    pub bundle: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Group widths to try, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "8,12,16")]
    pub widths: Vec<usize>,
}

/// Maps an error to the documented exit status.
fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    let bit = |e: &BitError| matches!(e, BitError::NonZeroPadding(_));
    let frame = |e: &FrameError| matches!(e, FrameError::Bits(b) if bit(b));
    let transform = |e: &TransformError| matches!(e, TransformError::KeystreamMismatch { .. });
    let codebook = |e: &CodebookError| matches!(e, CodebookError::UnknownCodeword { .. });
    let verification = err.chain().any(|e| {
        e.downcast_ref::<BitError>().is_some_and(bit)
            || e.downcast_ref::<FrameError>().is_some_and(frame)
            || e.downcast_ref::<TransformError>().is_some_and(transform)
            || e.downcast_ref::<CodebookError>().is_some_and(codebook)
            || e.downcast_ref::<PipelineError>().is_some_and(|p| match p {
                PipelineError::Frame(f) => frame(f),
                PipelineError::Transform(t) => transform(t),
                PipelineError::Codebook(c) => codebook(c),
                _ => false,
            })
    });
    if verification {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match cmd::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("wt: {err:#}");
            ExitCode::from(exit_status(&err))
        }
    }
}
