//! Frequency-confounding encodings and the attacks that measure them.
//!
//! The crate is layered bottom-up:
//!
//! * [`bitio`]: bit strings, MSB-first packing and the `WTC1` ciphertext frame.
//! * [`numerals`]: Fibonacci/Zeckendorf, base-φ, prime-sum, positional and
//!   golden-sequence numerals.
//! * [`codebook`]: seeded fixed-width code tables with noise bits.
//! * [`freq`]: tallies, frequency statistics, the English reference
//!   distribution and Benford's law.
//! * [`homophones`]: identity-symbol tables that flatten letter frequencies.
//! * [`transforms`]: boustrophedon bit reversal, golden-sequence splicing,
//!   digit shifting and letter permutations.
//! * [`pipeline`]: the four composed processes and the `WTKB1` key bundle.
//! * [`cryptanalysis`]: rank-matching and dictionary attacks plus the
//!   experiment runner.
//!
//! Numeric layers are generic over their scalar type; the aliases below fix
//! the types used by the pipeline and the command line.

pub mod bitio;
pub mod codebook;
pub mod cryptanalysis;
pub mod fixtures;
pub mod freq;
pub mod homophones;
mod keyfile;
pub mod numerals;
pub mod pipeline;
pub mod rng;
pub mod transforms;

pub use bitio::BitString;

/// Symbol identifiers: bytes are `0..=255`, identity symbols start at 256.
pub type SymbolId = u32;

/// Weight vectors over 64-bit unsigned integers.
pub type Weights = numerals::WeightVector<u64>;
/// Exact `a + b·φ` values over 64-bit signed integers.
pub type PhiValue = numerals::ZPhi<i64>;
/// Frequency statistics in double precision.
pub type Stats = freq::FrequencyStats<f64>;
/// English letter probabilities in double precision.
pub type Reference = freq::ReferenceDistribution<f64>;
