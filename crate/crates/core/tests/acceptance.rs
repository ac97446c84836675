//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use wt_core::bitio::{self, BitString};
use wt_core::codebook::count_tables;
use wt_core::cryptanalysis::{dp_segment, greedy_segment, run_experiment, Case, ExperimentConfig};
use wt_core::fixtures;
use wt_core::freq::{benford_expected, AlphabetPolicy, FrequencyStats, FrequencyTable};
use wt_core::homophones::{HomophoneMode, HomophoneTable};
use wt_core::numerals::{
    digits_value, enumerate_representations, fib_weights, golden_numeral_decode, golden_sequence,
    golden_word, phinary_decode, phinary_encode, weighted_decode, zeckendorf_encode,
    GoldenParseError,
};
use wt_core::pipeline::{BundleOptions, KeyBundle, Process};
use wt_core::rng::SplitMix64;
use wt_core::transforms::{
    boustrophedon, golden_splice, golden_unsplice, BoustroParams, SpliceParams, TransformError,
};
use wt_core::SymbolId;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!(
            "took {:.2}s, limit {limit_s}s",
            elapsed.as_secs_f64()
        ))
    }
}

fn c01_phinary_table() -> Outcome {
    let expected = [
        "1",
        "10.01",
        "100.01",
        "101.01",
        "1000.1001",
        "1010.0001",
        "10000.0001",
        "10001.0001",
        "10010.0101",
        "10100.0101",
    ];
    let start = Instant::now();
    let got: Vec<String> = (1..=10i64)
        .map(|n| phinary_encode(n).unwrap().to_string())
        .collect();
    within(start.elapsed(), 1.0)?;
    let bad: Vec<_> = got
        .iter()
        .zip(expected)
        .enumerate()
        .filter(|(_, (g, e))| g != e)
        .collect();
    check(
        bad.is_empty(),
        format!("10/10 strings match; mismatches {bad:?}"),
    )
}

fn c02_positional() -> Outcome {
    let mut bad = Vec::new();
    for b in 2..=10u32 {
        if digits_value::<u64>("11", b).ok() != Some(b as u64 + 1) {
            bad.push(b);
        }
    }
    if digits_value::<u64>("11", 16).ok() != Some(17) {
        bad.push(16);
    }
    check(
        bad.is_empty(),
        format!("\"11\" in bases 2..=10 and 16; wrong bases {bad:?}"),
    )
}

fn c03_pangram_tally() -> Outcome {
    let t = FrequencyTable::tally(fixtures::PANGRAM.as_bytes(), AlphabetPolicy::Letters);
    let (e, o, l) = (
        t.count('E' as SymbolId),
        t.count('O' as SymbolId),
        t.count('L' as SymbolId),
    );
    let pct: f64 = t.percentage('E' as SymbolId);
    check(
        e == 6 && o == 4 && l == 3 && t.total() == 44 && (pct - 600.0 / 44.0).abs() < 1e-12,
        format!("E={e} O={o} L={l} total={} E%={pct:.4}", t.total()),
    )
}

fn c04_abstract_stats() -> Outcome {
    let text = fixtures::abstract_letters(fixtures::ABSTRACT_SEED);
    let t = FrequencyTable::tally(text.as_bytes(), AlphabetPolicy::Letters);
    let s: FrequencyStats<f64> = t.stats(26).map_err(|e| e.to_string())?;
    let e_pct: f64 = t.percentage('E' as SymbolId);
    let required: BTreeSet<SymbolId> = "ETOASN".chars().map(|c| c as SymbolId).collect();
    let exceptional: BTreeSet<SymbolId> = s.exceptional.iter().copied().collect();
    check(
        t.top() == Some('E' as SymbolId)
            && (e_pct - 12.1).abs() <= 1.0
            && s.mean == 100.0 / 26.0
            && (s.stddev - 3.4).abs() <= 0.5
            && required.is_subset(&exceptional),
        format!(
            "E {e_pct:.2}% (12.1 ± 1.0), mean {:.4}%, stddev {:.3}% (3.4 ± 0.5), exceptional {}",
            s.mean,
            s.stddev,
            exceptional
                .iter()
                .map(|&c| char::from_u32(c).unwrap())
                .collect::<String>()
        ),
    )
}

fn c05_flattening() -> Outcome {
    let reference = fixtures::abstract_letter_table();
    let table = HomophoneTable::build_rule_table(&reference);
    let text = fixtures::abstract_letters(fixtures::ABSTRACT_SEED);
    let (mut worst_sd, mut worst_max) = (0f64, 0f64);
    for seed in 0..200 {
        let symbols = table
            .normalize(&text, seed, HomophoneMode::Balanced)
            .map_err(|e| e.to_string())?;
        let tally = table.tally(&symbols);
        let s: FrequencyStats<f64> = tally
            .stats(table.alphabet_size())
            .map_err(|e| e.to_string())?;
        if s.mean != 100.0 / 47.0 {
            return Err(format!("seed {seed}: mean {}", s.mean));
        }
        worst_sd = worst_sd.max(s.stddev);
        worst_max = worst_max.max(tally.percentage(tally.top().unwrap()));
    }
    check(
        table.alphabet_size() == 47 && worst_sd <= 1.2 && worst_max <= 4.0,
        format!(
            "{} symbols, 200 seeds: max stddev {worst_sd:.3}% (≤ 1.2), max frequency {worst_max:.3}% (≤ 4.0)",
            table.alphabet_size()
        ),
    )
}

fn c06_zeckendorf() -> Outcome {
    let start = Instant::now();
    let w = fib_weights::<u64>(25, false).map_err(|e| e.to_string())?;
    for n in 0..=100_000u64 {
        let bits = zeckendorf_encode(n, 25).map_err(|e| e.to_string())?;
        if bits.has_adjacent_ones() || weighted_decode(&bits, &w).map_err(|e| e.to_string())? != n {
            return Err(format!("n = {n}: {bits}"));
        }
    }
    let w13 = fib_weights::<u64>(13, false).map_err(|e| e.to_string())?;
    for n in 0..=500u64 {
        let standard: Vec<BitString> = enumerate_representations(n, &w13, usize::MAX)
            .into_iter()
            .filter(|b| !b.has_adjacent_ones())
            .collect();
        if standard.len() != 1 {
            return Err(format!("n = {n}: {} standard forms", standard.len()));
        }
    }
    let fits = zeckendorf_encode(255u64, 12)
        .map(|b| b.len() == 12)
        .unwrap_or(false);
    within(start.elapsed(), 10.0)?;
    check(
        fits,
        format!("round trip 0..=100000, unique standard form 0..=500, 255 in 12 digits: {fits}"),
    )
}

fn c07_phinary_exact() -> Outcome {
    for n in 0..=10_000i64 {
        let p = phinary_encode(n).map_err(|e| e.to_string())?;
        if phinary_decode::<i64>(&p).map_err(|e| e.to_string())? != n || !p.is_standard() {
            return Err(format!("n = {n}: {p}"));
        }
    }
    Ok("decode(encode(n)) = n for 0..=10000 in exact a + bφ arithmetic".into())
}

fn c08_golden_sequence() -> Outcome {
    let prefix = golden_sequence(13).to_string();
    let fib: Vec<usize> = std::iter::successors(Some((1usize, 2usize)), |&(a, b)| Some((b, a + b)))
        .map(|(a, _)| a)
        .take(20)
        .collect();
    let lengths_ok = (1..=20).all(|k| golden_word(k).len() == fib[k - 1]);
    check(
        prefix == "1011010110110" && lengths_ok,
        format!("prefix {prefix}, |S_k| = F(k) for k ≤ 20: {lengths_ok}"),
    )
}

fn c09_golden_ambiguity() -> Outcome {
    let s: BitString = "101".parse().unwrap();
    match golden_numeral_decode(&s) {
        Err(GoldenParseError::Ambiguous { parses, .. }) => check(
            parses.len() == 2,
            format!("\"101\" has {} parses: {parses:?}", parses.len()),
        ),
        other => Err(format!("expected two parses, got {other:?}")),
    }
}

fn random_bits(rng: &mut SplitMix64, max_bytes: u64) -> BitString {
    let n = rng.below(max_bytes * 8 + 1) as usize;
    (0..n).map(|_| rng.next_bit()).collect()
}

fn c10_transforms() -> Outcome {
    let mut rng = SplitMix64::new(10);
    for i in 0..1000 {
        let len = rng.below(257) as usize;
        let data: Vec<u8> = (0..len).map(|_| rng.next_u64() as u8).collect();
        let p = BoustroParams {
            start: rng.below(16) as usize,
            jump: rng.below(8) as usize,
        };
        if boustrophedon(&boustrophedon(&data, p), p) != data {
            return Err(format!("boustrophedon input {i} is not restored"));
        }
    }
    let mut cases = 0;
    for stride in 1..=8 {
        for offset in 0..=12 {
            let x = random_bits(&mut rng, 4096);
            let p = SpliceParams {
                stride,
                offset,
                verify: true,
            };
            let y = golden_splice(&x, p).map_err(|e| e.to_string())?;
            if golden_unsplice(&y, p).map_err(|e| e.to_string())? != x {
                return Err(format!(
                    "splice stride {stride} offset {offset} not restored"
                ));
            }
            cases += 1;
        }
    }
    let abc = bitio::bits_of_bytes(b"ABC");
    let spliced = golden_splice(
        &abc,
        SpliceParams {
            stride: 3,
            offset: 0,
            verify: true,
        },
    )
    .unwrap();
    let wrong = golden_unsplice(
        &spliced,
        SpliceParams {
            stride: 3,
            offset: 1,
            verify: true,
        },
    );
    check(
        matches!(wrong, Err(TransformError::KeystreamMismatch { .. })),
        format!(
            "1000 boustrophedon involutions, {cases} splice round trips, wrong offset -> {wrong:?}"
        ),
    )
}

fn random_text(rng: &mut SplitMix64) -> String {
    let n = rng.below(2049) as usize;
    (0..n)
        .map(|_| match rng.below(20) {
            0 => '\n',
            1..=4 => ' ',
            _ => (b' ' + 1 + rng.below(94) as u8) as char,
        })
        .collect()
}

fn c11_pipeline() -> Outcome {
    let mut rng = SplitMix64::new(11);
    let texts: Vec<String> = (0..500).map(|_| random_text(&mut rng)).collect();
    let mut trips = 0;
    for process in Process::ALL {
        for seed in 0..10 {
            let b = KeyBundle::generate(process, seed, &BundleOptions::default())
                .map_err(|e| e.to_string())?;
            for (i, t) in texts.iter().enumerate() {
                let frame = b.encode(t).map_err(|e| e.to_string())?;
                if b.decode(&frame).map_err(|e| e.to_string())? != b.canonical_text(t) {
                    return Err(format!("{process} seed {seed} text {i} not restored"));
                }
                trips += 1;
            }
            if b.encode(&texts[0]).unwrap() != b.encode(&texts[0]).unwrap() {
                return Err(format!("{process} seed {seed}: frames differ between runs"));
            }
        }
    }
    Ok(format!(
        "{trips} round trips over P1-P4, 500 texts x 10 seeds, frames deterministic"
    ))
}

fn c12_cryptanalysis() -> Outcome {
    let start = Instant::now();
    let first = run_experiment(fixtures::CORPUS, &ExperimentConfig::default())
        .map_err(|e| e.to_string())?;
    let sub = first.case(Case::Substitution).unwrap();
    let p4 = first.case(Case::P4).unwrap();
    let sub_ok = sub.best() >= 0.60;
    let p4_ok = p4.by_width.iter().all(|&(_, r)| r <= 0.20);
    let mut ordered = 0;
    for seed in 0..100 {
        let cfg = ExperimentConfig {
            seed,
            ..ExperimentConfig::default()
        };
        let r = run_experiment(fixtures::CORPUS, &cfg).map_err(|e| e.to_string())?;
        if r.case(Case::P4).unwrap().best() <= r.case(Case::Substitution).unwrap().best() {
            ordered += 1;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} letters; substitution {:.3} (target ≥ 0.60: {}), P4 by width {:?} (≤ 0.20: {}), P4 ≤ substitution in {ordered}/100, {:.1}s",
        first.letters,
        sub.best(),
        if sub_ok { "met" } else { "missed" },
        p4.by_width.iter().map(|&(w, r)| format!("{w}:{r:.3}")).collect::<Vec<_>>(),
        if p4_ok { "met" } else { "missed" },
        elapsed.as_secs_f64()
    );
    check(
        sub_ok && p4_ok && ordered == 100 && elapsed.as_secs_f64() < 60.0,
        detail,
    )
}

fn c13_benford() -> Outcome {
    let p1: f64 = benford_expected(1).map_err(|e| e.to_string())?;
    let sum: f64 = (1..=9).map(|d| benford_expected::<f64>(d).unwrap()).sum();
    check(
        (p1 - std::f64::consts::LOG10_2).abs() <= 5e-6 && (sum - 1.0).abs() <= 1e-12,
        format!("P(1) = {p1:.6}, sum = {sum:.15}"),
    )
}

fn c14_count_tables() -> Outcome {
    for w in 0..=8u32 {
        for k in 0..=(1u64 << w) {
            let oracle = (0..k).fold(BigUint::from(1u32), |acc, i| acc * ((1u64 << w) - i));
            if count_tables(w, k).map_err(|e| e.to_string())?.count != oracle {
                return Err(format!("({w}, {k})"));
            }
        }
    }
    let c = count_tables(4, 3).map_err(|e| e.to_string())?.count;
    check(
        c == BigUint::from(3360u32),
        format!("all widths ≤ 8 match; (4, 3) = {c}"),
    )
}

fn c15_dictionary() -> Outcome {
    let stripped = fixtures::letters_only(fixtures::PANGRAM);
    let g = greedy_segment(&stripped, &fixtures::wordlist());
    let first: Vec<&str> = g.words.iter().take(4).map(String::as_str).collect();
    let d = dp_segment("overthe", &fixtures::toy_dictionary(), 10);
    check(
        first == ["the", "quick", "brown", "fox"] && d.count == 2,
        format!("greedy {first:?}, \"overthe\" parses {:?}", d.parses),
    )
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("base-phi table for 1..10", c01_phinary_table),
        ("\"11\" across bases", c02_positional),
        ("pangram tally", c03_pangram_tally),
        ("26-letter tally statistics", c04_abstract_stats),
        ("homophone flattening", c05_flattening),
        ("Zeckendorf properties", c06_zeckendorf),
        ("base-phi exactness", c07_phinary_exact),
        ("golden sequence", c08_golden_sequence),
        ("golden numeral ambiguity", c09_golden_ambiguity),
        ("transform round trips", c10_transforms),
        ("pipeline round trips", c11_pipeline),
        ("rank attack differential", c12_cryptanalysis),
        ("Benford expectation", c13_benford),
        ("table counts", c14_count_tables),
        ("dictionary segmentation", c15_dictionary),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
