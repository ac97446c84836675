use num_traits::Float;

use super::FreqError;

/// `log10(1 + 1/d)` for `d` in `1..=9`.
pub fn benford_expected<F: Float>(d: u32) -> Result<F, FreqError> {
    if !(1..=9).contains(&d) {
        return Err(FreqError::DigitOutOfRange(d));
    }
    let d = F::from(d).expect("float");
    Ok((F::one() + d.recip()).log10())
}

/// First nonzero digit of a decimal literal such as `"0.0042"` or `"-3.1e5"`.
pub fn leading_digit(number: &str) -> Option<u32> {
    let mantissa = number.trim().split(['e', 'E']).next().unwrap_or_default();
    mantissa
        .chars()
        .filter_map(|c| c.to_digit(10))
        .find(|&d| d != 0)
}

/// Count of numbers per leading digit, index 0 holding digit 1.
pub fn first_digit_counts<'a, I>(numbers: I) -> Result<[u64; 9], FreqError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut counts = [0u64; 9];
    for n in numbers {
        let d = leading_digit(n).ok_or_else(|| FreqError::NoLeadingDigit(n.to_string()))?;
        counts[d as usize - 1] += 1;
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(FreqError::EmptyInput);
    }
    Ok(counts)
}

/// Total-variation distance between the observed leading digits and Benford's law.
pub fn benford_distance<'a, F, I>(numbers: I) -> Result<F, FreqError>
where
    F: Float,
    I: IntoIterator<Item = &'a str>,
{
    let counts = first_digit_counts(numbers)?;
    let total = F::from(counts.iter().sum::<u64>()).expect("float");
    let half = F::from(0.5).expect("float");
    (1..=9u32).try_fold(F::zero(), |acc, d| {
        let observed = F::from(counts[d as usize - 1]).expect("float") / total;
        Ok(acc + half * (observed - benford_expected::<F>(d)?).abs())
    })
}
