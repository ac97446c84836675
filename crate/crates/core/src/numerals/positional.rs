use super::{NumeralError, WeightInt};

/// Positional value of `digits` in `base` (2..=36, digits `0-9a-z`).
pub fn digits_value<T: WeightInt>(digits: &str, base: u32) -> Result<T, NumeralError> {
    if !(2..=36).contains(&base) {
        return Err(NumeralError::InvalidBase(base));
    }
    if digits.is_empty() {
        return Err(NumeralError::Syntax("empty digit string".into()));
    }
    let b = T::from(base).ok_or(NumeralError::IntegerOverflow)?;
    digits.chars().try_fold(T::zero(), |acc, c| {
        let d = c
            .to_digit(36)
            .filter(|&d| d < base)
            .ok_or(NumeralError::DigitOutOfRange { digit: c, base })?;
        acc.checked_mul(&b)
            .and_then(|v| v.checked_add(&T::from(d).expect("digit below 36")))
            .ok_or(NumeralError::IntegerOverflow)
    })
}
