use crate::bitio::BitString;

use super::{NumeralError, WeightInt};

/// Positive weights in non-decreasing order; index 0 is the smallest weight
/// (the rightmost digit when displayed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector<T> {
    weights: Vec<T>,
}

impl<T: WeightInt> WeightVector<T> {
    /// # Panics
    /// If a weight is zero or the sequence decreases.
    pub fn new(weights: Vec<T>) -> Self {
        assert!(
            weights.iter().all(|w| !w.is_zero()),
            "weights must be positive"
        );
        assert!(
            weights.windows(2).all(|p| p[0] <= p[1]),
            "weights must be non-decreasing"
        );
        Self { weights }
    }

    pub fn width(&self) -> usize {
        self.weights.len()
    }

    /// Smallest first.
    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    /// Weight of display position `i` (0 = leftmost, largest).
    pub fn at_display(&self, i: usize) -> T {
        self.weights[self.weights.len() - 1 - i]
    }

    /// Sum of all weights, if it fits in `T`.
    pub fn total(&self) -> Option<T> {
        self.weights
            .iter()
            .try_fold(T::zero(), |acc, &w| acc.checked_add(&w))
    }
}

/// The first `width` Fibonacci weights.
///
/// Canonical mode gives distinct weights `1, 2, 3, 5, 8, ...`; doubled-one mode keeps
/// both unit Fibonacci numbers, `1, 1, 2, 3, 5, ...`.
pub fn fib_weights<T: WeightInt>(
    width: usize,
    doubled_one: bool,
) -> Result<WeightVector<T>, NumeralError> {
    if width == 0 {
        return Err(NumeralError::ZeroWidth);
    }
    let one = T::one();
    let (mut a, mut b) = if doubled_one {
        (one, one)
    } else {
        (one, one + one)
    };
    let mut weights = Vec::with_capacity(width);
    for _ in 0..width {
        weights.push(a);
        let next = a.checked_add(&b).ok_or(NumeralError::IntegerOverflow)?;
        a = b;
        b = next;
    }
    Ok(WeightVector { weights })
}

/// Largest-weight-first greedy digits of `n` over `w`.
pub fn greedy_encode<T: WeightInt>(n: T, w: &WeightVector<T>) -> Result<BitString, NumeralError> {
    let mut rest = n;
    let bits: BitString = (0..w.width())
        .map(|i| {
            let weight = w.at_display(i);
            if weight <= rest {
                rest = rest - weight;
                true
            } else {
                false
            }
        })
        .collect();
    if rest.is_zero() {
        Ok(bits)
    } else {
        Err(NumeralError::Overflow(w.width()))
    }
}

/// Standard-form (Zeckendorf) digits of `n` in `width` canonical Fibonacci
/// weights. The result never contains two adjacent ones.
pub fn zeckendorf_encode<T: WeightInt>(n: T, width: usize) -> Result<BitString, NumeralError> {
    let bits = greedy_encode(n, &fib_weights(width, false)?)?;
    // greedy only doubles up a pair when n reaches the next Fibonacci number
    if bits.has_adjacent_ones() {
        return Err(NumeralError::Overflow(width));
    }
    Ok(bits)
}

/// Dot product of the digits with the weights.
pub fn weighted_decode<T: WeightInt>(
    bits: &BitString,
    w: &WeightVector<T>,
) -> Result<T, NumeralError> {
    if bits.len() != w.width() {
        return Err(NumeralError::LengthMismatch {
            expected: w.width(),
            got: bits.len(),
        });
    }
    bits.iter()
        .enumerate()
        .filter(|&(_, b)| b)
        .try_fold(T::zero(), |acc, (i, _)| acc.checked_add(&w.at_display(i)))
        .ok_or(NumeralError::IntegerOverflow)
}

/// Every digit pattern over `w` that decodes to `n`, in lexicographic order,
/// stopping after `limit` patterns.
pub fn enumerate_representations<T: WeightInt>(
    n: T,
    w: &WeightVector<T>,
    limit: usize,
) -> Vec<BitString> {
    // suffix[i]: sum of display positions i.. (saturating; only used for pruning)
    let width = w.width();
    let mut suffix = vec![T::zero(); width + 1];
    for i in (0..width).rev() {
        suffix[i] = suffix[i + 1].saturating_add(w.at_display(i));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(width);
    enumerate_from(0, n, w, &suffix, limit, &mut current, &mut out);
    out
}

fn enumerate_from<T: WeightInt>(
    pos: usize,
    rest: T,
    w: &WeightVector<T>,
    suffix: &[T],
    limit: usize,
    current: &mut Vec<bool>,
    out: &mut Vec<BitString>,
) {
    if out.len() >= limit || suffix[pos] < rest {
        return;
    }
    if pos == w.width() {
        if rest.is_zero() {
            out.push(BitString::from_bits(current.clone()));
        }
        return;
    }
    current.push(false);
    enumerate_from(pos + 1, rest, w, suffix, limit, current, out);
    current.pop();
    let weight = w.at_display(pos);
    if weight <= rest {
        current.push(true);
        enumerate_from(pos + 1, rest - weight, w, suffix, limit, current, out);
        current.pop();
    }
}
