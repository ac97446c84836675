//! Sums of distinct primes, with 1 admitted as a weight.

use num_traits::NumCast;

use crate::bitio::BitString;

use super::{NumeralError, WeightInt, WeightVector};

fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return vec![];
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `1, 2, 3, 5, 7, 11, ...` truncated to `width` weights.
pub fn prime_weights<T: WeightInt>(width: usize) -> Result<WeightVector<T>, NumeralError> {
    if width == 0 {
        return Err(NumeralError::ZeroWidth);
    }
    // The width-th prime is below width·(ln width + ln ln width) + 10 for all width.
    let w = width as f64;
    let bound = (w * (w.ln().max(1.0) + w.ln().max(1.0).ln().max(1.0)) + 10.0) as usize;
    let weights = std::iter::once(1usize)
        .chain(primes_up_to(bound))
        .take(width)
        .map(|p| <T as NumCast>::from(p).ok_or(NumeralError::IntegerOverflow))
        .collect::<Result<Vec<T>, _>>()?;
    Ok(WeightVector::new(weights))
}

/// Number of prime weights not exceeding `n`; the natural digit count for `n`.
pub fn default_prime_width<T: WeightInt>(n: T) -> usize {
    let n = n.to_usize().unwrap_or(usize::MAX);
    1 + primes_up_to(n.max(1)).len()
}

/// Distinct weights from `1, 2, 3, 5, 7, ...` summing to `n`, largest first.
///
/// Weights strictly smaller than `n` are used whenever that is possible;
/// otherwise (`n` = 1 or 2) the weight equal to `n` is allowed. The search is
/// greedy largest-first with backtracking.
pub fn prime_terms<T: WeightInt>(n: T) -> Result<Vec<T>, NumeralError> {
    let value = n.to_u128().unwrap_or(u128::MAX);
    let target = n
        .to_usize()
        .filter(|&v| v >= 1)
        .ok_or(NumeralError::Unrepresentable(value))?;
    let pool: Vec<usize> = std::iter::once(1).chain(primes_up_to(target)).collect();
    let below: Vec<usize> = pool.iter().copied().filter(|&p| p < target).collect();
    let found = search(target, &below).or_else(|| search(target, &pool));
    let terms = found.ok_or(NumeralError::Unrepresentable(value))?;
    terms
        .into_iter()
        .map(|p| <T as NumCast>::from(p).ok_or(NumeralError::IntegerOverflow))
        .collect()
}

/// Depth-first over candidates in descending order; `ascending` is sorted.
fn search(target: usize, ascending: &[usize]) -> Option<Vec<usize>> {
    // prefix[i] = sum of ascending[..i]: the most the first i weights can add up to
    let mut prefix = vec![0usize; ascending.len() + 1];
    for (i, &w) in ascending.iter().enumerate() {
        prefix[i + 1] = prefix[i] + w;
    }
    let mut chosen = Vec::new();
    if descend(target, ascending.len(), ascending, &prefix, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn descend(
    rest: usize,
    upto: usize,
    w: &[usize],
    prefix: &[usize],
    chosen: &mut Vec<usize>,
) -> bool {
    if rest == 0 {
        return true;
    }
    if prefix[upto] < rest {
        return false;
    }
    for i in (0..upto).rev() {
        if prefix[i + 1] < rest {
            // nothing at or below i can reach the remainder
            return false;
        }
        if w[i] <= rest {
            chosen.push(w[i]);
            if descend(rest - w[i], i, w, prefix, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Digits of `n` over the first `width` prime weights.
pub fn prime_encode<T: WeightInt>(n: T, width: usize) -> Result<BitString, NumeralError> {
    let terms = prime_terms(n)?;
    let w = prime_weights::<T>(width)?;
    let mut bits = vec![false; width];
    for t in terms {
        let pos = w
            .as_slice()
            .iter()
            .position(|&x| x == t)
            .ok_or(NumeralError::Overflow(width))?;
        bits[width - 1 - pos] = true;
    }
    Ok(BitString::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerals::weighted_decode;

    /// Is `n` a sum of distinct elements of `set`? Plain subset-sum table.
    fn representable(n: usize, set: &[usize]) -> bool {
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for &s in set {
            for v in (s..=n).rev() {
                if reach[v - s] {
                    reach[v] = true;
                }
            }
        }
        reach[n]
    }

    #[test]
    fn weights_prefix() {
        assert_eq!(
            prime_weights::<u32>(8).unwrap().as_slice(),
            &[1, 2, 3, 5, 7, 11, 13, 17]
        );
        assert_eq!(prime_weights::<u64>(1000).unwrap().as_slice()[999], 7907);
    }

    #[test]
    fn examples() {
        assert_eq!(prime_terms(1u32).unwrap(), vec![1]);
        assert_eq!(prime_terms(4u32).unwrap(), vec![3, 1]);
        assert_eq!(prime_terms(17u32).unwrap(), vec![13, 3, 1]);
        assert_eq!(prime_terms(2u32).unwrap(), vec![2]);
        assert_eq!(prime_terms(0u32), Err(NumeralError::Unrepresentable(0)));
    }

    #[test]
    fn encode_over_weight_vector() {
        let bits = prime_encode(17u32, 7).unwrap();
        assert_eq!(bits.to_string(), "1000101");
        let w = prime_weights::<u32>(7).unwrap();
        assert_eq!(weighted_decode(&bits, &w).unwrap(), 17);
        assert_eq!(prime_encode(17u32, 6), Err(NumeralError::Overflow(6)));
        assert_eq!(default_prime_width(17u32), 8);
    }

    #[test]
    fn all_to_2000_sum_back_and_match_oracle() {
        for n in 1..=2000usize {
            let terms = prime_terms(n as u64).unwrap();
            assert_eq!(terms.iter().sum::<u64>(), n as u64);
            let mut d = terms.clone();
            d.dedup();
            assert_eq!(d.len(), terms.len(), "distinct for {n}");
            let mut pool = vec![1];
            pool.extend(primes_up_to(n));
            pool.retain(|&p| p < n);
            let strictly_below = terms.iter().all(|&t| (t as usize) < n);
            assert_eq!(strictly_below, representable(n, &pool), "n = {n}");
        }
    }
}
