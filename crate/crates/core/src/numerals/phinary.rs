//! Golden ratio base, with exact arithmetic in Z[φ].
//!
//! A value `a + b·φ` is held as an integer pair; `φ^k = F(k-1) + F(k)·φ` for
//! every integer `k`, using `F(-n) = (-1)^(n+1)·F(n)`. No floating point is
//! involved anywhere, so the integer encodings are exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{NumeralError, PairInt};

/// `a + b·φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZPhi<T> {
    pub a: T,
    pub b: T,
}

impl<T: PairInt> ZPhi<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn from_int(n: T) -> Self {
        Self::new(n, T::zero())
    }

    /// `φ^k` for any integer exponent.
    pub fn phi_pow(k: i32) -> Result<Self, NumeralError> {
        Ok(Self::new(fib_signed(k - 1)?, fib_signed(k)?))
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, NumeralError> {
        Ok(Self::new(
            self.a
                .checked_add(&rhs.a)
                .ok_or(NumeralError::IntegerOverflow)?,
            self.b
                .checked_add(&rhs.b)
                .ok_or(NumeralError::IntegerOverflow)?,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, NumeralError> {
        Ok(Self::new(
            self.a
                .checked_sub(&rhs.a)
                .ok_or(NumeralError::IntegerOverflow)?,
            self.b
                .checked_sub(&rhs.b)
                .ok_or(NumeralError::IntegerOverflow)?,
        ))
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of `a + b·φ`.
    ///
    /// Twice the value is `x + y·√5` with `x = 2a + b`, `y = b`; mixed signs
    /// are settled by comparing `x²` with `5y²` (never equal unless both are 0).
    pub fn signum(&self) -> Result<Ordering, NumeralError> {
        let two = T::one() + T::one();
        let x = two
            .checked_mul(&self.a)
            .and_then(|v| v.checked_add(&self.b))
            .ok_or(NumeralError::IntegerOverflow)?;
        let y = self.b;
        let zero = T::zero();
        Ok(match (x.cmp(&zero), y.cmp(&zero)) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
            (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
                Ordering::Greater
            }
            (x_sign, _) => {
                let x2 = x.checked_mul(&x).ok_or(NumeralError::IntegerOverflow)?;
                let five = two + two + T::one();
                let y2 = y
                    .checked_mul(&y)
                    .and_then(|v| v.checked_mul(&five))
                    .ok_or(NumeralError::IntegerOverflow)?;
                let x_dominates = x2 > y2;
                match (x_sign, x_dominates) {
                    (Ordering::Greater, true) | (Ordering::Less, false) => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
        })
    }

    /// Exact comparison of two values.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, NumeralError> {
        self.checked_sub(*other)?.signum()
    }
}

/// Fibonacci numbers extended to negative indices.
fn fib_signed<T: PairInt>(k: i32) -> Result<T, NumeralError> {
    let n = k.unsigned_abs();
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 0..n {
        let next = a.checked_add(&b).ok_or(NumeralError::IntegerOverflow)?;
        a = b;
        b = next;
    }
    // a = F(n)
    if k < 0 && n.is_multiple_of(2) {
        Ok(T::zero() - a)
    } else {
        Ok(a)
    }
}

/// A finite base-φ digit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhinaryNumeral {
    /// Most significant first; the last digit has weight φ⁰.
    pub integer_digits: Vec<bool>,
    /// First digit has weight φ⁻¹.
    pub fraction_digits: Vec<bool>,
}

impl PhinaryNumeral {
    /// Exact `a + b·φ` value of the digits.
    pub fn value<T: PairInt>(&self) -> Result<ZPhi<T>, NumeralError> {
        let top = self.integer_digits.len() as i32 - 1;
        let integer = self
            .integer_digits
            .iter()
            .enumerate()
            .map(|(i, &d)| (top - i as i32, d));
        let fraction = self
            .fraction_digits
            .iter()
            .enumerate()
            .map(|(i, &d)| (-(i as i32) - 1, d));
        integer
            .chain(fraction)
            .filter(|&(_, d)| d)
            .try_fold(ZPhi::zero(), |acc, (k, _)| {
                acc.checked_add(ZPhi::phi_pow(k)?)
            })
    }

    /// No two adjacent ones, including across the radix point.
    pub fn is_standard(&self) -> bool {
        let all: Vec<bool> = self
            .integer_digits
            .iter()
            .chain(&self.fraction_digits)
            .copied()
            .collect();
        !all.windows(2).any(|w| w[0] && w[1])
    }
}

impl fmt::Display for PhinaryNumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digit = |d: &bool| if *d { '1' } else { '0' };
        if self.integer_digits.is_empty() {
            f.write_str("0")?;
        }
        for d in &self.integer_digits {
            write!(f, "{}", digit(d))?;
        }
        if !self.fraction_digits.is_empty() {
            f.write_str(".")?;
            for d in &self.fraction_digits {
                write!(f, "{}", digit(d))?;
            }
        }
        Ok(())
    }
}

impl FromStr for PhinaryNumeral {
    type Err = NumeralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| -> Result<Vec<bool>, NumeralError> {
            part.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(NumeralError::Syntax(format!("unexpected {c:?} in {s:?}"))),
                })
                .collect()
        };
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(NumeralError::Syntax("empty numeral".into()));
        }
        Ok(Self {
            integer_digits: parse(int_part)?,
            fraction_digits: parse(frac_part)?,
        })
    }
}

/// Standard-form base-φ digits of a nonnegative integer.
///
/// Greedy expansion: repeatedly take the largest power of φ not exceeding
/// the remainder. Integers always terminate; greedy choice never produces
/// two adjacent ones.
pub fn phinary_encode<T: PairInt>(n: T) -> Result<PhinaryNumeral, NumeralError> {
    if n < T::zero() {
        return Err(NumeralError::Syntax(format!("negative value {n}")));
    }
    if n.is_zero() {
        return Ok(PhinaryNumeral {
            integer_digits: vec![false],
            fraction_digits: vec![],
        });
    }
    let mut rest = ZPhi::from_int(n);
    let mut top = 0;
    while ZPhi::<T>::phi_pow(top + 1)?.cmp_exact(&rest)? != Ordering::Greater {
        top += 1;
    }
    let mut integer_digits = Vec::with_capacity(top as usize + 1);
    let mut fraction_digits = Vec::new();
    let mut k = top;
    // termination guard; integer expansions stay far above it
    let floor = -(2 * top + 8);
    while k >= 0 || !rest.signum()?.is_eq() {
        if k < floor {
            unreachable!("greedy base-φ expansion of an integer did not terminate");
        }
        let p = ZPhi::phi_pow(k)?;
        let take = p.cmp_exact(&rest)? != Ordering::Greater;
        if take {
            rest = rest.checked_sub(p)?;
        }
        if k >= 0 {
            integer_digits.push(take);
        } else {
            fraction_digits.push(take);
        }
        k -= 1;
    }
    Ok(PhinaryNumeral {
        integer_digits,
        fraction_digits,
    })
}

/// Exact value of a digit string; fails with [`NumeralError::NotInteger`]
/// when the value has an irrational part.
pub fn phinary_decode<T: PairInt>(p: &PhinaryNumeral) -> Result<T, NumeralError> {
    let v = p.value::<T>()?;
    if v.is_integer() {
        Ok(v.a)
    } else {
        Err(NumeralError::NotInteger {
            a: v.a.to_i128().unwrap_or(i128::MAX),
            b: v.b.to_i128().unwrap_or(i128::MAX),
        })
    }
}
