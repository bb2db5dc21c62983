//! Base-b digit machinery over arbitrary-precision integers.
//!
//! Digits are always most-significant first. Zero is rejected at the
//! [`BaseNumber`] boundary; the generic helpers assume `n >= 1`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{CommaError, Result};

/// A numeral base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radix(u64);

impl Radix {
    /// Largest supported base. Keeps `b^3` and every period sum inside a `u64`.
    pub const MAX: u64 = 1 << 16;

    pub const BINARY: Radix = Radix(2);
    pub const TERNARY: Radix = Radix(3);
    pub const DECIMAL: Radix = Radix(10);

    pub fn new(base: u64) -> Result<Self> {
        if (2..=Self::MAX).contains(&base) {
            Ok(Radix(base))
        } else {
            Err(CommaError::InvalidBase { got: base })
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn squared(self) -> u64 {
        self.0 * self.0
    }

    #[inline]
    pub fn cubed(self) -> u64 {
        self.0 * self.0 * self.0
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Unsigned integer arithmetic needed by the steppers and the jump engine.
///
/// Implemented for `u128` (the fast path used while values are small) and
/// [`BigUint`]. The `u128` implementation panics on overflow; callers check
/// [`Natural::has_headroom`] before growing a value.
pub trait Natural: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn from_u64(v: u64) -> Self;
    fn from_biguint(v: &BigUint) -> Option<Self>;
    fn to_biguint(&self) -> BigUint;
    fn approx_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn rem_u64(&self, m: u64) -> u64;
    fn add_u64(&mut self, v: u64);
    fn add_nat(&mut self, other: &Self);
    fn checked_sub_nat(&self, other: &Self) -> Option<Self>;
    fn mul_u64(&self, v: u64) -> Self;
    fn div_u64(&self, v: u64) -> Self;
    fn div_nat(&self, other: &Self) -> Self;
    fn pow_u64(base: u64, exp: u32) -> Self;
    /// `floor(log_b(self))` for `self >= 1`.
    fn ilog(&self, base: u64) -> u32;
    /// Whether `self * b^3` still fits, i.e. one more region of growth is safe.
    fn has_headroom(&self, base: u64) -> bool;

    fn one() -> Self {
        Self::from_u64(1)
    }

    fn cmp_u64(&self, v: u64) -> std::cmp::Ordering {
        self.cmp(&Self::from_u64(v))
    }

    fn as_u64(&self) -> Option<u64> {
        ToPrimitive::to_u64(&self.to_biguint())
    }
}

impl Natural for u128 {
    #[inline]
    fn from_u64(v: u64) -> Self {
        v as u128
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u128()
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
    fn approx_f64(&self) -> f64 {
        *self as f64
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn rem_u64(&self, m: u64) -> u64 {
        (*self % m as u128) as u64
    }
    #[inline]
    fn add_u64(&mut self, v: u64) {
        *self += v as u128;
    }
    #[inline]
    fn add_nat(&mut self, other: &Self) {
        *self += *other;
    }
    #[inline]
    fn checked_sub_nat(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    #[inline]
    fn mul_u64(&self, v: u64) -> Self {
        *self * v as u128
    }
    #[inline]
    fn div_u64(&self, v: u64) -> Self {
        *self / v as u128
    }
    #[inline]
    fn div_nat(&self, other: &Self) -> Self {
        *self / *other
    }
    fn pow_u64(base: u64, exp: u32) -> Self {
        (base as u128).pow(exp)
    }
    #[inline]
    fn ilog(&self, base: u64) -> u32 {
        u128::ilog(*self, base as u128)
    }
    #[inline]
    fn has_headroom(&self, base: u64) -> bool {
        // Leave one extra factor b so region tops and jump targets never overflow.
        self.checked_mul((base as u128).pow(4)).is_some()
    }
    #[inline]
    fn cmp_u64(&self, v: u64) -> std::cmp::Ordering {
        self.cmp(&(v as u128))
    }
    fn as_u64(&self) -> Option<u64> {
        u64::try_from(*self).ok()
    }
}

impl Natural for BigUint {
    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }
    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn rem_u64(&self, m: u64) -> u64 {
        ToPrimitive::to_u64(&(self % m)).expect("remainder below a u64 modulus")
    }
    fn add_u64(&mut self, v: u64) {
        *self += v;
    }
    fn add_nat(&mut self, other: &Self) {
        *self += other;
    }
    fn checked_sub_nat(&self, other: &Self) -> Option<Self> {
        if self >= other {
            Some(self - other)
        } else {
            None
        }
    }
    fn mul_u64(&self, v: u64) -> Self {
        self * v
    }
    fn div_u64(&self, v: u64) -> Self {
        self / v
    }
    fn div_nat(&self, other: &Self) -> Self {
        self / other
    }
    fn pow_u64(base: u64, exp: u32) -> Self {
        BigUint::from(base).pow(exp)
    }
    fn ilog(&self, base: u64) -> u32 {
        debug_assert!(!Zero::is_zero(self));
        let estimate = ((self.bits() - 1) as f64 / (base as f64).log2()).floor() as u32;
        let mut e = estimate.saturating_sub(1);
        let b = BigUint::from(base);
        let mut p = b.pow(e);
        while &p > self {
            e -= 1;
            p /= &b;
        }
        loop {
            let next = &p * &b;
            if &next > self {
                return e;
            }
            p = next;
            e += 1;
        }
    }
    fn has_headroom(&self, _base: u64) -> bool {
        true
    }
    fn as_u64(&self) -> Option<u64> {
        ToPrimitive::to_u64(self)
    }
}

/// Place value of the leading digit, `b^(m-1)` for an `m`-digit number.
pub fn place_value<N: Natural>(n: &N, radix: Radix) -> N {
    N::pow_u64(radix.get(), n.ilog(radix.get()))
}

/// Number of base-b digits of `n >= 1`.
pub fn digit_count<N: Natural>(n: &N, radix: Radix) -> u32 {
    n.ilog(radix.get()) + 1
}

/// The leading digit δ(n) of `n >= 1`.
pub fn leading_digit<N: Natural>(n: &N, radix: Radix) -> u64 {
    let unit = place_value(n, radix);
    n.div_nat(&unit).as_u64().expect("leading digit below the base")
}

#[inline]
pub fn trailing_digit<N: Natural>(n: &N, radix: Radix) -> u64 {
    n.rem_u64(radix.get())
}

/// Digits of `n >= 1`, most significant first.
pub fn digits_of(n: &BigUint, radix: Radix) -> Vec<u64> {
    let b = radix.get();
    if b <= 256 {
        return n.to_radix_be(b as u32).into_iter().map(u64::from).collect();
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    let divisor = BigUint::from(b);
    while !Zero::is_zero(&rest) {
        let (q, r) = rest.div_rem(&divisor);
        digits.push(ToPrimitive::to_u64(&r).expect("digit below the base"));
        rest = q;
    }
    digits.reverse();
    digits
}

/// Inverse of [`digits_of`]. Digits must lie in `[0, b-1]`.
pub fn from_digits(digits: &[u64], radix: Radix) -> BigUint {
    let b = radix.get();
    digits.iter().fold(BigUint::zero(), |acc, &d| {
        debug_assert!(d < b);
        acc * b + d
    })
}

/// Whether `n` is a power `b^i` (`i >= 0`) of the base.
pub fn is_power_of<N: Natural>(n: &N, radix: Radix) -> bool {
    !n.is_zero() && place_value(n, radix) == *n
}

/// A positive integer paired with the base it is read in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseNumber {
    value: BigUint,
    radix: Radix,
}

impl BaseNumber {
    pub fn new(value: impl Into<BigUint>, base: u64) -> Result<Self> {
        Self::with_radix(value.into(), Radix::new(base)?)
    }

    pub fn with_radix(value: BigUint, radix: Radix) -> Result<Self> {
        if Zero::is_zero(&value) {
            return Err(CommaError::Zero);
        }
        Ok(BaseNumber { value, radix })
    }

    pub fn from_digits(digits: &[u64], base: u64) -> Result<Self> {
        let radix = Radix::new(base)?;
        if let Some(&bad) = digits.iter().find(|&&d| d >= base) {
            return Err(CommaError::InvalidDigit { digit: bad, base });
        }
        Self::with_radix(from_digits(digits, radix), radix)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn base(&self) -> u64 {
        self.radix.get()
    }

    pub fn digits(&self) -> Vec<u64> {
        digits_of(&self.value, self.radix)
    }

    pub fn digit_count(&self) -> u32 {
        digit_count(&self.value, self.radix)
    }

    pub fn leading_digit(&self) -> u64 {
        leading_digit(&self.value, self.radix)
    }

    pub fn trailing_digit(&self) -> u64 {
        trailing_digit(&self.value, self.radix)
    }

    /// Plain base-b digit string. Bases up to 36 use `0-9a-z`; larger bases
    /// print decimal digit values separated by `:`.
    pub fn to_digit_string(&self) -> String {
        radix_string(&self.value, self.radix)
    }
}

/// Base-b digit string of any value (including zero).
pub fn radix_string(value: &BigUint, radix: Radix) -> String {
    if Zero::is_zero(value) {
        return "0".to_owned();
    }
    let digits = digits_of(value, radix);
    if radix.get() <= 36 {
        digits
            .iter()
            .map(|&d| std::char::from_digit(d as u32, 36).expect("digit below 36"))
            .collect()
    } else {
        digits.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
    }
}

impl fmt::Display for BaseNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `b^e` as a `BigUint`.
pub fn power(radix: Radix, exp: u32) -> BigUint {
    BigUint::from(radix.get()).pow(exp)
}
