//! Scalar abstraction shared by every module.
//!
//! All algorithms are written against [`Scalar`]; the exact instantiation used
//! throughout the toolkit is [`Rational`] (arbitrary precision). Fixed-width
//! ratios and `f64` also satisfy the bound, which is handy for quick
//! experiments, but only the exact type is used for any certified result.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Ordered field element the piecewise-linear machinery runs over.
pub trait Scalar:
    Clone + PartialOrd + fmt::Debug + fmt::Display + Num + Signed + ToPrimitive + Send + Sync
{
}

impl<T> Scalar for T where
    T: Clone + PartialOrd + fmt::Debug + fmt::Display + Num + Signed + ToPrimitive + Send + Sync
{
}

pub(crate) fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

pub(crate) fn half<T: Scalar>() -> T {
    T::one() / two::<T>()
}

pub(crate) fn from_usize<T: Scalar>(n: usize) -> T {
    // Binary expansion keeps this O(log n) for arbitrary scalar types.
    let mut acc = T::zero();
    let mut bit = T::one();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + bit.clone();
        }
        bit = bit.clone() + bit;
        n >>= 1;
    }
    acc
}

/// Total comparison for scalars; panics only on unordered values (NaN).
pub(crate) fn cmp<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).expect("scalar values must be totally ordered")
}

pub(crate) fn min_max<T: Scalar>(a: &T, b: &T) -> (T, T) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Builds `numer / denom` exactly.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-3.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if s.contains('/') {
        let (n, d) = s.split_once('/').unwrap();
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("{s:?}: not a decimal")));
        }
        let mut numer = BigInt::from_str(&digits).map_err(|e| Error::Parse(e.to_string()))?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest integer not exceeding `q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Rounds `q` to the nearest multiple of `1/denom` (ties away from zero).
pub fn round_to_denominator(q: &Rational, denom: &BigInt) -> Rational {
    let scaled = q * Rational::from_integer(denom.clone());
    let magnitude = (scaled.abs() + half::<Rational>()).floor().to_integer();
    let numer = if scaled.numer().sign() == Sign::Minus { -magnitude } else { magnitude };
    Rational::new(numer, denom.clone())
}

/// Formats a float with 12 significant digits, switching to scientific
/// notation outside `[1e-4, 1e12)`.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs();
    if !(1e-4..1e12).contains(&mag) {
        return format!("{v:.11e}");
    }
    let exp = mag.log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}
