//! Map library: the tent family, the canonical periodic fixtures, and
//! piecewise-linear grid approximations of smooth maps such as the
//! logistic family.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pwl::{Interval, PwlFunction};
use crate::scalar::{half, int, round_to_denominator, Rational, Scalar};

/// Tent map `t(x; mu)` on `[0, 1]`: `mu * x` up to `1/2`, then `mu * (1 - x)`.
pub fn tent<T: Scalar>(mu: T) -> Result<PwlFunction<T>> {
    let two = T::one() + T::one();
    if mu <= T::zero() || mu > two {
        return Err(Error::InvalidArgument(format!("tent parameter {mu} outside (0, 2]")));
    }
    PwlFunction::from_breakpoints(vec![
        (T::zero(), T::zero()),
        (half(), mu / two),
        (T::one(), T::zero()),
    ])
}

/// `x -> 1 - x` on `[0, 1]`, the standard prime-period-2 example.
pub fn flip() -> PwlFunction<Rational> {
    PwlFunction::from_breakpoints(vec![(int(0), int(1)), (int(1), int(0))]).expect("static data")
}

/// Period-3 fixture on `[1, 3]` through `(1,2), (2,3), (3,1)`.
pub fn period3_map() -> PwlFunction<Rational> {
    from_ints(&[(1, 2), (2, 3), (3, 1)])
}

/// Period-4 fixture on `[1, 4]`: `-x + 5`, `-2x + 7`, `x - 2` on the unit
/// pieces; orbit `1 -> 4 -> 2 -> 3 -> 1`.
pub fn period4_map() -> PwlFunction<Rational> {
    from_ints(&[(1, 4), (2, 3), (3, 1), (4, 2)])
}

/// Period-5 fixture on `[1, 5]`: linear interpolation of the orbit
/// `1 -> 3 -> 4 -> 2 -> 5 -> 1`. It has period 5 but no period 3.
pub fn period5_map() -> PwlFunction<Rational> {
    from_ints(&[(1, 3), (2, 5), (3, 4), (4, 2), (5, 1)])
}

/// Canonical fixture for the given period (3, 4 or 5).
pub fn canonical(period: usize) -> Result<PwlFunction<Rational>> {
    match period {
        3 => Ok(period3_map()),
        4 => Ok(period4_map()),
        5 => Ok(period5_map()),
        n => Err(Error::InvalidArgument(format!(
            "no canonical fixture for period {n} (available: 3, 4, 5)"
        ))),
    }
}

fn from_ints(points: &[(i64, i64)]) -> PwlFunction<Rational> {
    PwlFunction::from_breakpoints(points.iter().map(|&(x, y)| (int(x), int(y))).collect())
        .expect("static data")
}

/// Denominator used when rounding approximant values.
pub fn approximation_denominator() -> BigInt {
    num_traits::pow(BigInt::from(10), 15)
}

/// Piecewise-linear interpolant of `map` on the uniform grid `i / n`,
/// `i = 0..=n`, over `[0, 1]`.
///
/// Values whose reduced denominator exceeds `10^15` are rounded to the
/// nearest multiple of `10^-15`; values already that coarse are kept exact,
/// so an exactly representable map is reproduced verbatim. Values are
/// clamped into `[0, 1]`.
pub fn approximate_map<F>(map: F, n: usize) -> Result<PwlFunction<Rational>>
where
    F: Fn(&Rational) -> Rational,
{
    if n < 2 {
        return Err(Error::InvalidArgument(format!("grid size {n} < 2")));
    }
    let denom = approximation_denominator();
    let grid = BigInt::from(n);
    let points = (0..=n)
        .map(|i| {
            let x = Rational::new(BigInt::from(i), grid.clone());
            let mut y = map(&x);
            if y.denom() > &denom {
                y = round_to_denominator(&y, &denom);
            }
            let y = y.clamp(Rational::zero(), Rational::one());
            (x, y)
        })
        .collect();
    PwlFunction::from_breakpoints(points)
}

/// Logistic map `r x (1 - x)` evaluated exactly.
pub fn logistic_value(r: &Rational, x: &Rational) -> Rational {
    r * x * (Rational::one() - x)
}

/// Grid approximation of the logistic map; `r` must lie in `(0, 4]`.
pub fn logistic(r: &Rational, n: usize) -> Result<PwlFunction<Rational>> {
    if r <= &Rational::zero() || r > &int(4) {
        return Err(Error::InvalidArgument(format!("logistic parameter {r} outside (0, 4]")));
    }
    approximate_map(|x| logistic_value(r, x), n)
}

/// Rational `phi_hat` with `phi <= phi_hat <= phi + 10^-digits`, where
/// `phi = (1 + sqrt 5) / 2`.
pub fn golden_ratio_upper(digits: u32) -> Rational {
    let scale = num_traits::pow(BigInt::from(10), digits as usize + 1);
    // sqrt(5) * scale < isqrt(5 * scale^2) + 1
    let root = (BigInt::from(5) * &scale * &scale).sqrt() + BigInt::one();
    let phi = Rational::new(&scale + root, BigInt::from(2) * &scale);
    debug_assert!(&phi * &phi - &phi - Rational::one() > Rational::zero());
    phi
}

/// Domain `[0, 1]` as an interval.
pub fn unit_interval() -> Interval<Rational> {
    Interval::new(int(0), int(1)).expect("0 <= 1")
}
