//! Growth rates of covering chains.
//!
//! A chain `J_0 -> J_1 -> ... -> J_r -> J_0` with a self-loop at `J_0` has
//! the transfer matrix returned by [`chain_matrix`]; its spectral radius
//! `rho_r` is the root in `(1, 2)` of `lambda^(r+1) - lambda^r - 1`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Float, Num, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{floor_int, Rational, Scalar};

/// Dense square matrix over any numeric type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Num + Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let v = m.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect()
    }

    /// `self^t` by repeated squaring.
    pub fn pow(&self, mut t: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                result = result.mul(&base);
            }
            t >>= 1;
            if t > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn row_sum(&self, i: usize) -> T {
        (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone())
    }

    pub fn total(&self) -> T {
        self.data.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Determinant by Laplace expansion along the first row, skipping zero
    /// entries. Exact for exact scalar types; intended for small sparse
    /// matrices.
    pub fn determinant(&self) -> T {
        fn det<T: Num + Clone>(m: &[Vec<T>]) -> T {
            let n = m.len();
            if n == 0 {
                return T::one();
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = T::zero();
            for (j, a) in m[0].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = a.clone() * det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        det(&self.rows())
    }
}

/// Transfer matrix of a covering chain of length `r + 1`:
/// `A[j][i] = 1` for `(i, j) = (0, 0)`, for `j = i + 1` with `0 <= i < r`,
/// and for `(i, j) = (r, 0)`.
pub fn chain_matrix<T: Num + Clone>(r: usize) -> Matrix<T> {
    assert!(r >= 1, "chains have r >= 1");
    let mut a = Matrix::zeros(r + 1);
    a.set(0, 0, T::one());
    for i in 0..r {
        a.set(i + 1, i, T::one());
    }
    a.set(0, r, T::one());
    a
}

/// `lambda^(r+1) - lambda^r - 1`.
pub fn chain_polynomial<T: Scalar>(r: usize, lambda: &T) -> T {
    let lr = num_traits::pow(lambda.clone(), r);
    lr.clone() * lambda.clone() - lr - T::one()
}

const RHO_MAX_STEPS: usize = 400;

/// Growth rate `rho_r`: the root in `(1, 2)` of `lambda^(r+1) - lambda^r - 1`,
/// found by bisection until `|pi(rho)| <= tol` (or the bracket stops
/// shrinking at the working precision).
pub fn rho<F: Float>(r: u32, tol: F) -> F {
    assert!(r >= 1, "rho is defined for r >= 1");
    let poly = |x: F| x.powi(r as i32) * (x - F::one()) - F::one();
    let mut lo = F::one();
    let mut hi = F::one() + F::one();
    let mut mid = (lo + hi) / (F::one() + F::one());
    for _ in 0..RHO_MAX_STEPS {
        mid = lo + (hi - lo) / (F::one() + F::one());
        let v = poly(mid);
        if v.abs() <= tol || mid <= lo || mid >= hi {
            break;
        }
        if v < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid
}

/// Default bisection tolerance.
pub const RHO_TOL: f64 = 1e-12;

/// Exact dyadic bracket `lo < rho_r < hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoBracket {
    pub r: usize,
    pub lo: Rational,
    pub hi: Rational,
}

impl RhoBracket {
    /// Bisects the certified bracket `(1, 2)` down to width `2^-bits`.
    pub fn new(r: usize, bits: u32) -> Self {
        assert!(r >= 1, "rho is defined for r >= 1");
        let mut lo = Rational::one();
        let mut hi = Rational::from_integer(BigInt::from(2));
        let two = Rational::from_integer(BigInt::from(2));
        for _ in 0..bits {
            let mid = (&lo + &hi) / &two;
            match chain_polynomial(r, &mid).cmp(&Rational::zero()) {
                Ordering::Less => lo = mid,
                // the root is irrational, so equality cannot occur
                _ => hi = mid,
            }
        }
        Self { r, lo, hi }
    }

    fn refined(&self) -> Self {
        let bits = (floor_int(&(Rational::one() / (&self.hi - &self.lo))).bits() as u32).max(32);
        Self::new(self.r, bits * 2)
    }
}

const MAX_REFINEMENTS: usize = 12;

/// Certified `floor(rho_r^k)`.
pub fn floor_rho_pow(r: usize, k: u32) -> Result<BigInt> {
    let mut b = RhoBracket::new(r, 64);
    for _ in 0..MAX_REFINEMENTS {
        let lo = floor_int(&num_traits::pow(b.lo.clone(), k as usize));
        let hi = floor_int(&num_traits::pow(b.hi.clone(), k as usize));
        if lo == hi {
            return Ok(lo);
        }
        b = b.refined();
    }
    Err(Error::Invariant(format!("could not certify floor(rho_{r}^{k})")))
}

/// Exact comparison of `rho_r^k` with a rational value.
pub fn cmp_rho_pow(r: usize, k: u32, value: &Rational) -> Result<Ordering> {
    let mut b = RhoBracket::new(r, 64);
    for _ in 0..MAX_REFINEMENTS {
        if value <= &num_traits::pow(b.lo.clone(), k as usize) {
            return Ok(Ordering::Greater);
        }
        if value >= &num_traits::pow(b.hi.clone(), k as usize) {
            return Ok(Ordering::Less);
        }
        b = b.refined();
    }
    Err(Error::Invariant(format!("could not compare rho_{r}^{k} with {value}")))
}

/// First-row sum of `A^t` for the chain matrix of length `r + 1`, exactly.
pub fn matrix_power_rowsum(r: usize, t: u64) -> BigInt {
    chain_matrix::<BigInt>(r).pow(t).row_sum(0)
}

/// `rho_{p-2}^t`, the guaranteed crossing count of `f^(m t)` for a map with
/// a cycle of period `m p` (`p` odd, `p >= 3`).
pub fn crossing_lower_bound(p: usize, t: u32) -> Result<f64> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("odd factor must be odd and >= 3, got {p}")));
    }
    Ok(rho((p - 2) as u32, RHO_TOL).powi(t as i32))
}
