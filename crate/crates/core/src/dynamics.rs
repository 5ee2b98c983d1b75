//! Periodic orbits of piecewise-linear interval maps and the Sharkovsky
//! ordering of their periods.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::pwl::{Interval, PwlFunction};
use crate::scalar::{cmp, from_usize, Rational, Scalar};

/// Decomposition `n = 2^two_exponent * odd` with `odd` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SharkovskyKey {
    pub two_exponent: u32,
    pub odd: usize,
}

impl SharkovskyKey {
    pub fn of(n: usize) -> Self {
        assert!(n >= 1, "periods are positive");
        let two_exponent = n.trailing_zeros();
        Self { two_exponent, odd: n >> two_exponent }
    }

    pub fn period(&self) -> usize {
        self.odd << self.two_exponent
    }

    /// The power-of-two factor `m`.
    pub fn power_of_two(&self) -> usize {
        1 << self.two_exponent
    }

    pub fn is_power_of_two(&self) -> bool {
        self.odd == 1
    }
}

impl PartialOrd for SharkovskyKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `Less` means "comes first", i.e. `a ▷ b`.
impl Ord for SharkovskyKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_power_of_two(), other.is_power_of_two()) {
            (false, false) => (self.two_exponent, self.odd).cmp(&(other.two_exponent, other.odd)),
            (false, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            (true, true) => other.two_exponent.cmp(&self.two_exponent),
        }
    }
}

impl fmt::Display for SharkovskyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (= 2^{} * {})", self.period(), self.two_exponent, self.odd)
    }
}

/// Position of two periods in Sharkovsky's ordering; `Less` when `a`
/// strictly precedes `b`.
pub fn sharkovsky_cmp(a: usize, b: usize) -> Ordering {
    SharkovskyKey::of(a).cmp(&SharkovskyKey::of(b))
}

/// `a ▷ b`: `a` strictly precedes `b`, so a period `a` forces a period `b`.
pub fn sharkovsky_precedes(a: usize, b: usize) -> bool {
    sharkovsky_cmp(a, b) == Ordering::Less
}

/// The periods `1..=cap` listed in Sharkovsky order (3, 5, 7, ..., 6, 10,
/// ..., 4, 2, 1).
pub fn sharkovsky_order(cap: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=cap).collect();
    v.sort_by(|&a, &b| sharkovsky_cmp(a, b));
    v
}

/// A periodic orbit in iteration order, rotated to start at its smallest
/// point.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle<T> {
    points: Vec<T>,
    continuum: bool,
}

impl<T: Scalar> Cycle<T> {
    /// Builds the orbit of `start` under `f`, checking that it closes up after
    /// exactly `period` steps.
    pub fn from_orbit(f: &PwlFunction<T>, start: T, period: usize) -> Result<Self> {
        let mut points = Vec::with_capacity(period);
        let mut x = start.clone();
        for _ in 0..period {
            points.push(x.clone());
            x = f.eval(&x)?;
        }
        if x != start {
            return Err(Error::Invariant(format!("{start} does not return after {period} steps")));
        }
        let mut c = Self { points, continuum: false };
        c.rotate_to_min();
        c.verify(f)?;
        Ok(c)
    }

    fn rotate_to_min(&mut self) {
        let k = (0..self.points.len())
            .min_by(|&a, &b| cmp(&self.points[a], &self.points[b]))
            .unwrap_or(0);
        self.points.rotate_left(k);
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    /// Set when the orbit is the representative of a whole segment of
    /// periodic points.
    pub fn is_continuum(&self) -> bool {
        self.continuum
    }

    pub fn sorted_points(&self) -> Vec<T> {
        let mut v = self.points.clone();
        v.sort_by(cmp);
        v
    }

    /// Exact check: points are distinct, `f` advances each point to the next,
    /// and the orbit closes after `period` steps and no fewer.
    pub fn verify(&self, f: &PwlFunction<T>) -> Result<()> {
        let n = self.points.len();
        if n == 0 {
            return Err(Error::Invariant("empty cycle".into()));
        }
        let sorted = self.sorted_points();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant("cycle points are not distinct".into()));
        }
        for i in 0..n {
            if f.eval(&self.points[i])? != self.points[(i + 1) % n] {
                return Err(Error::Invariant(format!(
                    "f({}) does not equal the next orbit point",
                    self.points[i]
                )));
            }
        }
        Ok(())
    }
}

/// Least `k in 1..=max_steps` with `f^k(x) = x`, if any.
pub fn least_period<T: Scalar>(f: &PwlFunction<T>, x: &T, max_steps: usize) -> Result<Option<usize>> {
    let mut y = x.clone();
    for k in 1..=max_steps {
        y = f.eval(&y)?;
        if &y == x {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Dyadic sample points of a segment: midpoint first, then quarters,
/// eighths, and so on down to `1/2^depth`.
fn segment_candidates<T: Scalar>(seg: &Interval<T>, depth: u32) -> Vec<T> {
    let mut out = Vec::new();
    for d in 1..=depth {
        let denom = from_usize::<T>(1usize << d);
        for j in (1..(1usize << d)).step_by(2) {
            out.push(seg.lo().clone() + seg.width() * from_usize::<T>(j) / denom.clone());
        }
    }
    out
}

const SEGMENT_SAMPLE_DEPTH: u32 = 6;

/// Every cycle of least period exactly `n`.
///
/// Isolated solutions of `f^n(x) = x` are kept when their least period is
/// `n` and grouped into orbits. A segment of `f^n` lying on the diagonal
/// contributes one representative orbit (flagged as a continuum): the first
/// dyadic sample point of the segment whose least period is `n`.
pub fn find_cycles<T: Scalar>(f: &PwlFunction<T>, n: usize, cap: usize) -> Result<Vec<Cycle<T>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let fn_iter = f.iterate_capped(n, cap)?;
    let solutions = fn_iter.fixed_points();

    let mut cycles: Vec<Cycle<T>> = Vec::new();
    let mut seen: Vec<T> = Vec::new();
    let claim = |c: Cycle<T>, seen: &mut Vec<T>, cycles: &mut Vec<Cycle<T>>| {
        seen.extend(c.points().iter().cloned());
        cycles.push(c);
    };

    for root in solutions.roots {
        if seen.contains(&root) {
            continue;
        }
        if least_period(f, &root, n)? == Some(n) {
            let c = Cycle::from_orbit(f, root, n)?;
            claim(c, &mut seen, &mut cycles);
        }
    }
    for seg in &solutions.segments {
        for x in segment_candidates(seg, SEGMENT_SAMPLE_DEPTH) {
            if least_period(f, &x, n)? != Some(n) {
                continue;
            }
            let mut c = Cycle::from_orbit(f, x, n)?;
            c.continuum = true;
            let sorted = c.sorted_points();
            let duplicate = cycles.iter().any(|o| o.sorted_points() == sorted)
                || sorted.iter().any(|p| seen.contains(p));
            if !duplicate {
                claim(c, &mut seen, &mut cycles);
            }
            break;
        }
    }
    cycles.sort_by(|a, b| cmp(&a.points[0], &b.points[0]));
    Ok(cycles)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimePeriodReport {
    /// Sharkovsky-greatest period found, if any.
    pub prime: Option<SharkovskyKey>,
    pub search_cap: usize,
    /// Periods that could not be decided because the iterate hit the piece cap.
    pub skipped: Vec<usize>,
}

impl PrimePeriodReport {
    /// Only periods up to `search_cap` were examined, so the answer is
    /// certain only relative to that cap.
    pub fn summary(&self) -> String {
        let head = match self.prime {
            Some(k) => format!("prime period {} (searched up to {})", k.period(), self.search_cap),
            None => format!("none found up to {}", self.search_cap),
        };
        if self.skipped.is_empty() {
            head
        } else {
            let s: Vec<String> = self.skipped.iter().map(|p| p.to_string()).collect();
            format!("{head}; skipped by piece cap: {}", s.join(","))
        }
    }
}

/// Scans the periods `<= search_cap` in Sharkovsky order and stops at the
/// first one with a cycle.
pub fn prime_period<T: Scalar>(
    f: &PwlFunction<T>,
    search_cap: usize,
    piece_cap: usize,
) -> Result<PrimePeriodReport> {
    let mut skipped = Vec::new();
    for n in sharkovsky_order(search_cap) {
        match find_cycles(f, n, piece_cap) {
            Ok(c) if !c.is_empty() => {
                return Ok(PrimePeriodReport {
                    prime: Some(SharkovskyKey::of(n)),
                    search_cap,
                    skipped,
                })
            }
            Ok(_) => {}
            Err(Error::ResourceLimit { .. }) => skipped.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(PrimePeriodReport { prime: None, search_cap, skipped })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForcingReport<T> {
    pub period: usize,
    pub cap: usize,
    /// One witness cycle per forced period, in Sharkovsky order.
    pub witnesses: Vec<(usize, Cycle<T>)>,
    pub skipped: Vec<usize>,
}

/// Checks that every period forced by `n` (and `<= cap`) has a cycle.
/// A missing witness is reported as [`Error::Invariant`]: it can only come
/// from a defect in cycle detection.
pub fn verify_forcing<T: Scalar>(
    f: &PwlFunction<T>,
    n: usize,
    cap: usize,
    piece_cap: usize,
) -> Result<ForcingReport<T>> {
    if find_cycles(f, n, piece_cap)?.is_empty() {
        return Err(Error::InvalidArgument(format!("map has no cycle of period {n}")));
    }
    let mut witnesses = Vec::new();
    let mut skipped = Vec::new();
    for m in sharkovsky_order(cap).into_iter().filter(|&m| sharkovsky_precedes(n, m)) {
        match find_cycles(f, m, piece_cap) {
            Ok(mut c) if !c.is_empty() => witnesses.push((m, c.swap_remove(0))),
            Ok(_) => {
                return Err(Error::Invariant(format!(
                    "period {n} is present but forced period {m} was not found"
                )))
            }
            Err(Error::ResourceLimit { .. }) => skipped.push(m),
            Err(e) => return Err(e),
        }
    }
    Ok(ForcingReport { period: n, cap, witnesses, skipped })
}

/// Text report, one line per cycle: `period=<n> orbit=<p1>,<p2>,...`,
/// sorted by first orbit point (then period).
pub fn cycle_report(cycles: &[Cycle<Rational>]) -> String {
    let mut sorted: Vec<&Cycle<Rational>> = cycles.iter().collect();
    sorted.sort_by(|a, b| a.points[0].cmp(&b.points[0]).then(a.period().cmp(&b.period())));
    let mut out = String::new();
    for c in sorted {
        let pts: Vec<String> = c.points.iter().map(crate::scalar::format_rational).collect();
        out.push_str(&format!("period={} orbit={}\n", c.period(), pts.join(",")));
    }
    out
}
