//! Continuous piecewise-linear maps on a closed interval.
//!
//! A [`PwlFunction`] is stored as its breakpoint list. Every constructor
//! canonicalizes: x-coordinates strictly increase and no interior breakpoint
//! is collinear with its neighbours, so structurally equal functions compare
//! equal with `==`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{cmp, min_max, Scalar};

/// Default cap on the number of breakpoints an iterate may reach.
pub const DEFAULT_BREAKPOINT_CAP: usize = 10_000_000;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(c: T) -> Self {
        Self { lo: c.clone(), hi: c }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / (T::one() + T::one())
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Solutions of `f(x) = x`: isolated roots plus whole segments lying on the
/// diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoints<T> {
    pub roots: Vec<T>,
    pub segments: Vec<Interval<T>>,
}

impl<T> FixedPoints<T> {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty() && self.segments.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PwlFunction<T> {
    xs: Vec<T>,
    ys: Vec<T>,
}

fn collinear<T: Scalar>(x0: &T, y0: &T, x1: &T, y1: &T, x2: &T, y2: &T) -> bool {
    (y1.clone() - y0.clone()) * (x2.clone() - x1.clone())
        == (y2.clone() - y1.clone()) * (x1.clone() - x0.clone())
}

/// Linear interpolation on the segment `(x0, y0)..(x1, y1)`.
fn lerp<T: Scalar>(x0: &T, y0: &T, x1: &T, y1: &T, x: &T) -> T {
    if x == x0 {
        return y0.clone();
    }
    if x == x1 {
        return y1.clone();
    }
    y0.clone() + (y1.clone() - y0.clone()) * (x.clone() - x0.clone()) / (x1.clone() - x0.clone())
}

/// Abscissa on the segment `(x0, y0)..(x1, y1)` where the value equals `v`.
/// Requires `y0 != y1`.
fn inverse<T: Scalar>(x0: &T, y0: &T, x1: &T, y1: &T, v: &T) -> T {
    if v == y0 {
        return x0.clone();
    }
    if v == y1 {
        return x1.clone();
    }
    x0.clone() + (v.clone() - y0.clone()) * (x1.clone() - x0.clone()) / (y1.clone() - y0.clone())
}

impl<T: Scalar> PwlFunction<T> {
    /// Builds a function from `(x, y)` pairs with strictly increasing `x`.
    /// Collinear interior points are merged.
    pub fn from_breakpoints(points: Vec<(T, T)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Malformed(format!(
                "need at least 2 breakpoints, got {}",
                points.len()
            )));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::Malformed(format!(
                "breakpoint x-coordinates must strictly increase ({} then {})",
                w[0].0, w[1].0
            )));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self::canonical(xs, ys))
    }

    /// Canonicalizes sorted, strictly increasing data.
    fn canonical(xs: Vec<T>, ys: Vec<T>) -> Self {
        debug_assert_eq!(xs.len(), ys.len());
        let mut cx: Vec<T> = Vec::with_capacity(xs.len());
        let mut cy: Vec<T> = Vec::with_capacity(ys.len());
        for (x, y) in xs.into_iter().zip(ys) {
            while cx.len() >= 2 {
                let n = cx.len();
                if collinear(&cx[n - 2], &cy[n - 2], &cx[n - 1], &cy[n - 1], &x, &y) {
                    cx.pop();
                    cy.pop();
                } else {
                    break;
                }
            }
            cx.push(x);
            cy.push(y);
        }
        Self { xs: cx, ys: cy }
    }

    pub fn identity(domain: &Interval<T>) -> Result<Self> {
        Self::from_breakpoints(vec![
            (domain.lo.clone(), domain.lo.clone()),
            (domain.hi.clone(), domain.hi.clone()),
        ])
    }

    pub fn constant(domain: &Interval<T>, c: T) -> Result<Self> {
        Self::from_breakpoints(vec![(domain.lo.clone(), c.clone()), (domain.hi.clone(), c)])
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (&T, &T)> + '_ {
        self.xs.iter().zip(&self.ys)
    }

    /// Number of linear pieces.
    pub fn pieces(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn domain(&self) -> Interval<T> {
        Interval {
            lo: self.xs[0].clone(),
            hi: self.xs[self.xs.len() - 1].clone(),
        }
    }

    /// Smallest interval containing every value of the function.
    pub fn range(&self) -> Interval<T> {
        let mut lo = &self.ys[0];
        let mut hi = &self.ys[0];
        for y in &self.ys[1..] {
            if y < lo {
                lo = y;
            }
            if y > hi {
                hi = y;
            }
        }
        Interval { lo: lo.clone(), hi: hi.clone() }
    }

    pub fn maps_into_itself(&self) -> bool {
        self.domain().contains_interval(&self.range())
    }

    fn outside(&self, x: &T) -> Error {
        let d = self.domain();
        Error::OutsideDomain {
            point: x.to_string(),
            lo: d.lo.to_string(),
            hi: d.hi.to_string(),
        }
    }

    /// Index `i` of a piece `[xs[i], xs[i+1]]` containing `x`.
    fn piece_index(&self, x: &T) -> Option<usize> {
        let last = self.xs.len() - 1;
        if x < &self.xs[0] || x > &self.xs[last] {
            return None;
        }
        let upper = self.xs.partition_point(|b| b <= x);
        Some(upper.saturating_sub(1).min(last - 1))
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let i = self.piece_index(x).ok_or_else(|| self.outside(x))?;
        Ok(lerp(&self.xs[i], &self.ys[i], &self.xs[i + 1], &self.ys[i + 1], x))
    }

    /// `self ∘ inner` with the default breakpoint cap.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.compose_capped(inner, DEFAULT_BREAKPOINT_CAP)
    }

    /// `self ∘ inner`. The breakpoints of `self` are pulled back through
    /// every non-constant piece of `inner` and merged with the breakpoints of
    /// `inner`, which is exactly the set of points where the composite can
    /// bend.
    pub fn compose_capped(&self, inner: &Self, cap: usize) -> Result<Self> {
        let range = inner.range();
        let domain = self.domain();
        if !domain.contains_interval(&range) {
            return Err(Error::RangeMismatch {
                range_lo: range.lo.to_string(),
                range_hi: range.hi.to_string(),
                lo: domain.lo.to_string(),
                hi: domain.hi.to_string(),
            });
        }

        let mut xs: Vec<T> = Vec::with_capacity(inner.xs.len());
        let mut ys: Vec<T> = Vec::with_capacity(inner.xs.len());
        let outer_value = |v: &T| -> T {
            let i = self.piece_index(v).expect("range checked against domain");
            lerp(&self.xs[i], &self.ys[i], &self.xs[i + 1], &self.ys[i + 1], v)
        };

        xs.push(inner.xs[0].clone());
        ys.push(outer_value(&inner.ys[0]));
        for i in 0..inner.pieces() {
            let (x0, y0, x1, y1) = (&inner.xs[i], &inner.ys[i], &inner.xs[i + 1], &inner.ys[i + 1]);
            if y0 != y1 {
                let (lo, hi) = min_max(y0, y1);
                let start = self.xs.partition_point(|b| b <= &lo);
                let end = self.xs.partition_point(|b| b < &hi);
                let interior = &self.xs[start..end.max(start)];
                if xs.len() + interior.len() + 1 > cap {
                    return Err(Error::ResourceLimit {
                        required: xs.len() + interior.len() + 1,
                        cap,
                    });
                }
                let pull = |k: usize| {
                    let b = &self.xs[start + k];
                    (inverse(x0, y0, x1, y1, b), self.ys[start + k].clone())
                };
                if y0 < y1 {
                    for k in 0..interior.len() {
                        let (x, y) = pull(k);
                        xs.push(x);
                        ys.push(y);
                    }
                } else {
                    for k in (0..interior.len()).rev() {
                        let (x, y) = pull(k);
                        xs.push(x);
                        ys.push(y);
                    }
                }
            }
            if xs.len() + 1 > cap {
                return Err(Error::ResourceLimit { required: xs.len() + 1, cap });
            }
            xs.push(x1.clone());
            ys.push(outer_value(y1));
        }
        Ok(Self::canonical(xs, ys))
    }

    /// `self` composed with itself `t` times; `t = 0` gives the identity.
    pub fn iterate(&self, t: usize) -> Result<Self> {
        self.iterate_capped(t, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn iterate_capped(&self, t: usize, cap: usize) -> Result<Self> {
        if t == 0 {
            return Self::identity(&self.domain());
        }
        let mut last = None;
        for step in self.iterates(cap).take(t) {
            last = Some(step?);
        }
        Ok(last.expect("t >= 1"))
    }

    /// Lazily yields `f, f^2, f^3, ...`; stops after the first error.
    pub fn iterates(&self, cap: usize) -> Iterates<'_, T> {
        Iterates { base: self, current: None, cap, done: false }
    }

    /// Exact image `f(iv) = [min, max]`; extrema sit at endpoints of `iv` or
    /// at interior breakpoints.
    pub fn image(&self, iv: &Interval<T>) -> Result<Interval<T>> {
        if !self.domain().contains_interval(iv) {
            return Err(self.outside(if self.domain().contains(&iv.lo) { &iv.hi } else { &iv.lo }));
        }
        let mut lo = self.eval(&iv.lo)?;
        let mut hi = lo.clone();
        let mut consider = |v: T| {
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        };
        consider(self.eval(&iv.hi)?);
        let start = self.xs.partition_point(|b| b <= &iv.lo);
        let end = self.xs.partition_point(|b| b < &iv.hi);
        for k in start..end.max(start) {
            consider(self.ys[k].clone());
        }
        Ok(Interval { lo, hi })
    }

    /// Number of times the function crosses `[x, y]`.
    ///
    /// Breakpoint values are labelled low (`<= x`) or high (`>= y`); values
    /// strictly between are ignored. Every change of label along the domain
    /// is one maximal monotone traversal of the band, in either direction.
    /// A local extremum touching `x` or `y` exactly counts as attaining it.
    pub fn count_crossings(&self, x: &T, y: &T) -> Result<usize> {
        if x >= y {
            return Err(Error::InvalidArgument(format!(
                "crossing band needs x < y, got [{x}, {y}]"
            )));
        }
        let mut last: Option<bool> = None;
        let mut changes = 0;
        for v in &self.ys {
            let label = if v <= x {
                Some(false)
            } else if v >= y {
                Some(true)
            } else {
                None
            };
            if let Some(l) = label {
                if last.is_some_and(|p| p != l) {
                    changes += 1;
                }
                last = Some(l);
            }
        }
        Ok(changes)
    }

    /// Number of maximal intervals (degenerate ones included) on which the
    /// indicator `1[f(z) >= threshold]` is constant.
    pub fn indicator_pieces(&self, threshold: &T) -> usize {
        let mut runs = 0;
        let mut last: Option<bool> = None;
        let mut push = |s: bool| {
            if last != Some(s) {
                runs += 1;
                last = Some(s);
            }
        };
        for i in 0..self.pieces() {
            let (v0, v1) = (&self.ys[i], &self.ys[i + 1]);
            push(v0 >= threshold);
            match (v0 >= threshold, v1 >= threshold) {
                (true, true) => push(true),
                (false, false) => push(false),
                (false, true) => {
                    push(false);
                    if v1 > threshold {
                        push(true);
                    }
                }
                (true, false) => {
                    if v0 > threshold {
                        push(true);
                    }
                    push(false);
                }
            }
        }
        push(&self.ys[self.pieces()] >= threshold);
        runs
    }

    /// All solutions of `f(x) = x`, computed piece by piece from the
    /// signed gap `f(x) - x` at each end of the piece.
    pub fn fixed_points(&self) -> FixedPoints<T> {
        let mut roots: Vec<T> = Vec::new();
        let mut segments: Vec<Interval<T>> = Vec::new();
        for i in 0..self.pieces() {
            let (x0, x1) = (&self.xs[i], &self.xs[i + 1]);
            let d0 = self.ys[i].clone() - x0.clone();
            let d1 = self.ys[i + 1].clone() - x1.clone();
            if d0.is_zero() && d1.is_zero() {
                segments.push(Interval { lo: x0.clone(), hi: x1.clone() });
                continue;
            }
            let opposite = (d0.is_negative() && !d1.is_negative())
                || (d0.is_positive() && !d1.is_positive())
                || d0.is_zero();
            if opposite {
                let root = if d0.is_zero() {
                    x0.clone()
                } else if d1.is_zero() {
                    x1.clone()
                } else {
                    x0.clone() + d0.clone() * (x1.clone() - x0.clone()) / (d0 - d1)
                };
                roots.push(root);
            }
        }
        roots.sort_by(cmp);
        roots.dedup();
        roots.retain(|r| !segments.iter().any(|s| s.contains(r)));
        FixedPoints { roots, segments }
    }
}

impl<T: Scalar> fmt::Display for PwlFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.breakpoints().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "{}", pts.join(" "))
    }
}

/// Iterator over successive iterates, see [`PwlFunction::iterates`].
pub struct Iterates<'a, T> {
    base: &'a PwlFunction<T>,
    current: Option<PwlFunction<T>>,
    cap: usize,
    done: bool,
}

impl<T: Scalar> Iterator for Iterates<'_, T> {
    type Item = Result<PwlFunction<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let next = match &self.current {
            None => {
                if self.base.maps_into_itself() {
                    Ok(self.base.clone())
                } else {
                    self.base.compose_capped(self.base, self.cap)
                }
            }
            Some(h) => self.base.compose_capped(h, self.cap),
        };
        match next {
            Ok(h) => {
                self.current = Some(h.clone());
                Some(Ok(h))
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{flip, period3_map, tent};
    use crate::scalar::{int, ratio, Rational};

    type Q = Rational;

    fn pwl(points: &[(i64, i64, i64, i64)]) -> PwlFunction<Q> {
        PwlFunction::from_breakpoints(
            points.iter().map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d))).collect(),
        )
        .unwrap()
    }

    /// Values on the grid `i / n` and the count of kinks found by second
    /// differences; independent of `compose`.
    fn grid_pieces(f: impl Fn(&Q) -> Q, n: i64) -> (Vec<(Q, Q)>, usize) {
        let pts: Vec<(Q, Q)> = (0..=n).map(|i| ratio(i, n)).map(|x| (x.clone(), f(&x))).collect();
        let kinks = pts
            .windows(3)
            .filter(|w| {
                (w[1].1.clone() - w[0].1.clone()) != (w[2].1.clone() - w[1].1.clone())
            })
            .count();
        (pts, kinks + 1)
    }

    #[test]
    fn eval_examples() {
        let t2 = tent(int(2)).unwrap();
        assert_eq!(t2.eval(&ratio(2, 9)).unwrap(), ratio(4, 9));
        assert_eq!(t2.eval(&ratio(1, 2)).unwrap(), int(1));
        let id = PwlFunction::identity(&Interval::new(int(0), int(1)).unwrap()).unwrap();
        assert_eq!(id.eval(&ratio(3, 7)).unwrap(), ratio(3, 7));
        assert!(matches!(t2.eval(&ratio(3, 2)), Err(Error::OutsideDomain { .. })));
        assert!(t2.eval(&int(-1)).is_err());
    }

    #[test]
    fn rejects_malformed_breakpoints() {
        assert!(PwlFunction::from_breakpoints(vec![(int(0), int(0))]).is_err());
        assert!(PwlFunction::from_breakpoints(vec![(int(1), int(0)), (int(0), int(1))]).is_err());
        assert!(PwlFunction::from_breakpoints(vec![(int(0), int(0)), (int(0), int(1))]).is_err());
    }

    #[test]
    fn canonical_form_merges_collinear_points() {
        let f = pwl(&[(0, 1, 0, 1), (1, 4, 1, 4), (1, 2, 1, 2), (1, 1, 0, 1)]);
        assert_eq!(f.pieces(), 2);
        assert_eq!(f, pwl(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 0, 1)]));
    }

    #[test]
    fn compose_tent_one_is_idempotent() {
        let t1 = tent(int(1)).unwrap();
        assert_eq!(t1.compose(&t1).unwrap(), t1);
        assert_eq!(t1.iterate(6).unwrap(), t1);
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let f = period3_map();
        let id = PwlFunction::identity(&f.domain()).unwrap();
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn compose_tent_two_matches_pointwise_oracle() {
        let t2 = tent(int(2)).unwrap();
        let (grid, pieces) = grid_pieces(|x| t2.eval(&t2.eval(x).unwrap()).unwrap(), 16);
        assert_eq!(pieces, 4);
        let h = t2.compose(&t2).unwrap();
        for (x, y) in &grid {
            assert_eq!(&h.eval(x).unwrap(), y);
        }
        let expected = pwl(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 2, 0, 1), (3, 4, 1, 1), (1, 1, 0, 1)]);
        assert_eq!(h, expected);
    }

    #[test]
    fn iterate_tent_two_three_times_has_eight_pieces() {
        let t2 = tent(int(2)).unwrap();
        let (_, oracle) = grid_pieces(
            |x| {
                let mut v = x.clone();
                for _ in 0..3 {
                    v = t2.eval(&v).unwrap();
                }
                v
            },
            64,
        );
        assert_eq!(oracle, 8);
        assert_eq!(t2.iterate(3).unwrap().pieces(), 8);
        assert_eq!(t2.iterate(1).unwrap(), t2);
    }

    #[test]
    fn compose_rejects_range_outside_domain() {
        let f = pwl(&[(0, 1, 0, 1), (1, 1, 2, 1)]);
        let g = pwl(&[(0, 1, 0, 1), (1, 1, 1, 2)]);
        assert!(matches!(g.compose(&f), Err(Error::RangeMismatch { .. })));
        assert!(f.iterate(2).is_err());
    }

    #[test]
    fn compose_respects_cap() {
        let t2 = tent(int(2)).unwrap();
        let err = t2.iterate_capped(10, 200).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 200, .. }));
        assert_eq!(t2.iterate_capped(7, 200).unwrap().pieces(), 128);
    }

    #[test]
    fn image_examples() {
        let t2 = tent(int(2)).unwrap();
        let iv = |a, b, c, d| Interval::new(ratio(a, b), ratio(c, d)).unwrap();
        assert_eq!(t2.image(&iv(2, 9, 4, 9)).unwrap(), iv(4, 9, 8, 9));
        assert_eq!(t2.image(&iv(4, 9, 8, 9)).unwrap(), iv(2, 9, 1, 1));
        let c = ratio(1, 3);
        assert_eq!(
            t2.image(&Interval::point(c.clone())).unwrap(),
            Interval::point(t2.eval(&c).unwrap())
        );
        assert!(t2.image(&iv(1, 2, 3, 2)).is_err());
    }

    #[test]
    fn crossing_examples() {
        let f = period3_map();
        assert_eq!(f.count_crossings(&int(2), &int(3)).unwrap(), 2);
        assert_eq!(f.count_crossings(&int(1), &int(2)).unwrap(), 1);
        let f4 = f.iterate(4).unwrap();
        assert_eq!(f4.count_crossings(&int(2), &int(3)).unwrap(), 8);
        assert_eq!(f4.count_crossings(&int(1), &int(2)).unwrap(), 5);
        let id = PwlFunction::identity(&Interval::new(int(0), int(1)).unwrap()).unwrap();
        assert_eq!(id.count_crossings(&int(0), &int(1)).unwrap(), 1);
        assert!(id.count_crossings(&int(1), &int(1)).is_err());
        assert!(id.count_crossings(&int(1), &int(0)).is_err());
    }

    #[test]
    fn indicator_pieces_handle_touching() {
        // peak exactly at the threshold gives a degenerate run
        let f = pwl(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 0, 1)]);
        assert_eq!(f.indicator_pieces(&ratio(1, 2)), 3);
        assert_eq!(f.indicator_pieces(&ratio(1, 4)), 3);
        assert_eq!(f.indicator_pieces(&int(1)), 1);
        assert_eq!(f.indicator_pieces(&int(0)), 1);
    }

    #[test]
    fn fixed_point_examples() {
        let t2 = tent(int(2)).unwrap();
        let fp = t2.fixed_points();
        assert_eq!(fp.roots, vec![int(0), ratio(2, 3)]);
        assert!(fp.segments.is_empty());

        let fp = flip().fixed_points();
        assert_eq!(fp.roots, vec![ratio(1, 2)]);

        let fp = tent(int(1)).unwrap().fixed_points();
        assert!(fp.roots.is_empty());
        assert_eq!(fp.segments, vec![Interval::new(int(0), ratio(1, 2)).unwrap()]);
    }

    #[test]
    fn fixed_points_without_solutions() {
        let f = pwl(&[(0, 1, 1, 2), (1, 1, 1, 1)]);
        let g = pwl(&[(0, 1, 1, 1), (1, 1, 1, 1)]);
        assert_eq!(f.fixed_points().roots, vec![int(1)]);
        let shifted = PwlFunction::from_breakpoints(vec![(int(0), int(1)), (int(1), int(2))]).unwrap();
        assert!(shifted.fixed_points().is_empty());
        assert_eq!(g.fixed_points().roots, vec![int(1)]);
    }

    #[test]
    fn generic_over_floats() {
        let f = PwlFunction::from_breakpoints(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        let g = f.compose(&f).unwrap();
        assert_eq!(g.pieces(), 4);
        assert_eq!(g.eval(&0.25).unwrap(), 1.0);
        assert_eq!(f.fixed_points().roots.len(), 2);
    }

    #[test]
    fn generic_over_fixed_width_ratios() {
        use num_rational::Ratio;
        let r = |a: i64, b: i64| Ratio::new(a, b);
        let f = PwlFunction::from_breakpoints(vec![(r(0, 1), r(0, 1)), (r(1, 2), r(1, 1)), (r(1, 1), r(0, 1))])
            .unwrap();
        assert_eq!(f.iterate(5).unwrap().pieces(), 32);
    }
}
