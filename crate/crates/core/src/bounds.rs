//! Alternating-label datasets realized by deep iterates, classification
//! error, a brute-force oracle for the best shallow classifier, and the
//! depth/width trade-off table.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pwl::PwlFunction;
use crate::relu::piece_bound;
use crate::scalar::{format_sig12, half, Rational, Scalar};
use crate::spectral::{cmp_rho_pow, floor_rho_pow, rho, RHO_TOL};

/// Parameters a dataset was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetOrigin {
    pub p: usize,
    pub m: usize,
    pub k: u32,
    /// Certified `floor(rho_{p-2}^k)`; `n` is half of it rounded down.
    pub floor_rho_k: BigInt,
}

impl DatasetOrigin {
    /// `floor(rho^k)` odd means `n` was rounded down from a half-integer.
    pub fn half_integer(&self) -> bool {
        (&self.floor_rho_k % 2u32) == BigInt::from(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset<T> {
    points: Vec<(T, u8)>,
    threshold: T,
    origin: Option<DatasetOrigin>,
}

impl<T: Scalar> LabeledDataset<T> {
    /// Checks that points are strictly increasing, labels are 0/1 and
    /// alternate starting from 0, and the size is even.
    pub fn new(points: Vec<(T, u8)>, threshold: T) -> Result<Self> {
        if points.is_empty() || !points.len().is_multiple_of(2) {
            return Err(Error::Malformed(format!("dataset size {} is not a positive even number", points.len())));
        }
        for (i, (_, label)) in points.iter().enumerate() {
            if *label as usize != i % 2 {
                return Err(Error::Malformed(format!("label at position {i} breaks the 0,1,0,1 pattern")));
            }
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Malformed("dataset points are not strictly increasing".into()));
        }
        Ok(Self { points, threshold, origin: None })
    }

    pub fn with_origin(mut self, origin: DatasetOrigin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn points(&self) -> &[(T, u8)] {
        &self.points
    }

    pub fn threshold(&self) -> &T {
        &self.threshold
    }

    pub fn origin(&self) -> Option<&DatasetOrigin> {
        self.origin.as_ref()
    }

    /// Half the number of points.
    pub fn n(&self) -> usize {
        self.points.len() / 2
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.points.iter().map(|(_, l)| *l).collect()
    }
}

/// Leftmost-first alternating preimages of `targets[0]`, `targets[1]`,
/// `targets[0]`, ... under `h`, at most `limit` of them.
fn alternating_preimages<T: Scalar>(h: &PwlFunction<T>, targets: [&T; 2], limit: usize) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(limit);
    let (xs, ys) = (h.xs(), h.ys());
    let mut which = 0;
    'pieces: for i in 0..xs.len() - 1 {
        loop {
            if out.len() == limit {
                break 'pieces;
            }
            let v = targets[which];
            let (y0, y1) = (&ys[i], &ys[i + 1]);
            let hit = if y0 == y1 {
                (y0 == v).then(|| xs[i].clone())
            } else {
                let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
                (lo <= v && v <= hi).then(|| {
                    xs[i].clone() + (xs[i + 1].clone() - xs[i].clone()) * (v.clone() - y0.clone()) / (y1.clone() - y0.clone())
                })
            };
            match hit {
                Some(p) if out.last().is_none_or(|last| &p > last) => {
                    out.push(p);
                    which ^= 1;
                }
                _ => break,
            }
        }
    }
    out
}

/// `n = floor(floor(rho_{p-2}^k) / 2)` with the certified floor.
pub fn dataset_half_size(p: usize, k: u32) -> Result<(usize, BigInt)> {
    check_odd(p)?;
    let fl = floor_rho_pow(p - 2, k)?;
    let n = (&fl / 2u32)
        .to_usize()
        .ok_or(Error::ResourceLimit { required: usize::MAX, cap: usize::MAX })?;
    Ok((n, fl))
}

fn check_odd(p: usize) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("odd factor must be odd and >= 3, got {p}")));
    }
    Ok(())
}

/// Builds the `2n`-point alternating dataset for `h = f^(m k)`: alternating
/// preimages of `x` (label 0) and `y` (label 1), leftmost first, with
/// threshold `(x + y) / 2`.
pub fn build_alternating_dataset(
    f: &PwlFunction<Rational>,
    m: usize,
    p: usize,
    k: u32,
    x: &Rational,
    y: &Rational,
    cap: usize,
) -> Result<LabeledDataset<Rational>> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidArgument("m and k must be positive".into()));
    }
    if x >= y {
        return Err(Error::InvalidArgument(format!("need x < y, got [{x}, {y}]")));
    }
    let (n, floor_rho_k) = dataset_half_size(p, k)?;
    if n == 0 {
        return Err(Error::InsufficientCrossings { needed: 2, found: 0 });
    }
    let h = f.iterate_capped(m * k as usize, cap)?;
    let pts = alternating_preimages(&h, [x, y], 2 * n);
    if pts.len() < 2 * n {
        return Err(Error::InsufficientCrossings { needed: 2 * n, found: pts.len() });
    }
    let points = pts.into_iter().enumerate().map(|(i, p)| (p, (i % 2) as u8)).collect();
    let threshold = (x + y) * half::<Rational>();
    let d = LabeledDataset::new(points, threshold)?.with_origin(DatasetOrigin { p, m, k, floor_rho_k });
    debug_assert!(classification_error(&h, &d).is_ok_and(|e| e.is_zero()));
    Ok(d)
}

/// Exact fraction of points with `1[g(x) >= threshold] != label`.
pub fn classification_error<T: Scalar>(g: &PwlFunction<T>, d: &LabeledDataset<T>) -> Result<Rational> {
    let mut wrong = 0usize;
    for (x, label) in &d.points {
        let predicted = (g.eval(x)? >= d.threshold) as u8;
        wrong += (predicted != *label) as usize;
    }
    Ok(Rational::new(BigInt::from(wrong), BigInt::from(d.len())))
}

/// Minimum number of mismatches between `labels` and any 0/1 sequence with
/// at most `runs` constant runs.
pub fn min_mismatches(labels: &[u8], runs: usize) -> usize {
    if labels.is_empty() {
        return 0;
    }
    let runs = runs.min(labels.len()).max(1);
    const INF: usize = usize::MAX / 2;
    // best[r][c]: fewest mismatches so far using r+1 runs, current output c
    let mut best = vec![[INF; 2]; runs];
    for (i, &label) in labels.iter().enumerate() {
        let cost = |c: usize| (c as u8 != label) as usize;
        if i == 0 {
            best[0] = [cost(0), cost(1)];
            continue;
        }
        for r in (0..runs).rev() {
            for c in 0..2 {
                let stay = best[r][c];
                let switch = if r > 0 { best[r - 1][1 - c] } else { INF };
                best[r][c] = stay.min(switch).saturating_add(cost(c));
            }
        }
    }
    best.iter().flat_map(|b| b.iter().copied()).min().unwrap_or(0)
}

/// Smallest error any classifier with at most `pieces` constant runs of
/// predictions can reach on `d`.
pub fn oracle_min_error<T: Scalar>(d: &LabeledDataset<T>, pieces: &BigInt) -> Result<Rational> {
    if pieces < &BigInt::from(1) {
        return Err(Error::InvalidArgument("pieces must be at least 1".into()));
    }
    let runs = pieces.to_usize().unwrap_or(usize::MAX);
    let wrong = min_mismatches(&d.labels(), runs);
    Ok(Rational::new(BigInt::from(wrong), BigInt::from(d.len())))
}

/// `max(0, (n - 4 P) / (2 n))`.
pub fn error_lower_bound(n: usize, pieces: &BigInt) -> Rational {
    let v = Rational::new(BigInt::from(n) - BigInt::from(4) * pieces, BigInt::from(2 * n));
    if v.is_negative() {
        Rational::zero()
    } else {
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TradeoffRow {
    pub l: u32,
    pub u_max: u64,
    /// Error bound at `u = u_max`; `None` when `u_max = 0`.
    pub bound: Option<f64>,
}

impl TradeoffRow {
    pub fn is_vacuous(&self) -> bool {
        self.u_max == 0
    }
}

/// Largest `u >= 0` with `(8 u)^l <= rho_r^k`, i.e. `floor(rho^(k/l) / 8)`.
pub fn max_width(r: usize, k: u32, l: u32) -> Result<u64> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    let fits = |u: u64| -> Result<bool> {
        if u == 0 {
            return Ok(true);
        }
        let v = Rational::from_integer(num_traits::pow(BigInt::from(8 * u), l as usize));
        Ok(cmp_rho_pow(r, k, &v)? == Ordering::Greater)
    };
    let est = (rho(r as u32, RHO_TOL).ln() * k as f64 / l as f64).exp() / 8.0;
    let mut u = if est.is_finite() && est < 1e15 { est.floor() as u64 } else { 0 };
    while u > 0 && !fits(u)? {
        u -= 1;
    }
    while fits(u + 1)? {
        u += 1;
    }
    Ok(u)
}

/// Rows for each `l`, with `r = p - 2`.
pub fn tradeoff_table(p: usize, k: u32, l_range: impl IntoIterator<Item = u32>) -> Result<Vec<TradeoffRow>> {
    check_odd(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let (n, _) = dataset_half_size(p, k)?;
    l_range
        .into_iter()
        .map(|l| {
            let u_max = max_width(p - 2, k, l)?;
            let bound = (u_max > 0 && n > 0).then(|| {
                let pieces = piece_bound(l as usize, u_max as usize);
                error_lower_bound(n, &pieces).to_f64().unwrap_or(0.0)
            });
            Ok(TradeoffRow { l, u_max, bound })
        })
        .collect()
}

/// CSV `l,u_max,bound`; vacuous rows carry `vacuous` in the bound column.
pub fn tradeoff_csv(rows: &[TradeoffRow]) -> String {
    let mut out = String::from("l,u_max,bound\n");
    for row in rows {
        let b = row.bound.map_or_else(|| "vacuous".to_string(), format_sig12);
        out.push_str(&format!("{},{},{}\n", row.l, row.u_max, b));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub l: u32,
    pub u: u64,
    pub pieces: BigInt,
    pub bound: Rational,
    pub oracle: Rational,
    /// Oracle value with one extra run: a continuous function with `P`
    /// pieces thresholds to at most `P + 1` runs.
    pub oracle_extra_run: Rational,
    /// `u <= rho^(k/l) / 8`; `None` when the dataset carries no origin.
    pub width_condition: Option<bool>,
}

impl BoundReport {
    /// Whether the bound reaches `1/4`.
    pub fn quarter_holds(&self) -> bool {
        self.bound >= Rational::new(BigInt::from(1), BigInt::from(4))
    }

    pub fn summary(&self) -> String {
        let f = crate::scalar::format_rational;
        let mut s = format!(
            "l={} u={} pieces={} bound={} oracle={} oracle_p_plus_1={}",
            self.l,
            self.u,
            self.pieces,
            f(&self.bound),
            f(&self.oracle),
            f(&self.oracle_extra_run)
        );
        if let Some(c) = self.width_condition {
            s.push_str(&format!(" width_condition={c} quarter={}", self.quarter_holds()));
        }
        s
    }
}

/// Compares the oracle with the bound for depth `l`, width `u`. An oracle
/// below the bound is an [`Error::Invariant`]. Whether the bound reaches
/// `1/4` under the width condition is reported, not enforced.
pub fn verify_error_bound(d: &LabeledDataset<Rational>, l: u32, u: u64) -> Result<BoundReport> {
    if l == 0 || u == 0 {
        return Err(Error::InvalidArgument("l and u must be positive".into()));
    }
    let pieces = piece_bound(l as usize, u as usize);
    let bound = error_lower_bound(d.n(), &pieces);
    let oracle = oracle_min_error(d, &pieces)?;
    let oracle_extra_run = oracle_min_error(d, &(&pieces + 1u32))?;
    if oracle < bound || oracle_extra_run < bound {
        return Err(Error::Invariant(format!(
            "oracle {} below bound {} at l={l}, u={u}",
            oracle, bound
        )));
    }
    let width_condition = match d.origin() {
        Some(o) => Some(max_width(o.p - 2, o.k, l)? >= u),
        None => None,
    };
    Ok(BoundReport { l, u, pieces, bound, oracle, oracle_extra_run, width_condition })
}
