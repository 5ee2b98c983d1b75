//! Covering graphs induced by a periodic orbit and the self-looped chains
//! that drive exponential crossing growth.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Num;

use crate::dynamics::{find_cycles, Cycle, SharkovskyKey};
use crate::error::{Error, Result};
use crate::pwl::{Interval, PwlFunction};
use crate::scalar::{format_sig12, min_max, Scalar};
use crate::spectral::{chain_matrix, rho, Matrix, RHO_TOL};

/// Intervals between consecutive (sorted) orbit points, with an edge
/// `i -> j` whenever `I_j` lies inside the hull of the images of the two
/// endpoints of `I_i`. By the intermediate value theorem every such edge is
/// a genuine covering `I_j ⊆ f(I_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringGraph<T> {
    intervals: Vec<Interval<T>>,
    edges: BTreeSet<(usize, usize)>,
}

impl<T: Scalar> CoveringGraph<T> {
    /// Assembles a graph directly; used for synthetic graphs in tests and
    /// tooling. Edge endpoints must index `intervals`.
    pub fn from_parts(intervals: Vec<Interval<T>>, edges: BTreeSet<(usize, usize)>) -> Result<Self> {
        let n = intervals.len();
        if edges.iter().any(|&(i, j)| i >= n || j >= n) {
            return Err(Error::InvalidArgument("edge endpoint out of range".into()));
        }
        Ok(Self { intervals, edges })
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..=(i, usize::MAX)).map(|&(_, j)| j)
    }

    pub fn has_self_loop(&self, i: usize) -> bool {
        self.covers(i, i)
    }

    /// `A[j][i] = 1` iff `I_i` covers `I_j`, so that
    /// `delta^(t+1) >= A delta^t` entrywise.
    pub fn transfer_matrix<N: Num + Clone>(&self) -> Matrix<N> {
        let mut a = Matrix::zeros(self.intervals.len());
        for &(i, j) in &self.edges {
            a.set(j, i, N::one());
        }
        a
    }

    /// Shortest path lengths from every vertex to `target`.
    fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let n = self.intervals.len();
        let mut dist = vec![None; n];
        dist[target] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for &(i, _) in self.edges.iter().filter(|&&(_, j)| j == v) {
                if dist[i].is_none() {
                    dist[i] = Some(d + 1);
                    queue.push_back(i);
                }
            }
        }
        dist
    }
}

pub fn build_covering_graph<T: Scalar>(f: &PwlFunction<T>, cycle: &Cycle<T>) -> Result<CoveringGraph<T>> {
    if cycle.period() < 2 {
        return Err(Error::InvalidArgument(format!(
            "covering graph needs period >= 2, got {}",
            cycle.period()
        )));
    }
    cycle.verify(f)?;
    let beta = cycle.sorted_points();
    let images = beta.iter().map(|b| f.eval(b)).collect::<Result<Vec<T>>>()?;
    let intervals = beta
        .windows(2)
        .map(|w| Interval::new(w[0].clone(), w[1].clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = BTreeSet::new();
    for i in 0..intervals.len() {
        let (lo, hi) = min_max(&images[i], &images[i + 1]);
        let hull = Interval::new(lo, hi)?;
        for (j, target) in intervals.iter().enumerate() {
            if hull.contains_interval(target) {
                edges.insert((i, j));
            }
        }
    }
    Ok(CoveringGraph { intervals, edges })
}

/// Chain `J_0, ..., J_r` with `J_0 -> J_0`, `J_i -> J_(i+1)` and `J_r -> J_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringChain<T> {
    chain: Vec<usize>,
    intervals: Vec<Interval<T>>,
}

impl<T: Scalar> CoveringChain<T> {
    /// Indices into the covering graph's interval list.
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn r(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn matrix_a<N: Num + Clone>(&self) -> Matrix<N> {
        chain_matrix(self.r())
    }

    /// Checks every required covering edge against `graph`.
    pub fn verify(&self, graph: &CoveringGraph<T>) -> Result<()> {
        let c = &self.chain;
        let mut required = vec![(c[0], c[0])];
        required.extend(c.windows(2).map(|w| (w[0], w[1])));
        required.push((c[c.len() - 1], c[0]));
        match required.iter().find(|&&(i, j)| !graph.covers(i, j)) {
            Some((i, j)) => Err(Error::Invariant(format!("chain edge {i} -> {j} missing"))),
            None => Ok(()),
        }
    }
}

/// Picks the shortest chain (smallest `r`, hence the largest growth rate);
/// ties go to the smallest `J_0` index and then the lexicographically
/// smallest chain.
pub fn extract_chain<T: Scalar>(g: &CoveringGraph<T>) -> Result<CoveringChain<T>> {
    let mut best: Option<(usize, usize, Vec<Option<usize>>)> = None;
    for v in (0..g.intervals.len()).filter(|&v| g.has_self_loop(v)) {
        let dist = g.distances_to(v);
        let len = g
            .successors(v)
            .filter(|&w| w != v)
            .filter_map(|w| dist[w].map(|d| d + 1))
            .min();
        if let Some(len) = len {
            if best.as_ref().is_none_or(|(r, _, _)| len - 1 < *r) {
                best = Some((len - 1, v, dist));
            }
        }
    }
    let (r, v, dist) = best.ok_or_else(|| {
        Error::NoChain("no self-looped interval lies on a cycle of the covering graph".into())
    })?;

    let mut chain = vec![v];
    let mut cur = v;
    for need in (1..=r).rev() {
        cur = g
            .successors(cur)
            .find(|&w| w != v && dist[w] == Some(need))
            .expect("a shortest path continues");
        chain.push(cur);
    }
    let intervals = chain.iter().map(|&i| g.intervals[i].clone()).collect();
    let c = CoveringChain { chain, intervals };
    c.verify(g)?;
    Ok(c)
}

/// Crossing counts of `f^t` over a list of intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingVector {
    pub t: usize,
    pub delta: Vec<usize>,
}

fn crossings_over<T: Scalar>(h: &PwlFunction<T>, intervals: &[Interval<T>]) -> Result<Vec<usize>> {
    intervals.iter().map(|iv| h.count_crossings(iv.lo(), iv.hi())).collect()
}

/// `delta^t` over the chain intervals `J_0..J_r`, in chain order.
pub fn crossing_vector<T: Scalar>(
    f: &PwlFunction<T>,
    chain: &CoveringChain<T>,
    t: usize,
    cap: usize,
) -> Result<CrossingVector> {
    let h = f.iterate_capped(t, cap)?;
    Ok(CrossingVector { t, delta: crossings_over(&h, chain.intervals())? })
}

/// Crossing counts of `f^t` over every graph interval, in ascending
/// interval order (`I_0, I_1, ...`).
pub fn interval_crossings<T: Scalar>(
    f: &PwlFunction<T>,
    graph: &CoveringGraph<T>,
    t: usize,
    cap: usize,
) -> Result<CrossingVector> {
    let h = f.iterate_capped(t, cap)?;
    Ok(CrossingVector { t, delta: crossings_over(&h, graph.intervals())? })
}

/// Crossing vectors for `t = 1..=t_max` computed along a single run of
/// iterates. When the piece cap is hit the completed rows are returned
/// together with the error.
pub fn crossing_series<T: Scalar>(
    f: &PwlFunction<T>,
    intervals: &[Interval<T>],
    t_max: usize,
    cap: usize,
) -> (Vec<(CrossingVector, usize)>, Option<Error>) {
    let mut rows = Vec::with_capacity(t_max);
    for (k, h) in f.iterates(cap).take(t_max).enumerate() {
        let row = h.and_then(|h| {
            let delta = crossings_over(&h, intervals)?;
            Ok((CrossingVector { t: k + 1, delta }, h.pieces()))
        });
        match row {
            Ok(row) => rows.push(row),
            Err(e) => return (rows, Some(e)),
        }
    }
    (rows, None)
}

/// CSV with header `t,delta_0,...,delta_r,lower_bound`. The bound column
/// holds `rate^t` at 12 significant digits, or is empty without a rate.
pub fn crossing_csv(rows: &[CrossingVector], width: usize, rate: Option<f64>) -> String {
    let mut out = String::from("t");
    for i in 0..width {
        out.push_str(&format!(",delta_{i}"));
    }
    out.push_str(",lower_bound\n");
    for row in rows {
        out.push_str(&row.t.to_string());
        for d in &row.delta {
            out.push_str(&format!(",{d}"));
        }
        out.push(',');
        if let Some(rate) = rate {
            out.push_str(&format_sig12(rate.powi(row.t as i32)));
        }
        out.push('\n');
    }
    out
}

/// Everything needed to certify exponential growth for a map whose period
/// has odd factor `p > 1`: the base map `g = f^m`, a `p`-cycle of `g`, its
/// covering graph and the shortest chain.
#[derive(Clone, Debug)]
pub struct ChainAnalysis<T> {
    pub key: SharkovskyKey,
    pub base: PwlFunction<T>,
    pub cycle: Cycle<T>,
    pub graph: CoveringGraph<T>,
    pub chain: CoveringChain<T>,
}

impl<T: Scalar> ChainAnalysis<T> {
    pub fn rate(&self) -> f64 {
        rho(self.chain.r() as u32, RHO_TOL)
    }
}

/// Builds a [`ChainAnalysis`] for period `n = m p`. Among the `p`-cycles of
/// `f^m` (isolated ones first) the one giving the shortest chain is used.
pub fn chain_for_period<T: Scalar>(f: &PwlFunction<T>, n: usize, cap: usize) -> Result<ChainAnalysis<T>> {
    let key = SharkovskyKey::of(n);
    if key.is_power_of_two() {
        return Err(Error::NoChain(format!("period {n} is a power of two")));
    }
    let base = f.iterate_capped(key.power_of_two(), cap)?;
    let mut cycles = find_cycles(&base, key.odd, cap)?;
    cycles.sort_by_key(|c| c.is_continuum());
    let mut best: Option<(Cycle<T>, CoveringGraph<T>, CoveringChain<T>)> = None;
    for c in cycles {
        let graph = build_covering_graph(&base, &c)?;
        if let Ok(chain) = extract_chain(&graph) {
            if best.as_ref().is_none_or(|(_, _, b)| chain.r() < b.r()) {
                best = Some((c, graph, chain));
            }
        }
    }
    let (cycle, graph, chain) =
        best.ok_or_else(|| Error::NoChain(format!("no cycle of period {} of f^{}", key.odd, key.power_of_two())))?;
    Ok(ChainAnalysis { key, base, cycle, graph, chain })
}
