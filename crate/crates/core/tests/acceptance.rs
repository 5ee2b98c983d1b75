//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line with
//! its runtime budget; the process exits non-zero if any line is FAIL.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use sharkdepth::bounds::{build_alternating_dataset, classification_error, error_lower_bound, max_width, oracle_min_error};
use sharkdepth::covering::{build_covering_graph, chain_for_period, crossing_vector, interval_crossings};
use sharkdepth::dynamics::find_cycles;
use sharkdepth::maps::{golden_ratio_upper, period3_map, period4_map, period5_map, tent};
use sharkdepth::spectral::{chain_matrix, chain_polynomial, matrix_power_rowsum, rho, Matrix, RHO_TOL};
use sharkdepth::{compile_tent, extract_pwl, int, piece_bound, ratio, Cycle, Interval, Pwl, Rational};

const CAP: usize = sharkdepth::DEFAULT_BREAKPOINT_CAP;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, name: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2} {}: {name} [{:.3}s / {}s] {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    ok
}

/// Crossings of `f^1..f^t_max` over each interval, counted from exact
/// samples of the orbit map on a uniform grid without building iterates.
fn sampled_crossings(f: &Pwl, t_max: usize, intervals: &[Interval<Rational>], steps: i64) -> Vec<Vec<usize>> {
    let d = f.domain();
    let width = d.hi() - d.lo();
    let mut last = vec![vec![None::<bool>; intervals.len()]; t_max];
    let mut counts = vec![vec![0usize; intervals.len()]; t_max];
    for i in 0..=steps {
        let mut v = d.lo() + &width * ratio(i, steps);
        for t in 0..t_max {
            v = f.eval(&v).unwrap();
            for (j, iv) in intervals.iter().enumerate() {
                let label = if &v <= iv.lo() {
                    Some(false)
                } else if &v >= iv.hi() {
                    Some(true)
                } else {
                    None
                };
                if let Some(l) = label {
                    if last[t][j].is_some_and(|p| p != l) {
                        counts[t][j] += 1;
                    }
                    last[t][j] = Some(l);
                }
            }
        }
    }
    counts
}

/// Determinant by fraction-exact Gaussian elimination.
fn gauss_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let factor = &m[r][c] / &m[c][c];
            for k in c..n {
                let sub = &factor * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

fn criterion_1() -> Outcome {
    let f = period3_map();
    let a = chain_for_period(&f, 3, CAP).map_err(|e| e.to_string())?;
    let expected = [vec![2, 1], vec![3, 2], vec![5, 3], vec![8, 5]];
    for (t, want) in (1..=4).zip(&expected) {
        let got = crossing_vector(&f, &a.chain, t, CAP).map_err(|e| e.to_string())?.delta;
        ensure(&got == want, || format!("t={t}: got {got:?}, want {want:?}"))?;
    }
    Ok("delta = (2,1) (3,2) (5,3) (8,5)".into())
}

fn criterion_2() -> Outcome {
    let f = period5_map();
    let cycle = Cycle::from_orbit(&f, int(1), 5).map_err(|e| e.to_string())?;
    let g = build_covering_graph(&f, &cycle).map_err(|e| e.to_string())?;
    let expected = [vec![1, 1, 2, 2], vec![2, 2, 3, 2], vec![2, 3, 5, 4], vec![4, 5, 7, 5]];
    // fixture validation against sampled orbits
    let sampled = sampled_crossings(&f, 4, g.intervals(), 1200);
    for (t, want) in (1..=4).zip(&expected) {
        let got = interval_crossings(&f, &g, t, CAP).map_err(|e| e.to_string())?.delta;
        ensure(&got == want, || format!("t={t}: got {got:?}, want {want:?}"))?;
        ensure(&sampled[t - 1] == want, || format!("t={t}: sampled count {:?} disagrees", sampled[t - 1]))?;
    }
    Ok("delta = (1,1,2,2) (2,2,3,2) (2,3,5,4) (4,5,7,5); sampled oracle agrees".into())
}

fn criterion_3() -> Outcome {
    let f = period4_map();
    let cycle = Cycle::from_orbit(&f, int(1), 4).map_err(|e| e.to_string())?;
    let g = build_covering_graph(&f, &cycle).map_err(|e| e.to_string())?;
    let a: Matrix<BigInt> = g.transfer_matrix();
    let mut totals = Vec::new();
    for t in 1..=20u64 {
        let sum = a.pow(t).total();
        ensure(sum == BigInt::from(t + 3), || format!("t={t}: sum A^t = {sum}"))?;
        let delta = interval_crossings(&f, &g, t as usize, CAP).map_err(|e| e.to_string())?.delta;
        totals.push(delta.iter().sum::<usize>() as i64);
    }
    let step = totals[1] - totals[0];
    ensure(step > 0 && totals.windows(2).all(|w| w[1] - w[0] == step), || {
        format!("crossing totals not linear: {totals:?}")
    })?;
    Ok(format!("sum A^t = t+3 for t=1..20; crossing totals {}..{} step {step}", totals[0], totals[19]))
}

fn chain_bound(f: &Pwl, period: usize, t_max: usize) -> Outcome {
    let a = chain_for_period(f, period, CAP).map_err(|e| e.to_string())?;
    let rate = rho(a.chain.r() as u32, RHO_TOL);
    let mut worst = f64::INFINITY;
    for (t, h) in f.iterates(CAP).take(t_max).enumerate() {
        let t = t + 1;
        let h = h.map_err(|e| e.to_string())?;
        let j0 = &a.chain.intervals()[0];
        let d0 = h.count_crossings(j0.lo(), j0.hi()).map_err(|e| e.to_string())?;
        let bound = rate.powi(t as i32) * (1.0 - 1e-9);
        ensure(d0 as f64 >= bound, || format!("period {period}, t={t}: delta_0={d0} < {bound}"))?;
        worst = worst.min(d0 as f64 / rate.powi(t as i32));
    }
    Ok(format!("r={} min delta_0/rho^t={worst:.4}", a.chain.r()))
}

fn criterion_4() -> Outcome {
    let a = chain_bound(&tent(int(2)).unwrap(), 3, 14)?;
    let b = chain_bound(&period5_map(), 5, 10)?;
    Ok(format!("tent(2): {a}; period-5: {b}"))
}

fn criterion_5() -> Outcome {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let r1 = rho(1, RHO_TOL);
    ensure((r1 - phi).abs() <= 1e-12, || format!("rho(1)={r1}"))?;
    for r in 1..20 {
        ensure(rho(r + 1, RHO_TOL) < rho(r, RHO_TOL), || format!("rho not decreasing at r={r}"))?;
    }
    for r in 1..=8usize {
        let a: Matrix<Rational> = chain_matrix(r);
        let at = a.transpose().rows();
        for s in 0..20i64 {
            let lambda = ratio(3 * s - 17, 7);
            let shifted: Vec<Vec<Rational>> = at
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| if i == j { v - &lambda } else { v.clone() })
                        .collect()
                })
                .collect();
            let det = gauss_det(shifted);
            let pi = chain_polynomial(r, &lambda);
            let sign = if (r + 1) % 2 == 0 { int(1) } else { int(-1) };
            ensure(det == &sign * &pi, || format!("r={r}, lambda={lambda}: det={det}, pi={pi}"))?;
            ensure(det.abs() == pi.abs(), || "magnitude mismatch".into())?;
        }
    }
    Ok(format!("rho(1)={r1:.15}; decreasing on 1..20; det identity on 160 samples"))
}

fn criterion_6() -> Outcome {
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(2));
    for t in 1..=40u64 {
        let got = matrix_power_rowsum(1, t);
        ensure(got == b, || format!("t={t}: {got} != {b}"))?;
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(format!("t=40 row sum {}", matrix_power_rowsum(1, 40)))
}

fn criterion_7() -> Outcome {
    let t2 = tent(int(2)).unwrap();
    let net = compile_tent(int(2)).map_err(|e| e.to_string())?;
    let unit = Interval::new(int(0), int(1)).unwrap();
    let mut iterate = t2.clone();
    for k in 1..=12usize {
        if k > 1 {
            iterate = t2.compose(&iterate).map_err(|e| e.to_string())?;
        }
        let stacked = net.stack(k).map_err(|e| e.to_string())?;
        let g = extract_pwl(&stacked, &unit).map_err(|e| e.to_string())?;
        ensure(g == iterate, || format!("k={k}: extracted function differs"))?;
        let pieces = BigInt::from(g.pieces());
        ensure(pieces == BigInt::from(1u64 << k), || format!("k={k}: {pieces} pieces"))?;
        ensure(pieces <= piece_bound(stacked.depth(), stacked.width()), || format!("k={k}: bound"))?;
    }
    Ok("k=1..12 exact; pieces 2^k <= 4^k".into())
}

fn criterion_8() -> Outcome {
    let t2 = tent(int(2)).unwrap();
    let k = 12;
    let d = build_alternating_dataset(&t2, 1, 3, k, &ratio(4, 9), &ratio(8, 9), CAP).map_err(|e| e.to_string())?;
    let n = d.n();
    let h = t2.iterate(k as usize).map_err(|e| e.to_string())?;
    let err = classification_error(&h, &d).map_err(|e| e.to_string())?;
    ensure(err.is_zero(), || format!("t^12 error {err}"))?;

    let pieces = piece_bound(2, 1);
    let oracle = oracle_min_error(&d, &pieces).map_err(|e| e.to_string())?;
    let literal = Rational::new(BigInt::from(n as i64 - 4 * 16), BigInt::from(2 * n));
    let read = error_lower_bound(n, &pieces);
    ensure(oracle >= literal && oracle >= read, || {
        format!("oracle {oracle} below (n-64)/(2n)={literal} or (n-16)/(2n)={read}")
    })?;

    let u = max_width(1, k, 2).map_err(|e| e.to_string())?;
    let bound = error_lower_bound(n, &piece_bound(2, u as usize));
    ensure(bound >= ratio(1, 4), || format!("u={u}: bound {bound} < 1/4"))?;
    Ok(format!("n={n}; oracle(l=2,u=1)={oracle}; u_max={u} bound={bound}"))
}

fn has_period(f: &Pwl, n: usize) -> Result<bool, String> {
    find_cycles(f, n, CAP).map(|c| !c.is_empty()).map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    let t2 = tent(int(2)).unwrap();
    for n in [3, 1, 2, 4, 5, 6, 7, 8] {
        ensure(has_period(&t2, n)?, || format!("tent(2) lacks period {n}"))?;
    }
    let f5 = period5_map();
    ensure(!has_period(&f5, 3)?, || "period-5 fixture has a 3-cycle".into())?;
    for n in [1, 2, 4, 5, 6, 7] {
        ensure(has_period(&f5, n)?, || format!("period-5 fixture lacks period {n}"))?;
    }
    Ok("tent(2): 1,2,4,5,6,7,8; period-5: 1,2,4,5,6,7 and no 3".into())
}

fn criterion_10() -> Outcome {
    let phi = golden_ratio_upper(12);
    let excess = &phi - ratio(1, 1);
    ensure(&excess * &phi > int(1), || "phi_hat not above phi".into())?;
    ensure(has_period(&tent(phi.clone()).unwrap(), 3)?, || "tent(phi_hat) lacks a 3-cycle".into())?;
    for eps in [ratio(1, 100), ratio(1, 1_000_000)] {
        let g = tent(&phi - &eps).unwrap();
        ensure(!has_period(&g, 3)?, || format!("tent(phi_hat - {eps}) has a 3-cycle"))?;
    }
    Ok("3-cycle at phi_hat; none at phi_hat-1/100 or phi_hat-1/10^6".into())
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "period-3 crossing vectors", secs(1), criterion_1),
        run(2, "period-5 crossing vectors", secs(1), criterion_2),
        run(3, "period-4 linear growth", secs(5), criterion_3),
        run(4, "chain growth lower bound", secs(30), criterion_4),
        run(5, "spectral radius and determinant identity", secs(5), criterion_5),
        run(6, "Fibonacci row sums", secs(5), criterion_6),
        run(7, "ReLU extraction equals iteration", secs(10), criterion_7),
        run(8, "alternating dataset bound", secs(10), criterion_8),
        run(9, "forced periods", secs(60), criterion_9),
        run(10, "period-3 brittleness", secs(5), criterion_10),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
