#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sizefn_core::persistence::Cornerpoint;
use sizefn_core::{
    DiagramPoint, DiscreteSizePair, IntervalSamples, MonotonePath, Orientation,
    SizeFunctionDiagram,
};

/// Random graph on at most `max_vertices` vertices. Values come from a small
/// set of quarter-integers so ties are frequent.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> DiscreteSizePair {
    let n = rng.gen_range(1..=max_vertices);
    let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-8..=8) as f64 / 4.0).collect();
    let p = rng.gen_range(0.1..0.6);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    DiscreteSizePair::from_graph(values, edges).unwrap().0
}

/// Query levels: every vertex value, midpoints between consecutive values,
/// and one level beyond each end.
pub fn query_levels(pair: &DiscreteSizePair) -> Vec<f64> {
    let mut vals = pair.values().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut levels = vals.clone();
    levels.extend(vals.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    levels.push(vals[0] - 1.0);
    levels.push(vals[vals.len() - 1] + 1.0);
    levels.sort_by(f64::total_cmp);
    levels
}

/// Random diagram whose coordinates are multiples of 1/4 in [−2, 2], so all
/// distances are exact in floating point.
pub fn random_diagram(rng: &mut ChaCha8Rng, infinity: usize, proper: usize) -> SizeFunctionDiagram {
    let coord = |rng: &mut ChaCha8Rng| rng.gen_range(-8..=8) as f64 / 4.0;
    let ks: Vec<f64> = (0..infinity).map(|_| coord(rng)).collect();
    let pts: Vec<Cornerpoint> = (0..proper)
        .map(|_| {
            let x = coord(rng);
            let y = x + rng.gen_range(1..=12) as f64 / 4.0;
            Cornerpoint { x, y, mult: 1 }
        })
        .collect();
    SizeFunctionDiagram::new(ks, pts).unwrap()
}

/// Random diagram with at most `budget` points in total.
pub fn random_small_diagram(rng: &mut ChaCha8Rng, budget: usize) -> SizeFunctionDiagram {
    let inf = rng.gen_range(0..=budget.min(2));
    let proper = rng.gen_range(0..=budget - inf);
    random_diagram(rng, inf, proper)
}

/// Random point of the extended half-plane (proper or at infinity), with
/// coordinates that are multiples of 1/4.
pub fn random_point(rng: &mut ChaCha8Rng) -> DiagramPoint {
    let x = rng.gen_range(-8..=8) as f64 / 4.0;
    match rng.gen_range(0..4) {
        0 => DiagramPoint::at_infinity(x),
        1 => DiagramPoint::diagonal(x),
        _ => DiagramPoint::proper(x, x + rng.gen_range(1..=12) as f64 / 4.0),
    }
}

/// Interval samples on `0..n` with dyadic values `k/64`, `|k| ≤ 256`.
pub fn dyadic_samples(rng: &mut ChaCha8Rng, n: usize) -> IntervalSamples {
    IntervalSamples::new(
        (0..n).map(|i| i as f64).collect(),
        (0..n).map(|_| rng.gen_range(-256..=256) as f64 / 64.0).collect(),
    )
    .unwrap()
}

/// Random monotone lattice path from `(0, 0)` to `(n − 1, m − 1)`.
pub fn random_path(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MonotonePath {
    let (mut i, mut j) = (0, 0);
    let mut steps = vec![(0, 0)];
    while (i, j) != (n - 1, m - 1) {
        let mut moves = Vec::with_capacity(3);
        if i + 1 < n {
            moves.push((i + 1, j));
        }
        if j + 1 < m {
            moves.push((i, j + 1));
        }
        if i + 1 < n && j + 1 < m {
            moves.push((i + 1, j + 1));
        }
        (i, j) = moves[rng.gen_range(0..moves.len())];
        steps.push((i, j));
    }
    let orientation = if rng.gen_bool(0.5) {
        Orientation::Forward
    } else {
        Orientation::Reversed
    };
    MonotonePath { orientation, steps }
}

/// Piecewise-linear function on [0, 1] through random knots, sampled on an
/// even grid merged with the knots, so every local extremum is a sample.
pub fn random_piecewise_linear(rng: &mut ChaCha8Rng, knots: usize, grid: usize) -> IntervalSamples {
    let mut xs: Vec<f64> = (0..knots.saturating_sub(2))
        .map(|_| rng.gen_range(0.05..0.95))
        .collect();
    xs.push(0.0);
    xs.push(1.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let ys: Vec<f64> = xs.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
    let eval = |t: f64| {
        let k = xs.partition_point(|&x| x <= t).clamp(1, xs.len() - 1);
        let (x0, x1, y0, y1) = (xs[k - 1], xs[k], ys[k - 1], ys[k]);
        if t == x0 {
            y0
        } else if t == x1 {
            y1
        } else {
            y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        }
    };
    let mut ts: Vec<f64> = (0..grid).map(|k| k as f64 / (grid - 1) as f64).collect();
    ts.extend(&xs);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let vals = ts.iter().map(|&t| eval(t)).collect();
    IntervalSamples::new(ts, vals).unwrap()
}
