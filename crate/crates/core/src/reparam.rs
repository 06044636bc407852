//! Upper estimates of the natural and range pseudodistances between interval
//! size pairs, by searching discrete monotone reparametrizations.
//!
//! A [`MonotonePath`] is a lattice path through the `n × m` grid of sample
//! pairs. Its cost under a seminorm is the seminorm of the aligned
//! differences `a[i] − b[j]`. Plateaus (several samples of one side aligned
//! with a single sample of the other) are allowed, so the minimum over paths
//! bounds the infimum over homeomorphisms from above only in the limit of
//! fine grids; it is reported as an estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seminorms::{min_max, Seminorm, SeminormId};
use crate::size_space::IntervalSamples;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Forward,
    /// The second pair's samples are traversed right to left.
    Reversed,
}

/// A monotone alignment between the sample indices of two interval pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonePath {
    pub orientation: Orientation,
    pub steps: Vec<(usize, usize)>,
}

impl MonotonePath {
    /// Staircase through monotone waypoints. Between consecutive waypoints
    /// the longer side advances every step and the shorter side as evenly as
    /// integer rounding allows.
    pub fn through(waypoints: &[(usize, usize)], orientation: Orientation) -> Result<Self> {
        let Some(&first) = waypoints.first() else {
            return Err(Error::InvalidPath("no waypoints".into()));
        };
        let mut steps = vec![first];
        for w in waypoints.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            if i1 < i0 || j1 < j0 {
                return Err(Error::InvalidPath(format!(
                    "waypoint ({i1}, {j1}) precedes ({i0}, {j0})"
                )));
            }
            let (di, dj) = (i1 - i0, j1 - j0);
            let span = di.max(dj);
            for k in 1..=span {
                steps.push((i0 + (k * di + span / 2) / span, j0 + (k * dj + span / 2) / span));
            }
        }
        Ok(Self { orientation, steps })
    }

    /// Straight staircase from `(0, 0)` to `(n − 1, m − 1)`.
    pub fn diagonal(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidPath("empty grid".into()));
        }
        Self::through(&[(0, 0), (n - 1, m - 1)], Orientation::Forward)
    }

    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPath(msg));
        match (self.steps.first(), self.steps.last()) {
            (Some(&(0, 0)), Some(&end)) if end == (n.wrapping_sub(1), m.wrapping_sub(1)) => {}
            (Some(&start), Some(&end)) => {
                return bad(format!(
                    "path runs {start:?} to {end:?}, expected (0, 0) to ({}, {})",
                    n as isize - 1,
                    m as isize - 1
                ))
            }
            _ => return bad("empty path".into()),
        }
        for w in self.steps.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            let di = i1.wrapping_sub(i0);
            let dj = j1.wrapping_sub(j0);
            if di > 1 || dj > 1 || di + dj == 0 {
                return bad(format!("illegal step {:?} -> {:?}", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// The same alignment seen from the other pair.
    pub fn transposed(&self) -> Self {
        let mut steps: Vec<(usize, usize)> = self.steps.iter().map(|&(i, j)| (j, i)).collect();
        if self.orientation == Orientation::Reversed {
            // (i, j) aligned a[i] with b[m−1−j]; seen from b it aligns b[j]
            // with a[n−1−i], so reverse both coordinates and the order
            let (m, n) = steps.last().map_or((0, 0), |&(j, i)| (j + 1, i + 1));
            steps = steps
                .into_iter()
                .rev()
                .map(|(j, i)| (m - 1 - j, n - 1 - i))
                .collect();
        }
        Self {
            orientation: self.orientation,
            steps,
        }
    }
}

/// `a[i] − b[j]` along the path, with `b` reversed first for a reversed
/// orientation.
pub fn aligned_differences(a: &[f64], b: &[f64], h: &MonotonePath) -> Result<Vec<f64>> {
    h.validate(a.len(), b.len())?;
    let m = b.len();
    Ok(h.steps
        .iter()
        .map(|&(i, j)| match h.orientation {
            Orientation::Forward => a[i] - b[j],
            Orientation::Reversed => a[i] - b[m - 1 - j],
        })
        .collect())
}

/// Seminorm of the aligned differences.
pub fn path_cost(a: &IntervalSamples, b: &IntervalSamples, h: &MonotonePath, s: SeminormId) -> Result<f64> {
    s.evaluate(&aligned_differences(a.values(), b.values(), h)?)
}

/// Result of [`estimate_upper`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub seminorm: SeminormId,
    pub n: usize,
    pub m: usize,
    /// Whether the range search only tried a subsample of candidate minima.
    pub coarse: bool,
    /// Number of constrained min-max sweeps run by the range search.
    pub sweeps: usize,
    pub witness: MonotonePath,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EstimateOptions {
    /// Range search: try at most [`COARSE_CANDIDATES`] evenly spaced
    /// candidate minima instead of all of them.
    pub coarse: bool,
}

pub const COARSE_CANDIDATES: usize = 256;

/// Minimum path cost over all monotone paths in both orientations.
pub fn estimate_upper(a: &IntervalSamples, b: &IntervalSamples, s: SeminormId) -> Estimate {
    estimate_upper_with(a, b, s, EstimateOptions::default())
}

pub fn estimate_upper_with(
    a: &IntervalSamples,
    b: &IntervalSamples,
    s: SeminormId,
    options: EstimateOptions,
) -> Estimate {
    let (n, m) = (a.len(), b.len());
    let reversed: Vec<f64> = b.values().iter().rev().copied().collect();
    let mut best: Option<Estimate> = None;
    for (orientation, bv) in [
        (Orientation::Forward, b.values()),
        (Orientation::Reversed, reversed.as_slice()),
    ] {
        let grid = Grid::new(a.values(), bv);
        let (steps, sweeps) = match s {
            SeminormId::Sup => {
                let abs: Vec<f64> = grid.diff.iter().map(|d| d.abs()).collect();
                (Grid { diff: abs, ..grid }.bottleneck_path(f64::NEG_INFINITY), 1)
            }
            SeminormId::Range => grid.range_search(options.coarse),
        };
        let witness = MonotonePath { orientation, steps };
        let value = path_cost(a, b, &witness, s).expect("search paths are valid");
        let candidate = Estimate {
            value,
            seminorm: s,
            n,
            m,
            coarse: options.coarse && s == SeminormId::Range,
            sweeps,
            witness,
        };
        best = match best {
            Some(prev) if prev.value <= candidate.value => Some(Estimate {
                sweeps: prev.sweeps + sweeps,
                ..prev
            }),
            Some(prev) => Some(Estimate {
                sweeps: prev.sweeps + sweeps,
                ..candidate
            }),
            None => Some(candidate),
        };
    }
    best.expect("two orientations searched")
}

/// Row-major `n × m` table of aligned differences.
struct Grid {
    n: usize,
    m: usize,
    diff: Vec<f64>,
}

impl Grid {
    fn new(a: &[f64], b: &[f64]) -> Self {
        let diff = a.iter().flat_map(|&x| b.iter().map(move |&y| x - y)).collect();
        Self {
            n: a.len(),
            m: b.len(),
            diff,
        }
    }

    /// Min over monotone paths of the max cell value, using only cells with
    /// value `>= floor`; `∞` when no such path exists. Rolling single row.
    fn bottleneck_value(&self, floor: f64, row: &mut [f64]) -> f64 {
        let (n, m) = (self.n, self.m);
        let cell = |k: usize| {
            let v = self.diff[k];
            if v >= floor {
                v
            } else {
                f64::INFINITY
            }
        };
        row[0] = cell(0);
        for j in 1..m {
            row[j] = cell(j).max(row[j - 1]);
        }
        for i in 1..n {
            let base = i * m;
            let mut diag = row[0];
            row[0] = cell(base).max(row[0]);
            for j in 1..m {
                let up = row[j];
                let best = up.min(row[j - 1]).min(diag);
                diag = up;
                row[j] = cell(base + j).max(best);
            }
        }
        row[m - 1]
    }

    /// Optimal path for [`Self::bottleneck_value`], recovered from the full
    /// table. Ties prefer the diagonal predecessor, then the previous row.
    fn bottleneck_path(&self, floor: f64) -> Vec<(usize, usize)> {
        let (n, m) = (self.n, self.m);
        let mut t = vec![f64::INFINITY; n * m];
        for i in 0..n {
            for j in 0..m {
                let v = self.diff[i * m + j];
                let v = if v >= floor { v } else { f64::INFINITY };
                let prev = match (i, j) {
                    (0, 0) => f64::NEG_INFINITY,
                    (0, _) => t[j - 1],
                    (_, 0) => t[(i - 1) * m],
                    _ => t[(i - 1) * m + j - 1]
                        .min(t[(i - 1) * m + j])
                        .min(t[i * m + j - 1]),
                };
                t[i * m + j] = v.max(prev);
            }
        }
        let mut steps = vec![(n - 1, m - 1)];
        let (mut i, mut j) = (n - 1, m - 1);
        while (i, j) != (0, 0) {
            let mut options = Vec::with_capacity(3);
            if i > 0 && j > 0 {
                options.push((i - 1, j - 1));
            }
            if i > 0 {
                options.push((i - 1, j));
            }
            if j > 0 {
                options.push((i, j - 1));
            }
            let mut pick = options[0];
            for &o in &options[1..] {
                if t[o.0 * m + o.1] < t[pick.0 * m + pick.1] {
                    pick = o;
                }
            }
            (i, j) = pick;
            steps.push(pick);
        }
        steps.reverse();
        steps
    }

    /// Minimises `max − min` of the differences along a path.
    ///
    /// The optimal path's minimum is some cell value not above either corner.
    /// For each such candidate `c` (ascending), `upper(c)` is the min-max
    /// over paths avoiding cells below `c`; it is non-decreasing in `c`, and
    /// the objective is `upper(c) − c`. Candidate ranges are explored by
    /// bisection, skipping any range whose `upper` is constant (its best
    /// candidate is the right end) or whose lower bound
    /// `upper(left) − c(right)` cannot beat the incumbent.
    fn range_search(&self, coarse: bool) -> (Vec<(usize, usize)>, usize) {
        let corner = self.diff[0].min(self.diff[self.n * self.m - 1]);
        let mut candidates: Vec<f64> = self.diff.iter().copied().filter(|&d| d <= corner).collect();
        candidates.sort_by(f64::total_cmp);
        candidates.dedup();
        if coarse && candidates.len() > COARSE_CANDIDATES {
            let k = candidates.len();
            let mut picked: Vec<f64> = (0..COARSE_CANDIDATES)
                .map(|t| candidates[t * (k - 1) / (COARSE_CANDIDATES - 1)])
                .collect();
            picked.dedup();
            candidates = picked;
        }

        let mut row = vec![0.0; self.m];
        let mut upper = vec![f64::NAN; candidates.len()];
        let mut sweeps = 0usize;
        let mut eval = |k: usize, upper: &mut Vec<f64>| -> f64 {
            if upper[k].is_nan() {
                upper[k] = self.bottleneck_value(candidates[k], &mut row);
                sweeps += 1;
            }
            upper[k]
        };

        let last = candidates.len() - 1;
        let u_lo = eval(0, &mut upper);
        let u_hi = eval(last, &mut upper);
        let objective = |k: usize, u: f64| u - candidates[k];
        let mut best = (objective(0, u_lo), 0usize);
        if objective(last, u_hi) < best.0 {
            best = (objective(last, u_hi), last);
        }

        let mut stack = vec![(0usize, last)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo <= 1 {
                continue;
            }
            let (ul, uh) = (upper[lo], upper[hi]);
            if ul == uh {
                continue;
            }
            if ul - candidates[hi] >= best.0 {
                continue;
            }
            let mid = lo + (hi - lo) / 2;
            let um = eval(mid, &mut upper);
            let om = objective(mid, um);
            if om < best.0 || (om == best.0 && mid < best.1) {
                best = (om, mid);
            }
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
        (self.bottleneck_path(candidates[best.1]), sweeps)
    }
}

/// Largest and smallest aligned difference along `h`.
pub fn aligned_extremes(a: &IntervalSamples, b: &IntervalSamples, h: &MonotonePath) -> Result<(f64, f64)> {
    let d = aligned_differences(a.values(), b.values(), h)?;
    let (lo, hi) = min_max(&d);
    Ok((hi, lo))
}
