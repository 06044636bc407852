//! Size functions of discrete size pairs.
//!
//! `ℓ(x, y)` counts the classes of `{φ ≤ x}` under connectivity inside
//! `{φ ≤ y}`. [`compute_diagram`] summarises `ℓ` by its cornerpoints using a
//! sublevel filtration with union-find and the elder rule; [`ell_bruteforce`],
//! [`multiplicity`] and [`multiplicity_at_infinity`] evaluate the definitions
//! directly and serve as oracles for it.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::size_space::DiscreteSizePair;
use crate::union_find::UnionFind;

/// A proper cornerpoint `(x, y)` with `x < y` and positive multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cornerpoint {
    pub x: f64,
    pub y: f64,
    pub mult: u32,
}

/// Cornerpoint multiset of a size function.
///
/// Infinity cornerpoints `(k, ∞)` are listed once per multiplicity, sorted.
/// Proper cornerpoints are sorted by `(x, y)` with equal points aggregated.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct SizeFunctionDiagram {
    infinity: Vec<f64>,
    points: Vec<Cornerpoint>,
}

#[derive(Deserialize)]
struct RawDiagram {
    infinity: Vec<f64>,
    #[serde(default)]
    points: Vec<Cornerpoint>,
}

impl TryFrom<RawDiagram> for SizeFunctionDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        SizeFunctionDiagram::new(raw.infinity, raw.points)
    }
}

impl SizeFunctionDiagram {
    /// Validates and normalises a diagram. Repeated proper cornerpoints are
    /// merged by adding multiplicities.
    pub fn new(mut infinity: Vec<f64>, points: Vec<Cornerpoint>) -> Result<Self> {
        if let Some(&k) = infinity.iter().find(|k| !k.is_finite()) {
            return Err(Error::Parse(format!("infinity cornerpoint at non-finite k = {k}")));
        }
        for c in &points {
            if !c.x.is_finite() || !c.y.is_finite() {
                return Err(Error::Parse(format!("non-finite cornerpoint ({}, {})", c.x, c.y)));
            }
            if c.x >= c.y {
                return Err(Error::BelowDiagonal { x: c.x, y: c.y });
            }
            if c.mult == 0 {
                return Err(Error::Parse(format!(
                    "cornerpoint ({}, {}) has zero multiplicity",
                    c.x, c.y
                )));
            }
        }
        infinity.sort_by(f64::total_cmp);
        Ok(Self {
            infinity,
            points: aggregate(points.into_iter().map(|c| (c.x, c.y, c.mult))),
        })
    }

    pub fn infinity(&self) -> &[f64] {
        &self.infinity
    }

    pub fn points(&self) -> &[Cornerpoint] {
        &self.points
    }

    /// Proper cornerpoints with multiplicity expanded into repeats.
    pub fn expanded_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points
            .iter()
            .flat_map(|c| std::iter::repeat((c.x, c.y)).take(c.mult as usize))
    }

    /// Total number of points counted with multiplicity.
    pub fn total_points(&self) -> usize {
        self.infinity.len() + self.points.iter().map(|c| c.mult as usize).sum::<usize>()
    }

    /// Multiplicity recorded for the proper cornerpoint `(x, y)`.
    pub fn mult_at(&self, x: f64, y: f64) -> u32 {
        self.points
            .iter()
            .find(|c| c.x == x && c.y == y)
            .map_or(0, |c| c.mult)
    }
}

fn aggregate(raw: impl Iterator<Item = (f64, f64, u32)>) -> Vec<Cornerpoint> {
    let mut raw: Vec<_> = raw.collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out: Vec<Cornerpoint> = Vec::new();
    for (x, y, mult) in raw {
        match out.last_mut() {
            Some(last) if last.x == x && last.y == y => last.mult += mult,
            _ => out.push(Cornerpoint { x, y, mult }),
        }
    }
    out
}

/// A point of the open half-plane above the diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllQuery {
    x: f64,
    y: f64,
}

impl EllQuery {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x < y {
            Ok(Self { x, y })
        } else {
            Err(Error::BelowDiagonal { x, y })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// Size function diagram of `pair`.
///
/// Vertices enter in `(value, index)` order. A vertex joins the oldest of its
/// already-present neighbouring components; every other neighbouring
/// component dies there, producing the pair `(birth, value)`. Pairs with
/// `birth == value` are dropped. Each surviving component contributes an
/// infinity cornerpoint at its minimum.
pub fn compute_diagram(pair: &DiscreteSizePair) -> SizeFunctionDiagram {
    let values = pair.values();
    let n = values.len();
    let adj = pair.adjacency();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| filtration_cmp(values, a, b));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    let mut uf = UnionFind::new(n);
    // birth vertex of the component rooted at each root
    let mut birth = vec![usize::MAX; n];
    let mut present = vec![false; n];
    let mut pairs = Vec::new();
    let mut roots = Vec::new();

    for &v in &order {
        roots.clear();
        for &w in &adj[v] {
            if present[w] {
                let r = uf.find(w);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        present[v] = true;
        let level = values[v];
        let Some(&eldest) = roots.iter().min_by_key(|&&r| rank[birth[r]]) else {
            birth[v] = v;
            continue;
        };
        let eldest_birth = birth[eldest];
        for &r in &roots {
            if r != eldest {
                let b = values[birth[r]];
                if b < level {
                    pairs.push((b, level, 1));
                }
            }
        }
        let mut root = eldest;
        for &r in &roots {
            root = uf.union(root, r);
        }
        root = uf.union(root, v);
        birth[root] = eldest_birth;
    }

    let mut infinity: Vec<f64> = (0..n)
        .filter(|&v| uf.find(v) == v)
        .map(|r| values[birth[r]])
        .collect();
    infinity.sort_by(f64::total_cmp);
    SizeFunctionDiagram {
        infinity,
        points: aggregate(pairs.into_iter()),
    }
}

fn filtration_cmp(values: &[f64], a: usize, b: usize) -> Ordering {
    values[a].total_cmp(&values[b]).then(a.cmp(&b))
}

/// `ℓ(x′, y′)` from the diagram: the number of cornerpoints `(x, y)` with
/// `x ≤ x′` and `y′ < y`, counted with multiplicity, plus the infinity
/// cornerpoints `k ≤ x′`.
pub fn ell_query(diagram: &SizeFunctionDiagram, q: EllQuery) -> u64 {
    let at_infinity = diagram.infinity.iter().filter(|&&k| k <= q.x).count() as u64;
    let proper: u64 = diagram
        .points
        .iter()
        .filter(|c| c.x <= q.x && q.y < c.y)
        .map(|c| u64::from(c.mult))
        .sum();
    at_infinity + proper
}

/// `ℓ(x, y)` straight from the definition: breadth-first search over the
/// subgraph induced by `{φ ≤ y}`, counting components that reach `{φ ≤ x}`.
pub fn ell_bruteforce(pair: &DiscreteSizePair, q: EllQuery) -> u64 {
    let values = pair.values();
    let adj = pair.adjacency();
    let mut seen = vec![false; values.len()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..values.len() {
        if seen[start] || values[start] > q.y {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut reaches_x = false;
        while let Some(u) = queue.pop_front() {
            reaches_x |= values[u] <= q.x;
            for &w in &adj[u] {
                if !seen[w] && values[w] <= q.y {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if reaches_x {
            count += 1;
        }
    }
    count
}

/// Step size at which the multiplicity sums have stabilised: a quarter of
/// the smallest gap between distinct values of `values ∪ extra`.
fn stable_epsilon(values: &[f64], extra: &[f64]) -> f64 {
    let mut all: Vec<f64> = values.iter().chain(extra).copied().collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    let gap = all
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if gap.is_finite() {
        gap / 4.0
    } else {
        1.0
    }
}

/// Multiplicity `μ(x, y)` as the four-term alternating sum of brute-force
/// `ℓ` values around `(x, y)`.
pub fn multiplicity(pair: &DiscreteSizePair, x: f64, y: f64) -> Result<i64> {
    if x >= y {
        return Err(Error::BelowDiagonal { x, y });
    }
    let eps = stable_epsilon(pair.values(), &[x, y]);
    let ell = |a: f64, b: f64| -> Result<i64> {
        Ok(ell_bruteforce(pair, EllQuery::new(a, b)?) as i64)
    };
    Ok(ell(x + eps, y - eps)? - ell(x - eps, y - eps)? - ell(x + eps, y + eps)?
        + ell(x - eps, y + eps)?)
}

/// Multiplicity of the vertical line `x = k`, from `ℓ(k ± ε, 1/ε)`.
pub fn multiplicity_at_infinity(pair: &DiscreteSizePair, k: f64) -> i64 {
    let scale = pair
        .values()
        .iter()
        .fold(k.abs(), |m, v| m.max(v.abs()));
    let eps = stable_epsilon(pair.values(), &[k]).min(1.0 / (2.0 * (scale + 1.0)));
    let top = 1.0 / eps;
    let ell = |a: f64| ell_bruteforce(pair, EllQuery { x: a, y: top }) as i64;
    ell(k + eps) - ell(k - eps)
}
