//! The cornerpoint pseudometric and the matching distance between size
//! functions.
//!
//! Representative sequences pad each diagram with countably many diagonal
//! points, so a bijection may send any cornerpoint to the diagonal at cost
//! `(y − x)/2`. Infinity cornerpoints can only be matched to each other at
//! finite cost; the two families are handled separately and the matching
//! distance is the larger of the two bottleneck values.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::persistence::SizeFunctionDiagram;

/// Largest number of points (both diagrams, with multiplicity) accepted by
/// [`matching_distance_bruteforce`].
pub const BRUTEFORCE_BUDGET: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointRole {
    Proper,
    Infinity,
    Diagonal,
}

/// A point of the closed extended half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub x: f64,
    pub y: ExtendedReal,
    pub role: PointRole,
}

impl DiagramPoint {
    pub fn proper(x: f64, y: f64) -> Self {
        Self {
            x,
            y: ExtendedReal::Finite(y),
            role: PointRole::Proper,
        }
    }

    pub fn at_infinity(k: f64) -> Self {
        Self {
            x: k,
            y: ExtendedReal::Infinity,
            role: PointRole::Infinity,
        }
    }

    pub fn diagonal(x: f64) -> Self {
        Self {
            x,
            y: ExtendedReal::Finite(x),
            role: PointRole::Diagonal,
        }
    }

    /// Nearest diagonal point in the max-norm.
    pub fn projection(&self) -> DiagramPoint {
        match self.y {
            ExtendedReal::Finite(y) => DiagramPoint::diagonal((self.x + y) / 2.0),
            ExtendedReal::Infinity => DiagramPoint::diagonal(self.x),
        }
    }
}

/// `min{ max{|x−x′|, |y−y′|}, max{(y−x)/2, (y′−x′)/2} }` under the ∞
/// conventions of [`ExtendedReal`].
pub fn point_distance(a: &DiagramPoint, b: &DiagramPoint) -> ExtendedReal {
    let dx = ExtendedReal::Finite((a.x - b.x).abs());
    let dy = a.y.sub(b.y).abs();
    dx.max(dy).min(diagonal_gap(a).max(diagonal_gap(b)))
}

/// Cost `(y − x)/2` of moving a point onto the diagonal.
pub fn diagonal_gap(a: &DiagramPoint) -> ExtendedReal {
    a.y.sub(ExtendedReal::Finite(a.x)).half()
}

/// One pair of an optimal matching.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub from: DiagramPoint,
    pub to: DiagramPoint,
    pub cost: ExtendedReal,
}

/// Matching distance between two size functions.
pub fn matching_distance(d1: &SizeFunctionDiagram, d2: &SizeFunctionDiagram) -> ExtendedReal {
    optimal_matching(d1, d2).0
}

/// Matching distance together with a bijection attaining it.
///
/// Points matched to the diagonal are reported against their projection;
/// diagonal-to-diagonal pairs are omitted. When the numbers of infinity
/// cornerpoints differ the distance is `∞` and the unmatched infinity
/// cornerpoints are reported against the diagonal at cost `∞`.
pub fn optimal_matching(
    d1: &SizeFunctionDiagram,
    d2: &SizeFunctionDiagram,
) -> (ExtendedReal, Vec<MatchedPair>) {
    optimal_matching_points(&diagram_points(d1), &diagram_points(d2))
}

/// All points of a diagram, multiplicities expanded, infinity cornerpoints
/// first.
pub fn diagram_points(d: &SizeFunctionDiagram) -> Vec<DiagramPoint> {
    d.infinity()
        .iter()
        .map(|&k| DiagramPoint::at_infinity(k))
        .chain(d.expanded_points().map(|(x, y)| DiagramPoint::proper(x, y)))
        .collect()
}

/// [`optimal_matching`] on explicit finite parts of representative
/// sequences, which may include diagonal points.
pub fn optimal_matching_points(
    a: &[DiagramPoint],
    b: &[DiagramPoint],
) -> (ExtendedReal, Vec<MatchedPair>) {
    let at_infinity = |ps: &[DiagramPoint]| -> Vec<f64> {
        ps.iter()
            .filter(|p| p.role == PointRole::Infinity)
            .map(|p| p.x)
            .collect()
    };
    let finite_part = |ps: &[DiagramPoint]| -> Vec<DiagramPoint> {
        ps.iter()
            .filter(|p| p.role != PointRole::Infinity)
            .copied()
            .collect()
    };
    let (inf_cost, mut pairs) = match_infinity(&at_infinity(a), &at_infinity(b));
    let (proper_cost, mut proper_pairs) = bottleneck_with_diagonal(&finite_part(a), &finite_part(b));
    pairs.append(&mut proper_pairs);
    pairs.retain(|p| !(p.from.role == PointRole::Diagonal && p.to.role == PointRole::Diagonal));
    (inf_cost.max(proper_cost), pairs)
}

/// Sorted pairing on the line at infinity, which minimises the largest
/// `|k − k′|`.
fn match_infinity(ks1: &[f64], ks2: &[f64]) -> (ExtendedReal, Vec<MatchedPair>) {
    let mut s1 = ks1.to_vec();
    let mut s2 = ks2.to_vec();
    s1.sort_by(f64::total_cmp);
    s2.sort_by(f64::total_cmp);
    let mut cost = ExtendedReal::ZERO;
    let mut pairs = Vec::new();
    for (&k1, &k2) in s1.iter().zip(&s2) {
        let (p, q) = (DiagramPoint::at_infinity(k1), DiagramPoint::at_infinity(k2));
        let c = point_distance(&p, &q);
        cost = cost.max(c);
        pairs.push(MatchedPair { from: p, to: q, cost: c });
    }
    for &k in s1.iter().skip(s2.len()) {
        let p = DiagramPoint::at_infinity(k);
        cost = ExtendedReal::Infinity;
        pairs.push(MatchedPair {
            from: p,
            to: p.projection(),
            cost: ExtendedReal::Infinity,
        });
    }
    for &k in s2.iter().skip(s1.len()) {
        let q = DiagramPoint::at_infinity(k);
        cost = ExtendedReal::Infinity;
        pairs.push(MatchedPair {
            from: q.projection(),
            to: q,
            cost: ExtendedReal::Infinity,
        });
    }
    (cost, pairs)
}

fn finite(v: ExtendedReal) -> f64 {
    v.finite().expect("finite points have finite costs")
}

/// Bottleneck matching between finite point sets where each point may also
/// retire to the diagonal. Binary search over the candidate costs with a
/// perfect-matching feasibility test.
fn bottleneck_with_diagonal(a: &[DiagramPoint], b: &[DiagramPoint]) -> (ExtendedReal, Vec<MatchedPair>) {
    let (n, m) = (a.len(), b.len());
    if n + m == 0 {
        return (ExtendedReal::ZERO, Vec::new());
    }
    let cross: Vec<Vec<f64>> = a
        .iter()
        .map(|p| b.iter().map(|q| finite(point_distance(p, q))).collect())
        .collect();
    let gap_a: Vec<f64> = a.iter().map(|p| finite(diagonal_gap(p))).collect();
    let gap_b: Vec<f64> = b.iter().map(|q| finite(diagonal_gap(q))).collect();

    let mut candidates: Vec<f64> = cross
        .iter()
        .flatten()
        .chain(&gap_a)
        .chain(&gap_b)
        .copied()
        .collect();
    candidates.push(0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let solve = |t: f64| -> Option<Vec<Option<usize>>> {
        // left: a_0..a_n, then diagonal copies of b; right: b_0..b_m, then
        // diagonal copies of a
        let mut adj = vec![Vec::new(); n + m];
        for i in 0..n {
            for j in 0..m {
                if cross[i][j] <= t {
                    adj[i].push(j);
                }
            }
            if gap_a[i] <= t {
                adj[i].push(m + i);
            }
        }
        for j in 0..m {
            if gap_b[j] <= t {
                adj[n + j].push(j);
            }
            adj[n + j].extend((0..n).map(|i| m + i));
        }
        let matching = hopcroft_karp(&adj, n + m);
        let size = matching.iter().filter(|r| r.is_some()).count();
        (size == n + m).then_some(matching)
    };

    // the largest candidate is always feasible: everything retires
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if solve(candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = candidates[lo];
    let matching = solve(t).expect("feasible at the optimum");

    let mut pairs = Vec::new();
    for (i, r) in matching.iter().take(n).enumerate() {
        match r {
            Some(j) if *j < m => pairs.push(MatchedPair {
                from: a[i],
                to: b[*j],
                cost: ExtendedReal::Finite(cross[i][*j]),
            }),
            _ => pairs.push(MatchedPair {
                from: a[i],
                to: a[i].projection(),
                cost: ExtendedReal::Finite(gap_a[i]),
            }),
        }
    }
    for (j, r) in matching.iter().skip(n).enumerate() {
        if matches!(r, Some(k) if *k < m) {
            pairs.push(MatchedPair {
                from: b[j].projection(),
                to: b[j],
                cost: ExtendedReal::Finite(gap_b[j]),
            });
        }
    }
    (ExtendedReal::Finite(t), pairs)
}

/// Maximum bipartite matching. Returns, for each left vertex, its partner.
fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    let mut dist = vec![0usize; left];

    loop {
        // layer free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next_edge = vec![0usize; left];
        for u in 0..left {
            if match_l[u] == FREE {
                augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut next_edge);
            }
        }
    }
    match_l
        .into_iter()
        .map(|v| (v != FREE).then_some(v))
        .collect()
}

fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    const FREE: usize = usize::MAX;
    // iterative DFS along the layered graph
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if next_edge[u] == adj[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[u][next_edge[u]];
        let w = match_r[v];
        if w == FREE {
            // flip the path
            for &x in stack.iter().rev() {
                let y = adj[x][next_edge[x]];
                match_l[x] = y;
                match_r[y] = x;
            }
            return true;
        }
        if dist[w] == dist[u] + 1 {
            stack.push(w);
        } else {
            next_edge[u] += 1;
        }
    }
    false
}

/// Matching distance by exhaustive enumeration of bijections, for diagrams
/// with at most [`BRUTEFORCE_BUDGET`] points in total.
///
/// Every point of either diagram, infinity cornerpoints included, is paired
/// with a point of the other diagram or with the diagonal. Costs come from
/// [`point_distance`] alone.
pub fn matching_distance_bruteforce(
    d1: &SizeFunctionDiagram,
    d2: &SizeFunctionDiagram,
) -> Result<ExtendedReal> {
    let points = d1.total_points() + d2.total_points();
    if points > BRUTEFORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            points,
            limit: BRUTEFORCE_BUDGET,
        });
    }
    let a = diagram_points(d1);
    let b = diagram_points(d2);
    Ok(matching_distance_points_bruteforce(&a, &b))
}

/// Exhaustive search on explicit point lists; no budget check.
pub fn matching_distance_points_bruteforce(a: &[DiagramPoint], b: &[DiagramPoint]) -> ExtendedReal {
    let mut used = vec![false; b.len()];
    enumerate(a, b, 0, &mut used, ExtendedReal::ZERO)
}

fn enumerate(
    a: &[DiagramPoint],
    b: &[DiagramPoint],
    i: usize,
    used: &mut [bool],
    acc: ExtendedReal,
) -> ExtendedReal {
    if i == a.len() {
        return b
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .fold(acc, |c, (q, _)| c.max(point_distance(q, &q.projection())));
    }
    let p = &a[i];
    let mut best = enumerate(a, b, i + 1, used, acc.max(point_distance(p, &p.projection())));
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            let c = enumerate(a, b, i + 1, used, acc.max(point_distance(p, &b[j])));
            used[j] = false;
            best = best.min(c);
        }
    }
    best
}
