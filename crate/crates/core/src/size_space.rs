//! Discrete size pairs: finite graphs carrying a measuring function on their
//! vertices.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacency used for the product grid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    /// Strong product: axis-aligned and diagonal neighbours (8-connectivity on
    /// a product of paths).
    #[default]
    Strong,
    /// Cartesian product: axis-aligned neighbours only.
    #[serde(rename = "4")]
    Four,
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Connectivity::Strong => "strong",
            Connectivity::Four => "4",
        })
    }
}

impl std::str::FromStr for Connectivity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" | "8" => Ok(Connectivity::Strong),
            "4" | "four" => Ok(Connectivity::Four),
            other => Err(Error::Parse(format!("unknown connectivity `{other}`"))),
        }
    }
}

/// Samples of a measuring function on a closed interval.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSamples {
    params: Vec<f64>,
    values: Vec<f64>,
}

impl IntervalSamples {
    pub fn new(params: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if params.len() != values.len() {
            return Err(Error::InvalidSamples(format!(
                "{} parameter points but {} values",
                params.len(),
                values.len()
            )));
        }
        if params.len() < 2 {
            return Err(Error::InvalidSamples(format!(
                "need at least 2 samples, got {}",
                params.len()
            )));
        }
        for (i, (&t, &v)) in params.iter().zip(&values).enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidSamples(format!("non-finite sample at row {i}")));
            }
        }
        if let Some(i) = params.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSamples(format!(
                "parameters not strictly increasing at row {}: {} then {}",
                i + 1,
                params[i],
                params[i + 1]
            )));
        }
        Ok(Self { params, values })
    }

    /// Evaluates `f` at each parameter point.
    pub fn from_fn(params: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = params.iter().map(|&t| f(t)).collect();
        Self::new(params, values)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Copy with every value passed through [`snap_value`].
    pub fn snapped(&self, tol: f64) -> Self {
        Self {
            params: self.params.clone(),
            values: self.values.iter().map(|&v| snap_value(v, tol)).collect(),
        }
    }

    /// Copy with `c` added to every value.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            params: self.params.clone(),
            values: self.values.iter().map(|&v| v + c).collect(),
        }
    }
}

/// Rounds `v` to the nearest multiple of `tol`; identity when `tol <= 0`.
pub fn snap_value(v: f64, tol: f64) -> f64 {
    if tol <= 0.0 {
        return v;
    }
    let s = (v / tol).round() * tol;
    // normalise -0.0
    if s == 0.0 {
        0.0
    } else {
        s
    }
}

/// What [`DiscreteSizePair::from_graph`] dropped from its input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphWarnings {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl GraphWarnings {
    pub fn is_clean(&self) -> bool {
        self.self_loops == 0 && self.duplicate_edges == 0
    }
}

/// A finite graph with a real value on each vertex.
///
/// Edges are stored once each as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteSizePair {
    values: Vec<f64>,
    edges: Vec<(usize, usize)>,
    label: String,
}

impl DiscreteSizePair {
    /// Path graph over the samples, in parameter order.
    pub fn from_interval_samples(samples: &IntervalSamples) -> Self {
        let n = samples.len();
        Self {
            values: samples.values.clone(),
            edges: (1..n).map(|i| (i - 1, i)).collect(),
            label: String::new(),
        }
    }

    /// Builds a pair from raw vertices and edges. Self-loops and repeated
    /// edges are dropped and counted in the returned warnings.
    pub fn from_graph(
        values: Vec<f64>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, GraphWarnings)> {
        if values.is_empty() {
            return Err(Error::EmptyPair);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        let len = values.len();
        let mut warnings = GraphWarnings::default();
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (a, b) in edges {
            for index in [a, b] {
                if index >= len {
                    return Err(Error::VertexOutOfRange { index, len });
                }
            }
            if a == b {
                warnings.self_loops += 1;
                continue;
            }
            let e = (a.min(b), a.max(b));
            if seen.insert(e) {
                kept.push(e);
            } else {
                warnings.duplicate_edges += 1;
            }
        }
        Ok((
            Self {
                values,
                edges: kept,
                label: String::new(),
            },
            warnings,
        ))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.values.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Number of connected components, by breadth-first traversal.
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.values.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.values.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn snapped(&self, tol: f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| snap_value(v, tol)).collect(),
            edges: self.edges.clone(),
            label: self.label.clone(),
        }
    }

    /// The product pair `(M×M, Φ)` with `Φ(u, v) = φ(u) − φ(v)`.
    ///
    /// Vertex `(u, v)` gets index `u * n + v`. Two product vertices are joined
    /// when one coordinate is equal and the other adjacent, and, under
    /// [`Connectivity::Strong`], also when both coordinates are adjacent.
    pub fn product_pair(&self, connectivity: Connectivity) -> Self {
        let n = self.values.len();
        let mut values = Vec::with_capacity(n * n);
        for &pu in &self.values {
            for &pv in &self.values {
                values.push(pu - pv);
            }
        }
        let idx = |u: usize, v: usize| u * n + v;
        let m = self.edges.len();
        let diagonal_edges = match connectivity {
            Connectivity::Strong => 2 * m * m,
            Connectivity::Four => 0,
        };
        let mut edges = Vec::with_capacity(2 * n * m + diagonal_edges);
        for u in 0..n {
            for &(a, b) in &self.edges {
                edges.push((idx(u, a), idx(u, b)));
                edges.push((idx(a, u), idx(b, u)));
            }
        }
        if connectivity == Connectivity::Strong {
            for &(a, b) in &self.edges {
                for &(c, d) in &self.edges {
                    edges.push((idx(a, c), idx(b, d)));
                    edges.push((idx(a, d), idx(b, c)));
                }
            }
        }
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        let label = if self.label.is_empty() {
            String::new()
        } else {
            format!("{}×{}", self.label, self.label)
        };
        Self {
            values,
            edges,
            label,
        }
    }
}
