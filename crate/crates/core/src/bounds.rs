//! Certified lower bounds for the natural pseudodistance and the range
//! pseudodistance, via matching distances of size functions.
//!
//! * natural: `d_match(ℓ(M,φ), ℓ(N,ψ)) ≤ δ((M,φ),(N,ψ))`;
//! * range: `d_match(ℓ(M×M,Φ), ℓ(N×N,Ψ)) ≤ δ_Λ((M,φ),(N,ψ))` where
//!   `Φ(p,q) = φ(p) − φ(q)`, valid whenever `M` and `N` are homeomorphic.

use serde::Serialize;

use crate::error::Result;
use crate::extended::ExtendedReal;
use crate::matching::{optimal_matching, MatchedPair};
use crate::persistence::{compute_diagram, SizeFunctionDiagram};
use crate::reparam::{aligned_differences, MonotonePath};
use crate::seminorms::min_max;
use crate::size_space::{Connectivity, DiscreteSizePair, IntervalSamples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Base pairs compared; bounds `δ`.
    NaturalLower,
    /// Product pairs compared; bounds `δ_Λ`.
    LambdaLower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub left_label: String,
    pub right_label: String,
    pub left_vertices: usize,
    pub right_vertices: usize,
    /// Product adjacency; `None` for the natural bound.
    pub connectivity: Option<Connectivity>,
    pub left_components: usize,
    pub right_components: usize,
    /// Set when the component counts differ: the spaces cannot be
    /// homeomorphic and the pseudodistances are infinite, so the value is
    /// not a meaningful bound.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub bound_value: ExtendedReal,
    pub left_diagram: SizeFunctionDiagram,
    pub right_diagram: SizeFunctionDiagram,
    pub matching: Vec<MatchedPair>,
    pub provenance: Provenance,
}

fn report(
    kind: BoundKind,
    a: &DiscreteSizePair,
    b: &DiscreteSizePair,
    left: SizeFunctionDiagram,
    right: SizeFunctionDiagram,
    connectivity: Option<Connectivity>,
) -> BoundReport {
    let (bound_value, matching) = optimal_matching(&left, &right);
    let (lc, rc) = (a.component_count(), b.component_count());
    let note = (lc != rc).then(|| {
        format!("component counts differ ({lc} vs {rc}); no homeomorphism exists, bound is void")
    });
    BoundReport {
        kind,
        bound_value,
        left_diagram: left,
        right_diagram: right,
        matching,
        provenance: Provenance {
            left_label: a.label().to_string(),
            right_label: b.label().to_string(),
            left_vertices: a.vertex_count(),
            right_vertices: b.vertex_count(),
            connectivity,
            left_components: lc,
            right_components: rc,
            note,
        },
    }
}

/// Matching distance between the size functions of the two pairs.
pub fn natural_lower_bound(a: &DiscreteSizePair, b: &DiscreteSizePair) -> BoundReport {
    report(
        BoundKind::NaturalLower,
        a,
        b,
        compute_diagram(a),
        compute_diagram(b),
        None,
    )
}

/// Matching distance between the size functions of the two product pairs.
pub fn lambda_lower_bound(
    a: &DiscreteSizePair,
    b: &DiscreteSizePair,
    connectivity: Connectivity,
) -> BoundReport {
    let left = compute_diagram(&a.product_pair(connectivity));
    let right = compute_diagram(&b.product_pair(connectivity));
    report(BoundKind::LambdaLower, a, b, left, right, Some(connectivity))
}

/// Both sides of the identity relating the product formulation to the range
/// seminorm along one alignment `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RestrictionReport {
    /// `max |Φ(p,q) − Ψ(h(p),h(q))|` over aligned index pairs.
    pub product_side: f64,
    /// `max(φ − ψ∘h) − min(φ − ψ∘h)`.
    pub range_side: f64,
}

impl RestrictionReport {
    pub fn exact(&self) -> bool {
        self.product_side == self.range_side
    }

    pub fn gap(&self) -> f64 {
        (self.product_side - self.range_side).abs()
    }
}

/// Evaluates both sides for `H = (h, h)`.
///
/// The two sides agree in exact arithmetic; in floating point they are
/// bit-identical whenever the sample values make every difference exact
/// (for instance dyadic rationals of bounded size).
pub fn restriction_identity_check(
    a: &IntervalSamples,
    b: &IntervalSamples,
    h: &MonotonePath,
) -> Result<RestrictionReport> {
    let diffs = aligned_differences(a.values(), b.values(), h)?;
    let m = b.len();
    let pairs: Vec<(f64, f64)> = h
        .steps
        .iter()
        .map(|&(i, j)| {
            let j = match h.orientation {
                crate::reparam::Orientation::Forward => j,
                crate::reparam::Orientation::Reversed => m - 1 - j,
            };
            (a.values()[i], b.values()[j])
        })
        .collect();
    let mut product_side: f64 = 0.0;
    for &(ap, bp) in &pairs {
        for &(aq, bq) in &pairs {
            let big_phi = ap - aq;
            let big_psi = bp - bq;
            product_side = product_side.max((big_phi - big_psi).abs());
        }
    }
    let (lo, hi) = min_max(&diffs);
    Ok(RestrictionReport {
        product_side,
        range_side: hi - lo,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;
    use crate::reparam::Orientation;

    fn critical(f: impl Fn(f64) -> f64) -> IntervalSamples {
        IntervalSamples::from_fn(vec![0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI], f)
            .unwrap()
            .snapped(1e-12)
    }

    fn pair(s: &IntervalSamples) -> DiscreteSizePair {
        DiscreteSizePair::from_interval_samples(s)
    }

    #[test]
    fn sine_bounds_on_critical_grid() {
        let a = pair(&critical(f64::sin));
        let b = pair(&critical(|t| 2.0 * (2.0 * t).sin()));
        let natural = natural_lower_bound(&a, &b);
        assert_eq!(natural.bound_value, ExtendedReal::Finite(2.0));
        assert_eq!(natural.kind, BoundKind::NaturalLower);
        let lambda = lambda_lower_bound(&a, &b, Connectivity::Strong);
        assert_eq!(lambda.bound_value, ExtendedReal::Finite(3.0));
        let lambda4 = lambda_lower_bound(&a, &b, Connectivity::Four);
        assert_eq!(lambda4.bound_value, ExtendedReal::Finite(3.0));
    }

    #[test]
    fn self_bounds_vanish() {
        let a = pair(&critical(f64::sin));
        assert_eq!(natural_lower_bound(&a, &a).bound_value, ExtendedReal::ZERO);
        assert_eq!(
            lambda_lower_bound(&a, &a, Connectivity::Strong).bound_value,
            ExtendedReal::ZERO
        );
    }

    #[test]
    fn shifts() {
        let s = critical(f64::sin);
        let shifted = s.shifted(5.0);
        let (a, b) = (pair(&s), pair(&shifted));
        assert_eq!(natural_lower_bound(&a, &b).bound_value, ExtendedReal::Finite(5.0));
        assert_eq!(
            lambda_lower_bound(&a, &b, Connectivity::Strong).bound_value,
            ExtendedReal::ZERO
        );
    }

    #[test]
    fn component_mismatch_is_annotated() {
        let (a, _) = DiscreteSizePair::from_graph(vec![0.0, 1.0], [(0, 1)]).unwrap();
        let (b, _) = DiscreteSizePair::from_graph(vec![0.0, 1.0], []).unwrap();
        let r = natural_lower_bound(&a, &b);
        assert_eq!(r.bound_value, ExtendedReal::Infinity);
        assert!(r.provenance.note.is_some());
        assert!(natural_lower_bound(&a, &a).provenance.note.is_none());
    }

    #[test]
    fn restriction_identity_on_identity_alignment() {
        let a = critical(f64::sin);
        let h = MonotonePath::diagonal(5, 5).unwrap();
        let r = restriction_identity_check(&a, &a, &h).unwrap();
        assert_eq!((r.product_side, r.range_side), (0.0, 0.0));
    }

    #[test]
    fn restriction_identity_near_optimal_alignment() {
        let n = 257;
        let params: Vec<f64> = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
        let a = IntervalSamples::from_fn(params.clone(), f64::sin).unwrap();
        let b = IntervalSamples::from_fn(params, |t| 2.0 * (2.0 * t).sin()).unwrap();
        let half = (n - 1) / 2;
        let h = MonotonePath::through(
            &[(0, 0), (n - 2, half), (n - 1, half + 1), (n - 1, n - 1)],
            Orientation::Forward,
        )
        .unwrap();
        let r = restriction_identity_check(&a, &b, &h).unwrap();
        assert!(r.gap() < 1e-12, "{r:?}");
        assert!(r.range_side >= 3.0 && r.range_side < 3.1, "{r:?}");
    }

    #[test]
    fn report_serializes() {
        let a = pair(&critical(f64::sin));
        let b = pair(&critical(|t| 2.0 * (2.0 * t).sin()));
        let v = serde_json::to_value(lambda_lower_bound(&a, &b, Connectivity::Strong)).unwrap();
        assert_eq!(v["kind"], "lambda-lower");
        assert_eq!(v["bound_value"], 3.0);
        assert_eq!(v["left_diagram"]["infinity"][0], -1.0);
        assert_eq!(v["provenance"]["connectivity"], "strong");
    }
}
