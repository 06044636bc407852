//! Size functions of scalar fields on finite graphs, the matching distance
//! between them, and computable bounds for the natural pseudodistance and the
//! range-seminorm pseudodistance between interval size pairs.
//!
//! The pipeline is:
//!
//! * [`size_space`] builds discrete size pairs (vertex-weighted graphs),
//!   including the product pair `(M×M, Φ)` with `Φ(p,q) = φ(p) − φ(q)`;
//! * [`persistence`] computes the size function of a pair as a cornerpoint
//!   diagram and provides brute-force oracles straight from the definitions;
//! * [`matching`] implements the pseudometric on the extended half-plane and
//!   the bottleneck matching distance between diagrams;
//! * [`bounds`] turns matching distances into lower bounds for the two
//!   pseudodistances, and [`reparam`] searches monotone reparametrizations
//!   of interval pairs for upper estimates;
//! * [`sine_pairs`] runs the sine comparison end to end.

pub mod bounds;
pub mod error;
pub mod extended;
pub mod io;
pub mod matching;
pub mod persistence;
pub mod reparam;
pub mod seminorms;
pub mod sine_pairs;
pub mod size_space;
mod union_find;

pub use bounds::{lambda_lower_bound, natural_lower_bound, BoundKind, BoundReport};
pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use matching::{
    matching_distance, matching_distance_bruteforce, optimal_matching, point_distance,
    DiagramPoint, MatchedPair, PointRole,
};
pub use persistence::{compute_diagram, ell_bruteforce, ell_query, EllQuery, SizeFunctionDiagram};
pub use reparam::{estimate_upper, path_cost, Estimate, MonotonePath, Orientation};
pub use seminorms::{Seminorm, SeminormId};
pub use size_space::{Connectivity, DiscreteSizePair, IntervalSamples};
