//! The sine comparison on `I = [0, π]`: `(I, sin t)` against `(I, 2 sin 2t)`,
//! plus `sin t` and `sin 2t` against the zero function.
//!
//! For the main pair the natural bound and the sup estimate both approach 2,
//! and the product bound and the range estimate both approach 3, so the
//! product bound is attained.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::bounds::{lambda_lower_bound, natural_lower_bound};
use crate::extended::ExtendedReal;
use crate::reparam::{estimate_upper_with, EstimateOptions};
use crate::seminorms::SeminormId;
use crate::size_space::{Connectivity, DiscreteSizePair, IntervalSamples};

/// Critical points of `sin t` and `2 sin 2t` on `[0, π]`.
pub const CRITICAL_POINTS: [f64; 5] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];

/// `samples` evenly spaced points on `[0, π]` merged with
/// [`CRITICAL_POINTS`]; grid points within `1e−9` of a critical point are
/// replaced by it.
pub fn critical_grid(samples: usize) -> Vec<f64> {
    let samples = samples.max(2);
    let mut grid: Vec<f64> = (0..samples)
        .map(|k| PI * k as f64 / (samples - 1) as f64)
        .chain(CRITICAL_POINTS)
        .map(|t| {
            CRITICAL_POINTS
                .iter()
                .copied()
                .find(|c| (c - t).abs() < 1e-9)
                .unwrap_or(t)
        })
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

pub fn sin_t(t: f64) -> f64 {
    t.sin()
}

pub fn two_sin_two_t(t: f64) -> f64 {
    2.0 * (2.0 * t).sin()
}

pub fn sin_two_t(t: f64) -> f64 {
    (2.0 * t).sin()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineOptions {
    pub samples: usize,
    pub connectivity: Connectivity,
    pub coarse: bool,
    pub snap: f64,
    /// Largest gap between a lower bound and its upper estimate that still
    /// counts as attained.
    pub sharpness_tolerance: f64,
}

impl Default for SineOptions {
    fn default() -> Self {
        Self {
            samples: 129,
            connectivity: Connectivity::Strong,
            coarse: false,
            snap: 0.0,
            sharpness_tolerance: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroComparison {
    pub function: &'static str,
    pub range: f64,
    pub sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SineReport {
    pub grid_points: usize,
    pub base_matching: ExtendedReal,
    pub sup_estimate: f64,
    pub product_matching: ExtendedReal,
    pub range_estimate: f64,
    pub natural_attained: bool,
    pub lambda_attained: bool,
    pub against_zero: Vec<ZeroComparison>,
}

impl SineReport {
    /// Rows of `(quantity, value)` in print order.
    pub fn rows(&self) -> Vec<(String, String)> {
        let sig = |v: f64| crate::extended::format_sig(v, 12);
        let mut rows = vec![
            ("grid points".to_string(), self.grid_points.to_string()),
            ("d_match base (lower bound, natural)".to_string(), self.base_matching.to_string()),
            ("sup estimate (upper, natural)".to_string(), sig(self.sup_estimate)),
            ("d_match product (lower bound, range)".to_string(), self.product_matching.to_string()),
            ("range estimate (upper, range)".to_string(), sig(self.range_estimate)),
            ("natural bound attained".to_string(), self.natural_attained.to_string()),
            ("range bound attained".to_string(), self.lambda_attained.to_string()),
        ];
        for z in &self.against_zero {
            rows.push((format!("{} vs 0, range", z.function), sig(z.range)));
            rows.push((format!("{} vs 0, sup", z.function), sig(z.sup)));
        }
        rows
    }
}

fn sampled(grid: &[f64], f: fn(f64) -> f64, snap: f64) -> IntervalSamples {
    IntervalSamples::from_fn(grid.to_vec(), f)
        .expect("critical grid is strictly increasing")
        .snapped(snap)
}

pub fn run(options: &SineOptions) -> SineReport {
    let grid = critical_grid(options.samples);
    let a = sampled(&grid, sin_t, options.snap);
    let b = sampled(&grid, two_sin_two_t, options.snap);
    let pa = DiscreteSizePair::from_interval_samples(&a).with_label("sin t");
    let pb = DiscreteSizePair::from_interval_samples(&b).with_label("2 sin 2t");
    let est = EstimateOptions {
        coarse: options.coarse,
    };

    let base_matching = natural_lower_bound(&pa, &pb).bound_value;
    let product_matching = lambda_lower_bound(&pa, &pb, options.connectivity).bound_value;
    let sup_estimate = estimate_upper_with(&a, &b, SeminormId::Sup, est).value;
    let range_estimate = estimate_upper_with(&a, &b, SeminormId::Range, est).value;
    let attained = |lower: ExtendedReal, upper: f64| {
        lower
            .finite()
            .is_some_and(|l| (upper - l).abs() <= options.sharpness_tolerance)
    };

    let zero = sampled(&grid, |_| 0.0, options.snap);
    let against_zero = [("sin 2t", sin_two_t as fn(f64) -> f64), ("sin t", sin_t)]
        .into_iter()
        .map(|(function, f)| {
            let s = sampled(&grid, f, options.snap);
            ZeroComparison {
                function,
                range: estimate_upper_with(&s, &zero, SeminormId::Range, est).value,
                sup: estimate_upper_with(&s, &zero, SeminormId::Sup, est).value,
            }
        })
        .collect();

    SineReport {
        grid_points: grid.len(),
        base_matching,
        sup_estimate,
        product_matching,
        range_estimate,
        natural_attained: attained(base_matching, sup_estimate),
        lambda_attained: attained(product_matching, range_estimate),
        against_zero,
    }
}
