//! Reparametrization-invariant seminorms on vertex value lists.
//!
//! On a finite vertex set a self-homeomorphism of the discretisation acts as
//! a relabelling of vertices, so invariance means invariance under
//! permutations of the value list.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A seminorm on real functions over a finite vertex set.
pub trait Seminorm {
    fn evaluate(&self, values: &[f64]) -> Result<f64>;
}

/// The seminorms that ship with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeminormId {
    /// `max |ξ|`, giving the natural pseudodistance.
    Sup,
    /// `max ξ − min ξ`.
    Range,
}

impl Seminorm for SeminormId {
    fn evaluate(&self, values: &[f64]) -> Result<f64> {
        if values.is_empty() {
            return Err(Error::EmptyValues);
        }
        Ok(match self {
            SeminormId::Sup => values.iter().fold(0.0, |m, v| m.max(v.abs())),
            SeminormId::Range => {
                let (lo, hi) = min_max(values);
                hi - lo
            }
        })
    }
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

impl fmt::Display for SeminormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeminormId::Sup => "sup",
            SeminormId::Range => "range",
        })
    }
}

impl FromStr for SeminormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" => Ok(SeminormId::Sup),
            "range" => Ok(SeminormId::Range),
            other => Err(Error::Parse(format!("unknown seminorm `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Nonnegativity,
    Homogeneity,
    Triangle,
    Invariance,
    /// `S(φ − ξ∘g∘h) ≤ S(φ − ψ∘h) + S(ψ − ξ∘g)` for vertex bijections `h`, `g`.
    MapChain,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub seminorm: String,
    pub trials: usize,
    pub seed: u64,
    pub checked: Vec<Axiom>,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn failures(&self, axiom: Axiom) -> usize {
        self.counterexamples.iter().filter(|c| c.axiom == axiom).count()
    }
}

/// Rounding slack for comparisons of sums and scalings of values bounded by
/// `scale` in magnitude.
fn slack(scale: f64) -> f64 {
    16.0 * f64::EPSILON * scale
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn random_values(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let scale = 10f64.powi(rng.gen_range(-3..=3));
    (0..len).map(|_| scale * rng.gen_range(-1.0..1.0)).collect()
}

/// Randomised check of axioms i–iv: nonnegativity, absolute homogeneity,
/// the triangle inequality and invariance under vertex permutations.
///
/// Every tenth trial uses `λ = 0` for homogeneity. Inequalities allow a few
/// ulps of rounding; invariance is checked for exact equality.
pub fn check_axioms<S: Seminorm + fmt::Display>(s: &S, trials: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let eval = |v: &[f64]| s.evaluate(v).expect("nonempty");
    for trial in 0..trials {
        let len = rng.gen_range(1..=16);
        let a = random_values(&mut rng, len);
        let b = random_values(&mut rng, len);
        let sa = eval(&a);

        if !(sa >= 0.0) {
            bad.push(Counterexample {
                axiom: Axiom::Nonnegativity,
                trial,
                detail: format!("S({a:?}) = {sa}"),
            });
        }

        let lambda = if trial % 10 == 0 { 0.0 } else { rng.gen_range(-5.0..5.0) };
        let scaled: Vec<f64> = a.iter().map(|v| lambda * v).collect();
        let lhs = eval(&scaled);
        let rhs = lambda.abs() * sa;
        if (lhs - rhs).abs() > slack(lambda.abs() * max_abs(&a)) || (lambda == 0.0 && lhs != 0.0) {
            bad.push(Counterexample {
                axiom: Axiom::Homogeneity,
                trial,
                detail: format!("λ = {lambda}: S(λa) = {lhs}, |λ|S(a) = {rhs}"),
            });
        }

        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let (lhs, rhs) = (eval(&sum), sa + eval(&b));
        if lhs > rhs + slack(max_abs(&a) + max_abs(&b)) {
            bad.push(Counterexample {
                axiom: Axiom::Triangle,
                trial,
                detail: format!("S(a+b) = {lhs} > S(a)+S(b) = {rhs}"),
            });
        }

        let mut permuted = a.clone();
        permuted.shuffle(&mut rng);
        let sp = eval(&permuted);
        if sp != sa {
            bad.push(Counterexample {
                axiom: Axiom::Invariance,
                trial,
                detail: format!("S(a∘σ) = {sp} ≠ S(a) = {sa}"),
            });
        }
    }
    AxiomReport {
        seminorm: s.to_string(),
        trials,
        seed,
        checked: vec![
            Axiom::Nonnegativity,
            Axiom::Homogeneity,
            Axiom::Triangle,
            Axiom::Invariance,
        ],
        counterexamples: bad,
    }
}

/// Randomised check of the per-map triangle chain behind the triangle
/// inequality of exotic pseudodistances: for random value lists `φ, ψ, ξ`
/// on `n` vertices and random vertex bijections `h`, `g`,
/// `S(φ − ξ∘g∘h) ≤ S(φ − ψ∘h) + S(ψ − ξ∘g)`.
pub fn check_map_chain<S: Seminorm + fmt::Display>(s: &S, trials: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let eval = |v: &[f64]| s.evaluate(v).expect("nonempty");
    for trial in 0..trials {
        let n = rng.gen_range(1..=16);
        let phi = random_values(&mut rng, n);
        let psi = random_values(&mut rng, n);
        let xi = random_values(&mut rng, n);
        let mut h: Vec<usize> = (0..n).collect();
        let mut g: Vec<usize> = (0..n).collect();
        h.shuffle(&mut rng);
        g.shuffle(&mut rng);

        let direct: Vec<f64> = (0..n).map(|p| phi[p] - xi[g[h[p]]]).collect();
        let first: Vec<f64> = (0..n).map(|p| phi[p] - psi[h[p]]).collect();
        let second: Vec<f64> = (0..n).map(|q| psi[q] - xi[g[q]]).collect();
        let (lhs, rhs) = (eval(&direct), eval(&first) + eval(&second));
        let scale = 2.0 * (max_abs(&phi) + max_abs(&psi) + max_abs(&xi));
        if lhs > rhs + slack(scale) {
            bad.push(Counterexample {
                axiom: Axiom::MapChain,
                trial,
                detail: format!("S(φ−ξ∘g∘h) = {lhs} > {rhs}"),
            });
        }
    }
    AxiomReport {
        seminorm: s.to_string(),
        trials,
        seed,
        checked: vec![Axiom::MapChain],
        counterexamples: bad,
    }
}
