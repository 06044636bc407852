//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sizefn_core::bounds::restriction_identity_check;
use sizefn_core::matching::BRUTEFORCE_BUDGET;
use sizefn_core::reparam::{estimate_upper_with, EstimateOptions};
use sizefn_core::seminorms::{check_axioms, check_map_chain};
use sizefn_core::sine_pairs::{critical_grid, sin_t, sin_two_t, two_sin_two_t};
use sizefn_core::{
    compute_diagram, ell_bruteforce, ell_query, estimate_upper, lambda_lower_bound,
    matching_distance, matching_distance_bruteforce, natural_lower_bound, point_distance,
    Connectivity, DiscreteSizePair, EllQuery, ExtendedReal, IntervalSamples, SeminormId,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        out.passed = false;
    }
    out.detail = format!("{}; {:.3}s (limit {}s)", out.detail, elapsed.as_secs_f64(), limit.as_secs_f64());
    out
}

fn sines(samples: usize) -> (IntervalSamples, IntervalSamples) {
    let grid = critical_grid(samples);
    (
        IntervalSamples::from_fn(grid.clone(), sin_t).unwrap(),
        IntervalSamples::from_fn(grid, two_sin_two_t).unwrap(),
    )
}

fn pairs(samples: usize) -> (DiscreteSizePair, DiscreteSizePair) {
    let (a, b) = sines(samples);
    (
        DiscreteSizePair::from_interval_samples(&a),
        DiscreteSizePair::from_interval_samples(&b),
    )
}

fn base_matching() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut values = Vec::new();
        for samples in [129, 257, 513] {
            let (a, b) = pairs(samples);
            values.push((samples, natural_lower_bound(&a, &b).bound_value));
        }
        Outcome {
            passed: values.iter().all(|(_, v)| *v == ExtendedReal::Finite(2.0)),
            detail: values
                .iter()
                .map(|(n, v)| format!("{n} samples: {v}"))
                .collect::<Vec<_>>()
                .join(", "),
        }
    })
}

fn product_matching() -> Outcome {
    timed(Duration::from_secs(10), || {
        let (a, b) = pairs(129);
        let strong = lambda_lower_bound(&a, &b, Connectivity::Strong).bound_value;
        let four = lambda_lower_bound(&a, &b, Connectivity::Four).bound_value;
        Outcome {
            passed: strong == ExtendedReal::Finite(3.0) && four == ExtendedReal::Finite(3.0),
            detail: format!("129² grid: strong {strong}, 4-connected {four}"),
        }
    })
}

fn sup_sandwich() -> Outcome {
    timed(Duration::from_secs(5), || {
        let (a, b) = sines(513);
        let upper = estimate_upper(&a, &b, SeminormId::Sup).value;
        let (pa, pb) = pairs(513);
        let lower = natural_lower_bound(&pa, &pb).bound_value;
        Outcome {
            passed: (2.0..=2.02).contains(&upper) && lower == ExtendedReal::Finite(2.0),
            detail: format!("lower {lower}, sup estimate {upper}"),
        }
    })
}

fn range_sharpness() -> Outcome {
    let (a, b) = sines(513);
    let (pa, pb) = pairs(129);
    let lower = lambda_lower_bound(&pa, &pb, Connectivity::Strong).bound_value;
    let exact = timed(Duration::from_secs(60), || {
        let e = estimate_upper(&a, &b, SeminormId::Range);
        Outcome {
            passed: (3.0..=3.05).contains(&e.value) && lower == ExtendedReal::Finite(3.0),
            detail: format!("lower {lower}, range estimate {} ({} sweeps)", e.value, e.sweeps),
        }
    });
    let coarse = timed(Duration::from_secs(5), || {
        let e = estimate_upper_with(&a, &b, SeminormId::Range, EstimateOptions { coarse: true });
        Outcome {
            passed: (3.0..=3.05).contains(&e.value),
            detail: format!("coarse {}", e.value),
        }
    });
    Outcome {
        passed: exact.passed && coarse.passed,
        detail: format!("{} | {}", exact.detail, coarse.detail),
    }
}

fn against_zero() -> Outcome {
    let grid = critical_grid(513);
    let zero = IntervalSamples::from_fn(grid.clone(), |_| 0.0).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, f, range, sup) in [
        ("sin 2t", sin_two_t as fn(f64) -> f64, 2.0, 1.0),
        ("sin t", sin_t, 1.0, 1.0),
    ] {
        let s = IntervalSamples::from_fn(grid.clone(), f).unwrap();
        let r = estimate_upper(&s, &zero, SeminormId::Range).value;
        let u = estimate_upper(&s, &zero, SeminormId::Sup).value;
        ok &= (r - range).abs() <= 1e-9 && (u - sup).abs() <= 1e-9;
        detail.push(format!("{name}: range {r}, sup {u}"));
    }
    Outcome {
        passed: ok,
        detail: detail.join("; "),
    }
}

fn representation_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut queries, mut mismatches) = (0, 0);
    for _ in 0..200 {
        let p = common::random_graph(&mut rng, 12);
        let d = compute_diagram(&p);
        let levels = common::query_levels(&p);
        let mut done = 0;
        while done < 100 {
            let x = levels[rng.gen_range(0..levels.len())];
            let y = levels[rng.gen_range(0..levels.len())];
            let Ok(q) = EllQuery::new(x, y) else { continue };
            done += 1;
            queries += 1;
            if ell_query(&d, q) != ell_bruteforce(&p, q) {
                mismatches += 1;
            }
        }
    }
    Outcome {
        passed: mismatches == 0,
        detail: format!("{queries} queries, {mismatches} mismatches"),
    }
}

fn matching_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    for _ in 0..200 {
        let split = rng.gen_range(0..=BRUTEFORCE_BUDGET);
        let d1 = common::random_small_diagram(&mut rng, split);
        let d2 = common::random_small_diagram(&mut rng, BRUTEFORCE_BUDGET - split);
        if matching_distance(&d1, &d2) != matching_distance_bruteforce(&d1, &d2).unwrap() {
            mismatches += 1;
        }
    }

    let mut axiom_failures = 0;
    for _ in 0..1000 {
        let [a, b, c] = [(); 3].map(|_| common::random_point(&mut rng));
        let (ab, bc, ac) = (point_distance(&a, &b), point_distance(&b, &c), point_distance(&a, &c));
        if ab != point_distance(&b, &a) || point_distance(&a, &a) != ExtendedReal::ZERO || ac > ab.add(bc) {
            axiom_failures += 1;
        }
        let [d1, d2, d3] = [(); 3].map(|_| {
            let inf = rng.gen_range(1..=2);
            let proper = rng.gen_range(0..=4);
            common::random_diagram(&mut rng, inf, proper)
        });
        let (m12, m23, m13) = (
            matching_distance(&d1, &d2),
            matching_distance(&d2, &d3),
            matching_distance(&d1, &d3),
        );
        if m12 != matching_distance(&d2, &d1)
            || matching_distance(&d1, &d1) != ExtendedReal::ZERO
            || m13 > m12.add(m23)
        {
            axiom_failures += 1;
        }
    }
    Outcome {
        passed: mismatches == 0 && axiom_failures == 0,
        detail: format!("200 pairs, {mismatches} oracle mismatches; 1000 triples, {axiom_failures} axiom failures"),
    }
}

fn seminorm_axioms() -> Outcome {
    let mut failures = 0;
    for s in [SeminormId::Sup, SeminormId::Range] {
        failures += check_axioms(&s, 1000, 8).counterexamples.len();
        failures += check_map_chain(&s, 1000, 9).counterexamples.len();
    }
    Outcome {
        passed: failures == 0,
        detail: format!("sup and range, 1000 trials each, axioms i–iv and map chain: {failures} counterexamples"),
    }
}

fn restriction_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut unequal = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=40);
        let m = rng.gen_range(2..=40);
        let a = common::dyadic_samples(&mut rng, n);
        let b = common::dyadic_samples(&mut rng, m);
        let h = common::random_path(&mut rng, n, m);
        if !restriction_identity_check(&a, &b, &h).unwrap().exact() {
            unequal += 1;
        }
    }
    Outcome {
        passed: unequal == 0,
        detail: format!("100 alignments, {unequal} unequal"),
    }
}

fn bound_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut violations = 0;
    let mut tightest = (f64::INFINITY, f64::INFINITY);
    for _ in 0..100 {
        let [a, b] = [(); 2].map(|_| {
            let (knots, grid) = (rng.gen_range(2..=6), rng.gen_range(8..=24));
            common::random_piecewise_linear(&mut rng, knots, grid)
        });
        let (pa, pb) = (
            DiscreteSizePair::from_interval_samples(&a),
            DiscreteSizePair::from_interval_samples(&b),
        );
        let nat = natural_lower_bound(&pa, &pb).bound_value.finite().unwrap();
        let lam = lambda_lower_bound(&pa, &pb, Connectivity::Strong)
            .bound_value
            .finite()
            .unwrap();
        let sup = estimate_upper(&a, &b, SeminormId::Sup).value;
        let range = estimate_upper(&a, &b, SeminormId::Range).value;
        if nat > sup + 1e-9 {
            violations += 1;
        }
        if lam > range + 1e-9 {
            violations += 1;
        }
        tightest = (tightest.0.min(sup - nat), tightest.1.min(range - lam));
    }
    Outcome {
        passed: violations == 0,
        detail: format!(
            "100 pairs, {violations} violations; smallest slack natural {:.3e}, range {:.3e}",
            tightest.0, tightest.1
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 base matching distance = 2", base_matching),
        ("2 product matching distance = 3", product_matching),
        ("3 natural sandwich, sup estimate in [2, 2.02]", sup_sandwich),
        ("4 range bound attained, estimate in [3, 3.05]", range_sharpness),
        ("5 comparisons against zero", against_zero),
        ("6 representation formula oracle", representation_oracle),
        ("7 matching oracle and pseudometric axioms", matching_oracle),
        ("8 seminorm axioms", seminorm_axioms),
        ("9 product/range identity along alignments", restriction_identity),
        ("10 lower bound <= upper estimate", bound_sandwich),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let out = check();
        println!("[{}] {name}: {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
        if !out.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
