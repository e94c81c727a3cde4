//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use revorder::commutant::sample_commutant;
use revorder::geninv::{commutes_with_pair, mp_inverse, mp_via_star_group, penrose_residuals, prop21_check};
use revorder::harness::{run_suite, run_trials, InstanceSpec, TrialOutcome, WeightMode};
use revorder::laws::{
    check_equivalence, check_reduction, law_context, LawId, SampleBudget, Verdict,
};
use revorder::peirce::{is_k_inverse, sample_13_inverse, KSet};
use revorder::random::{derive_seed, random_matrix, random_matrix_of_rank, rng_from_seed};
use revorder::{Error, Matrix, ScalarDomain};

const Q: ScalarDomain = ScalarDomain::GaussianRational;

type Outcome = Result<String, String>;

/// A random matrix with 1..=4 rows and columns and a random rank.
fn mixed_matrix(seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let k = rng.gen_range(0..=n.min(m));
    random_matrix_of_rank(Q, n, m, k, &mut rng)
}

fn mixed_square(seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(0..=n);
    random_matrix_of_rank(Q, n, n, k, &mut rng)
}

fn penrose_oracle() -> Outcome {
    let bad: Vec<u64> = (0..500u64)
        .into_par_iter()
        .filter(|&i| {
            let a = mixed_matrix(derive_seed(1, i));
            let x = mp_inverse(&a).unwrap();
            !(penrose_residuals(&a, &x).unwrap().all() && mp_via_star_group(&a).unwrap() == x)
        })
        .collect();
    if bad.is_empty() {
        Ok("500 matrices, all four equations exact, both routes agree".into())
    } else {
        Err(format!("failures at instances {bad:?}"))
    }
}

fn prop21_equivalence() -> Outcome {
    let results: Vec<(usize, usize, usize)> = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let a = mixed_matrix(derive_seed(1, i));
            let ad = mp_inverse(&a).unwrap();
            let mut failures = 0;
            if !prop21_check(&a, &ad).unwrap() {
                failures += 1;
            }
            // A {1,3}-inverse A† + (I - A†A)Y: differs from A† unless the
            // residue vanishes.
            let mut rng = rng_from_seed(derive_seed(2, i));
            let y = random_matrix(Q, a.cols(), a.rows(), &mut rng);
            let x = sample_13_inverse(&a, &y).unwrap();
            let distinct = usize::from(x != ad);
            if prop21_check(&a, &x).unwrap() != (x == ad) {
                failures += 1;
            }
            (failures, distinct, 1)
        })
        .collect();
    let failures: usize = results.iter().map(|r| r.0).sum();
    let distinct: usize = results.iter().map(|r| r.1).sum();
    if failures == 0 {
        Ok(format!("500 true inverses and 500 adversarial candidates ({distinct} distinct from A†)"))
    } else {
        Err(format!("{failures} disagreements"))
    }
}

fn commutation_transfer() -> Outcome {
    let bad: Vec<u64> = (0..300u64)
        .into_par_iter()
        .filter(|&i| {
            let a = mixed_square(derive_seed(3, i));
            let ad = mp_inverse(&a).unwrap();
            let c = sample_commutant(&a, derive_seed(4, i));
            let forward = commutes_with_pair(&c, &ad).unwrap();
            let c2 = sample_commutant(&ad, derive_seed(5, i));
            let backward = commutes_with_pair(&c2, &a).unwrap();
            !(forward && backward)
        })
        .collect();
    if bad.is_empty() {
        Ok("300 instances in both directions".into())
    } else {
        Err(format!("failures at instances {bad:?}"))
    }
}

fn suite_spec(seed: u64) -> InstanceSpec {
    InstanceSpec {
        vary_size: true,
        ..InstanceSpec::new(Q, 4, seed)
    }
}

/// Tallies of checked trials.
#[derive(Default, Debug)]
struct Tally {
    checked: usize,
    skipped: usize,
    violations: Vec<usize>,
    inconclusive: usize,
    all_true: usize,
    all_false: usize,
}

fn tally(outcomes: &[TrialOutcome]) -> Tally {
    let mut t = Tally::default();
    for o in outcomes {
        let Some(r) = o.report.as_ref().filter(|r| r.hypotheses_met) else {
            t.skipped += 1;
            continue;
        };
        t.checked += 1;
        match &r.verdict {
            Verdict::Violation(_) => t.violations.push(o.trial),
            Verdict::Inconclusive => {
                t.inconclusive += 1;
                continue;
            }
            _ => {}
        }
        if r.statement_values.values().all(|&v| v) {
            t.all_true += 1;
        } else if r.statement_values.values().all(|&v| !v) {
            t.all_false += 1;
        }
    }
    t
}

fn theorem_23_suite() -> Outcome {
    let outcomes = run_trials(LawId::T23, &suite_spec(23), 1000, SampleBudget::default()).map_err(|e| e.to_string())?;
    let t = tally(&outcomes);
    if t.violations.is_empty() && t.checked == 1000 {
        Ok(format!("1000 trials, {} true / {} false, no disagreement", t.all_true, t.all_false))
    } else {
        Err(format!("{t:?}"))
    }
}

fn weighted_variants() -> Outcome {
    let mut lines = Vec::new();
    for (law, seed) in [(LawId::T24, 24), (LawId::T25, 25), (LawId::T26, 26), (LawId::C27, 27)] {
        let spec = suite_spec(seed);
        let outcomes = run_trials(law, &spec, 500, SampleBudget::default()).map_err(|e| e.to_string())?;
        let t = tally(&outcomes);
        if !t.violations.is_empty() || t.checked != 500 {
            return Err(format!("{law}: {t:?}"));
        }
        if law != LawId::C27 {
            let broken: Vec<usize> = outcomes
                .par_iter()
                .filter(|o| {
                    let (a, b, c) = &o.instance;
                    let ctx = law_context(a, b, c).unwrap();
                    let r = check_reduction(law, &ctx).unwrap();
                    !(r.context_matches && r.statements_match)
                })
                .map(|o| o.trial)
                .collect();
            if !broken.is_empty() {
                return Err(format!("{law}: reduction mismatch at trials {broken:?}"));
            }
        }
        lines.push(format!("{law} {}/{}", t.all_true, t.all_false));
    }
    Ok(format!("500 trials each, true/false counts: {}", lines.join(", ")))
}

fn scalar_weight_witness() -> Outcome {
    let a = Matrix::parse(Q, &[&["1", "0"], &["0", "0"]]).unwrap();
    let b = Matrix::parse(Q, &[&["1", "1"], &["1", "1"]]).unwrap();
    let ab_dagger = mp_inverse(&(&a * &b)).unwrap();
    let half = Matrix::parse(Q, &[&["1/2", "0"], &["1/2", "0"]]).unwrap();
    let quarter = Matrix::parse(Q, &[&["1/4", "0"], &["1/4", "0"]]).unwrap();
    let bd_ad = &mp_inverse(&b).unwrap() * &mp_inverse(&a).unwrap();
    if ab_dagger != half || bd_ad != quarter {
        return Err("hand-computed (ab)† or b†a† disagrees".into());
    }
    let mut values = Vec::new();
    for lambda in [1, 2] {
        let c = Matrix::scalar_matrix(&Q.int(lambda), 2);
        let ctx = law_context(&a, &b, &c).unwrap();
        let r = check_equivalence(LawId::C27, &ctx, SampleBudget::default(), 0).unwrap();
        let expected = lambda == 2;
        let ok = r.verdict == Verdict::Equivalent
            && r.statement_values.len() == 3
            && r.statement_values.values().all(|&v| v == expected);
        if !ok {
            return Err(format!("lambda = {lambda}: {r:?}"));
        }
        values.push(format!("lambda={lambda}: {expected}"));
    }
    Ok(format!("(i)-(iii) all agree, {}", values.join(", ")))
}

/// Shared check for the inclusion laws: sampled and exact values agree,
/// and falsification succeeds in at least 95% of the false cases.
fn inclusion_suite(laws: &[(LawId, u64)], trials: usize) -> Outcome {
    let mut lines = Vec::new();
    for &(law, seed) in laws {
        let outcomes = run_trials(law, &suite_spec(seed), trials, SampleBudget::default()).map_err(|e| e.to_string())?;
        let t = tally(&outcomes);
        if !t.violations.is_empty() {
            return Err(format!("{law}: violations at trials {:?}", t.violations));
        }
        let falsified = t.all_false;
        let false_cases = falsified + t.inconclusive;
        if false_cases > 0 && (falsified as f64) < 0.95 * false_cases as f64 {
            return Err(format!("{law}: only {falsified} of {false_cases} false cases falsified"));
        }
        lines.push(format!(
            "{law} checked {} (true {}, falsified {}, inconclusive {}, skipped {})",
            t.checked, t.all_true, falsified, t.inconclusive, t.skipped
        ));
    }
    Ok(lines.join("; "))
}

fn weighted_reverse_order_inclusions() -> Outcome {
    inclusion_suite(&[(LawId::T32, 32), (LawId::C33, 33), (LawId::T34, 34), (LawId::C35, 35)], 300)
}

fn mixed_inclusions() -> Outcome {
    inclusion_suite(&[(LawId::T36, 36), (LawId::T37, 37)], 300)
}

fn four_way_equivalences() -> Outcome {
    let r = inclusion_suite(&[(LawId::T38, 38), (LawId::T39, 39)], 300)?;
    // Every checked trial evaluates all four statements.
    for (law, seed) in [(LawId::T38, 38), (LawId::T39, 39)] {
        let outcomes = run_trials(law, &suite_spec(seed), 20, SampleBudget::default()).map_err(|e| e.to_string())?;
        for o in outcomes.iter().filter(|o| !o.skipped()) {
            let r = o.report.as_ref().unwrap();
            if r.verdict == Verdict::Equivalent && r.statement_values.len() != 4 {
                return Err(format!("{law} trial {} evaluated {:?}", o.trial, r.statement_values));
            }
        }
    }
    Ok(r)
}

fn prime_field_edge() -> Outcome {
    let f5 = ScalarDomain::prime_field(5).unwrap();
    let column = Matrix::parse(f5, &[&["1"], &["2"]]).unwrap();
    let padded = Matrix::parse(f5, &[&["1", "0"], &["2", "0"]]).unwrap();
    for m in [&column, &padded] {
        if mp_inverse(m) != Err(Error::NoMpInverse) {
            return Err(format!("expected no Moore-Penrose inverse for\n{m}"));
        }
    }
    let spec = InstanceSpec {
        vary_size: true,
        ..InstanceSpec::new(f5, 3, 5)
    };
    let r = run_suite(LawId::T23, &spec, 200).map_err(|e| e.to_string())?;
    if r.hypothesis_skips > 0 && r.violations.is_empty() {
        Ok(format!(
            "padded column rejected; 200 trials, {} skipped, {} equivalent",
            r.hypothesis_skips, r.equivalent
        ))
    } else {
        Err(format!(
            "skips {} violations {}",
            r.hypothesis_skips,
            r.violations.len()
        ))
    }
}

fn parametrization_proxy() -> Outcome {
    let k13 = KSet::of(&[1, 3]);
    let failures: usize = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let a = mixed_matrix(derive_seed(11, i));
            let aad = &a * &mp_inverse(&a).unwrap();
            let mut rng = rng_from_seed(derive_seed(12, i));
            let y = random_matrix(Q, a.cols(), a.rows(), &mut rng);
            let member = sample_13_inverse(&a, &y).unwrap();
            let arbitrary = random_matrix(Q, a.cols(), a.rows(), &mut rng);
            [member, arbitrary]
                .iter()
                .filter(|x| is_k_inverse(&a, x, k13).unwrap() != (&a * *x == aad))
                .count()
        })
        .sum();
    if failures == 0 {
        Ok("200 instances, sampled members and arbitrary candidates".into())
    } else {
        Err(format!("{failures} disagreements"))
    }
}

fn determinism() -> Outcome {
    let spec = InstanceSpec {
        weight_mode: WeightMode::CommutantSample,
        ..InstanceSpec::new(Q, 3, 42)
    };
    let first = run_suite(LawId::T23, &spec, 1000).map_err(|e| e.to_string())?;
    let second = run_suite(LawId::T23, &spec, 1000).map_err(|e| e.to_string())?;
    let (j1, j2) = (first.to_json(), second.to_json());
    if j1 == j2 && first.violations.is_empty() {
        Ok(format!("two runs, {} identical bytes", j1.len()))
    } else {
        Err("reports differ".into())
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Penrose oracle", penrose_oracle),
        ("candidate test equivalence", prop21_equivalence),
        ("commutation transfer", commutation_transfer),
        ("weighted law T23 suite", theorem_23_suite),
        ("T24/T25/T26/C27 suites and reductions", weighted_variants),
        ("scalar weight witness", scalar_weight_witness),
        ("T32/C33/T34/C35 inclusion laws", weighted_reverse_order_inclusions),
        ("T36/T37 inclusion laws", mixed_inclusions),
        ("T38/T39 four-way equivalences", four_way_equivalences),
        ("prime field edge", prime_field_edge),
        ("{1,3} membership proxy", parametrization_proxy),
        ("suite determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {:>2} ({name}): {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
