//! Instance generation, randomized suites and counterexample search.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commutant::{commutant_basis, combine, LinearMatrixSystem};
use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::laws::{
    check_equivalence, law_context, EquivalenceReport, LawContext, LawId, SampleBudget, Side,
    StatementId, Verdict,
};
use crate::laws::{check_hypotheses, inclusion_statement_sampled, law_statement};
use crate::matrix::Matrix;
use crate::random::{derive_seed, random_matrix_of_rank, rng_from_seed, small_scalar, SeededRng};
use crate::scalar::{Scalar, ScalarDomain};

pub const MAX_SIZE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Identity,
    Scalar(Scalar),
    CommutantSample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub domain: ScalarDomain,
    /// Matrix size, or the largest size when `vary_size` is set.
    pub size: usize,
    /// Draw each instance's size uniformly from `1..=size`.
    pub vary_size: bool,
    /// Target ranks; random when absent.
    pub rank_a: Option<usize>,
    pub rank_b: Option<usize>,
    pub weight_mode: WeightMode,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(domain: ScalarDomain, size: usize, seed: u64) -> Self {
        InstanceSpec {
            domain,
            size,
            vary_size: false,
            rank_a: None,
            rank_b: None,
            weight_mode: WeightMode::CommutantSample,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_SIZE).contains(&self.size) {
            return Err(Error::InvalidSpec(format!(
                "size must be in 1..={MAX_SIZE}, got {}",
                self.size
            )));
        }
        for (name, rank) in [("rank_a", self.rank_a), ("rank_b", self.rank_b)] {
            match rank {
                Some(k) if k > self.size => {
                    return Err(Error::InvalidSpec(format!("{name} = {k} exceeds size {}", self.size)))
                }
                Some(k) if self.vary_size && k > 1 => {
                    return Err(Error::InvalidSpec(format!(
                        "{name} = {k} cannot be met at every size when sizes vary"
                    )))
                }
                _ => {}
            }
        }
        if let WeightMode::Scalar(l) = &self.weight_mode {
            if l.domain() != self.domain {
                return Err(Error::DomainMismatch(self.domain, l.domain()));
            }
        }
        Ok(())
    }
}

fn pick_rank(target: Option<usize>, n: usize, rng: &mut SeededRng) -> usize {
    target.unwrap_or_else(|| if rng.gen_ratio(1, 10) { 0 } else { rng.gen_range(1..=n) })
}

/// The weight for `law`: drawn from the commutant of the side the law
/// requires. T38/T39 draw `e + D` where `D` also satisfies the extra
/// hypotheses, which reduces to `c = e` when no such `D ≠ 0` exists.
fn commutant_weight(law: LawId, a: &Matrix, b: &Matrix, rng: &mut SeededRng) -> Matrix {
    let (domain, n) = (a.domain(), a.rows());
    let e = Matrix::identity(domain, n);
    match law {
        LawId::Greville | LawId::KolihaDc => e,
        LawId::C27 => {
            let lambda = loop {
                let l = small_scalar(domain, rng);
                if !l.is_zero() {
                    break l;
                }
            };
            Matrix::scalar_matrix(&lambda, n)
        }
        LawId::T38 => {
            let ab = a * b;
            let d = LinearMatrixSystem::new(domain, n)
                .commute_with(a)
                .commute_with(&a.star())
                .annihilate_on_right(&ab)
                .annihilate_on_left(&ab.star())
                .sample(rng);
            &e + &d
        }
        LawId::T39 => {
            let ab = a * b;
            let d = LinearMatrixSystem::new(domain, n)
                .commute_with(b)
                .commute_with(&b.star())
                .annihilate_on_left(&ab)
                .annihilate_on_right(&ab.star())
                .sample(rng);
            &e + &d
        }
        _ => {
            let side = match law.commute_side() {
                Some(Side::A) => a,
                _ => b,
            };
            combine(domain, n, &commutant_basis(side), rng)
        }
    }
}

/// Generates `(a, b, c)` for `law`, deterministically from `spec.seed`.
pub fn gen_instance(spec: &InstanceSpec, law: LawId) -> Result<(Matrix, Matrix, Matrix)> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let n = if spec.vary_size { rng.gen_range(1..=spec.size) } else { spec.size };
    let d = spec.domain;
    let rank_a = pick_rank(spec.rank_a, n, &mut rng);
    let rank_b = pick_rank(spec.rank_b, n, &mut rng);
    let a = random_matrix_of_rank(d, n, n, rank_a, &mut rng);
    let b = random_matrix_of_rank(d, n, n, rank_b, &mut rng);
    let c = match &spec.weight_mode {
        WeightMode::Identity => Matrix::identity(d, n),
        WeightMode::Scalar(l) => Matrix::scalar_matrix(l, n),
        WeightMode::CommutantSample => commutant_weight(law, &a, &b, &mut rng),
    };
    Ok((a, b, c))
}

/// A generated instance with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub trial: usize,
    pub seed: u64,
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub c: MatrixJson,
    pub statement_values: BTreeMap<StatementId, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl InstanceRecord {
    fn new(trial: usize, seed: u64, inst: &(Matrix, Matrix, Matrix), report: Option<&EquivalenceReport>) -> Self {
        InstanceRecord {
            trial,
            seed,
            a: (&inst.0).into(),
            b: (&inst.1).into(),
            c: (&inst.2).into(),
            statement_values: report.map(|r| r.statement_values.clone()).unwrap_or_default(),
            detail: report.and_then(|r| match &r.verdict {
                Verdict::Violation(d) => Some(d.clone()),
                _ => None,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub law: LawId,
    pub trials: usize,
    pub equivalent: usize,
    pub violations: Vec<InstanceRecord>,
    pub inconclusive: usize,
    pub hypothesis_skips: usize,
    /// Equivalent trials whose law product was zero.
    pub trivial: usize,
    pub seed: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite results serialize")
    }
}

/// Seed of trial `index` under master seed `master`.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    derive_seed(master, index as u64)
}

/// Outcome of one generated trial.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub instance: (Matrix, Matrix, Matrix),
    /// `None` when `a` or `b` has no Moore-Penrose inverse.
    pub report: Option<EquivalenceReport>,
}

impl TrialOutcome {
    pub fn skipped(&self) -> bool {
        self.report.as_ref().map_or(true, |r| !r.hypotheses_met)
    }
}

/// Generates and checks trial `trial` of a suite.
pub fn run_trial(law: LawId, spec: &InstanceSpec, trial: usize, budget: SampleBudget) -> Result<TrialOutcome> {
    let seed = trial_seed(spec.seed, trial);
    let instance = gen_instance(&InstanceSpec { seed, ..spec.clone() }, law)?;
    let report = match law_context(&instance.0, &instance.1, &instance.2) {
        Ok(ctx) => Some(check_or_skip(law, &ctx, budget, derive_seed(seed, 1))?),
        Err(Error::NoMpInverse) => None,
        Err(e) => return Err(e),
    };
    Ok(TrialOutcome {
        trial,
        seed,
        instance,
        report,
    })
}

/// Like [`check_equivalence`], but a missing inverse of an auxiliary element
/// (possible over prime fields) counts as an unmet hypothesis.
fn check_or_skip(law: LawId, ctx: &LawContext, budget: SampleBudget, seed: u64) -> Result<EquivalenceReport> {
    match check_equivalence(law, ctx, budget, seed) {
        Err(Error::NoMpInverse) => Ok(EquivalenceReport {
            law,
            statement_values: BTreeMap::new(),
            hypotheses_met: false,
            verdict: Verdict::HypothesisNotMet("an auxiliary element has no Moore-Penrose inverse".into()),
            witness: None,
            trivial_zero_product: false,
        }),
        other => other,
    }
}

/// Runs all trials in parallel, returning outcomes in trial order.
pub fn run_trials(law: LawId, spec: &InstanceSpec, trials: usize, budget: SampleBudget) -> Result<Vec<TrialOutcome>> {
    spec.validate()?;
    (0..trials)
        .into_par_iter()
        .map(|t| run_trial(law, spec, t, budget))
        .collect()
}

pub fn run_suite(law: LawId, spec: &InstanceSpec, trials: usize) -> Result<SuiteResult> {
    run_suite_with_budget(law, spec, trials, SampleBudget::default())
}

pub fn run_suite_with_budget(
    law: LawId,
    spec: &InstanceSpec,
    trials: usize,
    budget: SampleBudget,
) -> Result<SuiteResult> {
    if trials == 0 {
        return Err(Error::InvalidSpec("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let outcomes = run_trials(law, spec, trials, budget)?;
    let mut result = SuiteResult {
        law,
        trials,
        equivalent: 0,
        violations: Vec::new(),
        inconclusive: 0,
        hypothesis_skips: 0,
        trivial: 0,
        seed: spec.seed,
        elapsed: Duration::ZERO,
    };
    for o in &outcomes {
        match o.report.as_ref().map(|r| &r.verdict) {
            None | Some(Verdict::HypothesisNotMet(_)) => result.hypothesis_skips += 1,
            Some(Verdict::Equivalent) => {
                result.equivalent += 1;
                if o.report.as_ref().is_some_and(|r| r.trivial_zero_product) {
                    result.trivial += 1;
                }
            }
            Some(Verdict::Inconclusive) => result.inconclusive += 1,
            Some(Verdict::Violation(_)) => {
                result
                    .violations
                    .push(InstanceRecord::new(o.trial, o.seed, &o.instance, o.report.as_ref()))
            }
        }
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

/// What [`search_counterexample`] looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// An instance meeting the hypotheses on which the statement is false.
    StatementFalse(LawId, StatementId),
    /// An instance on which the statements of the law disagree.
    EquivalenceViolation(LawId),
}

impl SearchTarget {
    pub fn law(&self) -> LawId {
        match *self {
            SearchTarget::StatementFalse(l, _) | SearchTarget::EquivalenceViolation(l) => l,
        }
    }
}

/// Searches `budget` generated instances (numbered as in [`run_suite`]) and
/// returns the first hit.
pub fn search_counterexample(
    target: SearchTarget,
    spec: &InstanceSpec,
    budget: usize,
) -> Result<Option<InstanceRecord>> {
    if budget == 0 {
        return Err(Error::InvalidSpec("budget must be at least 1".into()));
    }
    spec.validate()?;
    let law = target.law();
    if let SearchTarget::StatementFalse(_, stmt) = target {
        if !law.statements().contains(&stmt) {
            return Err(Error::InvalidSpec(format!("{law} has no statement ({stmt})")));
        }
    }
    let samples = SampleBudget::default();
    for trial in 0..budget {
        let seed = trial_seed(spec.seed, trial);
        let inst = gen_instance(&InstanceSpec { seed, ..spec.clone() }, law)?;
        let ctx = match law_context(&inst.0, &inst.1, &inst.2) {
            Ok(ctx) => ctx,
            Err(Error::NoMpInverse) => continue,
            Err(e) => return Err(e),
        };
        match target {
            SearchTarget::EquivalenceViolation(_) => {
                let report = check_or_skip(law, &ctx, samples, derive_seed(seed, 1))?;
                if report.is_violation() {
                    return Ok(Some(InstanceRecord::new(trial, seed, &inst, Some(&report))));
                }
            }
            SearchTarget::StatementFalse(_, stmt) => {
                if statement_false(law, stmt, &ctx, samples, derive_seed(seed, 1))? {
                    let mut rec = InstanceRecord::new(trial, seed, &inst, None);
                    rec.statement_values.insert(stmt, false);
                    return Ok(Some(rec));
                }
            }
        }
    }
    Ok(None)
}

fn statement_false(law: LawId, stmt: StatementId, ctx: &LawContext, budget: SampleBudget, seed: u64) -> Result<bool> {
    match check_hypotheses(law, ctx) {
        Ok(()) => {}
        Err(Error::HypothesisNotMet(_)) | Err(Error::NoMpInverse) => return Ok(false),
        Err(e) => return Err(e),
    }
    if law.is_exact(stmt) {
        law_statement(law, stmt, ctx).map(|v| !v)
    } else {
        Ok(!inclusion_statement_sampled(law, ctx, budget.falsify, derive_seed(seed, 0))?.passed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geninv::commutes_with_pair;

    const Q: ScalarDomain = ScalarDomain::GaussianRational;

    #[test]
    fn ranks_are_respected() {
        for seed in 0..10 {
            let spec = InstanceSpec {
                rank_a: Some(1),
                rank_b: Some(2),
                ..InstanceSpec::new(Q, 3, seed)
            };
            let (a, b, _) = gen_instance(&spec, LawId::T23).unwrap();
            assert_eq!(a.rank(), 1);
            assert_eq!(b.rank(), 2);
        }
    }

    #[test]
    fn weight_modes() {
        let mut spec = InstanceSpec::new(Q, 3, 4);
        spec.weight_mode = WeightMode::Identity;
        let (_, _, c) = gen_instance(&spec, LawId::T23).unwrap();
        assert_eq!(c, Matrix::identity(Q, 3));
        spec.weight_mode = WeightMode::CommutantSample;
        for law in [LawId::T23, LawId::T24] {
            let (a, b, c) = gen_instance(&spec, law).unwrap();
            let side = if law == LawId::T23 { &b } else { &a };
            assert!(commutes_with_pair(&c, side).unwrap());
        }
    }

    #[test]
    fn constrained_weights_meet_hypotheses() {
        for seed in 0..10 {
            let spec = InstanceSpec::new(Q, 3, seed);
            for law in [LawId::T38, LawId::T39] {
                let (a, b, c) = gen_instance(&spec, law).unwrap();
                let ctx = law_context(&a, &b, &c).unwrap();
                check_hypotheses(law, &ctx).unwrap();
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = InstanceSpec::new(Q, 3, 77);
        assert_eq!(gen_instance(&spec, LawId::T23).unwrap(), gen_instance(&spec, LawId::T23).unwrap());
    }

    #[test]
    fn invalid_specs() {
        assert!(gen_instance(&InstanceSpec::new(Q, 0, 0), LawId::T23).is_err());
        assert!(gen_instance(&InstanceSpec::new(Q, 9, 0), LawId::T23).is_err());
        let spec = InstanceSpec {
            rank_a: Some(3),
            ..InstanceSpec::new(Q, 2, 0)
        };
        assert!(matches!(gen_instance(&spec, LawId::T23), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn small_suite_accounting() {
        let r = run_suite(LawId::Greville, &InstanceSpec::new(Q, 2, 1), 40).unwrap();
        assert_eq!(r.equivalent + r.violations.len() + r.inconclusive + r.hypothesis_skips, 40);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn greville_failure_is_found() {
        let spec = InstanceSpec::new(Q, 2, 0);
        let hit = search_counterexample(SearchTarget::StatementFalse(LawId::Greville, StatementId::I), &spec, 100)
            .unwrap()
            .expect("a failing pair exists among 100 instances");
        let a = Matrix::try_from(hit.a).unwrap();
        let b = Matrix::try_from(hit.b).unwrap();
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        assert!(!law_statement(LawId::Greville, StatementId::I, &ctx).unwrap());
        assert!(search_counterexample(SearchTarget::EquivalenceViolation(LawId::T23), &spec, 30)
            .unwrap()
            .is_none());
    }
}
