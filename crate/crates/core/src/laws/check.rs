use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::derive_seed;

use super::context::{law_context, reduction_inputs, variant_context};
use super::inclusion::{sample_inclusion, InclusionWitness, SampledVerdict};
use super::statements::{check_hypotheses, eval_exact};
use super::{LawContext, LawId, StatementId};

/// Number of samples drawn for an inclusion statement, depending on whether
/// the exact statements predict it to hold (`confirm`) or to fail (`falsify`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBudget {
    pub confirm: usize,
    pub falsify: usize,
}

impl Default for SampleBudget {
    fn default() -> Self {
        SampleBudget {
            confirm: 200,
            falsify: 500,
        }
    }
}

impl SampleBudget {
    pub fn uniform(samples: usize) -> Self {
        SampleBudget {
            confirm: samples,
            falsify: samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    Violation(String),
    HypothesisNotMet(String),
    /// The exact statements are false but no sampled product left the target
    /// set within the falsification budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub law: LawId,
    /// Truth value of each evaluated statement. An inconclusive inclusion
    /// statement is left out.
    pub statement_values: BTreeMap<StatementId, bool>,
    pub hypotheses_met: bool,
    pub verdict: Verdict,
    pub witness: Option<InclusionWitness>,
    /// The product the law inverts (`ab`, `cab` or `abc`) is zero.
    pub trivial_zero_product: bool,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.verdict, Verdict::Violation(_))
    }
}

fn law_product_is_zero(law: LawId, ctx: &LawContext) -> bool {
    let ab = &ctx.a * &ctx.b;
    match law {
        LawId::T25 | LawId::T36 => (&ctx.c * &ab).is_zero(),
        LawId::T26 | LawId::T37 => (&ab * &ctx.c).is_zero(),
        _ => ab.is_zero(),
    }
}

/// Evaluates every statement of `law` on `ctx` and compares them.
///
/// Unmet hypotheses are reported through the verdict rather than as an
/// error; other failures (such as a missing inverse of an auxiliary element)
/// are returned as errors.
pub fn check_equivalence(
    law: LawId,
    ctx: &LawContext,
    budget: SampleBudget,
    seed: u64,
) -> Result<EquivalenceReport> {
    let mut report = EquivalenceReport {
        law,
        statement_values: BTreeMap::new(),
        hypotheses_met: false,
        verdict: Verdict::Equivalent,
        witness: None,
        trivial_zero_product: law_product_is_zero(law, ctx),
    };
    match check_hypotheses(law, ctx) {
        Ok(()) => report.hypotheses_met = true,
        Err(Error::HypothesisNotMet(msg)) => {
            report.verdict = Verdict::HypothesisNotMet(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    }

    for &stmt in law.statements() {
        if law.is_exact(stmt) {
            report.statement_values.insert(stmt, eval_exact(law, stmt, ctx)?);
        }
    }
    let mut exact = report.statement_values.iter();
    let (&first_id, &expected) = exact.next().expect("every law has an exact statement");
    if let Some((id, _)) = exact.find(|(_, &v)| v != expected) {
        report.verdict = Verdict::Violation(format!(
            "({first_id}) is {expected} but ({id}) is {}",
            !expected
        ));
    }

    if let Some(sampled) = law.sampled_statement() {
        let samples = if expected { budget.confirm } else { budget.falsify };
        match sample_inclusion(law, ctx, samples, derive_seed(seed, 0))? {
            SampledVerdict::AllPassed { .. } if expected => {
                report.statement_values.insert(sampled, true);
            }
            SampledVerdict::AllPassed { .. } => {
                if report.verdict == Verdict::Equivalent {
                    report.verdict = Verdict::Inconclusive;
                }
            }
            SampledVerdict::CounterexampleFound { sample_index, witness } => {
                report.statement_values.insert(sampled, false);
                if expected && report.verdict == Verdict::Equivalent {
                    report.verdict = Verdict::Violation(format!(
                        "({first_id}) is true but sample {sample_index} refutes ({sampled})"
                    ));
                }
                report.witness = Some(witness);
            }
        }
    }
    Ok(report)
}

/// Agreement of T24, T25 or T26 with T23 applied to the substituted inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub law: LawId,
    /// The context expressed through the original `p, q, r, s` equals the one
    /// recomputed from the substituted inputs.
    pub context_matches: bool,
    /// Each statement of the law has the same value as the corresponding
    /// statement of T23 on the substituted context.
    pub statements_match: bool,
    pub direct: BTreeMap<StatementId, bool>,
    pub reduced: BTreeMap<StatementId, bool>,
}

pub fn check_reduction(law: LawId, ctx: &LawContext) -> Result<ReductionReport> {
    check_hypotheses(law, ctx)?;
    let (a, b, c) = reduction_inputs(ctx, law)?;
    let substituted = variant_context(ctx, law)?;
    let recomputed = law_context(&a, &b, &c)?;
    let mut direct = BTreeMap::new();
    let mut reduced = BTreeMap::new();
    for &stmt in law.statements() {
        direct.insert(stmt, eval_exact(law, stmt, ctx)?);
        reduced.insert(stmt, eval_exact(LawId::T23, stmt, &substituted)?);
    }
    Ok(ReductionReport {
        law,
        context_matches: substituted == recomputed,
        statements_match: direct == reduced,
        direct,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::ScalarDomain;

    const Q: ScalarDomain = ScalarDomain::GaussianRational;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::parse(Q, rows).unwrap()
    }

    fn witness_pair() -> (Matrix, Matrix) {
        (m(&[&["1", "0"], &["0", "0"]]), m(&[&["1", "1"], &["1", "1"]]))
    }

    #[test]
    fn scalar_weight_instance_is_equivalent_and_true() {
        let (a, b) = witness_pair();
        let ctx = law_context(&a, &b, &Matrix::scalar_matrix(&Q.int(2), 2)).unwrap();
        let r = check_equivalence(LawId::C27, &ctx, SampleBudget::default(), 0).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
        assert!(r.statement_values.values().all(|&v| v));
        assert_eq!(r.statement_values.len(), 3);
    }

    #[test]
    fn unweighted_instance_is_equivalent_and_false() {
        let (a, b) = witness_pair();
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        for law in [LawId::C27, LawId::Greville, LawId::KolihaDc, LawId::T23] {
            let r = check_equivalence(law, &ctx, SampleBudget::default(), 0).unwrap();
            assert_eq!(r.verdict, Verdict::Equivalent, "{law}");
            assert!(r.statement_values.values().all(|&v| !v), "{law}");
        }
    }

    #[test]
    fn t38_gate_names_hypothesis() {
        let i = Matrix::identity(Q, 2);
        let ctx = law_context(&i, &i, &Matrix::scalar_matrix(&Q.int(3), 2)).unwrap();
        let r = check_equivalence(LawId::T38, &ctx, SampleBudget::default(), 0).unwrap();
        assert!(!r.hypotheses_met);
        assert_eq!(r.verdict, Verdict::HypothesisNotMet("cab != ab".into()));
    }

    #[test]
    fn inclusion_laws_on_witness_pair() {
        let (a, b) = witness_pair();
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        for law in [LawId::T32, LawId::C33, LawId::T34, LawId::C35, LawId::T36, LawId::T37] {
            let r = check_equivalence(law, &ctx, SampleBudget::default(), 5).unwrap();
            assert!(!r.is_violation(), "{law}: {:?}", r.verdict);
        }
    }

    #[test]
    fn zero_product_is_flagged() {
        let a = m(&[&["1", "0"], &["0", "0"]]);
        let b = m(&[&["0", "0"], &["0", "1"]]);
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        let r = check_equivalence(LawId::T32, &ctx, SampleBudget::default(), 0).unwrap();
        assert!(r.trivial_zero_product);
        assert_eq!(r.verdict, Verdict::Equivalent);
    }

    #[test]
    fn reductions_on_small_instance() {
        let a = m(&[&["1", "i"], &["0", "0"]]);
        let b = m(&[&["1", "1"], &["1", "1"]]);
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        for law in [LawId::T24, LawId::T25, LawId::T26] {
            let r = check_reduction(law, &ctx).unwrap();
            assert!(r.context_matches && r.statements_match, "{law}: {r:?}");
        }
    }
}
