use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::matrix::Matrix;
use crate::peirce::{is_k_inverse, FamilyKind, InverseFamily, KSet};
use crate::random::{random_matrix, rng_from_seed};

use super::statements::check_hypotheses;
use super::{LawContext, LawId};

/// A pair of sampled inverses whose product left the target set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionWitness {
    pub b_inverse: MatrixJson,
    pub a_inverse: MatrixJson,
    pub product: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampledVerdict {
    AllPassed { samples: usize },
    CounterexampleFound { sample_index: usize, witness: InclusionWitness },
}

impl SampledVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SampledVerdict::AllPassed { .. })
    }
}

/// How a law's inclusion statement is sampled: the family both factors are
/// drawn from, where `c` enters the product, and the matrix whose K-inverses
/// form the target set.
struct InclusionShape {
    kind: FamilyKind,
    c_position: CPosition,
    target: Matrix,
    k: KSet,
}

enum CPosition {
    Left,
    Right,
    Absent,
}

fn shape(law: LawId, ctx: &LawContext) -> Result<InclusionShape> {
    let ab = &ctx.a * &ctx.b;
    let s = match law {
        LawId::T32 | LawId::C33 | LawId::T38 => InclusionShape {
            kind: FamilyKind::OneThree,
            c_position: CPosition::Right,
            target: ab,
            k: KSet::of(&[1, 3]),
        },
        LawId::T34 | LawId::C35 | LawId::T39 => InclusionShape {
            kind: FamilyKind::OneFour,
            c_position: CPosition::Left,
            target: ab,
            k: KSet::of(&[1, 4]),
        },
        LawId::T36 => InclusionShape {
            kind: FamilyKind::OneThree,
            c_position: CPosition::Absent,
            target: &ctx.c * &ab,
            k: KSet::of(&[1, 3]),
        },
        LawId::T37 => InclusionShape {
            kind: FamilyKind::OneFour,
            c_position: CPosition::Absent,
            target: &ab * &ctx.c,
            k: KSet::of(&[1, 4]),
        },
        other => return Err(Error::Parse(format!("{other} has no inclusion statement"))),
    };
    Ok(s)
}

/// Samples the inclusion statement of `law` (after checking hypotheses).
///
/// Sample 0 uses zero parameters, i.e. the product built from `b†` and `a†`;
/// later samples use random parameters from the seeded stream.
pub fn inclusion_statement_sampled(
    law: LawId,
    ctx: &LawContext,
    samples: usize,
    seed: u64,
) -> Result<SampledVerdict> {
    check_hypotheses(law, ctx)?;
    sample_inclusion(law, ctx, samples, seed)
}

pub(crate) fn sample_inclusion(
    law: LawId,
    ctx: &LawContext,
    samples: usize,
    seed: u64,
) -> Result<SampledVerdict> {
    if samples == 0 {
        return Err(Error::Parse("at least one sample is required".into()));
    }
    let sh = shape(law, ctx)?;
    let fam_a = InverseFamily::new(&ctx.a, sh.kind)?;
    let fam_b = InverseFamily::new(&ctx.b, sh.kind)?;
    let (domain, n) = (ctx.a.domain(), ctx.n());
    let mut rng = rng_from_seed(seed);
    let zero = Matrix::zeros(domain, n, n);
    for idx in 0..samples {
        let (xa, xb) = if idx == 0 {
            (zero.clone(), zero.clone())
        } else {
            (random_matrix(domain, n, n, &mut rng), random_matrix(domain, n, n, &mut rng))
        };
        let a_inv = fam_a.member(&xa)?;
        let b_inv = fam_b.member(&xb)?;
        let core = &b_inv * &a_inv;
        let product = match sh.c_position {
            CPosition::Left => &ctx.c * &core,
            CPosition::Right => &core * &ctx.c,
            CPosition::Absent => core,
        };
        if !is_k_inverse(&sh.target, &product, sh.k)? {
            return Ok(SampledVerdict::CounterexampleFound {
                sample_index: idx,
                witness: InclusionWitness {
                    b_inverse: (&b_inv).into(),
                    a_inverse: (&a_inv).into(),
                    product: (&product).into(),
                },
            });
        }
    }
    Ok(SampledVerdict::AllPassed { samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::law_context;
    use crate::scalar::ScalarDomain;

    const Q: ScalarDomain = ScalarDomain::GaussianRational;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::parse(Q, rows).unwrap()
    }

    #[test]
    fn identity_passes_every_inclusion() {
        let i = Matrix::identity(Q, 2);
        let ctx = law_context(&i, &i, &i).unwrap();
        for law in [LawId::T32, LawId::T34, LawId::T36, LawId::T37, LawId::T38, LawId::T39] {
            assert_eq!(
                inclusion_statement_sampled(law, &ctx, 20, 1).unwrap(),
                SampledVerdict::AllPassed { samples: 20 }
            );
        }
    }

    #[test]
    fn failing_inclusion_has_checkable_witness() {
        let a = m(&[&["1", "0"], &["0", "0"]]);
        let b = m(&[&["1", "1"], &["1", "1"]]);
        let ctx = law_context(&a, &b, &Matrix::identity(Q, 2)).unwrap();
        match inclusion_statement_sampled(LawId::T32, &ctx, 500, 3).unwrap() {
            SampledVerdict::CounterexampleFound { witness, .. } => {
                let x = Matrix::try_from(witness.product.clone()).unwrap();
                assert!(!is_k_inverse(&(&a * &b), &x, KSet::of(&[1, 3])).unwrap());
                let xb = Matrix::try_from(witness.b_inverse.clone()).unwrap();
                assert!(is_k_inverse(&b, &xb, KSet::of(&[1, 3])).unwrap());
            }
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }

    #[test]
    fn non_inclusion_law_is_rejected() {
        let i = Matrix::identity(Q, 2);
        let ctx = law_context(&i, &i, &i).unwrap();
        assert!(inclusion_statement_sampled(LawId::T23, &ctx, 5, 0).is_err());
        assert!(inclusion_statement_sampled(LawId::T32, &ctx, 0, 0).is_err());
    }
}
