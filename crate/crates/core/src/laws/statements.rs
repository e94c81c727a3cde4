//! Exact statements and hypotheses of each law.
//!
//! Formulas are written out factor by factor in the same order as the
//! characterizations they encode; `*` suffixes denote the adjoint and `d`
//! suffixes the Moore-Penrose inverse (`bds` is `b†*`).

use crate::error::{Error, Result};
use crate::geninv::{commutes_with_pair, mp_exists, mp_inverse};
use crate::matrix::{product, Matrix};
use crate::peirce::{is_k_inverse, KSet};

use super::{LawContext, LawId, Side, StatementId};

macro_rules! mm {
    ($($x:expr),+ $(,)?) => { product(&[$(&$x),+]) };
}

fn unmet(msg: impl Into<String>) -> Error {
    Error::HypothesisNotMet(msg.into())
}

fn require_mp(m: &Matrix, name: &str) -> Result<()> {
    if mp_exists(m) {
        Ok(())
    } else {
        Err(unmet(format!("{name} has no Moore-Penrose inverse")))
    }
}

/// Checks every hypothesis of `law` on `ctx` (beyond `a, b ∈ R†`, which the
/// context already guarantees).
pub fn check_hypotheses(law: LawId, ctx: &LawContext) -> Result<()> {
    let LawContext { a, b, c, .. } = ctx;
    match law.commute_side() {
        Some(Side::A) if !commutes_with_pair(c, a)? => {
            return Err(unmet("c does not commute with a and a*"));
        }
        Some(Side::B) if !commutes_with_pair(c, b)? => {
            return Err(unmet("c does not commute with b and b*"));
        }
        _ => {}
    }
    let e = ctx.e();
    let ab = a * b;
    match law {
        LawId::T23 | LawId::Greville => require_mp(&ab, "ab")?,
        LawId::T24 | LawId::KolihaDc => {
            require_mp(&ab, "ab")?;
            require_mp(&ctx.q, "q")?;
            require_mp(&ctx.r, "r")?;
        }
        LawId::C27 => {
            if c.as_scalar_multiple().is_none() {
                return Err(unmet("c is not a scalar multiple of e"));
            }
            require_mp(&ab, "ab")?;
        }
        LawId::T25 => require_mp(&mm!(c, a, b), "cab")?,
        LawId::T26 => {
            require_mp(&mm!(a, b, c), "abc")?;
            require_mp(&ctx.q, "q")?;
            require_mp(&ctx.r, "r")?;
        }
        LawId::C33 => require_mp(&(a * &(&e - &ctx.p)), "a(e - bb†)")?,
        LawId::C35 => require_mp(&(&(&e - &ctx.s) * b), "(e - a†a)b")?,
        LawId::T38 => {
            if c * &ab != ab {
                return Err(unmet("cab != ab"));
            }
            if &c.star() * &ab != ab {
                return Err(unmet("c*ab != ab"));
            }
            require_mp(&ab, "ab")?;
            require_mp(&(&ab * &ctx.b_dagger), "abb†")?;
            require_mp(&(a * &(&e - &ctx.p)), "a(e - bb†)")?;
        }
        LawId::T39 => {
            if &ab * c != ab {
                return Err(unmet("abc != ab"));
            }
            if &ab * &c.star() != ab {
                return Err(unmet("abc* != ab"));
            }
            require_mp(&ab, "ab")?;
            require_mp(&(&ctx.a_dagger * &ab), "a†ab")?;
            require_mp(&(&(&e - &ctx.s) * b), "(e - a†a)b")?;
        }
        LawId::T32 | LawId::T34 | LawId::T36 | LawId::T37 => {}
    }
    Ok(())
}

/// Exact truth of statement `stmt` of `law`, after checking the hypotheses.
pub fn law_statement(law: LawId, stmt: StatementId, ctx: &LawContext) -> Result<bool> {
    check_hypotheses(law, ctx)?;
    eval_exact(law, stmt, ctx)
}

fn k(idx: &[u8]) -> KSet {
    KSet::of(idx)
}

/// Evaluates an exact statement without re-checking hypotheses.
pub(crate) fn eval_exact(law: LawId, stmt: StatementId, ctx: &LawContext) -> Result<bool> {
    use StatementId::*;
    if !law.statements().contains(&stmt) {
        return Err(Error::Parse(format!("{law} has no statement ({stmt})")));
    }
    if !law.is_exact(stmt) {
        return Err(Error::Parse(format!(
            "{law} ({stmt}) is a set inclusion; evaluate it by sampling"
        )));
    }
    let LawContext { a, b, c, p, q, r, s, .. } = ctx;
    let (ad, bd) = (&ctx.a_dagger, &ctx.b_dagger);
    let (ads, bds) = (ad.star(), bd.star());
    let (as_, bs, cs) = (a.star(), b.star(), c.star());
    let e = ctx.e();
    let ab = a * b;

    let value = match (law, stmt) {
        // (ab)† = c b† a†
        (LawId::T23, I) => mp_inverse(&ab)? == mm!(c, bd, ad),
        // a(cpq - qp)b†*c* = 0 and a(rsc* - sr)b†* = 0
        (LawId::T23, Ii) => {
            mm!(a, &mm!(c, p, q) - &mm!(q, p), bds, cs).is_zero()
                && mm!(a, &mm!(r, s, cs) - &mm!(s, r), bds).is_zero()
        }
        // scpqpc* = qpc* and srspc* = sr
        (LawId::T23, Iii) => {
            mm!(s, c, p, q, p, cs) == mm!(q, p, cs) && mm!(s, r, s, p, cs) == mm!(s, r)
        }

        // (ab)† = b† a† c
        (LawId::T24, I) => mp_inverse(&ab)? == mm!(bd, ad, c),
        // b*(c*sr† - r†s)a†c = 0 and b*(q†pc - pq†)a† = 0
        (LawId::T24, Ii) => {
            let (rd, qd) = (mp_inverse(r)?, mp_inverse(q)?);
            mm!(bs, &mm!(cs, s, rd) - &mm!(rd, s), ad, c).is_zero()
                && mm!(bs, &mm!(qd, p, c) - &mm!(p, qd), ad).is_zero()
        }
        // pc*sr†sc = r†sc and pq†psc = pq†
        (LawId::T24, Iii) => {
            let (rd, qd) = (mp_inverse(r)?, mp_inverse(q)?);
            mm!(p, cs, s, rd, s, c) == mm!(rd, s, c) && mm!(p, qd, p, s, c) == mm!(p, qd)
        }

        // (cab)† = b† a†
        (LawId::T25, I) => mp_inverse(&mm!(c, a, b))? == mm!(bd, ad),
        // b†(csr - rs)a*c* = 0 and b†(qpc* - pq)a* = 0
        (LawId::T25, Ii) => {
            mm!(bd, &mm!(c, s, r) - &mm!(r, s), as_, cs).is_zero()
                && mm!(bd, &mm!(q, p, cs) - &mm!(p, q), as_).is_zero()
        }
        // pcsrsc* = rsc* and pqpsc* = pq
        (LawId::T25, Iii) => {
            mm!(p, c, s, r, s, cs) == mm!(r, s, cs) && mm!(p, q, p, s, cs) == mm!(p, q)
        }

        // (abc)† = b† a†
        (LawId::T26, I) => mp_inverse(&mm!(a, b, c))? == mm!(bd, ad),
        // a†*(c*pq† - q†p)bc = 0 and a†*(r†sc - sr†)b = 0
        (LawId::T26, Ii) => {
            let (rd, qd) = (mp_inverse(r)?, mp_inverse(q)?);
            mm!(ads, &mm!(cs, p, qd) - &mm!(qd, p), b, c).is_zero()
                && mm!(ads, &mm!(rd, s, c) - &mm!(s, rd), b).is_zero()
        }
        // sc*pq†pc = q†pc and sr†spc = sr†
        (LawId::T26, Iii) => {
            let (rd, qd) = (mp_inverse(r)?, mp_inverse(q)?);
            mm!(s, cs, p, qd, p, c) == mm!(qd, p, c) && mm!(s, rd, s, p, c) == mm!(s, rd)
        }

        (LawId::C27, _) => {
            let lambda = c.as_scalar_multiple().ok_or_else(|| unmet("c is not a scalar multiple of e"))?;
            let lambda_bar = lambda.conj();
            match stmt {
                // (ab)† = λ b† a†
                I => mp_inverse(&ab)? == (bd * ad).scale(&lambda),
                // a(λpq - qp)b†* = 0 and a(r s λ̄ - sr)b†* = 0
                Ii => {
                    mm!(a, &mm!(p, q).scale(&lambda) - &mm!(q, p), bds).is_zero()
                        && mm!(a, &mm!(r, s).scale(&lambda_bar) - &mm!(s, r), bds).is_zero()
                }
                // λspqp = qp and λ̄srsp = sr
                _ => {
                    mm!(s, p, q, p).scale(&lambda) == mm!(q, p)
                        && mm!(s, r, s, p).scale(&lambda_bar) == mm!(s, r)
                }
            }
        }

        // (ab)† = b† a†
        (LawId::Greville | LawId::KolihaDc, I) => mp_inverse(&ab)? == mm!(bd, ad),
        // rs = sr and pq = qp
        (LawId::Greville, Ii) => mm!(r, s) == mm!(s, r) && mm!(p, q) == mm!(q, p),
        // rs = sr and pq† = q†p
        (LawId::KolihaDc, Ii) => {
            let qd = mp_inverse(q)?;
            mm!(r, s) == mm!(s, r) && mm!(p, qd) == mm!(qd, p)
        }

        // b†a†c ∈ ab{1,3}, b†a† ∈ ab{1} and a† ∈ a(e - bb†){1}
        (LawId::T32 | LawId::C33, Ii) => {
            let base = is_k_inverse(&ab, &mm!(bd, ad, c), k(&[1, 3]))?
                && is_k_inverse(&ab, &mm!(bd, ad), k(&[1]))?;
            if law == LawId::T32 {
                base && is_k_inverse(&(a * &(&e - p)), ad, k(&[1]))?
            } else {
                base
            }
        }
        // cb†a† ∈ ab{1,4}, b†a† ∈ ab{1} and b† ∈ (e - a†a)b{1}
        (LawId::T34 | LawId::C35, Ii) => {
            let base = is_k_inverse(&ab, &mm!(c, bd, ad), k(&[1, 4]))?
                && is_k_inverse(&ab, &mm!(bd, ad), k(&[1]))?;
            if law == LawId::T34 {
                base && is_k_inverse(&(&(&e - s) * b), bd, k(&[1]))?
            } else {
                base
            }
        }
        // b†a† ∈ (cab){1,3}, cab = cabb†a†ab and ca(e - bb†)a†a(e - bb†) = ca(e - bb†)
        (LawId::T36, Ii) => {
            let cab = mm!(c, a, b);
            let ca_ep = mm!(c, a, &e - p);
            is_k_inverse(&cab, &mm!(bd, ad), k(&[1, 3]))?
                && cab == mm!(cab, bd, ad, ab)
                && mm!(ca_ep, ad, a, &e - p) == ca_ep
        }
        // b†a† ∈ (abc){1,4}, abc = abb†a†abc and (e - a†a)bc = (e - a†a)bb†(e - a†a)bc.
        // The middle condition is the adjoint of T36's `cab = cabb†a†ab` taken at
        // (b*, a*, c*); the printed form `ab = abb†a†abc` is not equivalent.
        (LawId::T37, Ii) => {
            let abc = mm!(a, b, c);
            let es_bc = mm!(&e - s, b, c);
            is_k_inverse(&abc, &mm!(bd, ad), k(&[1, 4]))?
                && abc == mm!(ab, bd, ad, abc)
                && es_bc == mm!(&e - s, b, bd, es_bc)
        }

        // bb†a*ab = a*ab
        (LawId::T38, I) => mm!(p, as_, ab) == mm!(as_, ab),
        (LawId::T38, Iii) => is_k_inverse(&ab, &mm!(bd, ad, c), k(&[1, 3]))?,
        (LawId::T38, Iv) => is_k_inverse(&ab, &mm!(bd, ad, c), k(&[1, 2, 3]))?,
        // abb*a†a = abb*
        (LawId::T39, I) => mm!(ab, bs, s) == mm!(ab, bs),
        (LawId::T39, Iii) => is_k_inverse(&ab, &mm!(c, bd, ad), k(&[1, 4]))?,
        (LawId::T39, Iv) => is_k_inverse(&ab, &mm!(c, bd, ad), k(&[1, 2, 4]))?,

        (law, stmt) => unreachable!("{law} ({stmt}) filtered above"),
    };
    Ok(value)
}

/// The literal form `ab = abb†a†abc` of the second condition of T37, kept so
/// the discrepancy with the corrected form can be demonstrated.
pub fn t37_printed_middle_condition(ctx: &LawContext) -> bool {
    let ab = &ctx.a * &ctx.b;
    let abc = &ab * &ctx.c;
    ab == mm!(ab, ctx.b_dagger, ctx.a_dagger, abc)
}

/// Human-readable formula of a statement.
pub fn statement_formula(law: LawId, stmt: StatementId) -> &'static str {
    use StatementId::*;
    match (law, stmt) {
        (LawId::T23, I) => "(ab)† = cb†a†",
        (LawId::T23, Ii) => "a(cpq - qp)b†*c* = 0 and a(rsc* - sr)b†* = 0",
        (LawId::T23, Iii) => "scpqpc* = qpc* and srspc* = sr",
        (LawId::T24, I) => "(ab)† = b†a†c",
        (LawId::T24, Ii) => "b*(c*sr† - r†s)a†c = 0 and b*(q†pc - pq†)a† = 0",
        (LawId::T24, Iii) => "pc*sr†sc = r†sc and pq†psc = pq†",
        (LawId::T25, I) => "(cab)† = b†a†",
        (LawId::T25, Ii) => "b†(csr - rs)a*c* = 0 and b†(qpc* - pq)a* = 0",
        (LawId::T25, Iii) => "pcsrsc* = rsc* and pqpsc* = pq",
        (LawId::T26, I) => "(abc)† = b†a†",
        (LawId::T26, Ii) => "a†*(c*pq† - q†p)bc = 0 and a†*(r†sc - sr†)b = 0",
        (LawId::T26, Iii) => "sc*pq†pc = q†pc and sr†spc = sr†",
        (LawId::C27, I) => "(ab)† = λb†a†",
        (LawId::C27, Ii) => "a(λpq - qp)b†* = 0 and a(rsλ̄ - sr)b†* = 0",
        (LawId::C27, Iii) => "λspqp = qp and λ̄srsp = sr",
        (LawId::Greville, I) | (LawId::KolihaDc, I) => "(ab)† = b†a†",
        (LawId::Greville, Ii) => "rs = sr and pq = qp",
        (LawId::KolihaDc, Ii) => "rs = sr and pq† = q†p",
        (LawId::T32, I) | (LawId::C33, I) => "b{1,3}·a{1,3}·c ⊆ (ab){1,3}",
        (LawId::T32, Ii) => "b†a†c ∈ ab{1,3}, b†a† ∈ ab{1} and a† ∈ a(e - bb†){1}",
        (LawId::C33, Ii) => "b†a†c ∈ ab{1,3} and b†a† ∈ ab{1}",
        (LawId::T34, I) | (LawId::C35, I) => "c·b{1,4}·a{1,4} ⊆ (ab){1,4}",
        (LawId::T34, Ii) => "cb†a† ∈ ab{1,4}, b†a† ∈ ab{1} and b† ∈ (e - a†a)b{1}",
        (LawId::C35, Ii) => "cb†a† ∈ ab{1,4} and b†a† ∈ ab{1}",
        (LawId::T36, I) => "b{1,3}·a{1,3} ⊆ (cab){1,3}",
        (LawId::T36, Ii) => {
            "b†a† ∈ (cab){1,3}, cab = cabb†a†ab and ca(e - bb†)a†a(e - bb†) = ca(e - bb†)"
        }
        (LawId::T37, I) => "b{1,4}·a{1,4} ⊆ (abc){1,4}",
        (LawId::T37, Ii) => {
            "b†a† ∈ (abc){1,4}, abc = abb†a†abc and (e - a†a)bc = (e - a†a)bb†(e - a†a)bc"
        }
        (LawId::T38, I) => "bb†a*ab = a*ab",
        (LawId::T38, Ii) => "b{1,3}·a{1,3}·c ⊆ (ab){1,3}",
        (LawId::T38, Iii) => "b†a†c ∈ (ab){1,3}",
        (LawId::T38, Iv) => "b†a†c ∈ (ab){1,2,3}",
        (LawId::T39, I) => "abb*a†a = abb*",
        (LawId::T39, Ii) => "c·b{1,4}·a{1,4} ⊆ (ab){1,4}",
        (LawId::T39, Iii) => "cb†a† ∈ (ab){1,4}",
        (LawId::T39, Iv) => "cb†a† ∈ (ab){1,2,4}",
        _ => "",
    }
}
