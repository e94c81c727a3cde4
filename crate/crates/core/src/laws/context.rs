use crate::error::{Error, Result};
use crate::geninv::mp_inverse;
use crate::matrix::Matrix;

use super::LawId;

/// The pair `(a, b)`, the weight `c`, and the hermitian elements
/// `p = bb†`, `q = a†a†*`, `r = bb*`, `s = a†a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawContext {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub p: Matrix,
    pub q: Matrix,
    pub r: Matrix,
    pub s: Matrix,
    pub a_dagger: Matrix,
    pub b_dagger: Matrix,
}

impl LawContext {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn e(&self) -> Matrix {
        Matrix::identity(self.a.domain(), self.n())
    }

    /// The same pair with a different weight.
    pub fn with_weight(&self, c: Matrix) -> Result<LawContext> {
        if c.shape() != self.a.shape() {
            return Err(Error::DimensionMismatch("weight must match a and b".into()));
        }
        if c.domain() != self.a.domain() {
            return Err(Error::DomainMismatch(self.a.domain(), c.domain()));
        }
        Ok(LawContext { c, ..self.clone() })
    }

    fn verify(&self) -> Result<()> {
        for (m, msg) in [
            (&self.p, "p is not hermitian"),
            (&self.q, "q is not hermitian"),
            (&self.r, "r is not hermitian"),
            (&self.s, "s is not hermitian"),
        ] {
            if !m.is_hermitian() {
                return Err(Error::ContextInvariant(msg));
            }
        }
        let ads = self.a_dagger.star();
        let bds = self.b_dagger.star();
        if self.a != &self.a * &self.s {
            return Err(Error::ContextInvariant("a != a s"));
        }
        if ads != &self.a * &self.q {
            return Err(Error::ContextInvariant("a†* != a q"));
        }
        if self.b != &self.r * &bds {
            return Err(Error::ContextInvariant("b != r b†*"));
        }
        if bds != &self.p * &bds {
            return Err(Error::ContextInvariant("b†* != p b†*"));
        }
        Ok(())
    }
}

pub fn law_context(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<LawContext> {
    if !a.is_square() || a.shape() != b.shape() || a.shape() != c.shape() {
        return Err(Error::DimensionMismatch(format!(
            "a, b, c must be square of one size, got {}x{}, {}x{}, {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    for m in [b, c] {
        if m.domain() != a.domain() {
            return Err(Error::DomainMismatch(a.domain(), m.domain()));
        }
    }
    let a_dagger = mp_inverse(a)?;
    let b_dagger = mp_inverse(b)?;
    let ctx = LawContext {
        p: b * &b_dagger,
        q: &a_dagger * &a_dagger.star(),
        r: b * &b.star(),
        s: &a_dagger * a,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        a_dagger,
        b_dagger,
    };
    ctx.verify()?;
    Ok(ctx)
}

/// The inputs on which T23 is applied to obtain T24, T25 or T26:
/// `(b*, a*, c*)`, `(b†, a†, c)` and `(a†*, b†*, c*)` respectively.
pub fn reduction_inputs(ctx: &LawContext, law: LawId) -> Result<(Matrix, Matrix, Matrix)> {
    match law {
        LawId::T24 => Ok((ctx.b.star(), ctx.a.star(), ctx.c.star())),
        LawId::T25 => Ok((ctx.b_dagger.clone(), ctx.a_dagger.clone(), ctx.c.clone())),
        LawId::T26 => Ok((ctx.a_dagger.star(), ctx.b_dagger.star(), ctx.c.star())),
        other => Err(Error::Parse(format!("{other} is not reduced to T23"))),
    }
}

/// The context of [`reduction_inputs`], expressed through the original
/// `p, q, r, s` rather than recomputed:
///
/// * T24: `p1 = s, q1 = r†, r1 = q†, s1 = p`
/// * T25: `p2 = s, q2 = r, r2 = q, s2 = p`
/// * T26: `p3 = p, q3 = q†, r3 = r†, s3 = s`
pub fn variant_context(ctx: &LawContext, law: LawId) -> Result<LawContext> {
    let (a, b, c) = reduction_inputs(ctx, law)?;
    let (p, q, r, s, a_dagger, b_dagger) = match law {
        LawId::T24 => (
            ctx.s.clone(),
            mp_inverse(&ctx.r)?,
            mp_inverse(&ctx.q)?,
            ctx.p.clone(),
            ctx.b_dagger.star(),
            ctx.a_dagger.star(),
        ),
        LawId::T25 => (
            ctx.s.clone(),
            ctx.r.clone(),
            ctx.q.clone(),
            ctx.p.clone(),
            ctx.b.clone(),
            ctx.a.clone(),
        ),
        LawId::T26 => (
            ctx.p.clone(),
            mp_inverse(&ctx.q)?,
            mp_inverse(&ctx.r)?,
            ctx.s.clone(),
            ctx.a.star(),
            ctx.b.star(),
        ),
        _ => unreachable!("reduction_inputs rejected {law}"),
    };
    Ok(LawContext {
        a,
        b,
        c,
        p,
        q,
        r,
        s,
        a_dagger,
        b_dagger,
    })
}
