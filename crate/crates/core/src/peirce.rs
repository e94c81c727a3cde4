//! Peirce decompositions, K-inverse membership and parametrized families of
//! {1,3}- and {1,4}-inverses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geninv::mp_inverse;
use crate::matrix::{product, Matrix};

/// The four corners of `x` relative to idempotents `p` (rows) and `q`
/// (columns): `x1 = p x q`, `x2 = p x (e-q)`, `x3 = (e-p) x q`,
/// `x4 = (e-p) x (e-q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceBlocks {
    pub x1: Matrix,
    pub x2: Matrix,
    pub x3: Matrix,
    pub x4: Matrix,
    pub p: Matrix,
    pub q: Matrix,
}

impl PeirceBlocks {
    pub fn reassemble(&self) -> Matrix {
        &(&self.x1 + &self.x2) + &(&self.x3 + &self.x4)
    }
}

pub fn peirce_blocks(x: &Matrix, p: &Matrix, q: &Matrix) -> Result<PeirceBlocks> {
    if !p.is_idempotent() {
        return Err(Error::NotIdempotent("p"));
    }
    if !q.is_idempotent() {
        return Err(Error::NotIdempotent("q"));
    }
    if p.rows() != x.rows() || q.rows() != x.cols() {
        return Err(Error::DimensionMismatch(format!(
            "idempotents {}x{} and {}x{} do not fit a {}x{} element",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let ep = &Matrix::identity(p.domain(), p.rows()) - p;
    let eq = &Matrix::identity(q.domain(), q.rows()) - q;
    let px = p.try_mul(x)?;
    let epx = ep.try_mul(x)?;
    Ok(PeirceBlocks {
        x1: &px * q,
        x2: &px * &eq,
        x3: &epx * q,
        x4: &epx * &eq,
        p: p.clone(),
        q: q.clone(),
    })
}

/// A subset of the Penrose equation indices `{1, 2, 3, 4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct KSet(u8);

impl KSet {
    pub const EMPTY: KSet = KSet(0);

    pub fn new(indices: &[u8]) -> Result<Self> {
        indices.iter().try_fold(KSet(0), |acc, &j| {
            if (1..=4).contains(&j) {
                Ok(KSet(acc.0 | 1 << (j - 1)))
            } else {
                Err(Error::Parse(format!("{j} is not a Penrose equation index")))
            }
        })
    }

    pub fn of(indices: &[u8]) -> Self {
        Self::new(indices).expect("indices in 1..=4")
    }

    pub fn contains(&self, j: u8) -> bool {
        (1..=4).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=4).filter(|&j| self.contains(j))
    }
}

impl FromStr for KSet {
    type Err = Error;
    /// Comma separated, e.g. `1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let idx = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        KSet::new(&idx)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Whether `x` satisfies Penrose equation `(j)` for `a`, for every `j` in `k`.
pub fn is_k_inverse(a: &Matrix, x: &Matrix, k: KSet) -> Result<bool> {
    if k.is_empty() {
        return Err(Error::EmptyK);
    }
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} cannot be a K-inverse of a {}x{} matrix",
            x.rows(),
            x.cols(),
            a.rows(),
            a.cols()
        )));
    }
    if k.contains(1) || k.contains(3) {
        let ax = a.try_mul(x)?;
        if k.contains(3) && ax.star() != ax {
            return Ok(false);
        }
        if k.contains(1) && &ax * a != *a {
            return Ok(false);
        }
    }
    if k.contains(2) || k.contains(4) {
        let xa = x.try_mul(a)?;
        if k.contains(4) && xa.star() != xa {
            return Ok(false);
        }
        if k.contains(2) && &xa * x != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which side the free parameter enters on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `A† + (I - A†A) X`, the {1,3}-inverses.
    OneThree,
    /// `A† + X (I - AA†)`, the {1,4}-inverses.
    OneFour,
}

/// Precomputed parametrization of all {1,3}- or {1,4}-inverses of `A`.
#[derive(Clone, Debug)]
pub struct InverseFamily {
    kind: FamilyKind,
    a_dagger: Matrix,
    complement: Matrix,
}

impl InverseFamily {
    pub fn new(a: &Matrix, kind: FamilyKind) -> Result<Self> {
        let a_dagger = mp_inverse(a)?;
        let complement = match kind {
            FamilyKind::OneThree => &Matrix::identity(a.domain(), a.cols()) - &(&a_dagger * a),
            FamilyKind::OneFour => &Matrix::identity(a.domain(), a.rows()) - &(a * &a_dagger),
        };
        Ok(InverseFamily {
            kind,
            a_dagger,
            complement,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn a_dagger(&self) -> &Matrix {
        &self.a_dagger
    }

    pub fn member(&self, x: &Matrix) -> Result<Matrix> {
        if x.shape() != self.a_dagger.shape() {
            return Err(Error::DimensionMismatch(format!(
                "parameter must be {}x{}, got {}x{}",
                self.a_dagger.rows(),
                self.a_dagger.cols(),
                x.rows(),
                x.cols()
            )));
        }
        let free = match self.kind {
            FamilyKind::OneThree => self.complement.try_mul(x)?,
            FamilyKind::OneFour => x.try_mul(&self.complement)?,
        };
        Ok(&self.a_dagger + &free)
    }
}

pub fn sample_13_inverse(a: &Matrix, x: &Matrix) -> Result<Matrix> {
    InverseFamily::new(a, FamilyKind::OneThree)?.member(x)
}

pub fn sample_14_inverse(a: &Matrix, x: &Matrix) -> Result<Matrix> {
    InverseFamily::new(a, FamilyKind::OneFour)?.member(x)
}

/// Data for the block form of `a{1,3}` relative to `p = bb†` and `r = aa†`.
#[derive(Clone, Debug)]
pub struct ParamContext13 {
    pub a: Matrix,
    /// `a a*`
    pub d: Matrix,
    pub d_dagger: Matrix,
    /// `b b†`
    pub p: Matrix,
    /// `b† b`
    pub q: Matrix,
    /// `a a†`
    pub r: Matrix,
}

impl ParamContext13 {
    pub fn new(a: &Matrix, b: &Matrix) -> Result<Self> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(Error::DimensionMismatch("a and b must be square of equal size".into()));
        }
        let a_dagger = mp_inverse(a)?;
        let b_dagger = mp_inverse(b)?;
        let d = a * &a.star();
        Ok(ParamContext13 {
            d_dagger: mp_inverse(&d)?,
            d,
            p: b * &b_dagger,
            q: &b_dagger * b,
            r: a * &a_dagger,
            a: a.clone(),
        })
    }

    fn e(&self) -> Matrix {
        Matrix::identity(self.a.domain(), self.a.rows())
    }

    /// `a1 = r a p = a p`
    pub fn a1(&self) -> Matrix {
        &self.a * &self.p
    }

    /// `a2 = r a (e - p) = a (e - p)`
    pub fn a2(&self) -> Matrix {
        &self.a * &(&self.e() - &self.p)
    }
}

/// The blocks `z1..z4` of `z = a† + (e - a†a) x` relative to `(p, r)`,
/// computed blockwise from the blocks `x1..x4` of `x`:
///
/// ```text
/// z1 = a1* d† + (e - a1* d† a1) x1 - a1* d† a2 x3
/// z2 = (e - a1* d† a1) x2 - a1* d† a2 x4
/// z3 = a2* d† - a2* d† a1 x1 + (e - a2* d† a2) x3
/// z4 = -a2* d† a1 x2 + (e - a2* d† a2) x4
/// ```
pub fn structured_13_blocks(ctx: &ParamContext13, x: &PeirceBlocks) -> Result<PeirceBlocks> {
    if !ctx.p.is_idempotent() {
        return Err(Error::NotIdempotent("p"));
    }
    if !ctx.r.is_idempotent() {
        return Err(Error::NotIdempotent("r"));
    }
    if x.p != ctx.p || x.q != ctx.r {
        return Err(Error::BlockMismatch);
    }
    let e = ctx.e();
    let (a1, a2) = (ctx.a1(), ctx.a2());
    let a1s_d = &a1.star() * &ctx.d_dagger;
    let a2s_d = &a2.star() * &ctx.d_dagger;
    let e_11 = &e - &(&a1s_d * &a1);
    let e_22 = &e - &(&a2s_d * &a2);
    let a1s_d_a2 = &a1s_d * &a2;
    let a2s_d_a1 = &a2s_d * &a1;

    let z1 = &(&a1s_d + &(&e_11 * &x.x1)) - &(&a1s_d_a2 * &x.x3);
    let z2 = &(&e_11 * &x.x2) - &(&a1s_d_a2 * &x.x4);
    let z3 = &(&a2s_d - &(&a2s_d_a1 * &x.x1)) + &(&e_22 * &x.x3);
    let z4 = &(&e_22 * &x.x4) - &(&a2s_d_a1 * &x.x2);
    Ok(PeirceBlocks {
        x1: z1,
        x2: z2,
        x3: z3,
        x4: z4,
        p: ctx.p.clone(),
        q: ctx.r.clone(),
    })
}

/// Block view of the {1,3}-inverse `b† + (e - b†b) y` relative to
/// `(q, p) = (b†b, bb†)`. The first row is always `[b†, 0]`; the second row
/// carries the free corners `u` and `v`.
pub fn b13_block_view(b: &Matrix, y: &Matrix) -> Result<PeirceBlocks> {
    let b_dagger = mp_inverse(b)?;
    let member = sample_13_inverse(b, y)?;
    peirce_blocks(&member, &(&b_dagger * b), &product(&[b, &b_dagger]))
}
