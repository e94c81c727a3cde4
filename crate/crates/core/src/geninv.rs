//! Moore-Penrose and group inverses.
//!
//! Both are computed from a rank factorization `A = F G`:
//!
//! * `A† = G* (G G*)^-1 (F* F)^-1 F*`
//! * `A# = F (G F)^-2 G`
//!
//! Over `Q(i)` the Gram matrices `F* F` and `G G*` are always invertible; over
//! `F_p` they need not be, and that is exactly when `A†` fails to exist.

use crate::error::{Error, Result};
use crate::matrix::{product, Matrix};

/// Truth of each Penrose equation for a candidate `B` of `A`:
/// (1) `ABA = A`, (2) `BAB = B`, (3) `(AB)* = AB`, (4) `(BA)* = BA`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PenroseReport {
    pub eq1_holds: bool,
    pub eq2_holds: bool,
    pub eq3_holds: bool,
    pub eq4_holds: bool,
}

impl PenroseReport {
    pub fn all(&self) -> bool {
        self.eq1_holds && self.eq2_holds && self.eq3_holds && self.eq4_holds
    }

    /// Flag for equation `j` in `1..=4`.
    pub fn holds(&self, j: u8) -> bool {
        match j {
            1 => self.eq1_holds,
            2 => self.eq2_holds,
            3 => self.eq3_holds,
            4 => self.eq4_holds,
            _ => panic!("no Penrose equation ({j})"),
        }
    }
}

/// True iff `rank(A) = rank(A* A) = rank(A A*)`. Always true over a formally
/// real field, where the rank test is skipped.
pub fn mp_exists(a: &Matrix) -> bool {
    if a.domain().is_formally_real() {
        return true;
    }
    let k = a.rank();
    (&a.star() * a).rank() == k && (a * &a.star()).rank() == k
}

pub fn mp_inverse(a: &Matrix) -> Result<Matrix> {
    let rf = a.rank_factorization();
    if rf.rank == 0 {
        return Ok(Matrix::zeros(a.domain(), a.cols(), a.rows()));
    }
    let (f, g) = (&rf.f, &rf.g);
    let (fs, gs) = (f.star(), g.star());
    let gram_g = (g * &gs).inverse().map_err(|_| Error::NoMpInverse)?;
    let gram_f = (&fs * f).inverse().map_err(|_| Error::NoMpInverse)?;
    Ok(product(&[&gs, &gram_g, &gram_f, &fs]))
}

pub fn group_inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "group inverse of non-square {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let rf = a.rank_factorization();
    if rf.rank == 0 {
        return Ok(Matrix::zeros(a.domain(), a.rows(), a.cols()));
    }
    let gf_inv = (&rf.g * &rf.f)
        .inverse()
        .map_err(|_| Error::NotGroupInvertible)?;
    Ok(product(&[&rf.f, &gf_inv, &gf_inv, &rf.g]))
}

/// `A† = (A* A)# A*`, an independent route to the Moore-Penrose inverse.
pub fn mp_via_star_group(a: &Matrix) -> Result<Matrix> {
    if !mp_exists(a) {
        return Err(Error::NoMpInverse);
    }
    let sa = a.star();
    let g = group_inverse(&(&sa * a)).map_err(|_| Error::NoMpInverse)?;
    Ok(&g * &sa)
}

fn check_candidate_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    if b.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch(format!(
            "candidate is {}x{}, expected {}x{}",
            b.rows(),
            b.cols(),
            a.cols(),
            a.rows()
        )));
    }
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    Ok(())
}

pub fn penrose_residuals(a: &Matrix, b: &Matrix) -> Result<PenroseReport> {
    check_candidate_shape(a, b)?;
    let ab = a * b;
    let ba = b * a;
    Ok(PenroseReport {
        eq1_holds: &ab * a == *a,
        eq2_holds: &ba * b == *b,
        eq3_holds: ab.star() == ab,
        eq4_holds: ba.star() == ba,
    })
}

/// `B = A†` iff `A = A A* B*` and `B* = A B B*`.
pub fn prop21_check(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_candidate_shape(a, b)?;
    let bs = b.star();
    Ok(product(&[a, &a.star(), &bs]) == *a && product(&[a, b, &bs]) == bs)
}

/// True iff `C` commutes with both `A` and `A*`.
pub fn commutes_with_pair(c: &Matrix, a: &Matrix) -> Result<bool> {
    if !c.is_square() || !a.is_square() || c.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutation needs equal square sizes, got {}x{} and {}x{}",
            c.rows(),
            c.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let sa = a.star();
    Ok(c.try_mul(a)? == a.try_mul(c)? && c.try_mul(&sa)? == sa.try_mul(c)?)
}
