//! Dense exact matrices with the conjugate-transpose involution.
//!
//! Shapes with a zero dimension are first-class: an `n x 0` times a `0 x m`
//! matrix is the `n x m` zero matrix. The operator impls (`&a * &b` etc.)
//! panic on shape or domain mismatch; use [`Matrix::try_mul`] and friends
//! where the shapes come from user input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarDomain};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    domain: ScalarDomain,
    entries: Vec<Scalar>,
}

/// `A = F G` with `F` of full column rank and `G` of full row rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    pub f: Matrix,
    pub g: Matrix,
    pub rank: usize,
}

impl Matrix {
    pub fn new(domain: ScalarDomain, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(x) = entries.iter().find(|x| x.domain() != domain) {
            return Err(Error::DomainMismatch(domain, x.domain()));
        }
        Ok(Matrix {
            rows,
            cols,
            domain,
            entries,
        })
    }

    pub fn from_fn(
        domain: ScalarDomain,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.domain(), domain, "entry outside matrix domain");
                entries.push(x);
            }
        }
        Matrix {
            rows,
            cols,
            domain,
            entries,
        }
    }

    /// Builds a matrix from rows of scalars. Used mostly by tests and parsers.
    pub fn from_rows(domain: ScalarDomain, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(domain, n, m, rows.into_iter().flatten().collect())
    }

    /// Parses rows of scalar strings, e.g. `&[&["1", "i"], &["0", "1/2"]]`.
    pub fn parse(domain: ScalarDomain, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| domain.parse_scalar(s)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        Self::from_rows(domain, rows)
    }

    pub fn zeros(domain: ScalarDomain, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            domain,
            entries: vec![domain.zero(); rows * cols],
        }
    }

    pub fn identity(domain: ScalarDomain, n: usize) -> Self {
        Self::from_fn(domain, n, n, |i, j| {
            if i == j {
                domain.one()
            } else {
                domain.zero()
            }
        })
    }

    pub fn scalar_matrix(lambda: &Scalar, n: usize) -> Self {
        let d = lambda.domain();
        Self::from_fn(d, n, n, |i, j| if i == j { lambda.clone() } else { d.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// The ring involution: conjugate transpose.
    pub fn star(&self) -> Matrix {
        Matrix::from_fn(self.domain, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.star()
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    /// Scalar multiple `lambda * A`.
    pub fn scale(&self, lambda: &Scalar) -> Matrix {
        Matrix::from_fn(self.domain, self.rows, self.cols, |i, j| lambda * self.get(i, j))
    }

    /// If `self = lambda I`, returns `lambda`.
    pub fn as_scalar_multiple(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let lambda = if n == 0 { self.domain.one() } else { self.get(0, 0).clone() };
        (*self == Matrix::scalar_matrix(&lambda, n)).then_some(lambda)
    }

    fn check_domain(&self, o: &Matrix) -> Result<()> {
        if self.domain != o.domain {
            return Err(Error::DomainMismatch(self.domain, o.domain));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        self.check_domain(o)?;
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let zero = self.domain.zero();
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..o.cols {
                let mut acc = zero.clone();
                for (k, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let y = o.get(k, j);
                    if !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: o.cols,
            domain: self.domain,
            entries,
        })
    }

    fn zip_with(&self, o: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_domain(o)?;
        if self.shape() != o.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain,
            entries: self.entries.iter().zip(&o.entries).map(|(x, y)| f(x, y)).collect(),
        })
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip_with(o, |x, y| x + y)
    }

    pub fn try_sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip_with(o, |x, y| x - y)
    }

    /// Columns `cols` of `self`, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.domain, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> Matrix {
        Matrix::from_fn(self.domain, k, self.cols, |i, j| self.get(i, j).clone())
    }

    /// Reduced row echelon form and the pivot columns. Pivots are chosen as the
    /// first nonzero entry in each column; with exact arithmetic the choice is
    /// only a matter of determinism.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &inv * m.get(r, j);
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `G` = nonzero rows of the RREF, `F` = pivot columns of `self`.
    pub fn rank_factorization(&self) -> RankFactorization {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        RankFactorization {
            f: self.select_columns(&pivots),
            g: r.top_rows(k),
            rank: k,
        }
    }

    /// A basis of the right kernel, one column vector per free variable.
    pub fn nullspace_basis(&self) -> Vec<Matrix> {
        let (r, pivots) = self.rref();
        let d = self.domain;
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|fc| {
            let mut v = vec![d.zero(); self.cols];
            v[fc] = d.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, fc);
            }
            Matrix::new(d, self.cols, 1, v).expect("shape is consistent")
        })
        .collect()
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let d = self.domain;
        let aug = Matrix::from_fn(d, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                d.one()
            } else {
                d.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(d, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Column-stacking vectorization: entry `(i, j)` goes to index `j * rows + i`.
    pub fn vectorize(&self) -> Matrix {
        Matrix::from_fn(self.domain, self.rows * self.cols, 1, |k, _| {
            self.get(k % self.rows, k / self.rows).clone()
        })
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.rows, rows * cols);
        Matrix::from_fn(v.domain, rows, cols, |i, j| v.get(j * rows + i, 0).clone())
    }
}

/// Product of a nonempty chain of matrices, left to right.
pub fn product(chain: &[&Matrix]) -> Matrix {
    let (first, rest) = chain.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, m| &acc * *m)
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.domain, self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
