//! Commutants as nullspaces of vectorized linear systems.
//!
//! An unknown `n x n` matrix `D` is flattened by column stacking (`D[i][j]`
//! lives at index `j * n + i`). Each constraint contributes `n^2` rows to a
//! homogeneous system whose nullspace is the solution set.

use rand::Rng;

use crate::matrix::Matrix;
use crate::random::{rng_from_seed, small_rational};
use crate::scalar::{Scalar, ScalarDomain};

#[derive(Clone, Debug)]
pub struct LinearMatrixSystem {
    n: usize,
    domain: ScalarDomain,
    rows: Vec<Vec<Scalar>>,
}

impl LinearMatrixSystem {
    pub fn new(domain: ScalarDomain, n: usize) -> Self {
        LinearMatrixSystem {
            n,
            domain,
            rows: Vec::new(),
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    fn push_rows(&mut self, mut f: impl FnMut(usize, usize, &mut [Scalar])) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![self.domain.zero(); n * n];
                f(i, j, &mut row);
                self.rows.push(row);
            }
        }
    }

    /// `D X = X D`.
    pub fn commute_with(mut self, x: &Matrix) -> Self {
        assert_eq!(x.shape(), (self.n, self.n));
        let n = self.n;
        self.push_rows(|i, j, row| {
            // (DX - XD)_ij = sum_k D_ik X_kj - X_ik D_kj
            for k in 0..n {
                let l = k * n + i;
                row[l] = &row[l] + x.get(k, j);
                let r = j * n + k;
                row[r] = &row[r] - x.get(i, k);
            }
        });
        self
    }

    /// `D M = 0`.
    pub fn annihilate_on_right(mut self, m: &Matrix) -> Self {
        assert_eq!(m.shape(), (self.n, self.n));
        let n = self.n;
        self.push_rows(|i, j, row| {
            for k in 0..n {
                let l = k * n + i;
                row[l] = &row[l] + m.get(k, j);
            }
        });
        self
    }

    /// `M D = 0`.
    pub fn annihilate_on_left(mut self, m: &Matrix) -> Self {
        assert_eq!(m.shape(), (self.n, self.n));
        let n = self.n;
        self.push_rows(|i, j, row| {
            for k in 0..n {
                let r = j * n + k;
                row[r] = &row[r] + m.get(i, k);
            }
        });
        self
    }

    /// A basis of the solution space, as `n x n` matrices.
    pub fn basis(&self) -> Vec<Matrix> {
        let n = self.n;
        if self.rows.is_empty() {
            return (0..n * n)
                .map(|k| {
                    Matrix::from_fn(self.domain, n, n, |i, j| {
                        if self.idx(i, j) == k {
                            self.domain.one()
                        } else {
                            self.domain.zero()
                        }
                    })
                })
                .collect();
        }
        let system = Matrix::from_rows(self.domain, self.rows.clone()).expect("rows have equal length");
        system
            .nullspace_basis()
            .iter()
            .map(|v| Matrix::unvectorize(v, n, n))
            .collect()
    }

    /// A random combination of the basis with small rational coefficients.
    /// Returns the zero matrix when the solution space is trivial.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Matrix {
        combine(self.domain, self.n, &self.basis(), rng)
    }
}

pub fn combine<R: Rng>(domain: ScalarDomain, n: usize, basis: &[Matrix], rng: &mut R) -> Matrix {
    basis.iter().fold(Matrix::zeros(domain, n, n), |acc, b| {
        &acc + &b.scale(&small_rational(domain, rng))
    })
}

/// Basis of the commutant of `{B, B*}`.
pub fn commutant_basis(b: &Matrix) -> Vec<Matrix> {
    assert!(b.is_square(), "commutant of a non-square matrix");
    LinearMatrixSystem::new(b.domain(), b.rows())
        .commute_with(b)
        .commute_with(&b.star())
        .basis()
}

/// A seeded random element of the commutant of `{B, B*}`.
pub fn sample_commutant(b: &Matrix, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    combine(b.domain(), b.rows(), &commutant_basis(b), &mut rng)
}
