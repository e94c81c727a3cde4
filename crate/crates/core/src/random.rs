//! Seeded sampling of small scalars and matrices.
//!
//! Magnitudes are kept small (numerators in `[-5, 5]`, denominators in
//! `{1, 2, 3}`) so exact entry growth stays manageable at desk-scale sizes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::scalar::{Scalar, ScalarDomain};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream seed for sub-task `index` of `master`
/// (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A small rational coefficient, mapped into `domain`.
pub fn small_rational<R: Rng>(domain: ScalarDomain, rng: &mut R) -> Scalar {
    let num = rng.gen_range(-5..=5);
    let mut den = rng.gen_range(1..=3);
    if let ScalarDomain::PrimeField(p) = domain {
        if den as u64 % p == 0 {
            den = 1;
        }
    }
    domain.ratio(num, den)
}

/// A small random entry. Over `Q(i)` the imaginary part is nonzero about half
/// the time; over `F_p` the value is uniform.
pub fn small_scalar<R: Rng>(domain: ScalarDomain, rng: &mut R) -> Scalar {
    match domain {
        ScalarDomain::GaussianRational => {
            let re = small_rational(domain, rng);
            if rng.gen_bool(0.5) {
                let im = small_rational(domain, rng);
                &re + &(&im * &imag_unit())
            } else {
                re
            }
        }
        ScalarDomain::PrimeField(p) => domain.int(rng.gen_range(0..p) as i64),
    }
}

fn imag_unit() -> Scalar {
    ScalarDomain::GaussianRational.parse_scalar("i").unwrap()
}

pub fn random_matrix<R: Rng>(domain: ScalarDomain, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(domain, rows, cols, |_, _| small_scalar(domain, rng))
}

/// An `n x m` matrix of rank exactly `rank`, built as a product `U V` of an
/// `n x rank` and a `rank x m` factor, resampled until the rank is attained.
pub fn random_matrix_of_rank<R: Rng>(
    domain: ScalarDomain,
    rows: usize,
    cols: usize,
    rank: usize,
    rng: &mut R,
) -> Matrix {
    assert!(rank <= rows.min(cols), "rank {rank} impossible for {rows}x{cols}");
    loop {
        let u = random_matrix(domain, rows, rank, rng);
        let v = random_matrix(domain, rank, cols, rng);
        let a = &u * &v;
        if a.rank() == rank {
            return a;
        }
    }
}
