use proptest::prelude::*;

use revorder::io::{matrix_from_json, matrix_to_json};
use revorder::random::{random_matrix, random_matrix_of_rank, rng_from_seed};
use revorder::{Matrix, Scalar, ScalarDomain};

const Q: ScalarDomain = ScalarDomain::GaussianRational;

fn gauss() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=7, -30i64..=30, 1i64..=7).prop_map(|(a, b, c, d)| {
        let i = Q.parse_scalar("i").unwrap();
        &Q.ratio(a, b) + &(&Q.ratio(c, d) * &i)
    })
}

fn prime_pair() -> impl Strategy<Value = (Scalar, Scalar)> {
    prop::sample::select(vec![3u64, 5, 7, 13, 101, 2_147_483_647]).prop_flat_map(|p| {
        let d = ScalarDomain::prime_field(p).unwrap();
        (0..p, 0..p).prop_map(move |(x, y)| (d.int(x as i64), d.int(y as i64)))
    })
}

/// Seed and shape for a random matrix of random rank.
fn shaped() -> impl Strategy<Value = Matrix> {
    (any::<u64>(), 1usize..=4, 1usize..=4)
        .prop_flat_map(|(seed, n, m)| (Just(seed), Just(n), Just(m), 0..=n.min(m)))
        .prop_map(|(seed, n, m, k)| random_matrix_of_rank(Q, n, m, k, &mut rng_from_seed(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conjugation_is_an_involutive_automorphism(z in gauss(), w in gauss()) {
        prop_assert_eq!(z.conj().conj(), z.clone());
        prop_assert_eq!((&z + &w).conj(), &z.conj() + &w.conj());
        prop_assert_eq!((&z * &w).conj(), &z.conj() * &w.conj());
        prop_assert_eq!(&z * &w, &w * &z);
    }

    #[test]
    fn gaussian_inverses_and_text(z in gauss()) {
        prop_assert_eq!(Q.parse_scalar(&z.to_string()).unwrap(), z.clone());
        if !z.is_zero() {
            prop_assert!((&z * &z.inv().unwrap()).is_one());
            // z z̄ is real and nonnegative
            prop_assert_eq!((&z * &z.conj()).conj(), &z * &z.conj());
        } else {
            prop_assert!(z.inv().is_err());
        }
    }

    #[test]
    fn prime_field_arithmetic((x, y) in prime_pair()) {
        let d = x.domain();
        prop_assert_eq!(x.conj(), x.clone());
        prop_assert_eq!(d.parse_scalar(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_invariant_under_adjoint(a in shaped()) {
        prop_assert_eq!(a.rank(), a.star().rank());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn adjoint_reverses_products(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=4, m in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let a = random_matrix(Q, n, k, &mut rng);
        let b = random_matrix(Q, k, m, &mut rng);
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
    }

    #[test]
    fn rank_factorization_recomposes(a in shaped()) {
        let rf = a.rank_factorization();
        prop_assert_eq!(rf.f.shape(), (a.rows(), rf.rank));
        prop_assert_eq!(rf.g.shape(), (rf.rank, a.cols()));
        prop_assert_eq!(rf.f.rank(), rf.rank);
        prop_assert_eq!(rf.g.rank(), rf.rank);
        prop_assert_eq!(&rf.f * &rf.g, a);
    }

    #[test]
    fn nullspace_has_complementary_dimension(a in shaped()) {
        let basis = a.nullspace_basis();
        prop_assert_eq!(basis.len(), a.cols() - a.rank());
        for v in &basis {
            prop_assert!((&a * v).is_zero());
        }
    }

    #[test]
    fn full_rank_square_matrices_invert(seed in any::<u64>(), n in 1usize..=4) {
        let a = random_matrix_of_rank(Q, n, n, n, &mut rng_from_seed(seed));
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Matrix::identity(Q, n));
        prop_assert_eq!(&inv * &a, Matrix::identity(Q, n));
    }

    #[test]
    fn json_round_trip_is_byte_exact(a in shaped()) {
        let text = matrix_to_json(&a);
        let back = matrix_from_json(&text).unwrap();
        prop_assert_eq!(matrix_to_json(&back), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn vectorization_round_trips(a in shaped()) {
        prop_assert_eq!(Matrix::unvectorize(&a.vectorize(), a.rows(), a.cols()), a);
    }
}
