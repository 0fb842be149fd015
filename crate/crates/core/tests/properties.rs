mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use symrank::canonical::{build_jordan, min_poly_degree, random_similarity, JordanSpec};
use symrank::jacobian::{jacobian_exact, rank_exact};
use symrank::matpoly::{adjugate_poly, char_poly, dot, p_bracket, p_bracket_eval, symmetrize, v_vector, SquareMatrix};
use symrank::proofs::{divided_difference, HermitePoint};
use symrank::scalars::{falling_factorial, GaussianRational, Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)).unwrap())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| GaussianRational::from_ints(a, b))
}

fn matrix(max_n: usize) -> impl Strategy<Value = SquareMatrix<Q>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(small_gaussian(), n * n).prop_map(move |v| SquareMatrix::from_fn(n, |i, j| v[i * n + j].clone()))
    })
}

fn jordan_spec(max_n: usize) -> impl Strategy<Value = JordanSpec> {
    let pool = [q(0), q(1), q(-1), Q::from_ints(0, 1), q(2)];
    prop::collection::vec(prop::collection::vec(1usize..=3, 0..=2), 5)
        .prop_map(move |sizes| {
            let pairs: Vec<(Q, Vec<usize>)> = pool
                .iter()
                .cloned()
                .zip(sizes)
                .filter(|(_, s)| !s.is_empty())
                .map(|(l, mut s)| {
                    s.sort_unstable();
                    (l, s)
                })
                .collect();
            pairs
        })
        .prop_filter("nonempty and small", move |pairs| {
            let n: usize = pairs.iter().flat_map(|(_, s)| s).sum();
            n >= 1 && n <= max_n
        })
        .prop_map(|pairs| JordanSpec::from_pairs(pairs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + Q::zero(), a.clone());
        prop_assert_eq!(a.clone() * Q::one(), a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Q::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * (Q::one() / a.clone()), Q::one());
        }
    }
}

proptest! {
    #[test]
    fn rational_text_round_trip(r in rational()) {
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn gaussian_text_and_json_round_trip(z in gaussian()) {
        prop_assert_eq!(z.to_string().parse::<Q>().unwrap(), z.clone());
        let json = serde_json::to_string(&z).unwrap();
        prop_assert_eq!(serde_json::from_str::<Q>(&json).unwrap(), z);
    }

    #[test]
    fn f64_lift_is_exact(x in -1e6f64..1e6) {
        let r = Rational::from_f64(x).unwrap();
        prop_assert_eq!(r.to_f64(), x);
    }

    #[test]
    fn char_poly_is_similarity_invariant(m in matrix(5), seed in any::<u64>()) {
        prop_assert_eq!(char_poly(&random_similarity(&m, seed)).unwrap(), char_poly(&m).unwrap());
    }

    #[test]
    fn bracket_of_pi_is_char_poly(m in matrix(5)) {
        let s = symmetrize(&m).unwrap();
        prop_assert_eq!(p_bracket(s.components()), char_poly(&m).unwrap());
    }

    #[test]
    fn adjugate_identity(m in matrix(4), t in small_gaussian()) {
        let n = m.n();
        let shifted = SquareMatrix::scalar(n, t.clone()).sub(&m);
        let lhs = shifted.mul(&adjugate_poly(&m).unwrap().eval(&t));
        let p = char_poly(&m).unwrap().eval(&t);
        prop_assert_eq!(lhs, SquareMatrix::scalar(n, p));
    }

    /// `v⁽ᵏ⁾(λ)·u = P⁽ᵏ⁾_[u](λ) − (tⁿ)⁽ᵏ⁾(λ)`.
    #[test]
    fn v_vector_matches_bracket_derivatives(
        u in prop::collection::vec(small_gaussian(), 1..=6),
        lambda in small_gaussian(),
        k in 0usize..=6,
    ) {
        let n = u.len();
        let lhs = dot(&v_vector(n, k, &lambda), &u).unwrap();
        let mono = if k <= n {
            q(falling_factorial(n, k)) * lambda.pow((n - k) as u32)
        } else {
            Q::zero()
        };
        prop_assert_eq!(lhs, p_bracket_eval(&u, k, &lambda) - mono);
    }

    #[test]
    fn divided_difference_is_symmetric(
        nodes in prop::collection::btree_set((-6i64..=6, -2i64..=2), 1..=5),
        coeffs in prop::collection::vec(small_gaussian(), 1..=6),
        rotate in 0usize..5,
    ) {
        let f = |z: &Q| coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * z.clone() + c.clone());
        let mut pts: Vec<HermitePoint<Q>> = nodes
            .iter()
            .map(|&(a, b)| {
                let z = Q::from_ints(a, b);
                HermitePoint::value(z.clone(), f(&z))
            })
            .collect();
        let forward = divided_difference(&pts).unwrap();
        pts.reverse();
        let len = pts.len();
        pts.rotate_left(rotate % len);
        prop_assert_eq!(divided_difference(&pts).unwrap(), forward);
    }

    #[test]
    fn jacobian_rank_is_min_poly_degree(spec in jordan_spec(6), seed in any::<u64>()) {
        let b = random_similarity(&build_jordan(&spec), seed);
        prop_assert_eq!(rank_exact(&jacobian_exact(&b).unwrap().entries), min_poly_degree(&spec));
    }

    #[test]
    fn jordan_spec_json_round_trip(spec in jordan_spec(6)) {
        let json = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(serde_json::from_str::<JordanSpec>(&json).unwrap(), spec);
    }
}
