mod common;

use common::*;
use rand::Rng;
use symrank::canonical::{build_jordan, min_poly_degree, min_poly_krylov, random_similarity, JordanSpec};
use symrank::jacobian::{jacobian_exact, rank_exact};
use symrank::matpoly::{adjugate_poly, char_poly, determinant, symmetrize, SquareMatrix};
use symrank::proofs::confluent_vandermonde_det;
use symrank::scalars::Scalar;
use symrank::sweep::{default_pool, enumerate_jordan_specs};

#[test]
fn determinant_matches_cofactor_expansion() {
    let mut r = rng(1);
    for n in 1..=5 {
        for _ in 0..20 {
            let m = random_gaussian_matrix(n, 3, &mut r);
            assert_eq!(determinant(&m), cofactor_det(&m.to_rows()));
        }
    }
}

#[test]
fn char_poly_matches_principal_minors() {
    let mut r = rng(2);
    for n in 1..=5 {
        for _ in 0..10 {
            let m = random_gaussian_matrix(n, 4, &mut r);
            assert_eq!(char_poly(&m).unwrap().coeffs(), char_poly_by_minors(&m).as_slice());
        }
    }
}

#[test]
fn adjugate_polynomial_matches_cofactors() {
    let mut r = rng(3);
    for n in 1..=4 {
        let m = random_gaussian_matrix(n, 3, &mut r);
        let adj = adjugate_poly(&m).unwrap();
        for t in [q(0), q(2), Q::from_ints(-1, 3)] {
            let shifted = SquareMatrix::scalar(n, t.clone()).sub(&m);
            assert_eq!(adj.eval(&t), cofactor_adjugate(&shifted), "n={n} t={t}");
        }
    }
}

/// `σ(B + E_ij)` is affine in the step, so the column is a plain difference.
#[test]
fn jacobian_columns_match_unit_differences() {
    let mut r = rng(4);
    for n in 1..=4 {
        let b = random_gaussian_matrix(n, 2, &mut r);
        let jac = jacobian_exact(&b).unwrap();
        for i in 0..n {
            for j in 0..n {
                let shifted = b.add(&SquareMatrix::unit(n, i, j));
                let expected: Vec<Q> =
                    (1..=n).map(|k| sigma_by_minors(&shifted, k) - sigma_by_minors(&b, k)).collect();
                assert_eq!(jac.column(i, j), expected);
            }
        }
    }
}

#[test]
fn symmetrize_matches_principal_minors() {
    let mut r = rng(5);
    for n in 1..=5 {
        let m = random_gaussian_matrix(n, 3, &mut r);
        let s = symmetrize(&m).unwrap();
        for j in 1..=n {
            assert_eq!(s.sigma(j), sigma_by_minors(&m, j));
        }
    }
}

#[test]
fn minimal_polynomial_of_conjugated_jordan_matrices() {
    let pool = default_pool();
    let mut r = rng(6);
    let specs = enumerate_jordan_specs(5, &pool);
    for _ in 0..30 {
        let spec = &specs[r.random_range(0..specs.len())];
        let m = random_similarity(&build_jordan(spec), r.random());
        let p = min_poly_krylov(&m);
        assert_eq!(p.degree(), Some(min_poly_degree(spec)));
        assert!(p.is_monic());
        assert!(p.eval_matrix(&m).is_zero());
        assert_eq!(rank_exact(&jacobian_exact(&m).unwrap().entries), min_poly_degree(spec));
    }
}

#[test]
fn enumeration_count_matches_partition_generating_function() {
    let pool = default_pool();
    let expected = [5, 20, 65, 190, 506, 1265];
    for n in 1..=6 {
        let count = enumerate_jordan_specs(n, &pool).len() as u64;
        assert_eq!(count, jordan_type_count(n, pool.len()), "n={n}");
        assert_eq!(count, expected[n - 1]);
    }
    for size in 1..=4 {
        for n in 1..=5 {
            assert_eq!(enumerate_jordan_specs(n, &pool[..size]).len() as u64, jordan_type_count(n, size));
        }
    }
}

/// Confluent Vandermonde with columns `dʲ/dλʲ (1, λ, …, λⁿ⁻¹)`, built and
/// expanded independently; the library's sign convention may differ.
#[test]
fn confluent_vandermonde_matches_cofactor_determinant() {
    let cases: Vec<Vec<(Q, usize)>> = vec![
        vec![(q(0), 1), (q(1), 1), (q(2), 1)],
        vec![(q(1), 2), (q(-1), 1)],
        vec![(q(2), 3), (q(0), 2)],
        vec![(Q::from_ints(0, 1), 2), (q(1), 2), (q(-1), 1)],
        vec![(q(3), 4)],
    ];
    for clusters in cases {
        let n: usize = clusters.iter().map(|c| c.1).sum();
        let mut columns: Vec<Vec<Q>> = Vec::new();
        for (lambda, r) in &clusters {
            for d in 0..*r {
                columns.push(
                    (0..n)
                        .map(|row| {
                            if row < d {
                                return Q::zero();
                            }
                            let coeff: i64 = (row - d + 1..=row).map(|x| x as i64).product();
                            q(coeff) * lambda.pow((row - d) as u32)
                        })
                        .collect(),
                );
            }
        }
        let rows: Vec<Vec<Q>> = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let det = cofactor_det(&rows);
        let report = confluent_vandermonde_det(&clusters).unwrap();
        assert_eq!(report.abs_sq_direct, det.norm_sq());
        assert!(report.abs_equal);
        assert!(!det.is_zero());
    }
}

#[test]
fn spec_rejects_duplicate_eigenvalues() {
    let bad = serde_json::from_str::<JordanSpec>(
        r#"{"n":2,"blocks":[{"eigenvalue":"1","sizes":[1]},{"eigenvalue":"1","sizes":[1]}]}"#,
    );
    assert!(bad.is_err());
}
