//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symrank::matpoly::SquareMatrix;
use symrank::scalars::{GaussianRational, Scalar};

pub type Q = GaussianRational;

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    match n {
        0 => Q::one(),
        1 => rows[0][0].clone(),
        _ => {
            let mut acc = Q::zero();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Q>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = rows[0][c].clone() * cofactor_det(&minor);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// `σ_j(M)`: sum of the principal `j × j` minors.
pub fn sigma_by_minors(m: &SquareMatrix<Q>, j: usize) -> Q {
    let n = m.n();
    let rows = m.to_rows();
    let mut total = Q::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Q>> = idx.iter().map(|&r| idx.iter().map(|&c| rows[r][c].clone()).collect()).collect();
        total = total + cofactor_det(&sub);
    }
    total
}

/// Coefficients of `det(tI − M)` (ascending) from principal minors.
pub fn char_poly_by_minors(m: &SquareMatrix<Q>) -> Vec<Q> {
    let n = m.n();
    let mut c = vec![Q::zero(); n + 1];
    for j in 0..=n {
        let s = sigma_by_minors(m, j);
        c[n - j] = if j % 2 == 0 { s } else { -s };
    }
    c
}

/// `adj(A)` by cofactors.
pub fn cofactor_adjugate(a: &SquareMatrix<Q>) -> SquareMatrix<Q> {
    let n = a.n();
    let rows = a.to_rows();
    SquareMatrix::from_fn(n, |i, j| {
        // adj(A)_{ij} = (−1)^{i+j} det A without row j, column i
        let minor: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != j)
            .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = cofactor_det(&minor);
        if (i + j) % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

pub fn random_gaussian_matrix(n: usize, bound: i64, rng: &mut ChaCha8Rng) -> SquareMatrix<Q> {
    SquareMatrix::from_fn(n, |_, _| Q::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of partitions of `0..=n` via Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc = 0i64;
        for k in 1.. {
            let k = k as i64;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2];
            }
        }
        p[m] = acc;
    }
    p.into_iter().map(|x| x as u64).collect()
}

/// Number of Jordan structures of size `n` over `pool` eigenvalues:
/// the coefficient of `xⁿ` in `(Σ p(k) xᵏ)^pool`.
pub fn jordan_type_count(n: usize, pool: usize) -> u64 {
    let p = partition_counts(n);
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for _ in 0..pool {
        let mut next = vec![0u64; n + 1];
        for (a, &x) in series.iter().enumerate() {
            for (b, &y) in p.iter().enumerate().take(n + 1 - a) {
                next[a + b] += x * y;
            }
        }
        series = next;
    }
    series[n]
}
