//! Fraction-free (Bareiss) elimination with full pivoting.
//!
//! Pivots are chosen by an exact zero test, so results are exact in the
//! exact field. In the float field these routines are only meaningful for
//! well-separated data; use the SVD-based rank there.

use super::matrix::{Matrix, SquareMatrix};
use crate::scalars::Scalar;

struct Elimination<S> {
    rank: usize,
    /// Last pivot (the determinant when the matrix is square and nonsingular), sign-corrected.
    last_pivot: S,
}

fn bareiss<S: Scalar>(mut a: Vec<Vec<S>>, cols: usize) -> Elimination<S> {
    let rows = a.len();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut prev = S::one();
    let mut swaps = 0;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Full pivoting: any nonzero in the trailing block.
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][col_perm[j]].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        if pi != k {
            a.swap(pi, k);
            swaps += 1;
        }
        if pj != k {
            col_perm.swap(pj, k);
            swaps += 1;
        }
        rank += 1;
        let pk = a[k][col_perm[k]].clone();
        for i in k + 1..rows {
            let aik = a[i][col_perm[k]].clone();
            for &j in &col_perm[k + 1..cols] {
                let v = pk.clone() * a[i][j].clone() - aik.clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][col_perm[k]] = S::zero();
        }
        prev = pk;
    }
    let last_pivot = if swaps % 2 == 1 { -prev } else { prev };
    Elimination { rank, last_pivot }
}

/// Rank by exact elimination.
pub fn rank_by_elimination<S: Scalar>(m: &Matrix<S>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    bareiss(m.to_rows(), m.cols()).rank
}

/// Determinant by exact elimination.
pub fn determinant<S: Scalar>(m: &SquareMatrix<S>) -> S {
    let e = bareiss(m.to_rows(), m.n());
    if e.rank < m.n() {
        S::zero()
    } else {
        e.last_pivot
    }
}
