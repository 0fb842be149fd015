//! The derivative `π′(B)` as an `n × n²` matrix, its rank in both fields,
//! and the rank-equals-minimal-polynomial-degree check.
//!
//! Directions `E_ij` are vectorized row-major: column `(i−1)·n + (j−1)`.
//! Row `k` is the differential of σ_k. From
//! `det(tI − B − εM) = P_B(t) − ε·tr(adj(tI − B)·M) + O(ε²)` we get
//! `dσ_k(M) = (−1)^{k+1} [t^{n−k}] tr(adj(tI − B)·M)`, and for `M = E_ij`
//! the trace picks out entry `(j, i)` of each adjugate coefficient.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{build_jordan, min_poly_degree, random_similarity, JordanSpec};
use crate::matpoly::{adjugate_poly, rank_by_elimination, symmetrize, MatPolyError, Matrix, SquareMatrix, SymPoint};
use crate::scalars::{ComplexFloat, Field, GaussianRational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JacobianError {
    #[error(transparent)]
    MatPoly(#[from] MatPolyError),
    #[error("finite-difference step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("tolerance must be non-negative, got {0}")]
    BadTolerance(f64),
    #[error("SVD did not converge")]
    SvdFailed,
}

/// Order in which direction matrices are laid out as columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnOrder {
    RowMajor,
}

/// `π′(B)`: `n` rows, `n²` columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobianMatrix<S: Scalar> {
    pub n: usize,
    pub field: Field,
    pub column_order: ColumnOrder,
    #[serde(serialize_with = "serialize_rows")]
    pub entries: Matrix<S>,
}

fn serialize_rows<S: Scalar, Ser: serde::Serializer>(m: &Matrix<S>, s: Ser) -> Result<Ser::Ok, Ser::Error> {
    m.to_rows().serialize(s)
}

impl<S: Scalar> JacobianMatrix<S> {
    fn from_matrix(n: usize, entries: Matrix<S>) -> Self {
        JacobianMatrix { n, field: S::FIELD, column_order: ColumnOrder::RowMajor, entries }
    }

    /// Column index of the direction `E_ij` (zero-based `i`, `j`).
    pub fn column_index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn column(&self, i: usize, j: usize) -> Vec<S> {
        self.entries.column(self.column_index(i, j))
    }
}

/// `π′(B)·M`, exact via the adjugate polynomial.
pub fn directional_derivative<S: Scalar>(
    b: &SquareMatrix<S>,
    m: &SquareMatrix<S>,
) -> Result<SymPoint<S>, JacobianError> {
    if b.n() != m.n() {
        return Err(MatPolyError::DimensionMismatch { left: b.n(), right: m.n() }.into());
    }
    let n = b.n();
    let adj = adjugate_poly(b)?;
    Ok(SymPoint(
        (1..=n)
            .map(|k| {
                let tr = adj.coeff(n - k).trace_product(m);
                if k % 2 == 1 {
                    tr
                } else {
                    -tr
                }
            })
            .collect(),
    ))
}

/// `π′(B)` assembled from the adjugate coefficients (analytic; either field).
pub fn jacobian_exact<S: Scalar>(b: &SquareMatrix<S>) -> Result<JacobianMatrix<S>, JacobianError> {
    let n = b.n();
    let adj = adjugate_poly(b)?;
    let coeffs: Vec<SquareMatrix<S>> = (0..n).map(|p| adj.coeff(p)).collect();
    let entries = Matrix::from_fn(n, n * n, |row, col| {
        let k = row + 1;
        let (i, j) = (col / n, col % n);
        let v = coeffs[n - k].get(j, i).clone();
        if k % 2 == 1 {
            v
        } else {
            -v
        }
    });
    Ok(JacobianMatrix::from_matrix(n, entries))
}

/// Central differences `(π(B + hE_ij) − π(B − hE_ij)) / 2h`.
pub fn jacobian_fd(
    b: &SquareMatrix<ComplexFloat>,
    h: f64,
) -> Result<JacobianMatrix<ComplexFloat>, JacobianError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(JacobianError::BadStep(h));
    }
    let n = b.n();
    let mut entries = Matrix::zeros(n, n * n);
    let step = ComplexFloat::new(h, 0.0);
    let inv = ComplexFloat::new(1.0 / (2.0 * h), 0.0);
    for i in 0..n {
        for j in 0..n {
            let mut plus = b.clone();
            plus.set(i, j, *b.get(i, j) + step);
            let mut minus = b.clone();
            minus.set(i, j, *b.get(i, j) - step);
            let sp = symmetrize(&plus)?;
            let sm = symmetrize(&minus)?;
            for k in 0..n {
                entries.set(k, i * n + j, (sp.0[k] - sm.0[k]) * inv);
            }
        }
    }
    Ok(JacobianMatrix::from_matrix(n, entries))
}

/// Exact rank (fraction-free elimination, full pivoting).
pub fn rank_exact(a: &Matrix<GaussianRational>) -> usize {
    rank_by_elimination(a)
}

/// Outcome of a numerical rank decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankDecision {
    pub rank: usize,
    pub threshold: f64,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Distance from the threshold to the nearest singular value.
    pub gap: f64,
}

/// Singular values above `τ`; default `τ = max(rows, cols)·ε·σ_max`.
pub fn rank_numeric(a: &Matrix<ComplexFloat>, tol: Option<f64>) -> Result<RankDecision, JacobianError> {
    if let Some(t) = tol {
        if t.is_nan() || t < 0.0 {
            return Err(JacobianError::BadTolerance(t));
        }
    }
    let (rows, cols) = (a.rows(), a.cols());
    if rows == 0 || cols == 0 {
        return Ok(RankDecision {
            rank: 0,
            threshold: tol.unwrap_or(0.0),
            singular_values: vec![],
            gap: f64::INFINITY,
        });
    }
    let dm = DMatrix::<Complex64>::from_fn(rows, cols, |i, j| a.get(i, j).to_complex64());
    let svd = dm.try_svd(false, false, f64::EPSILON, 10_000).ok_or(JacobianError::SvdFailed)?;
    let mut singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold =
        tol.unwrap_or_else(|| rows.max(cols) as f64 * f64::EPSILON * sigma_max);
    let rank = singular_values.iter().filter(|&&s| s > threshold).count();
    let gap = singular_values
        .iter()
        .map(|s| (s - threshold).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(RankDecision { rank, threshold, singular_values, gap })
}

/// Result of checking rank π′(B) = deg(minimal polynomial) for one Jordan spec.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub spec: JordanSpec,
    pub n: usize,
    pub min_poly_degree: usize,
    pub rank: usize,
    pub theorem_holds: bool,
    pub field: Field,
    /// True when the rank was recomputed after a random unimodular
    /// conjugation and came out the same.
    pub conjugation_checked: bool,
    pub conjugated_rank: Option<usize>,
    /// Diagnostic only: whether B lies in the spectral unit ball.
    pub in_spectral_ball: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.theorem_holds && self.conjugation_checked
    }
}

/// Exact check, including one conjugation by a seeded unimodular matrix.
pub fn verify_theorem(spec: &JordanSpec, seed: u64) -> Result<TheoremReport, JacobianError> {
    let b = build_jordan::<GaussianRational>(spec);
    let m = min_poly_degree(spec);
    let rank = rank_exact(&jacobian_exact(&b)?.entries);
    let conj = random_similarity(&b, seed);
    let conjugated_rank = rank_exact(&jacobian_exact(&conj)?.entries);
    Ok(TheoremReport {
        spec: spec.clone(),
        n: spec.n(),
        min_poly_degree: m,
        rank,
        theorem_holds: rank == m,
        field: Field::Exact,
        conjugation_checked: conjugated_rank == rank,
        conjugated_rank: Some(conjugated_rank),
        in_spectral_ball: spec.in_spectral_ball(),
        tolerance: None,
    })
}

/// Float variant: SVD rank of the analytic Jacobian of the rounded Jordan matrix.
pub fn verify_theorem_float(spec: &JordanSpec, tol: Option<f64>) -> Result<TheoremReport, JacobianError> {
    let b = build_jordan::<ComplexFloat>(spec);
    let m = min_poly_degree(spec);
    let decision = rank_numeric(&jacobian_exact(&b)?.entries, tol)?;
    Ok(TheoremReport {
        spec: spec.clone(),
        n: spec.n(),
        min_poly_degree: m,
        rank: decision.rank,
        theorem_holds: decision.rank == m,
        field: Field::Float,
        conjugation_checked: true,
        conjugated_rank: None,
        in_spectral_ball: spec.in_spectral_ball(),
        tolerance: Some(decision.threshold),
    })
}
