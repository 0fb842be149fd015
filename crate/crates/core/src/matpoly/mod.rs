//! Matrices, characteristic and adjugate polynomials, and the
//! symmetrization map `π(M) = (σ₁(M), …, σₙ(M))`.
//!
//! Sign convention: `det(tI − M) = Σⱼ (−1)ʲ σⱼ(M) tⁿ⁻ʲ` with `σ₀ = 1`, and a
//! [`SymPoint`] stores the σⱼ themselves.

mod elim;
mod matrix;
mod poly;

pub use elim::{determinant, rank_by_elimination};
pub use matrix::{AnyMatrix, Matrix, SquareMatrix};
pub use poly::{MatrixPolynomial, Polynomial};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{falling_factorial, ComplexFloat, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatPolyError {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("rows have different lengths")]
    Ragged,
    #[error("non-finite entry")]
    NonFinite,
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// `(σ₁, …, σₙ)`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound = "")]
pub struct SymPoint<S: Scalar>(pub Vec<S>);

impl<S: Scalar> SymPoint<S> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// σⱼ for `1 ≤ j ≤ n`; σ₀ = 1.
    pub fn sigma(&self, j: usize) -> S {
        if j == 0 {
            S::one()
        } else {
            self.0[j - 1].clone()
        }
    }

    pub fn components(&self) -> &[S] {
        &self.0
    }
}

/// Output of the Faddeev–LeVerrier recursion.
#[derive(Clone, Debug)]
pub struct CharacteristicData<S: Scalar> {
    pub char_poly: Polynomial<S>,
    /// `adj(tI − M)`.
    pub adjugate: MatrixPolynomial<S>,
}

/// Faddeev–LeVerrier: `N₁ = I`, `cₙ₋ₖ = −tr(M Nₖ)/k`, `Nₖ₊₁ = M Nₖ + cₙ₋ₖ I`,
/// with `adj(tI − M) = Σₖ Nₖ tⁿ⁻ᵏ`.
pub fn faddeev_leverrier<S: Scalar>(m: &SquareMatrix<S>) -> Result<CharacteristicData<S>, MatPolyError> {
    let n = m.n();
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    // adj_coeffs[k] is the coefficient of t^k.
    let mut adj_coeffs = vec![SquareMatrix::zeros(n); n];
    let mut nk = SquareMatrix::identity(n);
    for k in 1..=n {
        adj_coeffs[n - k] = nk.clone();
        let mn = m.mul(&nk);
        let c = -(mn.trace() / S::from_i64(k as i64));
        if !c.is_finite() {
            return Err(MatPolyError::Numeric(format!("coefficient of t^{} overflowed", n - k)));
        }
        coeffs[n - k] = c.clone();
        if k < n {
            nk = mn.add(&SquareMatrix::scalar(n, c));
        }
    }
    Ok(CharacteristicData {
        char_poly: Polynomial::new(coeffs),
        adjugate: MatrixPolynomial::new(n, adj_coeffs),
    })
}

/// `det(tI − M)`, monic of degree n.
pub fn char_poly<S: Scalar>(m: &SquareMatrix<S>) -> Result<Polynomial<S>, MatPolyError> {
    faddeev_leverrier(m).map(|d| d.char_poly)
}

/// `adj(tI − M)` as a matrix polynomial of degree n − 1.
pub fn adjugate_poly<S: Scalar>(m: &SquareMatrix<S>) -> Result<MatrixPolynomial<S>, MatPolyError> {
    faddeev_leverrier(m).map(|d| d.adjugate)
}

/// σⱼ read off a monic degree-n polynomial.
pub fn sym_point_from_char_poly<S: Scalar>(p: &Polynomial<S>, n: usize) -> SymPoint<S> {
    SymPoint(
        (1..=n)
            .map(|j| {
                let c = p.coeff(n - j);
                if j % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect(),
    )
}

/// π(M).
pub fn symmetrize<S: Scalar>(m: &SquareMatrix<S>) -> Result<SymPoint<S>, MatPolyError> {
    Ok(sym_point_from_char_poly(&char_poly(m)?, m.n()))
}

/// `P_[v](t) = Σⱼ (−1)ʲ vⱼ tⁿ⁻ʲ` with `v₀ = 1`, as a polynomial.
pub fn p_bracket<S: Scalar>(v: &[S]) -> Polynomial<S> {
    let n = v.len();
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    for (idx, vj) in v.iter().enumerate() {
        let j = idx + 1;
        coeffs[n - j] = if j % 2 == 0 { vj.clone() } else { -vj.clone() };
    }
    Polynomial::new(coeffs)
}

/// k-th derivative of `P_[v]` at `t`; zero for `k > n`.
pub fn p_bracket_eval<S: Scalar>(v: &[S], k: usize, t: &S) -> S {
    let n = v.len();
    if k > n {
        return S::zero();
    }
    p_bracket(v).nth_derivative(k).eval(t)
}

/// k-th componentwise derivative at `lambda` of
/// `v(t) = (−tⁿ⁻¹, tⁿ⁻², …, (−1)ⁿ⁻¹ t, (−1)ⁿ)`.
///
/// With this vector `P_[u](t) − tⁿ = v(t)·u`.
pub fn v_vector<S: Scalar>(n: usize, k: usize, lambda: &S) -> Vec<S> {
    (1..=n)
        .map(|j| {
            let deg = n - j;
            let c = falling_factorial(deg, k);
            if c == 0 {
                return S::zero();
            }
            let mut term = S::from_i64(c);
            for _ in 0..deg - k {
                term = term * lambda.clone();
            }
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .collect()
}

/// Unconjugated bilinear form `Σ uⱼ wⱼ`.
pub fn dot<S: Scalar>(u: &[S], w: &[S]) -> Result<S, MatPolyError> {
    if u.len() != w.len() {
        return Err(MatPolyError::LengthMismatch { left: u.len(), right: w.len() });
    }
    Ok(u.iter().zip(w).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Gelfand estimate `min_k ‖M^{2^k}‖^{1/2^k}` in the max-row-sum norm.
///
/// Each iterate is renormalized before squaring and the scale is carried in
/// log space, so matrices with spectral radius above one do not overflow.
pub fn spectral_radius_bound(
    m: &SquareMatrix<ComplexFloat>,
    iterations: usize,
) -> Result<f64, MatPolyError> {
    let norm = m.norm_inf();
    if !norm.is_finite() {
        return Err(MatPolyError::Numeric("matrix norm is not finite".into()));
    }
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut best = norm;
    // Invariant: M^{2^k} = exp(log_scale) * a with ‖a‖ = 1.
    let mut log_scale = norm.ln();
    let mut a = m.scale(&ComplexFloat::new(1.0 / norm, 0.0));
    for k in 1..=iterations {
        let sq = a.mul(&a);
        let sq_norm = sq.norm_inf();
        if !sq_norm.is_finite() {
            return Err(MatPolyError::Numeric(format!("iteration {k} produced a non-finite norm")));
        }
        if sq_norm == 0.0 {
            return Ok(0.0);
        }
        log_scale = 2.0 * log_scale + sq_norm.ln();
        let estimate = (log_scale / 2f64.powi(k as i32)).exp();
        best = best.min(estimate);
        a = sq.scale(&ComplexFloat::new(1.0 / sq_norm, 0.0));
    }
    Ok(best)
}
