use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::SquareMatrix;
use crate::scalars::{falling_factorial, Scalar};

/// Univariate polynomial, coefficients in ascending degree.
///
/// Trailing zero coefficients are stripped, so the zero polynomial has no
/// coefficients and the leading coefficient of any other polynomial is nonzero.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::new(vec![S::one()])
    }

    /// `t − root`.
    pub fn linear_factor(root: &S) -> Self {
        Polynomial::new(vec![-root.clone(), S::one()])
    }

    /// `c · t^deg`.
    pub fn monomial(c: S, deg: usize) -> Self {
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == S::one())
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero polynomial.
    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        self.nth_derivative(1)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(k)
                .map(|(i, c)| S::from_i64(falling_factorial(i, k)) * c.clone())
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|x| c.clone() * x.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; `None` when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = rem[shift + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - c.clone() * d.clone();
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// True iff `self` divides `other` with zero remainder.
    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Evaluates at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &SquareMatrix<S>) -> SquareMatrix<S> {
        let n = m.n();
        self.coeffs.iter().rev().fold(SquareMatrix::zeros(n), |acc, c| {
            acc.mul(m).add(&SquareMatrix::scalar(n, c.clone()))
        })
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl<S: Scalar> Serialize for Polynomial<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Polynomial<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Polynomial::new(Vec::<S>::deserialize(deserializer)?))
    }
}

/// Polynomial with `n × n` matrix coefficients, ascending degree.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixPolynomial<S: Scalar> {
    n: usize,
    coeffs: Vec<SquareMatrix<S>>,
}

impl<S: Scalar> MatrixPolynomial<S> {
    pub fn new(n: usize, coeffs: Vec<SquareMatrix<S>>) -> Self {
        assert!(coeffs.iter().all(|c| c.n() == n), "coefficient size mismatch");
        MatrixPolynomial { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[SquareMatrix<S>] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero matrix beyond the stored degree).
    pub fn coeff(&self, k: usize) -> SquareMatrix<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| SquareMatrix::zeros(self.n))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &S) -> SquareMatrix<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(SquareMatrix::zeros(self.n), |acc, c| acc.scale(t).add(c))
    }

    /// Product with another matrix polynomial (matrix product of coefficients).
    pub fn mul(&self, other: &Self) -> Self {
        let len = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1);
        let mut out = vec![SquareMatrix::zeros(self.n); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        MatrixPolynomial::new(self.n, out)
    }
}
