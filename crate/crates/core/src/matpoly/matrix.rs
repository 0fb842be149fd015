use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::MatPolyError;
use crate::scalars::{ComplexFloat, Field, GaussianRational, Scalar};

/// Dense `rows × cols` matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatPolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatPolyError::Ragged);
        }
        let data: Vec<S> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| !x.is_finite()) {
            return Err(MatPolyError::NonFinite);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// `n × n` matrix over one field.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, entries: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, value: S) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn diag(values: Vec<S>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Elementary matrix `E_ij` (1 at row `i`, column `j`, zero-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, S::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatPolyError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatPolyError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatPolyError::NotSquare);
        }
        let entries: Vec<S> = rows.into_iter().flatten().collect();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(MatPolyError::NonFinite);
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[SquareMatrix<S>]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        S::FIELD
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(<[S]>::to_vec).collect()
    }

    pub fn as_matrix(&self) -> Matrix<S> {
        Matrix { rows: self.n, cols: self.n, data: self.entries.clone() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SquareMatrix<T> {
        SquareMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                let b = other.get(j, i);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(Scalar::modulus).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> SquareMatrix<ComplexFloat> {
        self.map(Scalar::to_complex_float)
    }
}

impl SquareMatrix<ComplexFloat> {
    /// Exact lift of every entry.
    pub fn to_exact(&self) -> SquareMatrix<GaussianRational> {
        self.map(|z| z.to_exact().expect("matrix entries are finite"))
    }
}

impl<S: Scalar> fmt::Debug for SquareMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}

#[derive(Serialize)]
struct MatrixOut<'a, S> {
    n: usize,
    field: Field,
    entries: Vec<&'a [S]>,
}

#[derive(Deserialize)]
struct MatrixIn {
    n: usize,
    field: Field,
    entries: Vec<Vec<Value>>,
}

impl<S: Scalar> Serialize for SquareMatrix<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        MatrixOut { n: self.n, field: S::FIELD, entries: self.entries.chunks(self.n).collect() }
            .serialize(serializer)
    }
}

fn typed_rows<S: Scalar>(raw: Vec<Vec<Value>>) -> Result<Vec<Vec<S>>, String> {
    raw.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| {
                    serde_json::from_value::<S>(v)
                        .map_err(|e| format!("entries[{i}][{j}]: {e}"))
                })
                .collect()
        })
        .collect()
}

fn checked_square<S: Scalar>(raw: MatrixIn) -> Result<SquareMatrix<S>, String> {
    if raw.field != S::FIELD {
        return Err(format!("expected field {}, found {}", S::FIELD, raw.field));
    }
    if raw.entries.len() != raw.n {
        return Err(format!("n = {} but {} rows given", raw.n, raw.entries.len()));
    }
    SquareMatrix::from_rows(typed_rows(raw.entries)?).map_err(|e| e.to_string())
}

impl<'de, S: Scalar> Deserialize<'de> for SquareMatrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        checked_square(MatrixIn::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

/// A square matrix whose field is only known at run time (JSON input).
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Exact(SquareMatrix<GaussianRational>),
    Float(SquareMatrix<ComplexFloat>),
}

impl AnyMatrix {
    pub fn field(&self) -> Field {
        match self {
            AnyMatrix::Exact(_) => Field::Exact,
            AnyMatrix::Float(_) => Field::Float,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Exact(m) => m.n(),
            AnyMatrix::Float(m) => m.n(),
        }
    }

    /// Converts to the requested field (float → exact is lossless).
    pub fn into_field(self, field: Field) -> AnyMatrix {
        match (self, field) {
            (AnyMatrix::Exact(m), Field::Float) => AnyMatrix::Float(m.to_float()),
            (AnyMatrix::Float(m), Field::Exact) => AnyMatrix::Exact(m.to_exact()),
            (m, _) => m,
        }
    }
}

impl Serialize for AnyMatrix {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        match self {
            AnyMatrix::Exact(m) => m.serialize(serializer),
            AnyMatrix::Float(m) => m.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for AnyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixIn::deserialize(deserializer)?;
        match raw.field {
            Field::Exact => checked_square(raw).map(AnyMatrix::Exact),
            Field::Float => checked_square(raw).map(AnyMatrix::Float),
        }
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = GaussianRational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn rejects_non_square_and_empty() {
        assert_eq!(
            SquareMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3)]]),
            Err(MatPolyError::NotSquare)
        );
        assert_eq!(SquareMatrix::<Q>::from_rows(vec![]), Err(MatPolyError::Empty));
        assert_eq!(
            SquareMatrix::from_rows(vec![vec![ComplexFloat::new(f64::NAN, 0.0)]]),
            Err(MatPolyError::NonFinite)
        );
    }

    #[test]
    fn multiply_and_trace() {
        let a = SquareMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let b = SquareMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.to_rows(), vec![vec![q(2), q(1)], vec![q(4), q(3)]]);
        assert_eq!(a.trace_product(&b), ab.trace());
        assert_eq!(a.pow(0), SquareMatrix::identity(2));
        assert_eq!(a.norm_inf(), 7.0);
    }

    #[test]
    fn json_schema_round_trip() {
        let a = SquareMatrix::from_rows(vec![vec![q(1), Q::i()], vec![q(0), q(-2)]]).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(
            js,
            r#"{"n":2,"field":"exact","entries":[[["1/1","0/1"],["0/1","1/1"]],[["0/1","0/1"],["-2/1","0/1"]]]}"#
        );
        let any: AnyMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(any, AnyMatrix::Exact(a.clone()));
        let fl = any.into_field(Field::Float);
        let js = serde_json::to_string(&fl).unwrap();
        assert!(js.contains(r#""field":"float""#));
        let back: AnyMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back.into_field(Field::Exact), AnyMatrix::Exact(a));
    }

    #[test]
    fn json_rejects_field_mismatch_and_bad_shape() {
        let bad = r#"{"n":1,"field":"float","entries":[[["1/1","0/1"]]]}"#;
        assert!(serde_json::from_str::<AnyMatrix>(bad).is_err());
        let bad = r#"{"n":2,"field":"float","entries":[[[1,0]]]}"#;
        assert!(serde_json::from_str::<AnyMatrix>(bad).is_err());
        let bad = r#"{"n":1,"field":"exact","entries":[[["1/1","0/1"]]]}"#;
        assert!(serde_json::from_str::<SquareMatrix<ComplexFloat>>(bad).is_err());
    }
}
