//! Jordan and Frobenius (rational) canonical forms, minimal polynomials, and
//! the block-start combinatorics behind the vanishing-order estimate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matpoly::{Matrix, Polynomial, SquareMatrix};
use crate::scalars::{GaussianRational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("spec has no blocks")]
    Empty,
    #[error("eigenvalue {0} listed twice")]
    DuplicateEigenvalue(String),
    #[error("eigenvalue {0} has no block sizes")]
    NoSizes(String),
    #[error("block sizes for eigenvalue {0} must be positive and ascending")]
    BadSizes(String),
    #[error("declared n = {declared} but block sizes sum to {actual}")]
    SizeMismatch { declared: usize, actual: usize },
    #[error("{0} is not an eigenvalue of the spec")]
    NotAnEigenvalue(String),
    #[error("polynomial is not monic of degree >= 1")]
    NotMonic,
    #[error("invariant factor {index} does not divide the next one")]
    Divisibility { index: usize },
    #[error("no invariant factors")]
    NoFactors,
}

/// One eigenvalue together with the sizes of its elementary Jordan blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlocks {
    pub eigenvalue: GaussianRational,
    pub sizes: Vec<usize>,
}

impl EigenBlocks {
    /// Algebraic multiplicity.
    pub fn multiplicity(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Largest block size.
    pub fn largest(&self) -> usize {
        self.sizes.last().copied().unwrap_or(0)
    }
}

#[derive(Deserialize)]
struct RawJordanSpec {
    n: usize,
    blocks: Vec<EigenBlocks>,
}

/// Jordan structure of a matrix: distinct exact eigenvalues, each with
/// ascending block sizes. Eigenvalue order is preserved as given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJordanSpec")]
pub struct JordanSpec {
    n: usize,
    blocks: Vec<EigenBlocks>,
}

impl TryFrom<RawJordanSpec> for JordanSpec {
    type Error = CanonicalError;

    fn try_from(raw: RawJordanSpec) -> Result<Self, Self::Error> {
        let spec = JordanSpec::new(raw.blocks)?;
        if spec.n != raw.n {
            return Err(CanonicalError::SizeMismatch { declared: raw.n, actual: spec.n });
        }
        Ok(spec)
    }
}

impl JordanSpec {
    pub fn new(blocks: Vec<EigenBlocks>) -> Result<Self, CanonicalError> {
        if blocks.is_empty() {
            return Err(CanonicalError::Empty);
        }
        for (idx, b) in blocks.iter().enumerate() {
            let name = b.eigenvalue.to_string();
            if blocks[..idx].iter().any(|o| o.eigenvalue == b.eigenvalue) {
                return Err(CanonicalError::DuplicateEigenvalue(name));
            }
            if b.sizes.is_empty() {
                return Err(CanonicalError::NoSizes(name));
            }
            if b.sizes[0] == 0 || b.sizes.windows(2).any(|w| w[0] > w[1]) {
                return Err(CanonicalError::BadSizes(name));
            }
        }
        let n = blocks.iter().map(EigenBlocks::multiplicity).sum();
        Ok(JordanSpec { n, blocks })
    }

    /// Convenience constructor from `(eigenvalue, sizes)` pairs.
    pub fn from_pairs(pairs: Vec<(GaussianRational, Vec<usize>)>) -> Result<Self, CanonicalError> {
        JordanSpec::new(
            pairs.into_iter().map(|(eigenvalue, sizes)| EigenBlocks { eigenvalue, sizes }).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[EigenBlocks] {
        &self.blocks
    }

    pub fn eigen_blocks(&self, lambda: &GaussianRational) -> Result<&EigenBlocks, CanonicalError> {
        self.blocks
            .iter()
            .find(|b| b.eigenvalue == *lambda)
            .ok_or_else(|| CanonicalError::NotAnEigenvalue(lambda.to_string()))
    }

    /// `max |λ|² < 1`, i.e. the Jordan matrix lies in the spectral ball.
    pub fn in_spectral_ball(&self) -> bool {
        let one = crate::scalars::Rational::one();
        self.blocks.iter().all(|b| b.eigenvalue.norm_sq() < one)
    }
}

/// Block-diagonal Jordan matrix; blocks of one eigenvalue are contiguous and ascending.
pub fn build_jordan<S: Scalar>(spec: &JordanSpec) -> SquareMatrix<S> {
    let mut m = SquareMatrix::zeros(spec.n());
    let mut off = 0;
    for b in spec.blocks() {
        let lambda = S::from_exact(&b.eigenvalue);
        for &size in &b.sizes {
            for i in 0..size {
                m.set(off + i, off + i, lambda.clone());
                if i + 1 < size {
                    m.set(off + i, off + i + 1, S::one());
                }
            }
            off += size;
        }
    }
    m
}

/// Companion matrix of a monic `p = tᵐ + c_{m−1}tᵐ⁻¹ + … + c₀`: ones on the
/// superdiagonal and last row `(−c₀, …, −c_{m−1})`.
pub fn build_companion<S: Scalar>(p: &Polynomial<S>) -> Result<SquareMatrix<S>, CanonicalError> {
    let m = match p.degree() {
        Some(d) if d >= 1 && p.is_monic() => d,
        _ => return Err(CanonicalError::NotMonic),
    };
    let mut c = SquareMatrix::zeros(m);
    for i in 0..m - 1 {
        c.set(i, i + 1, S::one());
    }
    for j in 0..m {
        c.set(m - 1, j, -p.coeff(j));
    }
    Ok(c)
}

#[derive(Deserialize)]
struct RawFrobeniusSpec {
    invariant_factors: Vec<Polynomial<GaussianRational>>,
}

/// Invariant factors `p₁ | p₂ | … | p_l`, monic; `p_l` is the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFrobeniusSpec")]
pub struct FrobeniusSpec {
    invariant_factors: Vec<Polynomial<GaussianRational>>,
}

impl TryFrom<RawFrobeniusSpec> for FrobeniusSpec {
    type Error = CanonicalError;

    fn try_from(raw: RawFrobeniusSpec) -> Result<Self, Self::Error> {
        FrobeniusSpec::new(raw.invariant_factors)
    }
}

impl FrobeniusSpec {
    pub fn new(invariant_factors: Vec<Polynomial<GaussianRational>>) -> Result<Self, CanonicalError> {
        if invariant_factors.is_empty() {
            return Err(CanonicalError::NoFactors);
        }
        if invariant_factors.iter().any(|p| !p.is_monic() || p.degree() == Some(0)) {
            return Err(CanonicalError::NotMonic);
        }
        for (idx, w) in invariant_factors.windows(2).enumerate() {
            if !w[0].divides(&w[1]) {
                return Err(CanonicalError::Divisibility { index: idx + 1 });
            }
        }
        Ok(FrobeniusSpec { invariant_factors })
    }

    pub fn invariant_factors(&self) -> &[Polynomial<GaussianRational>] {
        &self.invariant_factors
    }

    pub fn n(&self) -> usize {
        self.invariant_factors.iter().filter_map(Polynomial::degree).sum()
    }

    pub fn minimal_polynomial(&self) -> &Polynomial<GaussianRational> {
        self.invariant_factors.last().expect("nonempty by construction")
    }

    /// Degree of the minimal polynomial.
    pub fn m(&self) -> usize {
        self.minimal_polynomial().degree().unwrap_or(0)
    }
}

/// Block-diagonal of the companion matrices, ascending; the last block is
/// the companion of the minimal polynomial.
pub fn build_frobenius<S: Scalar>(spec: &FrobeniusSpec) -> SquareMatrix<S> {
    let blocks: Vec<SquareMatrix<S>> = spec
        .invariant_factors()
        .iter()
        .map(|p| build_companion(&p.map(S::from_exact)).expect("validated monic"))
        .collect();
    SquareMatrix::block_diag(&blocks)
}

/// Degree of the minimal polynomial: sum over eigenvalues of the largest block.
pub fn min_poly_degree(spec: &JordanSpec) -> usize {
    spec.blocks().iter().map(EigenBlocks::largest).sum()
}

/// Minimal polynomial from the first linear dependence in `I, M, M², …`.
///
/// Each new power is reduced against an echelon basis of the previous ones
/// while tracking its expression in terms of the original powers; the first
/// power that reduces to zero yields the monic annihilator. Exact field only.
pub fn min_poly_krylov(m: &SquareMatrix<GaussianRational>) -> Polynomial<GaussianRational> {
    type Q = GaussianRational;
    let n = m.n();
    // (pivot column, reduced row, combination of powers giving that row)
    let mut basis: Vec<(usize, Vec<Q>, Vec<Q>)> = Vec::new();
    let mut power = SquareMatrix::<Q>::identity(n);
    for d in 0..=n {
        let mut row = power.entries().to_vec();
        let mut comb = vec![Q::zero(); d + 1];
        comb[d] = Q::one();
        for (piv, brow, bcomb) in &basis {
            if row[*piv].is_zero() {
                continue;
            }
            let f = row[*piv].clone() / brow[*piv].clone();
            for (x, y) in row.iter_mut().zip(brow) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            for (x, y) in comb.iter_mut().zip(bcomb) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(piv) => basis.push((piv, row, comb)),
            // comb · (I, M, …, M^d) = 0 with comb[d] = 1.
            None => return Polynomial::new(comb),
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Float-mode minimal polynomial degree: the first `d` for which the
/// vectorized Krylov matrix `[I, M, …, M^d]` has numerical rank `d`.
pub fn min_poly_degree_numeric(
    m: &SquareMatrix<crate::scalars::ComplexFloat>,
    tol: Option<f64>,
) -> Result<usize, crate::jacobian::JacobianError> {
    let n = m.n();
    let mut rows = Vec::new();
    let mut power = SquareMatrix::identity(n);
    for d in 0..=n {
        rows.push(power.entries().to_vec());
        let krylov = Matrix::from_rows(rows.clone()).expect("equal row lengths");
        let decision = crate::jacobian::rank_numeric(&krylov, tol)?;
        if decision.rank <= d {
            return Ok(d);
        }
        power = power.mul(m);
    }
    Ok(n)
}

/// Block-start data for one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanCombinatorics {
    /// Algebraic multiplicity `m_λ`.
    pub multiplicity: usize,
    /// Block starts `1 = b₁ < … < b_s` (1-based, within the eigenvalue's superblock).
    pub block_starts: Vec<usize>,
    pub block_count: usize,
    /// `s_λ`, the largest block size.
    pub largest_block: usize,
    /// `d₁, …, d_{m_λ}`.
    pub vanishing_orders: Vec<usize>,
}

impl JordanCombinatorics {
    pub fn last_start(&self) -> usize {
        *self.block_starts.last().expect("at least one block")
    }

    /// `dᵢ` for `1 ≤ i ≤ m_λ`.
    pub fn d(&self, i: usize) -> usize {
        self.vanishing_orders[i - 1]
    }
}

/// `F₀ = {j : b_{j−1,j} = 0}` (with `j = 1` included), and
/// `dᵢ = 1 + #(F₀ ∩ [m_λ − i + 2, m_λ])`.
pub fn jordan_combinatorics(
    spec: &JordanSpec,
    lambda: &GaussianRational,
) -> Result<JordanCombinatorics, CanonicalError> {
    let eb = spec.eigen_blocks(lambda)?;
    let m = eb.multiplicity();
    let mut block_starts = Vec::with_capacity(eb.sizes.len());
    let mut start = 1;
    for &size in &eb.sizes {
        block_starts.push(start);
        start += size;
    }
    let vanishing_orders = (1..=m)
        .map(|i| {
            let lo = m + 2 - i;
            1 + block_starts.iter().filter(|&&b| b >= lo && b <= m).count()
        })
        .collect();
    let b_s = *block_starts.last().expect("sizes nonempty");
    Ok(JordanCombinatorics {
        multiplicity: m,
        block_count: block_starts.len(),
        largest_block: m + 1 - b_s,
        block_starts,
        vanishing_orders,
    })
}

/// Invariant factors from Jordan structure: the k-th factor from the top is
/// `Π_λ (t − λ)^{(k+1)-th largest block at λ}`.
pub fn jordan_to_frobenius(spec: &JordanSpec) -> FrobeniusSpec {
    let l = spec.blocks().iter().map(|b| b.sizes.len()).max().unwrap_or(0);
    let mut factors: Vec<Polynomial<GaussianRational>> = (0..l)
        .map(|k| {
            spec.blocks().iter().fold(Polynomial::one(), |acc, b| {
                let desc = b.sizes.len();
                let exp = if k < desc { b.sizes[desc - 1 - k] } else { 0 };
                acc.mul(&Polynomial::linear_factor(&b.eigenvalue).pow(exp))
            })
        })
        .collect();
    factors.reverse();
    FrobeniusSpec::new(factors).expect("Jordan data yields a divisibility chain")
}

/// Bounds for random unimodular conjugators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityConfig {
    /// Number of shear attempts.
    pub shears: usize,
    /// Shear multipliers are drawn from `[-max_step, max_step] \ {0}`.
    pub max_step: i64,
    /// Shears that would push an entry of `Q` above this magnitude are skipped.
    pub max_entry: i64,
    /// Also apply a random transposition (determinant −1).
    pub allow_swap: bool,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig { shears: 12, max_step: 2, max_entry: 8, allow_swap: true }
    }
}

/// Random integer unimodular `Q` and its inverse, built from elementary
/// shears `I + c·Eᵢⱼ` and an optional row swap.
pub fn random_unimodular(
    n: usize,
    seed: u64,
    config: SimilarityConfig,
) -> (SquareMatrix<GaussianRational>, SquareMatrix<GaussianRational>) {
    type Q = GaussianRational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = SquareMatrix::<Q>::identity(n);
    let mut q_inv = SquareMatrix::<Q>::identity(n);
    if n < 2 {
        return (q, q_inv);
    }
    let bound = Q::from_i64(config.max_entry).re;
    for _ in 0..config.shears {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut c = rng.random_range(1..=config.max_step.max(1));
        if rng.random_bool(0.5) {
            c = -c;
        }
        let mut shear = SquareMatrix::<Q>::identity(n);
        shear.set(i, j, Q::from_i64(c));
        let candidate = shear.mul(&q);
        if candidate.entries().iter().any(|x| x.re.abs() > bound) {
            continue;
        }
        let mut inv_shear = SquareMatrix::<Q>::identity(n);
        inv_shear.set(i, j, Q::from_i64(-c));
        q = candidate;
        q_inv = q_inv.mul(&inv_shear);
    }
    if config.allow_swap && rng.random_bool(0.5) {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            let mut p = SquareMatrix::<Q>::identity(n);
            p.set(a, a, Q::zero());
            p.set(b, b, Q::zero());
            p.set(a, b, Q::one());
            p.set(b, a, Q::one());
            q = p.mul(&q);
            q_inv = q_inv.mul(&p);
        }
    }
    (q, q_inv)
}

/// `Q M Q⁻¹` for a seeded random unimodular `Q`.
pub fn random_similarity(m: &SquareMatrix<GaussianRational>, seed: u64) -> SquareMatrix<GaussianRational> {
    random_similarity_with(m, seed, SimilarityConfig::default())
}

pub fn random_similarity_with(
    m: &SquareMatrix<GaussianRational>,
    seed: u64,
    config: SimilarityConfig,
) -> SquareMatrix<GaussianRational> {
    let (q, q_inv) = random_unimodular(m.n(), seed, config);
    q.mul(m).mul(&q_inv)
}
