//! Certificates for both inequalities behind rank π′(B) = m.
//!
//! * Upper bound: the vectors `v⁽ᵏ⁾(λ)`, `0 ≤ k ≤ m_λ − s_λ − 1`, annihilate
//!   every column of π′(B) and are independent (confluent Vandermonde), so the
//!   image has dimension at most `m`.
//! * Lower bound: perturbing only the last row of the minimal-polynomial
//!   companion block in Frobenius form gives `m` images in echelon form.
//!
//! Also here: Hermite divided differences, the Genocchi–Hermite limit check,
//! and the vanishing-order check for polynomial curves through B.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{
    build_frobenius, build_jordan, jordan_combinatorics, CanonicalError, FrobeniusSpec, JordanSpec,
};
use crate::jacobian::{directional_derivative, jacobian_exact, rank_exact, JacobianError};
use crate::matpoly::{
    determinant, dot, p_bracket_eval, symmetrize, MatPolyError, Matrix, Polynomial, SquareMatrix,
};
use crate::matpoly::v_vector;
use crate::scalars::{factorial, GaussianRational, Rational, Scalar};

type Q = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProofError {
    #[error(transparent)]
    MatPoly(#[from] MatPolyError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error("no interpolation nodes")]
    NoNodes,
    #[error("node {node} appears {needed} times but only {supplied} derivative values were supplied")]
    MissingDerivative { node: String, needed: usize, supplied: usize },
    #[error("cluster eigenvalue {0} repeated")]
    RepeatedCluster(String),
    #[error("cluster multiplicities must be positive and the cluster list nonempty")]
    BadClusters,
    #[error("curve must have at least one coefficient matrix of a common size")]
    BadCurve,
    #[error("curve does not pass through the Jordan matrix of the spec at 0")]
    CurveBaseMismatch,
    #[error("derivative order {k} out of range (max {max})")]
    OrderOutOfRange { k: usize, max: usize },
}

// ---------------------------------------------------------------------------
// Null-space certificate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullVector {
    pub lambda: Q,
    pub k: usize,
    pub v: Vec<Q>,
}

/// Coefficient vectors of the homogeneous equations cutting out im π′(B).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullspaceCertificate {
    pub vectors: Vec<NullVector>,
}

impl NullspaceCertificate {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Exact rank of the stacked vectors.
    pub fn rank(&self) -> usize {
        if self.vectors.is_empty() {
            return 0;
        }
        let rows = self.vectors.iter().map(|nv| nv.v.clone()).collect();
        Matrix::from_rows(rows).map_or(0, |m| rank_exact(&m))
    }
}

/// `v⁽ᵏ⁾(λ)` for every eigenvalue and `0 ≤ k ≤ m_λ − s_λ − 1`; `n − m` vectors in total.
pub fn nullspace_basis(spec: &JordanSpec) -> NullspaceCertificate {
    let n = spec.n();
    let mut vectors = Vec::new();
    for b in spec.blocks() {
        let count = b.multiplicity() - b.largest();
        for k in 0..count {
            vectors.push(NullVector { lambda: b.eigenvalue.clone(), k, v: v_vector(n, k, &b.eigenvalue) });
        }
    }
    NullspaceCertificate { vectors }
}

/// True iff every certificate vector has zero dot product with every column of π′(B).
pub fn verify_annihilation(
    cert: &NullspaceCertificate,
    b: &SquareMatrix<Q>,
) -> Result<bool, ProofError> {
    if cert.is_empty() {
        return Ok(true);
    }
    let jac = jacobian_exact(b)?;
    let cols: Vec<Vec<Q>> = (0..jac.entries.cols()).map(|c| jac.entries.column(c)).collect();
    for nv in &cert.vectors {
        for col in &cols {
            if !dot(&nv.v, col)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Divided differences
// ---------------------------------------------------------------------------

/// One interpolation node with `f(node), f′(node), …` (as many as known).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePoint<S> {
    pub node: S,
    pub derivatives: Vec<S>,
}

impl<S: Scalar> HermitePoint<S> {
    pub fn value(node: S, value: S) -> Self {
        HermitePoint { node, derivatives: vec![value] }
    }
}

/// Newton divided difference `f[z₀, …, z_N]` with confluent nodes allowed.
///
/// Equal nodes are grouped; a node of multiplicity `r` needs `f, …, f⁽ʳ⁻¹⁾`
/// and a confluent run `f[z, …, z]` (`j + 1` copies) equals `f⁽ʲ⁾(z)/j!`.
pub fn divided_difference<S: Scalar>(points: &[HermitePoint<S>]) -> Result<S, ProofError> {
    if points.is_empty() {
        return Err(ProofError::NoNodes);
    }
    // Group equal nodes; keep the longest derivative list seen for each.
    let mut groups: Vec<(S, Vec<S>, usize)> = Vec::new();
    for p in points {
        match groups.iter_mut().find(|(z, _, _)| *z == p.node) {
            Some((_, ders, count)) => {
                *count += 1;
                if p.derivatives.len() > ders.len() {
                    *ders = p.derivatives.clone();
                }
            }
            None => groups.push((p.node.clone(), p.derivatives.clone(), 1)),
        }
    }
    let mut nodes = Vec::with_capacity(points.len());
    let mut ders = Vec::with_capacity(points.len());
    for (z, d, count) in &groups {
        if d.len() < *count {
            return Err(ProofError::MissingDerivative {
                node: z.to_string(),
                needed: *count,
                supplied: d.len(),
            });
        }
        for _ in 0..*count {
            nodes.push(z.clone());
            ders.push(d.clone());
        }
    }
    // table[i] holds f[z_i, …, z_{i+order}] after pass `order`.
    let mut table: Vec<S> = ders.iter().map(|d| d[0].clone()).collect();
    for order in 1..nodes.len() {
        for i in 0..nodes.len() - order {
            let (zi, zj) = (&nodes[i], &nodes[i + order]);
            table[i] = if zi == zj {
                ders[i][order].clone() / factorial::<S>(order)
            } else {
                (table[i + 1].clone() - table[i].clone()) / (zj.clone() - zi.clone())
            };
        }
    }
    Ok(table[0].clone())
}

/// Componentwise divided difference of vector data at distinct or confluent nodes.
pub fn divided_difference_vec<S: Scalar>(
    nodes: &[S],
    values: impl Fn(&S, usize) -> Vec<S>,
    dim: usize,
) -> Result<Vec<S>, ProofError> {
    let mut mult = Vec::with_capacity(nodes.len());
    for (idx, z) in nodes.iter().enumerate() {
        mult.push(nodes[..idx].iter().filter(|w| *w == z).count() + 1);
    }
    (0..dim)
        .map(|c| {
            let points: Vec<HermitePoint<S>> = nodes
                .iter()
                .zip(&mult)
                .map(|(z, &r)| HermitePoint {
                    node: z.clone(),
                    derivatives: (0..r).map(|d| values(z, d)[c].clone()).collect(),
                })
                .collect();
            divided_difference(&points)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenocchiStep {
    pub eps: f64,
    /// Max-modulus error of `k!·v[λ, λ+ε, …, λ+kε]` against `v⁽ᵏ⁾(λ)`.
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenocchiReport<S: Scalar> {
    pub n: usize,
    pub k: usize,
    pub lambda: S,
    pub steps: Vec<GenocchiStep>,
    /// `error[i] / error[i+1]`; `None` when the later error is below the noise floor.
    pub ratios: Vec<Option<f64>>,
    pub noise_floor: f64,
    pub passed: bool,
}

/// Errors below this are treated as converged in the float field.
pub const FLOAT_NOISE_FLOOR: f64 = 1e-10;

/// Checks `k!·v[λ, λ+ε, …, λ+kε] → v⁽ᵏ⁾(λ)` at first order or better.
///
/// Consecutive steps pass when the error shrinks by at least `0.8·(ε_a/ε_b)`
/// (8 per decade) or drops below the noise floor (zero in the exact field,
/// where the nodes are the exact dyadic values of the given doubles).
pub fn genocchi_hermite_check<S: Scalar>(
    n: usize,
    k: usize,
    lambda: &S,
    eps_sequence: &[f64],
) -> Result<GenocchiReport<S>, ProofError> {
    if n == 0 || k >= n {
        return Err(ProofError::OrderOutOfRange { k, max: n.saturating_sub(1) });
    }
    let target = v_vector(n, k, lambda);
    let kfact = factorial::<S>(k);
    let noise_floor = match S::FIELD {
        crate::scalars::Field::Exact => 0.0,
        crate::scalars::Field::Float => FLOAT_NOISE_FLOOR,
    };
    let mut steps = Vec::with_capacity(eps_sequence.len());
    for &eps in eps_sequence {
        let e = S::from_f64(eps);
        let nodes: Vec<S> = (0..=k).map(|j| lambda.clone() + S::from_i64(j as i64) * e.clone()).collect();
        let dd = divided_difference_vec(&nodes, |z, d| v_vector(n, d, z), n)?;
        let error = dd
            .into_iter()
            .zip(&target)
            .map(|(a, t)| (kfact.clone() * a - t.clone()).modulus())
            .fold(0.0, f64::max);
        steps.push(GenocchiStep { eps, error });
    }
    let mut passed = true;
    let mut ratios = Vec::new();
    for w in steps.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.error <= noise_floor {
            ratios.push(None);
            continue;
        }
        let ratio = a.error / b.error;
        ratios.push(Some(ratio));
        if ratio.is_nan() || ratio < 0.8 * (a.eps / b.eps) {
            passed = false;
        }
    }
    Ok(GenocchiReport { n, k, lambda: lambda.clone(), steps, ratios, noise_floor, passed })
}

// ---------------------------------------------------------------------------
// Confluent Vandermonde determinant
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VandermondeReport {
    pub n: usize,
    pub clusters: Vec<(Q, usize)>,
    /// Determinant of `[v(λ), v′(λ), …, v^{(r−1)}(λ), …]`, computed directly.
    pub determinant: Q,
    /// `Π j! · Π_{a<b} (λ_b − λ_a)^{r_a r_b}` in cluster order.
    pub closed_form: Q,
    pub abs_sq_direct: Rational,
    pub abs_sq_closed: Rational,
    /// `|det| = |closed form|`, compared through exact squared moduli.
    pub abs_equal: bool,
    /// `det = sign · closed_form` when such a sign exists.
    pub sign: Option<i8>,
}

/// Builds the confluent matrix for `(λ, multiplicity)` clusters and compares
/// its determinant with the factorial/pairwise-difference closed form.
pub fn confluent_vandermonde_det(clusters: &[(Q, usize)]) -> Result<VandermondeReport, ProofError> {
    if clusters.is_empty() || clusters.iter().any(|(_, r)| *r == 0) {
        return Err(ProofError::BadClusters);
    }
    for (idx, (l, _)) in clusters.iter().enumerate() {
        if clusters[..idx].iter().any(|(o, _)| o == l) {
            return Err(ProofError::RepeatedCluster(l.to_string()));
        }
    }
    let n: usize = clusters.iter().map(|(_, r)| r).sum();
    let columns: Vec<Vec<Q>> = clusters
        .iter()
        .flat_map(|(l, r)| (0..*r).map(move |k| v_vector(n, k, l)))
        .collect();
    let mat = SquareMatrix::from_fn(n, |i, j| columns[j][i].clone());
    let det = determinant(&mat);

    let mut closed = Q::one();
    for (_, r) in clusters {
        for j in 0..*r {
            closed = closed * factorial::<Q>(j);
        }
    }
    for a in 0..clusters.len() {
        for b in a + 1..clusters.len() {
            let diff = &clusters[b].0 - &clusters[a].0;
            closed = closed * diff.pow((clusters[a].1 * clusters[b].1) as u32);
        }
    }
    let abs_sq_direct = det.norm_sq();
    let abs_sq_closed = closed.norm_sq();
    let sign = if det == closed {
        Some(1)
    } else if det == -closed.clone() {
        Some(-1)
    } else {
        None
    };
    Ok(VandermondeReport {
        n,
        clusters: clusters.to_vec(),
        determinant: det,
        closed_form: closed,
        abs_equal: abs_sq_direct == abs_sq_closed,
        abs_sq_direct,
        abs_sq_closed,
        sign,
    })
}

// ---------------------------------------------------------------------------
// Tangent (lower-bound) certificate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentCertificate {
    pub n: usize,
    pub m: usize,
    /// `h_i` switched on for each image (1-based).
    #[serde(serialize_with = "serialize_h_indices")]
    pub directions: Vec<usize>,
    #[serde(skip)]
    pub perturbations: Vec<SquareMatrix<Q>>,
    pub images: Vec<Vec<Q>>,
    /// 1-based index of the first nonzero component of each image (0 for a zero image).
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub passed: bool,
}

fn serialize_h_indices<Ser: serde::Serializer>(idx: &[usize], s: Ser) -> Result<Ser::Ok, Ser::Error> {
    idx.iter().map(|i| format!("h_{i}")).collect::<Vec<_>>().serialize(s)
}

/// Perturbation with last row `(−h₁, …, −h_m)` in the final companion block.
pub fn last_row_perturbation(fspec: &FrobeniusSpec, h: &[Q]) -> SquareMatrix<Q> {
    let n = fspec.n();
    let m = fspec.m();
    let offset = n - m;
    let mut pert = SquareMatrix::zeros(n);
    for (i, hi) in h.iter().enumerate().take(m) {
        pert.set(n - 1, offset + i, -hi.clone());
    }
    pert
}

/// `m` images `π′(B)H_i` for one-hot `h = e_i`; passes iff they have exact
/// rank `m` and image `i` has its pivot at component `m − i + 1`.
pub fn tangent_construction(fspec: &FrobeniusSpec) -> Result<TangentCertificate, ProofError> {
    let b = build_frobenius::<Q>(fspec);
    let (n, m) = (fspec.n(), fspec.m());
    let mut directions = Vec::with_capacity(m);
    let mut perturbations = Vec::with_capacity(m);
    let mut images = Vec::with_capacity(m);
    let mut pivots = Vec::with_capacity(m);
    for i in 1..=m {
        let mut h = vec![Q::zero(); m];
        h[i - 1] = Q::one();
        let pert = last_row_perturbation(fspec, &h);
        let image = directional_derivative(&b, &pert)?.0;
        pivots.push(image.iter().position(|x| !x.is_zero()).map_or(0, |p| p + 1));
        directions.push(i);
        perturbations.push(pert);
        images.push(image);
    }
    let rank = if images.is_empty() {
        0
    } else {
        rank_exact(&Matrix::from_rows(images.clone())?)
    };
    let echelon = pivots.iter().enumerate().all(|(idx, &p)| p == m - idx);
    Ok(TangentCertificate {
        n,
        m,
        directions,
        perturbations,
        images,
        pivots,
        rank,
        passed: rank == m && echelon,
    })
}

/// Checks that `h ↦ σ(B + H(h)) − σ(B)` is linear (additive and homogeneous,
/// exactly, at random Gaussian-integer points), that σ_k depends only on
/// `h_m, …, h_{m−k+1}`, and that its coefficient on `h_{m−k+1}` is nonzero.
pub fn sigma_linearity_check(fspec: &FrobeniusSpec, trials: usize, seed: u64) -> Result<bool, ProofError> {
    let b = build_frobenius::<Q>(fspec);
    let m = fspec.m();
    let base = symmetrize(&b)?;
    let delta = |h: &[Q]| -> Result<Vec<Q>, ProofError> {
        let s = symmetrize(&b.add(&last_row_perturbation(fspec, h)))?;
        Ok(s.0.iter().zip(&base.0).map(|(x, y)| x - y).collect())
    };
    let zero = vec![Q::zero(); m];
    if delta(&zero)?.iter().any(|x| !x.is_zero()) {
        return Ok(false);
    }
    // Echelon structure and nonzero leading coefficients.
    for i in 1..=m {
        let mut e = zero.clone();
        e[i - 1] = Q::one();
        let d = delta(&e)?;
        let lead = m - i + 1;
        if d[lead - 1].is_zero() || d[..lead - 1].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Q::from_ints(rng.random_range(-5..=5), rng.random_range(-5..=5));
    for _ in 0..trials {
        let h: Vec<Q> = (0..m).map(|_| draw(&mut rng)).collect();
        let g: Vec<Q> = (0..m).map(|_| draw(&mut rng)).collect();
        let alpha = draw(&mut rng);
        let sum: Vec<Q> = h.iter().zip(&g).map(|(a, b)| a + b).collect();
        let scaled: Vec<Q> = h.iter().map(|a| &alpha * a).collect();
        let (dh, dg) = (delta(&h)?, delta(&g)?);
        let additive = delta(&sum)?.iter().zip(dh.iter().zip(&dg)).all(|(s, (a, b))| *s == a + b);
        let homogeneous = delta(&scaled)?.iter().zip(&dh).all(|(s, a)| *s == &alpha * a);
        if !(additive && homogeneous) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Vanishing order along polynomial curves
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawCurve {
    coefficients: Vec<SquareMatrix<Q>>,
}

/// `Φ(ζ) = C₀ + ζC₁ + ζ²C₂ + …` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct CurveSpec {
    coefficients: Vec<SquareMatrix<Q>>,
}

impl TryFrom<RawCurve> for CurveSpec {
    type Error = ProofError;

    fn try_from(raw: RawCurve) -> Result<Self, Self::Error> {
        CurveSpec::new(raw.coefficients)
    }
}

impl CurveSpec {
    pub fn new(coefficients: Vec<SquareMatrix<Q>>) -> Result<Self, ProofError> {
        let Some(first) = coefficients.first() else {
            return Err(ProofError::BadCurve);
        };
        if coefficients.iter().any(|c| c.n() != first.n()) {
            return Err(ProofError::BadCurve);
        }
        Ok(CurveSpec { coefficients })
    }

    /// `Φ(ζ) = B + ζM`.
    pub fn linear(b: SquareMatrix<Q>, m: SquareMatrix<Q>) -> Result<Self, ProofError> {
        CurveSpec::new(vec![b, m])
    }

    pub fn coefficients(&self) -> &[SquareMatrix<Q>] {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.coefficients[0].n()
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn base(&self) -> &SquareMatrix<Q> {
        &self.coefficients[0]
    }

    pub fn eval(&self, zeta: &Q) -> SquareMatrix<Q> {
        self.coefficients
            .iter()
            .rev()
            .fold(SquareMatrix::zeros(self.n()), |acc, c| acc.scale(zeta).add(c))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub lambda: Q,
    pub k: usize,
    /// Lowest power of ζ present; `None` when the function vanishes identically.
    pub observed_order: Option<usize>,
    /// `d^λ_{m_λ − k}`.
    pub required_order: usize,
    pub pass: bool,
    /// `ζ ↦ P⁽ᵏ⁾_{[π(Φ(ζ))]}(λ)`, ascending coefficients.
    pub polynomial: Polynomial<Q>,
}

/// Exact interpolation through `(x_j, y_j)` via Newton's form.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> Result<Polynomial<Q>, ProofError> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(ProofError::NoNodes);
    }
    let mut newton = Vec::with_capacity(xs.len());
    for j in 0..xs.len() {
        let pts: Vec<HermitePoint<Q>> =
            (0..=j).map(|i| HermitePoint::value(xs[i].clone(), ys[i].clone())).collect();
        newton.push(divided_difference(&pts)?);
    }
    let mut poly = Polynomial::new(vec![newton[xs.len() - 1].clone()]);
    for i in (0..xs.len() - 1).rev() {
        poly = poly
            .mul(&Polynomial::linear_factor(&xs[i]))
            .add(&Polynomial::new(vec![newton[i].clone()]));
    }
    Ok(poly)
}

/// `ζ ↦ P⁽ᵏ⁾_{[π(Φ(ζ))]}(λ)` as an exact polynomial of degree at most `n·deg Φ`,
/// recovered by interpolation at ζ = 0, 1, …, n·deg Φ.
pub fn p_bracket_along_curve(curve: &CurveSpec, k: usize, lambda: &Q) -> Result<Polynomial<Q>, ProofError> {
    let samples = curve.n() * curve.degree() + 1;
    let xs: Vec<Q> = (0..samples).map(|j| Q::from_i64(j as i64)).collect();
    let ys = xs
        .iter()
        .map(|z| Ok(p_bracket_eval(&symmetrize(&curve.eval(z))?.0, k, lambda)))
        .collect::<Result<Vec<Q>, ProofError>>()?;
    interpolate(&xs, &ys)
}

/// Observed order of vanishing of `P⁽ᵏ⁾_{[π(Φ(ζ))]}(λ)` at ζ = 0 against the
/// required `d^λ_{m_λ − k}`.
pub fn order_of_vanishing(
    spec: &JordanSpec,
    curve: &CurveSpec,
    lambda: &Q,
    k: usize,
) -> Result<OrderReport, ProofError> {
    if *curve.base() != build_jordan::<Q>(spec) {
        return Err(ProofError::CurveBaseMismatch);
    }
    let comb = jordan_combinatorics(spec, lambda)?;
    if k >= comb.multiplicity {
        return Err(ProofError::OrderOutOfRange { k, max: comb.multiplicity - 1 });
    }
    let required_order = comb.d(comb.multiplicity - k);
    let polynomial = p_bracket_along_curve(curve, k, lambda)?;
    let observed_order = polynomial.lowest_order();
    let pass = observed_order.is_none_or(|o| o >= required_order);
    Ok(OrderReport { lambda: lambda.clone(), k, observed_order, required_order, pass, polynomial })
}

/// Every eigenvalue and every admissible `k`.
pub fn order_of_vanishing_all(spec: &JordanSpec, curve: &CurveSpec) -> Result<Vec<OrderReport>, ProofError> {
    let mut out = Vec::new();
    for b in spec.blocks() {
        for k in 0..b.multiplicity() {
            out.push(order_of_vanishing(spec, curve, &b.eigenvalue, k)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ComplexFloat;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn spec(pairs: &[(i64, &[usize])]) -> JordanSpec {
        JordanSpec::from_pairs(pairs.iter().map(|(l, s)| (q(*l), s.to_vec())).collect()).unwrap()
    }

    fn poly(c: &[i64]) -> Polynomial<Q> {
        Polynomial::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn nullspace_examples() {
        let cert = nullspace_basis(&spec(&[(0, &[1, 1])]));
        assert_eq!(cert.vectors.len(), 1);
        assert_eq!(cert.vectors[0].v, vec![q(0), q(1)]);
        assert!(nullspace_basis(&spec(&[(3, &[4])])).is_empty());
        let cert = nullspace_basis(&spec(&[(0, &[1, 2])]));
        assert_eq!(cert.vectors.len(), 1);
        assert_eq!(cert.vectors[0].v, vec![q(0), q(0), q(-1)]);
        assert!(verify_annihilation(&cert, &build_jordan(&spec(&[(0, &[1, 2])]))).unwrap());
    }

    #[test]
    fn annihilation_detects_bad_vectors() {
        let zero2 = SquareMatrix::<Q>::zeros(2);
        let mut cert = nullspace_basis(&spec(&[(0, &[1, 1])]));
        assert!(verify_annihilation(&cert, &zero2).unwrap());
        cert.vectors[0].v[0] = q(1);
        assert!(!verify_annihilation(&cert, &zero2).unwrap());
        let empty = NullspaceCertificate { vectors: vec![] };
        assert!(verify_annihilation(&empty, &zero2).unwrap());
        let short = NullspaceCertificate {
            vectors: vec![NullVector { lambda: q(0), k: 0, v: vec![q(1)] }],
        };
        assert!(verify_annihilation(&short, &zero2).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        let sq = |t: &Q| t * t;
        assert_eq!(divided_difference(&[HermitePoint::value(q(4), q(9))]).unwrap(), q(9));
        let pts = [HermitePoint::value(q(0), sq(&q(0))), HermitePoint::value(q(1), sq(&q(1)))];
        assert_eq!(divided_difference(&pts).unwrap(), q(1));
        let confluent = [
            HermitePoint { node: q(3), derivatives: vec![q(9), q(6)] },
            HermitePoint { node: q(3), derivatives: vec![q(9), q(6)] },
        ];
        assert_eq!(divided_difference(&confluent).unwrap(), q(6));
        let missing = [HermitePoint::value(q(3), q(9)), HermitePoint::value(q(3), q(9))];
        assert!(matches!(divided_difference(&missing), Err(ProofError::MissingDerivative { .. })));
        assert_eq!(divided_difference::<Q>(&[]), Err(ProofError::NoNodes));
    }

    #[test]
    fn confluent_divided_difference_is_limit_of_distinct() {
        // f(t) = t^2 at 3: f[3, 3+e] = 6 + e, so the gap to f'(3) shrinks linearly.
        let f = |t: &Q| t * t;
        let mut prev_gap: Option<Q> = None;
        for e in [Q::from_f64(1e-2), Q::from_f64(1e-3), Q::from_f64(1e-4)] {
            let z = &q(3) + &e;
            let v = divided_difference(&[HermitePoint::value(q(3), f(&q(3))), HermitePoint::value(z.clone(), f(&z))])
                .unwrap();
            let gap = &v - &q(6);
            assert_eq!(gap, e);
            if let Some(p) = prev_gap {
                assert!(gap.norm_sq() < p.norm_sq());
            }
            prev_gap = Some(gap);
        }
    }

    #[test]
    fn genocchi_examples() {
        let r = genocchi_hermite_check(4, 0, &q(1), &[1e-2, 1e-3]).unwrap();
        assert!(r.steps.iter().all(|s| s.error == 0.0));
        assert!(r.passed);
        let r = genocchi_hermite_check(2, 1, &q(0), &[1e-2, 1e-3, 1e-4]).unwrap();
        assert!(r.steps.iter().all(|s| s.error == 0.0));
        let r = genocchi_hermite_check(4, 2, &q(1), &[1e-2, 1e-3, 1e-4]).unwrap();
        assert!(r.passed, "{r:?}");
        for ratio in r.ratios.iter().flatten() {
            assert!((ratio - 10.0).abs() < 1.0, "{ratio}");
        }
        let rf = genocchi_hermite_check(4, 2, &ComplexFloat::new(1.0, 0.0), &[1e-2, 1e-3, 1e-4]).unwrap();
        assert!(rf.passed, "{rf:?}");
        assert!(genocchi_hermite_check(3, 3, &q(0), &[1e-2]).is_err());
    }

    #[test]
    fn vandermonde_examples() {
        let l = Q::from_ints(2, 1);
        let r = confluent_vandermonde_det(&[(l, 2)]).unwrap();
        assert_eq!(r.determinant, q(1));
        assert!(r.abs_equal);
        let r = confluent_vandermonde_det(&[(q(0), 1), (q(1), 1)]).unwrap();
        assert_eq!(r.abs_sq_direct, Rational::one());
        assert!(r.abs_equal && r.sign.is_some());
        let r = confluent_vandermonde_det(&[(q(0), 2), (q(1), 1)]).unwrap();
        assert_eq!(r.abs_sq_direct, Rational::one());
        assert!(r.abs_equal);
        let r = confluent_vandermonde_det(&[(Q::i(), 2), (q(2), 2)]).unwrap();
        assert!(r.abs_equal && r.sign.is_some(), "{r:?}");
        assert!(matches!(
            confluent_vandermonde_det(&[(q(1), 1), (q(1), 2)]),
            Err(ProofError::RepeatedCluster(_))
        ));
        assert_eq!(confluent_vandermonde_det(&[]), Err(ProofError::BadClusters));
    }

    #[test]
    fn tangent_examples() {
        let f = FrobeniusSpec::new(vec![poly(&[0, 0, 1])]).unwrap();
        let c = tangent_construction(&f).unwrap();
        assert_eq!(c.images, vec![vec![q(0), q(1)], vec![q(-1), q(0)]]);
        assert!(c.passed);
        let f = FrobeniusSpec::new(vec![poly(&[0, 0, 0, 1])]).unwrap();
        let c = tangent_construction(&f).unwrap();
        assert_eq!(c.images[2], vec![q(-1), q(0), q(0)]);
        assert_eq!(c.images[1], vec![q(0), q(1), q(0)]);
        assert_eq!(c.images[0], vec![q(0), q(0), q(-1)]);
        assert_eq!(c.pivots, vec![3, 2, 1]);
        let f = FrobeniusSpec::new(vec![poly(&[0, 1]), poly(&[0, 0, -1, 1])]).unwrap();
        let c = tangent_construction(&f).unwrap();
        assert_eq!((c.rank, c.passed), (3, true));
        let js = serde_json::to_value(&c).unwrap();
        assert_eq!(js["directions"][0], "h_1");
    }

    #[test]
    fn sigma_linearity() {
        let f = FrobeniusSpec::new(vec![poly(&[0, 0, 1])]).unwrap();
        assert!(sigma_linearity_check(&f, 5, 1).unwrap());
        let f = FrobeniusSpec::new(vec![poly(&[-1, 1]), poly(&[2, -3, 1])]).unwrap();
        assert!(sigma_linearity_check(&f, 5, 2).unwrap());
        // sigma_1(B + H) = -h_2 for the t^2 companion.
        let f = FrobeniusSpec::new(vec![poly(&[0, 0, 1])]).unwrap();
        let b = build_frobenius::<Q>(&f);
        let h = [q(3), q(5)];
        let s = symmetrize(&b.add(&last_row_perturbation(&f, &h))).unwrap();
        assert_eq!(s.0, vec![q(-5), q(3)]);
        let doubled = [q(6), q(10)];
        let s2 = symmetrize(&b.add(&last_row_perturbation(&f, &doubled))).unwrap();
        assert_eq!(s2.0, vec![q(-10), q(6)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = poly(&[3, 0, -2, 1]);
        let xs: Vec<Q> = (0..6).map(q).collect();
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys).unwrap(), p);
    }

    #[test]
    fn vanishing_order_examples() {
        let s = spec(&[(0, &[1, 1])]);
        let m = SquareMatrix::from_rows(vec![vec![q(2), q(1)], vec![q(3), q(4)]]).unwrap();
        let curve = CurveSpec::linear(SquareMatrix::zeros(2), m.clone()).unwrap();
        let r = order_of_vanishing(&s, &curve, &q(0), 0).unwrap();
        assert_eq!(r.required_order, 2);
        assert_eq!(r.observed_order, Some(2));
        // det(0 - zeta M) = zeta^2 det M
        assert_eq!(r.polynomial, poly(&[0, 0, 5]));
        assert!(r.pass);

        let s = spec(&[(2, &[3])]);
        let curve = CurveSpec::linear(build_jordan(&s), m.clone().pad_to(3)).unwrap();
        for rep in order_of_vanishing_all(&s, &curve).unwrap() {
            assert_eq!(rep.required_order, 1);
            assert!(rep.pass);
        }

        let s = spec(&[(1, &[1, 2]), (0, &[1])]);
        let b = build_jordan::<Q>(&s);
        let constant = CurveSpec::new(vec![b]).unwrap();
        for rep in order_of_vanishing_all(&s, &constant).unwrap() {
            assert!(rep.pass);
            if rep.k == 0 {
                assert_eq!(rep.observed_order, None);
            }
        }
        assert_eq!(
            order_of_vanishing(&spec(&[(1, &[1, 2]), (0, &[2])]), &constant, &q(1), 0),
            Err(ProofError::CurveBaseMismatch)
        );
        assert!(matches!(
            order_of_vanishing(&s, &constant, &q(0), 1),
            Err(ProofError::OrderOutOfRange { .. })
        ));
    }

    trait PadTo {
        fn pad_to(self, n: usize) -> Self;
    }

    impl PadTo for SquareMatrix<Q> {
        fn pad_to(self, n: usize) -> Self {
            SquareMatrix::from_fn(n, |i, j| {
                if i < self.n() && j < self.n() {
                    self.get(i, j).clone()
                } else {
                    q(1)
                }
            })
        }
    }
}
