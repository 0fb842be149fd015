//! Exhaustive sweeps over Jordan structures.
//!
//! Rank and minimal-polynomial degree only depend on which eigenvalues
//! coincide, not on their values, so a small pool of distinct eigenvalues
//! covers every Jordan type up to the pool size.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{
    build_jordan, jordan_to_frobenius, min_poly_degree, EigenBlocks, JordanSpec,
};
use crate::jacobian::verify_theorem;
use crate::matpoly::SquareMatrix;
use crate::proofs::{
    confluent_vandermonde_det, nullspace_basis, order_of_vanishing_all, tangent_construction,
    verify_annihilation, CurveSpec,
};
use crate::scalars::GaussianRational;

type Q = GaussianRational;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("n_max must be at least 1")]
    ZeroSize,
    #[error("eigenvalue pool must be nonempty")]
    EmptyPool,
    #[error("eigenvalue {0} appears twice in the pool")]
    DuplicatePool(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("writing report: {0}")]
    Io(#[from] std::io::Error),
    #[error("serializing report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem,
    Nullspace,
    Tangent,
    Vandermonde,
    Ord,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Theorem, Mode::Nullspace, Mode::Tangent, Mode::Vandermonde, Mode::Ord];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Theorem => "theorem",
            Mode::Nullspace => "nullspace",
            Mode::Tangent => "tangent",
            Mode::Vandermonde => "vandermonde",
            Mode::Ord => "ord",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

/// Pool used when none is given: 0, 1, −1, i, 2.
pub fn default_pool() -> Vec<Q> {
    vec![Q::from_ints(0, 0), Q::from_ints(1, 0), Q::from_ints(-1, 0), Q::from_ints(0, 1), Q::from_ints(2, 0)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub n_max: usize,
    pub eigenvalue_pool: Vec<Q>,
    pub modes: BTreeSet<Mode>,
    pub seed: u64,
    pub parallelism: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_max: 4,
            eigenvalue_pool: default_pool(),
            modes: Mode::ALL.into_iter().collect(),
            seed: 0,
            parallelism: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.n_max == 0 {
            return Err(SweepError::ZeroSize);
        }
        if self.eigenvalue_pool.is_empty() {
            return Err(SweepError::EmptyPool);
        }
        for (idx, l) in self.eigenvalue_pool.iter().enumerate() {
            if self.eigenvalue_pool[..idx].contains(l) {
                return Err(SweepError::DuplicatePool(l.to_string()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Partitions of `m` as descending part lists, in reverse-lexicographic order
/// (`[m]` first, all ones last).
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into exactly `parts` positive parts, lexicographic.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `size`-element index subsets of `0..len`, lexicographic.
fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, size, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan structure of size `n` with eigenvalues drawn from `pool`,
/// each exactly once, in a fixed order: eigenvalue subsets by size then
/// lexicographically, multiplicity compositions, then block partitions.
pub fn enumerate_jordan_specs(n: usize, pool: &[Q]) -> Vec<JordanSpec> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for size in 1..=pool.len().min(n) {
        for subset in subsets(pool.len(), size) {
            for comp in compositions(n, size) {
                let choices: Vec<Vec<Vec<usize>>> = comp.iter().map(|&m| partitions(m)).collect();
                let mut idx = vec![0usize; size];
                loop {
                    let blocks = subset
                        .iter()
                        .zip(&idx)
                        .zip(&choices)
                        .map(|((&p, &c), parts)| {
                            let mut sizes = parts[c].clone();
                            sizes.reverse();
                            EigenBlocks { eigenvalue: pool[p].clone(), sizes }
                        })
                        .collect();
                    out.push(JordanSpec::new(blocks).expect("enumeration yields valid specs"));
                    // Odometer, last eigenvalue fastest.
                    let Some(pos) = (0..size).rev().find(|&p| idx[p] + 1 < choices[p].len()) else {
                        break;
                    };
                    idx[pos] += 1;
                    idx[pos + 1..].iter_mut().for_each(|x| *x = 0);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

/// Seed for the `index`-th spec (splitmix64 of the run seed and index).
pub fn spec_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `Φ(ζ) = B + ζM` with `M` a seeded random Gaussian-integer matrix.
pub fn random_linear_curve(spec: &JordanSpec, seed: u64) -> CurveSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n();
    let m = SquareMatrix::from_fn(n, |_, _| {
        let re = rng.random_range(-3..=3);
        let im = if rng.random_bool(0.25) { rng.random_range(-2..=2) } else { 0 };
        Q::from_ints(re, im)
    });
    CurveSpec::linear(build_jordan(spec), m).expect("same size")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremOutcome {
    pub min_poly_degree: usize,
    pub rank: usize,
    pub conjugated_rank: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullspaceOutcome {
    pub count: usize,
    pub expected: usize,
    pub annihilates: bool,
    pub rank: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentOutcome {
    pub count: usize,
    pub expected: usize,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VandermondeOutcome {
    pub abs_equal: bool,
    pub sign: Option<i8>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrdOutcome {
    pub checks: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub mode: Mode,
    pub detail: String,
    /// A single CLI invocation that reruns the failing check.
    pub reproduce: String,
}

/// One JSONL line of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecOutcome {
    pub index: usize,
    pub n: usize,
    pub seed: u64,
    pub spec: JordanSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullspace: Option<NullspaceOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent: Option<TangentOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vandermonde: Option<VandermondeOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ord: Option<OrdOutcome>,
    /// With both certificates: `m_tangent ≤ rank ≤ n − nullspace rank`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_rank: Option<usize>,
    pub passed: bool,
    #[serde(skip)]
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ModeCount {
    pub run: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub total_specs: usize,
    pub passed_specs: usize,
    pub specs_per_n: BTreeMap<usize, usize>,
    pub modes: BTreeMap<Mode, ModeCount>,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub outcomes: Vec<SpecOutcome>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.summary.failures.is_empty()
    }

    /// One line per spec, then a `{"summary": …}` line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), SweepError> {
        for o in &self.outcomes {
            serde_json::to_writer(&mut out, o)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &serde_json::json!({ "summary": &self.summary }))?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

/// Shell command rerunning subcommand `sub` on one spec.
pub fn reproduce_command(sub: &str, spec: &JordanSpec, seed: u64) -> String {
    let js = serde_json::to_string(spec).expect("spec serializes");
    format!("symrank {sub} '{js}' --seed {seed}")
}

/// Runs every enabled mode on one spec.
pub fn check_spec(index: usize, spec: &JordanSpec, modes: &BTreeSet<Mode>, seed: u64) -> SpecOutcome {
    let n = spec.n();
    let m = min_poly_degree(spec);
    let mut failures = Vec::new();
    let mut fail = |mode: Mode, detail: String, sub: &str| {
        failures.push(Failure { index, mode, detail, reproduce: reproduce_command(sub, spec, seed) });
    };

    let theorem = modes.contains(&Mode::Theorem).then(|| match verify_theorem(spec, seed) {
        Ok(r) => {
            if !r.passed() {
                fail(Mode::Theorem, format!("rank {} (conjugated {:?}) vs m = {}", r.rank, r.conjugated_rank, m), "verify");
            }
            TheoremOutcome { min_poly_degree: m, rank: r.rank, conjugated_rank: r.conjugated_rank, passed: r.passed() }
        }
        Err(e) => {
            fail(Mode::Theorem, e.to_string(), "verify");
            TheoremOutcome { min_poly_degree: m, rank: 0, conjugated_rank: None, passed: false }
        }
    });

    let nullspace = modes.contains(&Mode::Nullspace).then(|| {
        let cert = nullspace_basis(spec);
        let b = build_jordan::<Q>(spec);
        let annihilates = verify_annihilation(&cert, &b).unwrap_or(false);
        let rank = cert.rank();
        let expected = n - m;
        let passed = cert.len() == expected && annihilates && rank == expected;
        if !passed {
            fail(
                Mode::Nullspace,
                format!("count {} rank {} annihilates {} (expected {})", cert.len(), rank, annihilates, expected),
                "nullspace",
            );
        }
        NullspaceOutcome { count: cert.len(), expected, annihilates, rank, passed }
    });

    let tangent = modes.contains(&Mode::Tangent).then(|| {
        let fspec = jordan_to_frobenius(spec);
        match tangent_construction(&fspec) {
            Ok(c) => {
                let passed = c.passed && c.images.len() == m;
                if !passed {
                    fail(Mode::Tangent, format!("rank {} pivots {:?} (m = {m})", c.rank, c.pivots), "tangent");
                }
                TangentOutcome { count: c.images.len(), expected: m, rank: c.rank, pivots: c.pivots, passed }
            }
            Err(e) => {
                fail(Mode::Tangent, e.to_string(), "tangent");
                TangentOutcome { count: 0, expected: m, rank: 0, pivots: vec![], passed: false }
            }
        }
    });

    let vandermonde = modes.contains(&Mode::Vandermonde).then(|| {
        let clusters: Vec<(Q, usize)> =
            spec.blocks().iter().map(|b| (b.eigenvalue.clone(), b.multiplicity())).collect();
        match confluent_vandermonde_det(&clusters) {
            Ok(r) => {
                if !r.abs_equal {
                    fail(Mode::Vandermonde, format!("det {} vs closed form {}", r.determinant, r.closed_form), "vandermonde");
                }
                VandermondeOutcome { abs_equal: r.abs_equal, sign: r.sign, passed: r.abs_equal }
            }
            Err(e) => {
                fail(Mode::Vandermonde, e.to_string(), "vandermonde");
                VandermondeOutcome { abs_equal: false, sign: None, passed: false }
            }
        }
    });

    let ord = modes.contains(&Mode::Ord).then(|| {
        let curve = random_linear_curve(spec, seed);
        match order_of_vanishing_all(spec, &curve) {
            Ok(reports) => {
                let violations: Vec<String> = reports
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| format!("lambda {} k {}: observed {:?} < required {}", r.lambda, r.k, r.observed_order, r.required_order))
                    .collect();
                if !violations.is_empty() {
                    fail(Mode::Ord, violations.join("; "), "ord");
                }
                OrdOutcome { checks: reports.len(), passed: violations.is_empty(), violations }
            }
            Err(e) => {
                fail(Mode::Ord, e.to_string(), "ord");
                OrdOutcome { checks: 0, violations: vec![e.to_string()], passed: false }
            }
        }
    });

    let certified_rank = match (&nullspace, &tangent) {
        (Some(ns), Some(tg)) if ns.passed && tg.passed && tg.rank == n - ns.rank => Some(tg.rank),
        _ => None,
    };

    SpecOutcome {
        index,
        n,
        seed,
        spec: spec.clone(),
        passed: failures.is_empty(),
        theorem,
        nullspace,
        tangent,
        vandermonde,
        ord,
        certified_rank,
        failures,
    }
}

/// Enumerates all specs with `n ≤ n_max` and runs the enabled modes.
/// Output order is the enumeration order regardless of parallelism.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    config.validate()?;
    let mut specs = Vec::new();
    let mut specs_per_n = BTreeMap::new();
    if !config.modes.is_empty() {
        for n in 1..=config.n_max {
            let batch = enumerate_jordan_specs(n, &config.eigenvalue_pool);
            specs_per_n.insert(n, batch.len());
            specs.extend(batch);
        }
    }
    let work = |(index, spec): (usize, &JordanSpec)| {
        check_spec(index, spec, &config.modes, spec_seed(config.seed, index))
    };
    let outcomes: Vec<SpecOutcome> = if config.parallelism <= 1 {
        specs.iter().enumerate().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
        pool.install(|| specs.par_iter().enumerate().map(work).collect())
    };

    let mut modes: BTreeMap<Mode, ModeCount> = BTreeMap::new();
    for o in &outcomes {
        let entries = [
            (Mode::Theorem, o.theorem.as_ref().map(|x| x.passed)),
            (Mode::Nullspace, o.nullspace.as_ref().map(|x| x.passed)),
            (Mode::Tangent, o.tangent.as_ref().map(|x| x.passed)),
            (Mode::Vandermonde, o.vandermonde.as_ref().map(|x| x.passed)),
            (Mode::Ord, o.ord.as_ref().map(|x| x.passed)),
        ];
        for (mode, result) in entries {
            if let Some(ok) = result {
                let c = modes.entry(mode).or_default();
                c.run += 1;
                c.passed += usize::from(ok);
            }
        }
    }
    let failures: Vec<Failure> = outcomes.iter().flat_map(|o| o.failures.clone()).collect();
    let summary = SweepSummary {
        total_specs: outcomes.len(),
        passed_specs: outcomes.iter().filter(|o| o.passed).count(),
        specs_per_n,
        modes,
        failures,
    };
    Ok(SweepReport { outcomes, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn partition_order() {
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(1), vec![vec![1]]);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_jordan_specs(1, &[q(0)]).len(), 1);
        let specs = enumerate_jordan_specs(2, &[q(0), q(1)]);
        let expected = vec![
            JordanSpec::from_pairs(vec![(q(0), vec![2])]).unwrap(),
            JordanSpec::from_pairs(vec![(q(0), vec![1, 1])]).unwrap(),
            JordanSpec::from_pairs(vec![(q(1), vec![2])]).unwrap(),
            JordanSpec::from_pairs(vec![(q(1), vec![1, 1])]).unwrap(),
            JordanSpec::from_pairs(vec![(q(0), vec![1]), (q(1), vec![1])]).unwrap(),
        ];
        assert_eq!(specs, expected);
        let specs = enumerate_jordan_specs(3, &[q(0)]);
        let sizes: Vec<Vec<usize>> = specs.iter().map(|s| s.blocks()[0].sizes.clone()).collect();
        assert_eq!(sizes, vec![vec![3], vec![1, 2], vec![1, 1, 1]]);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let specs = enumerate_jordan_specs(4, &default_pool());
        for (i, a) in specs.iter().enumerate() {
            assert!(!specs[..i].contains(a));
        }
        assert_eq!(specs.len(), 190);
    }

    #[test]
    fn config_validation() {
        let mut c = SweepConfig::default();
        assert!(c.validate().is_ok());
        c.n_max = 0;
        assert!(matches!(c.validate(), Err(SweepError::ZeroSize)));
        c.n_max = 2;
        c.eigenvalue_pool = vec![q(1), q(1)];
        assert!(matches!(c.validate(), Err(SweepError::DuplicatePool(_))));
        c.eigenvalue_pool.clear();
        assert!(matches!(c.validate(), Err(SweepError::EmptyPool)));
    }

    #[test]
    fn small_theorem_sweep() {
        let config = SweepConfig {
            n_max: 2,
            eigenvalue_pool: vec![q(0), q(1)],
            modes: [Mode::Theorem].into_iter().collect(),
            ..Default::default()
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.summary.specs_per_n.get(&2), Some(&5));
        assert!(report.passed());
        assert_eq!(report.summary.modes[&Mode::Theorem].passed, report.summary.total_specs);
    }

    #[test]
    fn empty_modes_give_empty_report() {
        let config = SweepConfig { modes: BTreeSet::new(), ..Default::default() };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.summary.total_specs, 0);
        assert!(report.passed());
    }

    #[test]
    fn certificates_on_one_spec() {
        let spec = JordanSpec::from_pairs(vec![(q(0), vec![1, 2])]).unwrap();
        let modes = [Mode::Nullspace, Mode::Tangent].into_iter().collect();
        let o = check_spec(0, &spec, &modes, 7);
        assert!(o.passed);
        assert_eq!(o.certified_rank, Some(2));
    }

    #[test]
    fn sweep_is_deterministic_across_parallelism() {
        let mut config = SweepConfig { n_max: 3, seed: 11, ..Default::default() };
        let mut a = Vec::new();
        run_sweep(&config).unwrap().write_jsonl(&mut a).unwrap();
        config.parallelism = 4;
        let mut b = Vec::new();
        run_sweep(&config).unwrap().write_jsonl(&mut b).unwrap();
        assert_eq!(a, b);
    }
}
