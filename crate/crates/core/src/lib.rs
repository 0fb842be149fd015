//! Exact and numeric tools for the Jacobian of the matrix-to-symmetric-function
//! map, whose rank at a matrix equals the degree of its minimal polynomial.

pub mod canonical;
pub mod jacobian;
pub mod matpoly;
pub mod proofs;
pub mod scalars;
pub mod sweep;

pub use canonical::{build_companion, build_frobenius, build_jordan, FrobeniusSpec, JordanSpec};
pub use jacobian::{jacobian_exact, jacobian_fd, rank_exact, rank_numeric, verify_theorem, TheoremReport};
pub use matpoly::{Matrix, Polynomial, SquareMatrix, SymPoint};
pub use scalars::{ComplexFloat, Field, GaussianRational, Rational, Scalar};
