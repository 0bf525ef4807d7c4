//! Exact-arithmetic engine for the q,t-combinatorics of rational-slope
//! torus-knot invariants: shuffle-generator coefficients in the modified
//! Macdonald basis, rational q,t-Catalan numbers, and triply-graded
//! torus-knot homology Poincare polynomials.

pub mod cli;
pub mod dyck;
pub mod exactalg;
pub mod knot;
pub mod partitions;
pub mod shuffle;
pub mod symfunc;
pub mod tableaux;

use thiserror::Error;

/// Errors shared across the whole engine.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function is not a Laurent polynomial: factor (1-q^{0}*t^{1}) does not divide the numerator")]
    NotPolynomial(i64, i64),
    #[error("exponent bag contains a constant (0,0) entry; the product would be zero or infinite")]
    ZeroFactor,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("cell ({0},{1}) lies outside the diagram")]
    CellOutsideDiagram(usize, usize),
    #[error("partitions have different sizes")]
    SizeMismatch,
    #[error("symmetric functions have different degrees")]
    DegreeMismatch,
    #[error("degree {0} exceeds the configured cap {1}")]
    DegreeCapExceeded(usize, usize),
    #[error("linear system for the modified Macdonald polynomial is singular")]
    SingularSystem,
    #[error("tableau prefix index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unhatted zero factor in a localization term (net (0,0) multiplicity {0})")]
    HatViolation(i64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("quotient is not representable with a binomial-factor denominator")]
    NotRepresentable,
    #[error("conversion into the Macdonald basis is not supported")]
    UnsupportedConversion,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
