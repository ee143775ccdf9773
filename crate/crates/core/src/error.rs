use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial has no monomials")]
    EmptyPolynomial,
    #[error("system has no polynomials")]
    EmptySystem,
    #[error("negative coefficient in monomial {monomial} of a non-Laurent polynomial")]
    NegativeCoefficient { monomial: usize },
    #[error("degree is undefined for Laurent polynomials")]
    LaurentDegree,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("cell contains a line; reduce lineality first")]
    ContainsLine,
    #[error("polyhedron is full-dimensional; only positive codimension can be realized")]
    FullDimensional,
    #[error("half-space realization needs at least one equation")]
    NoEquations,
    #[error("dual face is not tropical")]
    NotTropical,
    #[error("tie pattern does not match the system")]
    PatternShape,
    #[error("coefficient {0} does not fit in 64 bits")]
    CoefficientOverflow(String),
    #[error("at most {limit} polyhedra can be realized, got {got}")]
    TooManyPolyhedra { limit: usize, got: usize },
    #[error("radicands differ: {0} vs {1}")]
    RadicandMismatch(String, String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
