//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is degenerate (det = 0)")]
    Degenerate,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("vector is not in the dual lattice: {0}")]
    NotInDual(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown catalog lattice '{0}'")]
    UnknownLattice(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlueError {
    #[error("glue validation failed: {0}")]
    InvalidGlue(String),
    #[error("{0} is not an isometry")]
    NotAnIsometry(String),
    #[error("isometries are incompatible with the glue map at class {0}")]
    Incompatible(String),
    #[error("lattice error: {0}")]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsometryError {
    #[error("matrix does not preserve the Gram form")]
    NotAnIsometry,
    #[error("basis vector {0} is not a (-2)-root")]
    NotARoot(usize),
    #[error("twist produced a non-symmetric form; input is not a Coxeter-type isometry")]
    NonSymmetricTwist,
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootsError {
    #[error("lattice is not negative definite (inertia {0:?})")]
    NotNegativeDefinite((usize, usize, usize)),
    #[error("expected a unique dominant root, found {0}")]
    DominantNotUnique(usize),
    #[error("Euler characteristic needs an even self-intersection, got {0}")]
    OddSquare(i64),
    #[error("generators are not linearly independent")]
    DependentGenerators,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeriodError {
    #[error("tau must lie in the upper half-plane")]
    TauNotInUpperHalfPlane,
    #[error("product of symbols '{0}' and '{1}' is not in the declared closure")]
    UndeclaredProduct(String, String),
    #[error("conjugate of symbol '{0}' is not declared")]
    UndeclaredConjugate(String),
    #[error("coefficient of y in (sigma.sigma) is not invertible; system is degenerate")]
    DegenerateY,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("quadrature did not converge to the requested tolerance")]
    QuadratureDiverged,
    #[error("blow-up formula requires N >= 4, got {0}")]
    BlowupTooFewPoints(i64),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("n must be >= 1")]
    BadIndex,
    #[error("n_max must be >= 16, got {0}")]
    NMaxTooSmall(u64),
    #[error("polynomial of degree {0} cannot certify an irrational (need degree >= 2)")]
    DegreeTooSmall(usize),
    #[error("polynomial is reducible over Q ({0})")]
    Reducible(String),
    #[error("irreducibility could not certify with primes up to {0}")]
    IrreducibilityUnknown(u64),
    #[error("interval [{0}, {1}] does not isolate a root (no sign change)")]
    RootNotIsolated(String, String),
    #[error("cannot parse real expression '{0}'")]
    BadExpression(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum SalemError {
    #[error("root finding did not converge")]
    NonConvergence,
    #[error("no unit-circle root with positive pairing; inspected {0} roots")]
    NoPositiveRoot(usize),
    #[error("eigenvector residual {0} above tolerance")]
    EigenResidual(f64),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MajorantError {
    #[error("s must lie in (0, 1)")]
    SOutOfRange,
    #[error("distance sequence entry d_{0} is zero (non-Diophantine degeneracy)")]
    ZeroDistance(usize),
    #[error("parameters must be positive")]
    NonPositiveParameter,
    #[error("need at least {0} coefficients for a radius estimate, have {1}")]
    TooFewTerms(usize, usize),
}
