use thiserror::Error;

/// Errors raised while validating a Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("m({0},{1}) != m({1},{0})")]
    AsymmetricEntry(usize, usize),
    #[error("m({0},{0}) must be 1")]
    DiagonalNotOne(usize),
    #[error("m({0},{1}) must be at least 2 for distinct generators")]
    OffDiagonalBelowTwo(usize, usize),
    #[error("{0} generators requested, at most {max} supported", max = crate::word::MAX_RANK)]
    TooManyGenerators(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("generator index {index} out of range for a system of rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("braid closure exceeded the budget of {budget} words")]
    ClosureBudgetExceeded { budget: usize },
    #[error("enumeration exceeded the budget of {budget} elements")]
    SizeBudgetExceeded { budget: usize },
    #[error("generator subset {0:?} is not spherical")]
    NonSphericalSubset(Vec<usize>),
    #[error("coset has {count} elements of maximal length {length}")]
    NonUniqueMaximum { length: usize, count: usize },
    #[error("l(ws) < l(w): appending generator {0} shortens the word")]
    LengthDecreases(usize),
    #[error("x is not the longest-coset representative for the given (T, w)")]
    StaleRepresentative,
    #[error("no single-letter deletion of x yields the new representative")]
    NoDeletionFound,
    #[error("ray is not reduced at letter {0}")]
    NotReducedAt(usize),
    #[error("ray period must be non-empty")]
    EmptyPeriod,
    #[error("horizon {horizon} is outside the certified range 1..={certified}")]
    HorizonOutOfRange { horizon: usize, certified: usize },
    #[error("theorem hypothesis fails: {0}")]
    HypothesisFailed(String),
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;
