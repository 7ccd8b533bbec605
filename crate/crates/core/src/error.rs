use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not invertible: constant term is {0}, expected 1")]
    NotInvertible(String),

    #[error("zero Euler class: weight #{index} is zero")]
    ZeroEulerClass { index: usize },

    #[error("weight {weight:?} has length {got}, torus rank is {rank}")]
    RankMismatch { weight: Vec<i64>, got: usize, rank: usize },

    #[error("missing image for c_{0}")]
    MissingImage(u32),

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("relative dimension must be non-negative, got {0}")]
    NegativeEll(i64),

    #[error("catalog parse error: {0}")]
    CatalogParse(String),

    #[error("catalog entry `{entry}` violates {invariant}")]
    CatalogInvariant { entry: String, invariant: String },

    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),

    #[error("polynomial parse error in `{input}`: {reason}")]
    PolyParse { input: String, reason: String },

    #[error("genotype: {0}")]
    Genotype(String),

    #[error("jet bound {0} too small")]
    JetBoundTooSmall(u32),

    #[error("non-quasi-homogeneous weight assignment: unfolding monomial {monomial} has zero weight")]
    ZeroUnfoldingWeight { monomial: String },

    #[error("unknown entry `{0}`")]
    UnknownEntry(String),

    #[error("degree {degree} exceeds the limit {limit}: {reason}")]
    DegreeTooLarge { degree: u32, limit: u32, reason: String },

    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("underdetermined system: free unknowns {free:?}")]
    Underdetermined { free: Vec<String> },

    #[error("lowest degree of the solution is {got:?}, catalog codimension is {expected}")]
    DegreeLaw { expected: u32, got: Option<u32> },

    #[error("schur-tilde expansion did not stabilize with {0} variables")]
    NotStabilized(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
