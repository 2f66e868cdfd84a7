use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice not full rank")]
    LatticeNotFullRank,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient group mismatch")]
    AmbientMismatch,
    #[error("not a subgroup pair")]
    NotSubgroupPair,
    #[error("invalid modulus {0}: moduli must be at least 1")]
    InvalidModulus(String),
    #[error("matrix entry ({row}, {col}) violates the compatibility certificate")]
    IncompatibleHom { row: usize, col: usize },
    #[error("homomorphism is not an endomorphism")]
    NotEndomorphism,
    #[error("step count must be at least 1")]
    ZeroSteps,
    #[error("invalid index sequence: {0}")]
    InvalidIndexSequence(String),
    #[error("index sequence needs at least 2 entries, got {0}")]
    TooFewEntries(usize),
    #[error("tower too short for (j={base}, n={steps}): level {required} required, top level is {available}")]
    TowerTooShort {
        base: usize,
        steps: usize,
        required: usize,
        available: usize,
    },
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("v1 requires invertible endomorphism")]
    SingularEndomorphism,
    #[error("mixed primes {0} and {1}")]
    MixedPrimes(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("eigenvalue solver did not converge")]
    EigenSolverFailed,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
