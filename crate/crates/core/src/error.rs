use thiserror::Error;

/// Errors shared by every layer of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("monomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range for a ring with {arity} variables")]
    VarIndexOutOfRange { index: usize, arity: usize },
    #[error("{0} is not a valid variable name")]
    BadVariableName(String),
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("computation budget exceeded after {pairs} S-pairs")]
    BudgetExceeded { pairs: usize },
    #[error("saturation did not stabilize within {0} quotient iterations")]
    SaturationDiverged(usize),
    #[error("the unit ideal has empty spectrum")]
    EmptySpectrum,
    #[error("too many variables ({0}) for exhaustive dimension search")]
    TooManyVariables(usize),
    #[error("presentation requires a proper relation ideal")]
    ImproperIdeal,
    #[error("minimal-prime decomposition is not certified")]
    UncertifiedDecomposition,
    #[error("generator lists span different ideals")]
    GeneratorMismatch,
    #[error("isomorphism verification failed: {0}")]
    IsoVerification(String),
    #[error("minor expansion too large: {rows}x{cols} matrix, r = {r}")]
    MinorsTooLarge { rows: usize, cols: usize, r: usize },
    #[error("matrix shape mismatch")]
    MatrixShape,
    #[error("singular locus unavailable: presentation is not verified reduced and equidimensional and no supplied locus exists")]
    SingularLocusUnavailable,
    #[error("construction inapplicable: {0}")]
    ConstructionInapplicable(String),
    #[error("construction failed verification: {0}")]
    ConstructionFailed(String),
    #[error("resolution length {0} exceeds the supported cap of {1}")]
    ResolutionTooLong(usize, usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps that keep every computation loudly bounded.
///
/// Exceeding a cap is a reported error, never a wrong answer.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of S-pairs generated in one Groebner run.
    pub max_pairs: usize,
    /// Maximum quotient iterations while saturating.
    pub max_saturation: usize,
    /// Maximum number of r-minors expanded from one matrix.
    pub max_minors: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_saturation: 32, max_minors: 200_000 }
    }
}

impl Budget {
    pub fn with_max_pairs(max_pairs: usize) -> Self {
        Budget { max_pairs, ..Budget::default() }
    }
}
