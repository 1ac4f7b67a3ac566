//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("dimension mismatch: expected n={expected}, got n={got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix size mismatch: expected N={expected}, got N={got}")]
    MatrixSizeMismatch { expected: usize, got: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("chain degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("boundary of a degree-0 chain is undefined")]
    DegreeZeroBoundary,
    #[error("tensor slot index {index} out of range for arity {arity}")]
    SlotOutOfRange { index: usize, arity: usize },
    #[error("alpha_{{ij}} requires i != j (got i = j = {0})")]
    EqualSlotIndices(usize),
    #[error("variable index {index} out of range for n={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("commutator is not divisible by eps (offending eps exponent {0})")]
    NotDivisibleByEps(i64),
    #[error("matrix does not satisfy the sp(2n) symmetry condition")]
    SpInvariantViolated,
    #[error("element is not a pure quadratic in the y variables")]
    NotQuadratic,
    #[error("quadratic part has eps-dependent coefficients where rational ones are required")]
    EpsDependentQuadratic,
    #[error("argument is not in the Cartan span of 1(x)q_ip_i and E_rr(x)1")]
    NotInCartanSpan,
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("closed form requires n=1, got n={0}")]
    ClosedFormRequiresN1(usize),
    #[error("scale cap exceeded: n={n}, N={nn} (supported n<=2, N<=3; pass override to force)")]
    CapsExceeded { n: usize, nn: usize },
    #[error("invalid special-vector tuple: {0}")]
    InvalidTuple(String),
}

pub type Result<T> = std::result::Result<T, WeylError>;
