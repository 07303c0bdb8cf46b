use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree exceeds reversal rank: degree {degree} > rank {rank}")]
    DegreeExceedsRank { degree: usize, rank: usize },

    #[error("not divisible by x-1")]
    NotDivisibleByXMinusOne,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("polynomial is not palindromic with center degree {center}")]
    NotPalindromic { center: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("poset is not graded")]
    NotGraded,

    #[error("incidence functions live on different posets")]
    PosetMismatch,

    #[error("not invertible in incidence algebra: diagonal entry at element {0} is not +1 or -1")]
    NotInvertible(usize),

    #[error("kernel violates (x-1)-divisibility on interval [{0}, {1}]")]
    KernelDivisibility(usize, usize),

    #[error("not a kernel: κ·κ^rev differs from δ or the diagonal is not 1")]
    NotAKernel,

    #[error("kernel inconsistent on interval [{0}, {1}]")]
    KernelInconsistent(usize, usize),

    #[error("specialization identity violated: {0}")]
    SpecializationViolated(String),

    #[error("ab-polynomial has y-dependent coefficients; omega is defined on Z<a,b> only")]
    YDependentCoefficients,

    #[error("subset out of range: {0}")]
    SubsetOutOfRange(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("matroid has loops")]
    MatroidHasLoops,

    #[error("element {0} is a coloop")]
    Coloop(usize),

    #[error("element {0} has parallel elements")]
    Parallel(usize),

    #[error("element {0} is a loop")]
    Loop(usize),

    #[error("element {element} out of range for ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),

    #[error("parse error: {0}")]
    Parse(String),
}
