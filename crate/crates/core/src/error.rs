use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a permutation of [n]: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("word letters must be positive")]
    InvalidWord,

    #[error("rank n must be at least 1")]
    ZeroRank,

    #[error("subset member {member} is outside [1, {max}]")]
    InvalidSubset { member: usize, max: usize },

    #[error("rank mismatch: permutation has n = {perm}, subset has n = {subset}")]
    RankMismatch { perm: usize, subset: usize },

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("polynomial of degree {degree} exceeds the degree bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },

    #[error("polynomial is not palindromic with respect to degree {0}")]
    NotPalindromic(usize),

    #[error("letter {0} is a peak or a valley, not a free letter")]
    NotFree(usize),

    #[error("permutation is not in W(K)")]
    NotInWofK,

    #[error("theta precondition violated: {0}")]
    ThetaDomain(String),

    #[error("invalid partition: {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("invalid composition: {0:?}")]
    InvalidComposition(Vec<usize>),

    #[error("tableau rows do not form a Young diagram")]
    InvalidShape,

    #[error("tableau is not semistandard")]
    NotSemistandard,

    #[error("tableau is not standard")]
    NotStandard,

    #[error("shape mismatch between tableaux")]
    ShapeMismatch,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("word content does not match mu(K)")]
    ContentMismatch,

    #[error("word has a double descent or a final descent")]
    DescentCondition,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
