use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} outside ground set [1, {n}]")]
    ElementOutOfRange { element: i64, n: usize },
    #[error("element {0} listed twice")]
    DuplicateElement(usize),
    #[error("ground set size {0} outside supported range [1, {max}]", max = crate::kset::MAX_N)]
    GroundSetTooLarge(usize),
    #[error("ground sets differ: n={left} vs n={right}")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("uniformity violated: expected k={expected}, found a set of size {found}")]
    UniformityMismatch { expected: usize, found: usize },
    #[error("duplicate family member {0}")]
    DuplicateMember(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("pattern has {pattern} vertices but host only {host}")]
    PatternLargerThanHost { pattern: usize, host: usize },
    #[error(
        "brute-force oracle limited to pattern order <= {max_pattern} and host order <= {max_host}"
    )]
    OracleSizeExceeded { max_pattern: usize, max_host: usize },
    #[error("pattern order {order} exceeds limit {max}")]
    PatternTooLarge { order: usize, max: usize },
    #[error("chromatic number {0} is below 3")]
    ChromaticTooSmall(usize),
    #[error("search budget exceeded; optimum lies in [{lower}, {upper}]")]
    SearchBudgetExceeded { lower: usize, upper: usize },
    #[error("infeasible parameters: {0}")]
    ParamsInfeasible(String),
    #[error("problem exceeds desk-scale caps: {0}")]
    CapExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
