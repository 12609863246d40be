use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("vertex label {label} out of range for n = {n}")]
    BadLabel { label: usize, n: usize },

    #[error("invalid family specification: {0}")]
    BadSpec(String),

    #[error("vertex sequence is not a simple path: {0}")]
    NotAPath(String),

    #[error("bad vertex {0}")]
    BadVertex(usize),

    #[error("shift {lambda} is within the admissibility margin of eigenvalue {eigenvalue}{}", block_suffix(*.block))]
    NearSingularShift {
        lambda: f64,
        eigenvalue: f64,
        /// 1-based path index of the offending attached subtree, when known.
        block: Option<usize>,
    },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("vector is not in the kernel of the reduced matrix (residual {residual:e})")]
    NotInKernel { residual: f64 },

    #[error("shift {lambda} outside the admissible interval ({lower}, {upper})")]
    ShiftOutOfRange { lambda: f64, lower: f64, upper: f64 },

    #[error("bad geometry: {0}")]
    BadGeometry(String),

    #[error("value {0} is outside [0, 2]; no angle in [0, pi/2] exists")]
    NoValidZeta(f64),

    #[error("{0} is outside the admissible range")]
    OutOfRange(f64),

    #[error("no index lies inside the validity horizon")]
    HorizonEmpty,

    #[error("recursion pivot vanished at index {index} (|F| = {value:e})")]
    ZeroPivot { index: usize, value: f64 },

    #[error("algebraic connectivity is not a simple eigenvalue")]
    NotSimple,

    #[error("tree is not a caterpillar with diameter >= 3")]
    NotCaterpillar,

    #[error("assumption (a) violated: a(T) = {a} is not below lambda_min = {lambda_min} of a branch at path index {index}")]
    AssumptionAViolated { a: f64, lambda_min: f64, index: usize },

    #[error("pendant ratio is 0/0 at lambda = {lambda}: the path entries decouple")]
    DegenerateRatio { lambda: f64 },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn block_suffix(block: Option<usize>) -> String {
    match block {
        Some(i) => format!(" of attached subtree T_{i}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
