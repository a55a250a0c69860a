use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree length mismatch: {0} vs {1}")]
    DegreeLength(usize, usize),

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error at {field}: {message}")]
    Schema { field: String, message: String },

    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("group word factor {index} is not in the degree-zero subalgebra")]
    NotInEvenPart { index: usize },

    #[error("exponential series for ad did not converge after {iterations} terms (tail bound {bound:e})")]
    NonConvergence { iterations: usize, bound: f64 },

    #[error("filtration exhausted: need monomials up to length {needed}, table holds {available}")]
    FiltrationExhausted { needed: usize, available: usize },

    #[error("group element outside the declared domain: {0}")]
    OutsideDomain(String),

    #[error("|lambda({word})| = {value} exceeds the uniform bound C = {bound}")]
    UniformBound { word: String, value: f64, bound: f64 },

    #[error("operation requires an abelian even part")]
    NonAbelian,

    #[error("variable sets differ")]
    VariableMismatch,

    #[error("residue tower is inconsistent at level {0}")]
    InconsistentTower(usize),

    #[error("sequence is not Cauchy at level {level}: terms {i} and {k} differ below J^{level}")]
    NotCauchy { level: u32, i: usize, k: usize },

    #[error("degenerate inner product on block {0}")]
    DegenerateInner(String),

    #[error("operator is not homogeneous of the requested degree")]
    OperatorDegree,

    #[error("operator is not skew-adjoint (deviation {0:e})")]
    NotSkew(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid pre-representation: {0}")]
    InvalidPrerep(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
