use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system `{0}`")]
    InvalidSystem(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid Levi subset: {0}")]
    InvalidLevi(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight {0:?} is not dominant for the Levi subalgebra")]
    NotLeviDominant(Vec<i64>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("no stabilization within {cap} translation steps")]
    NotStabilized { cap: usize },

    #[error("the pairing with the translation weight is not constant on the complement roots")]
    HypothesisFails,

    #[error("weight set is not closed downward: {0:?} is missing")]
    NotDownwardClosed(Vec<i64>),

    #[error("transition matrix is not unitriangular at ({0:?}, {1:?})")]
    NotUnitriangular(Vec<i64>, Vec<i64>),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
