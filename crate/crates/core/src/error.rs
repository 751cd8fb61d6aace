use thiserror::Error;

/// Errors produced by the graph, cover and lattice routines.
#[derive(Debug, Error)]
pub enum PrymError {
    #[error("graph is disconnected; components: {components:?}")]
    Disconnected { components: Vec<Vec<String>> },

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("disconnected cover: the flip set is empty")]
    EmptyFlipSet,

    #[error("edge {0} lies in the spanning tree")]
    EdgeInTree(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("divisor does not lie in the kernel of the norm map")]
    NotInNormKernel,

    #[error("graph has genus zero; its zeta function is trivial")]
    GenusZero,

    #[error("the zero polynomial has no order of vanishing")]
    ZeroPolynomial,

    #[error("model has loops; subdivide them first")]
    LoopyModel,

    #[error("parameter {value} out of range [0, {length}] on edge {edge}")]
    ParameterOutOfRange {
        edge: String,
        value: String,
        length: String,
    },

    #[error("non-generic target, resample")]
    NonGenericTarget,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = PrymError> = std::result::Result<T, E>;
