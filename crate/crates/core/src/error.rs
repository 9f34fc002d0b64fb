use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("matrix size {0} is not supported (need at least 2 alternatives)")]
    InvalidSize(usize),
    #[error("index ({i}, {j}) is out of range for {n} alternatives")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("comparison ({i}, {j}) is given more than once")]
    DuplicatePair { i: usize, j: usize },
    #[error("comparison ({i}, {j}) must be a positive finite number, got {value}")]
    NonPositive { i: usize, j: usize, value: f64 },
    #[error("comparison ({i}, {j}) is already missing")]
    AlreadyMissing { i: usize, j: usize },
    #[error("matrix entries must be strictly positive and finite")]
    NotPositive,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("consistency index needs n >= 2, got {0}")]
    InvalidOrder(usize),
    #[error("dominant eigenvalue {lambda} is below the matrix order {n}; the matrix is not reciprocal")]
    BelowOrder { lambda: f64, n: usize },
    #[error("random index must be positive, got {0}")]
    InvalidRandomIndex(f64),
    #[error("the graph of known comparisons is disconnected; there is no unique completion")]
    Disconnected,
    #[error("completion did not converge after {iterations} iterations")]
    CompletionNoConvergence { iterations: usize },
    #[error("grid search over {variables} variables with {points} points per axis is too large")]
    GridTooLarge { variables: usize, points: usize },
    #[error("graphs on {0} vertices are not supported (at most 10)")]
    GraphTooLarge(usize),
    #[error("no connected graph with {n} vertices and {m} missing edges exists")]
    NoConnectedGraph { n: usize, m: usize },
    #[error("invalid canonical code {0}")]
    InvalidCode(alloc::string::String),
    #[error("exact enumeration of {size} matrices exceeds the limit of {limit}")]
    EnumerationTooLarge { size: u64, limit: u64 },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("completion of sample {index} failed: {source}")]
    Sample {
        index: u64,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}
