use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("{0} vertices requested, at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },
    #[error("invalid parameter for {family}: {reason}")]
    InvalidFamilyParameter {
        family: &'static str,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("vertex {0} is isolated; the normalized Laplacian is undefined")]
    IsolatedVertex(usize),
    #[error("the zero function has no Rayleigh quotient")]
    ZeroFunction,
    #[error("function has dimension {got}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NonConvergence { sweeps: usize, off_norm: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("bound requires n >= {min}, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("minimum degree {d_min} exceeds (n-1)/2 for n = {n}")]
    DMinTooLarge { n: usize, d_min: usize },
    #[error("minimum degree must be at least 1")]
    DMinZero,
    #[error("need m >= 1 and 1 <= delta <= 2m-1, got m = {m}, delta = {delta}")]
    DegreeOutOfRange { m: usize, delta: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("graph is complete; no non-adjacent pair exists")]
    GraphComplete,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("minimum degree {d_min} exceeds (n-1)/2 for n = {n}")]
    DMinTooLarge { n: usize, d_min: usize },
    #[error("vertices {0} and {1} are adjacent")]
    AdjacentPair(usize, usize),
    #[error("vertices {0} and {1} have no common neighbour")]
    EmptyCommonNeighborhood(usize, usize),
    #[error("vertex {v} has degree {degree}, not the minimum degree {d_min}")]
    NotMinimumDegree {
        v: usize,
        degree: usize,
        d_min: usize,
    },
    #[error("lemma parameters out of domain: n = {n}, d_v = {d_v}, d_w = {d_w}")]
    LemmaDomain { n: usize, d_v: usize, d_w: usize },
    #[error("f(v) + f(w) = {sum} is below A = {a}")]
    EndpointMassBelowA { sum: f64, a: usize },
    #[error("certificate record is invalid: {0}")]
    InvalidRecord(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RigidityError {
    #[error("verdict does not describe this graph")]
    VerdictMismatch,
    #[error("clique size must be at least {min}, got {k}")]
    CliqueTooSmall { k: usize, min: usize },
    #[error("closed-form eigenfunction failed verification: {0}")]
    EigenpairFailed(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
