use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector where a nonzero lattice vector is required")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("parallelogram edges are parallel")]
    DegenerateParallelogram,
    #[error("wedge edges are parallel")]
    DegenerateWedge,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("cone does not have a nonempty interior")]
    NotFullDimensional,
    #[error("cone has no normals, so there is no reduction presentation")]
    NoNormals,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
