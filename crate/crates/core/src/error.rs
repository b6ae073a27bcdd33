use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for free group of rank {rank}")]
    GeneratorOutOfRange { index: i64, rank: usize },

    #[error("ambient rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("modulus mismatch: Z/{left} vs Z/{right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("subgroup is not free (it meets the torsion factor in a subgroup of order {defect_order})")]
    NotFree { defect_order: u64 },

    #[error("subgroup is trivial")]
    TrivialSubgroup,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("vertex or edge is not in the ball")]
    OutsideBall,

    #[error("certification depth {depth} exceeds ball radius {radius}")]
    DepthExceedsRadius { depth: usize, radius: usize },
}
