use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("involution matrix does not square to the identity")]
    InvolutionNotInvolutive,
    #[error("involution does not preserve the monoid: image of generator {index} escapes")]
    InvolutionNotPreserved { index: usize },
    #[error("map does not send generators into the target monoid (generator {index})")]
    NotAHomomorphism { index: usize },
    #[error("map is not equivariant for the involutions (generator {index})")]
    NotEquivariant { index: usize },
    #[error("pushout lattice has torsion; the integral pushout is not realizable over these carriers")]
    TorsionPushout,
    #[error("operation requires a monoid with all generators invertible")]
    NotAGroup,
    #[error("rank {rank} exceeds the cap {cap} for this enumeration")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("value does not fit in i64 during {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
