use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank must be positive")]
    ZeroRank,

    #[error("modulus d = 1 is not allowed")]
    UnitModulus,

    #[error("word {0} does not lie in the kernel of the homomorphism")]
    NotInKernel(String),

    #[error("word {0} does not lie in the subgroup handled by this Schreier system")]
    NotInSubgroup(String),

    #[error("malformed group table: {0}")]
    MalformedTable(String),

    #[error("element 0 is not the identity")]
    IdentityNotFirst,

    #[error("table is not a Latin square (row or column {0} repeats an entry)")]
    NotLatinSquare(usize),

    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("the relator must not be the identity")]
    IdentityRelator,

    #[error("prime {0} is not supported (expected 2 or 3)")]
    UnsupportedPrime(u64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
