use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid one-line word `{0}`: {1}")]
    Parse(String, String),

    #[error("simple reflection s{index} does not exist for n = {n}")]
    NoSuchReflection { index: usize, n: usize },

    #[error("{0} and {1} lie in different orbits")]
    DifferentOrbits(String, String),

    #[error("{0} is not below {1}")]
    Incomparable(String, String),

    #[error("{element} does not lie in the orbit of rank {rank}")]
    NotInOrbit { element: String, rank: usize },

    #[error("coefficient of {element} is not an integer polynomial in q: {coefficient}")]
    NonIntegral { element: String, coefficient: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
