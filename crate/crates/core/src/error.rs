use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("modulus {0:?} is reducible mod p")]
    ReducibleModulus(Vec<u32>),
    #[error("ring has {size} elements, above the table bound {bound}")]
    RingTooLarge { size: u64, bound: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("level {requested} out of range 1..={max}")]
    LevelOutOfRange { requested: u32, max: u32 },
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("subgroup is not contained in the group")]
    NotASubgroup,
    #[error("no prime = 1 mod {exponent} found below {bound}")]
    NoDixonPrime { exponent: u64, bound: u64 },
    #[error("character table computation failed: {0}")]
    TableFailure(String),
    #[error("value is not a rational number")]
    NotRational,
    #[error("top-layer datum is undefined at level 1")]
    TauUndefined,
    #[error("dimension must be nonzero")]
    ZeroDimension,
    #[error("{0} is not of the form (q-1)q^(i-1)")]
    NotADimension(i64),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
