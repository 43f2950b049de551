use alloc::string::String;

/// Errors raised by the core library.
///
/// Variants fall into three families that callers (the CLI in particular)
/// map onto distinct exit codes: invalid input, size-guard refusals and
/// internal consistency failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported modulus q = {0}: expected an odd prime")]
    UnsupportedModulus(u32),
    #[error("invalid modulus q = {0}: expected an odd integer >= 3")]
    InvalidModulus(u32),
    #[error("symbol {symbol} is out of range for q = {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid multiplier r = {r} for q = {q}")]
    InvalidMultiplier { r: u32, q: u32 },
    #[error("cyclotomic context mismatch: q = {left} vs q = {right}")]
    RingMismatch { left: u32, right: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size guard exceeded: {what} = {size} (limit {limit})")]
    SizeGuard { what: &'static str, size: u128, limit: u128 },
    #[error("generator matrix has rank {rank} < {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
