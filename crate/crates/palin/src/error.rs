use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Values under palindromicity analysis start at 1; zero has no
    /// nonempty expansion with a nonzero leading digit.
    #[error("value must be at least 1")]
    ZeroValue,

    #[error("base must be at least 2, got {0}")]
    BadBase(u64),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("leading digit must be nonzero")]
    LeadingZero,

    #[error("expansion must have at least one digit")]
    EmptyDigits,

    /// All core arithmetic is checked; this is reported instead of wrapping.
    #[error("arithmetic overflow in 64-bit computation")]
    Overflow,

    #[error("length must be at least {min} for this operation, got {got}")]
    LengthTooSmall { min: u32, got: u32 },

    #[error("expansion of {n} in base {base} does not have length 3")]
    NotLength3 { n: u64, base: u64 },

    #[error("mu_ge is infinite for k = 1 (every n is a length-1 palindrome in every base above n)")]
    InfiniteMultiplicity,

    #[error("oracle cap exceeded: N = {n} is above the configured cap {cap}")]
    OracleCap { n: u64, cap: u64 },

    #[error(
        "bitset strategy needs {needed} bytes but the budget is {budget}; \
         use the merge strategy or raise PALIN_MEMORY_BUDGET_BYTES"
    )]
    MemoryBudget { needed: u64, budget: u64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
