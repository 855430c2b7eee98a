use thiserror::Error;

use crate::digits::RadixKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is not supported (expected 2..=255)")]
    InvalidBase(u32),

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u8 },

    #[error("period must contain at least one digit")]
    EmptyPeriod,

    #[error("{value} lies outside the {kind} interval [{lo}, {hi}] for base {base}")]
    OutsideInterval {
        value: String,
        kind: RadixKind,
        base: u8,
        lo: String,
        hi: String,
    },

    #[error("expected a {expected} expansion, got {found}")]
    KindMismatch { expected: RadixKind, found: RadixKind },

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u8, u8),

    #[error("block size mismatch: {0} vs {1}")]
    BlockSizeMismatch(usize, usize),

    #[error("block {block:?} has length {found}, expected {expected}")]
    BlockLength {
        block: Vec<u8>,
        expected: usize,
        found: usize,
    },

    #[error("block {0:?} has no image")]
    MissingBlock(Vec<u8>),

    #[error("block {0:?} is listed twice as a preimage")]
    DuplicatePreimage(Vec<u8>),

    #[error("block {0:?} is the image of more than one block")]
    DuplicateImage(Vec<u8>),

    #[error("permutation table of {0} blocks exceeds the supported size")]
    TableTooLarge(u128),

    #[error("enumerating ({blocks})! permutations exceeds the cap of {cap} blocks")]
    EnumerationCap { blocks: u128, cap: usize },

    #[error("composition {0} is not one of the admissible forms")]
    IllegalComposition(String),

    #[error("prefix of length {len} is not a multiple of the block size {k}")]
    PrefixLength { len: usize, k: usize },

    #[error("expansion has a forbidden tail and is not an interval endpoint: {0}")]
    NonCanonicalInput(String),

    #[error("operation requires {0}")]
    WrongForm(&'static str),

    #[error("{0} has a single representation; the function is continuous there")]
    NotDualPoint(String),

    #[error("digit {0} does not occur in the period of the expansion")]
    DigitNotRecurring(u8),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no witness found up to depth {0}")]
    SearchExhausted(usize),

    #[error("workload of {cells} cells exceeds the budget of {budget}")]
    Budget { cells: u128, budget: u128 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid literal {literal:?}: {message}")]
    Literal { literal: String, message: String },
}
