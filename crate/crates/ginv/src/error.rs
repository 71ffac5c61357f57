use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Group closure grew past the configured element cap.
    #[error("group closure exceeded the element cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    /// The element store would be too large even though the order cap holds
    /// (very large degree times a large order).
    #[error("element storage of degree {degree} x order >= {order} exceeds {cap} cells")]
    StorageTooLarge {
        cap: usize,
        degree: usize,
        order: usize,
    },

    #[error("invalid permutation: {0}")]
    BadPermutation(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The backtracking search ran out of its node budget. This is reported
    /// as its own state so that "no automorphism exists" always comes with an
    /// exhaustion certificate and is never conflated with "gave up".
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error(
        "group of order {order} has no presentation and exceeds the \
         relation-free automorphism search cap of {cap}"
    )]
    SearchUnsupported { order: usize, cap: usize },

    #[error("no prime p = 1 (mod {exponent}) with p > {lower} found below {bound}")]
    PrimeSearchFailed { exponent: u64, lower: u64, bound: u64 },

    #[error("group order {order} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("the given elements do not commute")]
    NonCommuting,

    /// A computation produced data violating an invariant that should hold
    /// unconditionally (e.g. a simple-object character matched no simple or
    /// several). Signals a bug, never user error.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
