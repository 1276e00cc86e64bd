use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A decision depends on p-adic digits that are not known.
    Indeterminate(String),
    /// More digits are needed than the operands carry.
    InsufficientPrecision { needed: i64, available: i64 },
    /// Operands live in different coefficient rings (or over different primes).
    RingMismatch,
    /// An enumeration or search would exceed its configured cap.
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    /// An iteration budget (S-pairs, degree, scan length) ran out.
    BudgetExceeded { what: &'static str, limit: u64 },
    /// Malformed or out-of-range input.
    InvalidInput(String),
    /// A precondition of a lemma could not be certified.
    Hypothesis(String),
    /// The monomial matrix has full rank, so no auxiliary polynomial exists.
    FullRank { rank: usize },
    /// A point of bounded height has no preimage under the parametrization.
    NotCovered(String),
    /// Requested feature is outside what this crate supports.
    Unsupported(String),
}

impl Error {
    /// True for failures caused by caps, budgets or precision rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Indeterminate(_)
                | Error::InsufficientPrecision { .. }
                | Error::CapExceeded { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Indeterminate(what) => write!(f, "indeterminate at precision: {what}"),
            Error::InsufficientPrecision { needed, available } => {
                write!(f, "insufficient precision: need {needed} digits, have {available}")
            }
            Error::RingMismatch => f.write_str("coefficient ring mismatch"),
            Error::CapExceeded { what, needed, cap } => {
                write!(f, "{what}: {needed} exceeds cap {cap}")
            }
            Error::BudgetExceeded { what, limit } => write!(f, "{what} budget of {limit} exhausted"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Hypothesis(msg) => write!(f, "hypothesis not certified: {msg}"),
            Error::FullRank { rank } => {
                write!(f, "monomial matrix has full rank {rank}; no auxiliary polynomial")
            }
            Error::NotCovered(msg) => write!(f, "point not covered by parametrization: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
