use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommaError {
    #[error("base must be between 2 and {max}, got {got}", max = crate::numeral::Radix::MAX)]
    InvalidBase { got: u64 },
    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u64, base: u64 },
    #[error("numbers in bases {left} and {right} cannot be compared")]
    BaseMismatch { left: u64, right: u64 },
    #[error("zero has no base-b digits; comma sequences contain only positive terms")]
    Zero,
    #[error("requested term {requested} but the sequence ends at term {length}")]
    BeyondEnd { requested: BigUint, length: BigUint },
    #[error("term indices start at 1")]
    ZeroIndex,
    #[error("base-2 sequences never terminate; supply a term or value ceiling")]
    Unbounded,
    #[error("{value} is not a branch-point in base {base}")]
    NotBranchPoint { value: BigUint, base: u64 },
    #[error("the end node has no outgoing transition")]
    TerminalNode,
    #[error("invalid transition node ({s}, {t})")]
    InvalidNode { s: u8, t: u8 },
    #[error("a sequence needs at least two terms, got {0}")]
    TooShort(usize),
    #[error("term {index} is zero and has no leading digit")]
    ZeroLeading { index: usize },
    #[error("invalid choice character {0:?}; expected '0' or '1'")]
    InvalidChoice(char),
    #[error("the base-2 closed forms start at 1 or 2, got {0}")]
    NotBase2Start(u64),
    #[error("base {base} is not supported here: {reason}")]
    UnsupportedBase { base: u64, reason: &'static str },
}

pub type Result<T, E = CommaError> = std::result::Result<T, E>;
