use thiserror::Error;

/// Failures surfaced by the library. Budget exhaustion is kept distinct from
/// refutations so callers never confuse "could not decide" with "false".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {0} is not vexillary")]
    NotVexillary(String),
    #[error("box ({row},{col}) is not accessible for {perm}")]
    NotAccessible { perm: String, row: usize, col: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("face enumeration refused: word length {len} exceeds cap {cap}")]
    FaceCap { len: usize, cap: usize },
    #[error("not in the image of omega: {0}")]
    NotInImage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(what()))
    }
}
