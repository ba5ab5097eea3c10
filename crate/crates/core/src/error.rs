use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("poset has no unique minimum element")]
    NoUniqueMinimum,
    #[error("poset has {size} elements, at most {max} are supported")]
    TooLarge { size: usize, max: usize },

    #[error("`{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not distributive at `{0}`, `{1}`, `{2}`")]
    NotDistributive(String, String, String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("ring is Gorenstein, the cokernel is zero")]
    GorensteinNoCokernel,
    #[error("sequence violates condition N: {0}")]
    InvalidSequence(String),
    #[error("map is not a minimal strictly order-reversing map")]
    NotMinimal,

    #[error("ladder dimensions {m}x{n} are invalid (need 2 <= m <= n)")]
    InvalidDimensions { m: usize, n: usize },
    #[error("{side} corner ({row},{col}) lies outside the allowed range")]
    CornerOutOfRange { side: &'static str, row: usize, col: usize },
    #[error("{side} corner ({row},{col}) is redundant")]
    RedundantCorner { side: &'static str, row: usize, col: usize },
    #[error("upper corner ({0},{1}) and lower corner ({2},{3}) cut the ladder apart")]
    CrossingCorners(usize, usize, usize, usize),
    #[error("indeterminate ({row},{col}) lies in no 2-minor of the ladder")]
    IsolatedIndeterminate { row: usize, col: usize },
    #[error("ladder has {cells} cells but the poset has {ideals} non-empty ideals")]
    CorrespondenceMismatch { cells: usize, ideals: usize },

    #[error("size bound {0} is out of range")]
    SizeTooLarge(String),
    #[error("shape criterion and homological oracle disagree: {0}")]
    OracleDisagreement(String),
}
