use alloc::string::String;

/// Errors raised by constructors and operations in this crate.
///
/// Verification failures are never errors: they are entries in a
/// [`Report`](crate::report::Report).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("group order {order} out of range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("cayley table is not square")]
    NotSquare,
    #[error("cayley table entry {value} at ({row},{col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("index 0 is not a two-sided identity")]
    NoIdentity,
    #[error("cayley table is not a latin square (row or column {0})")]
    NotLatinSquare(usize),
    #[error("not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group is not abelian")]
    NonAbelian,
    #[error("mask {0:#x} is not a subgroup")]
    NotSubgroup(u64),
    #[error("invalid group morphism: {0}")]
    InvalidMorphism(String),
    #[error("|G| = {order} exceeds the subset-enumeration cap {cap} (raise it with --cap)")]
    CapExceeded { order: usize, cap: usize },
    #[error("subset {0:#x} does not contain the identity")]
    MissingIdentity(u64),
    #[error("arrow ({g}, {mask:#x}) is not in the groupoid")]
    InvalidArrow { g: usize, mask: u64 },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element is not supported on the block of {0:#x}")]
    NotInBlock(u64),
    #[error("matrix entry uses element {0} outside the isotropy subgroup")]
    EntryOutsideIsotropy(usize),
    #[error("matrix size {got} does not match block size {expected}")]
    MatrixSize { expected: usize, got: usize },
    #[error("character table construction failed: {0}")]
    CharacterTable(String),
    #[error("multiplicity {0} is not integral")]
    NonIntegralMultiplicity(f64),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("dimension tables differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("label ({mask:#x}, {alpha}) is not canonical")]
    NonCanonicalLabel { mask: u64, alpha: usize },
    #[error("no subgroup-adapted basis exists for this decomposition")]
    NotAdapted,
}

pub type Result<T> = core::result::Result<T, Error>;
