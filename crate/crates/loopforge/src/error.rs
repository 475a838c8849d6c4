//! Error type shared by every module of the crate.

use thiserror::Error;

/// Which direction of a Cayley table a Latin-square violation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

/// Every failure the library can report.
///
/// Validation errors carry enough position information to point at the
/// offending row, column, or input line.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A Cayley table whose rows are not all the same length as the row count.
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },

    /// A table entry outside the label range `0..order`.
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    /// A row or column of the table repeats a label.
    #[error("not a Latin square: {axis} {index} repeats label {value}")]
    NotLatin {
        axis: Axis,
        index: usize,
        value: usize,
    },

    /// No label acts as a two-sided identity element.
    #[error("table has no two-sided identity element")]
    NoIdentity,

    /// An element label outside `0..order`.
    #[error("label {label} is out of range for order {order}")]
    LabelOutOfRange { label: usize, order: usize },

    /// An image array that is not a bijection of `0..n`.
    #[error("images do not form a permutation: {reason}")]
    NotPermutation { reason: String },

    /// Two permutations (or a permutation and a table) of different degrees
    /// were combined.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A product of an empty sequence of permutations, which has no degree.
    #[error("cannot multiply an empty sequence of permutations")]
    EmptyProduct,

    /// Two loops of different orders were combined.
    #[error("loop orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// A closure computation grew past its element budget.
    #[error("group closure exceeded its budget of {budget} elements")]
    ClosureBudgetExceeded { budget: usize },

    /// A whole-loop computation was requested above the configured cap.
    #[error("order {order} exceeds the supported cap of {cap} for {operation}")]
    OrderCapExceeded {
        order: usize,
        cap: usize,
        operation: &'static str,
    },

    /// An inner mapping was requested with the wrong number of point labels.
    #[error("inner mapping kind `{kind}` takes {expected} labels, got {got}")]
    WrongArity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    /// A theorem over a pair of distinct loops was given two equal tables.
    #[error("the two tables are equal; this analysis requires distinct loops")]
    TablesEqual,

    /// A theorem instance is missing a required ingredient.
    #[error("theorem instance is missing required input `{field}`")]
    MissingInput { field: &'static str },

    /// A known-fact suite was requested for a loop outside its family.
    #[error("loop is outside the `{family}` family required by this fact suite")]
    OutsideFamily { family: &'static str },

    /// A text input (table, permutation, query) failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A search query that can never match anything as written.
    #[error("invalid query: {message}")]
    InvalidQuery { message: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
