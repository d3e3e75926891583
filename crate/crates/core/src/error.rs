use std::fmt;

use crate::lattice::KhalimskyCell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cell {0} is not in the complex")]
    CellNotInComplex(KhalimskyCell),
    #[error("expected a 3-cube, got a cell of dimension {0}")]
    NotTopCell(usize),
    #[error("the complex is empty")]
    EmptyComplex,
    #[error("the complex is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("the subcomplex is not contained in the complex")]
    NotSubcomplex,
    #[error("the subcomplex is not collapsible")]
    NotCollapsible,
    #[error("edge {0} occurs in its own replacement word")]
    SelfSubstitution(u32),
    #[error("invalid reduction pair: {0}")]
    InvalidPair(String),
    #[error("a presentation needs exactly one vertex, found {0}")]
    VertexCount(usize),
    #[error("invalid coset table: {0}")]
    InvalidCosetTable(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("embedding invariant violated: {0}")]
    Embedding(String),
    #[error("lookup table: {0}")]
    LookupTable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse { line, msg: msg.to_string() }
    }
}

/// Diagnostics for malformed grid diagrams.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("malformed grid syntax: {0}")]
    Syntax(String),
    #[error("grid size {0} is below the minimum of 2")]
    TooSmall(usize),
    #[error("column {column}: both marks are on row {row}")]
    MarksCoincide { column: usize, row: u32 },
    #[error("column {column}: row {row} is outside 1..={size}")]
    RowOutOfRange { column: usize, row: u32, size: usize },
    #[error("row {row} is marked {count} times (expected exactly 2)")]
    RowUsage { row: u32, count: usize },
}
