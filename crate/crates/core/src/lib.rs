//! Library for mosaic diagrams of immersed surface-links built from singular
//! marked graph tiles.
//!
//! The crate provides the tile alphabet, mosaic boards with suitable
//! connectivity, a data-driven local move engine, resolutions and planar
//! diagram extraction, budget-bounded link analysis, and a census/bounds
//! machinery for mosaic numbers.

pub mod analysis;
pub mod census;
pub mod equiv;
pub mod io;
pub mod mosaic;
pub mod moves;
pub mod resolution;
pub mod tile;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("no interior")]
    NoInterior,
    #[error("empty diagram")]
    EmptyDiagram,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("move table error in rule {rule:?} at cell ({row},{col}): {msg}")]
    MoveTable { rule: String, row: usize, col: usize, msg: String },
    #[error("unknown move rule {0:?}")]
    UnknownRule(String),
    #[error("pattern mismatch")]
    PatternMismatch,
    #[error("board cap {cap} smaller than input of size {size}")]
    BoardCapTooSmall { cap: usize, size: usize },
    #[error("{0} undefined without admissibility")]
    RequiresAdmissible(&'static str),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use mosaic::Mosaic;
pub use tile::{Edge, EdgeSet, Sign, Symmetry, TileKind};
