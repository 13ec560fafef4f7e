//! Prototiles, tilings and the edge-meet rule.

mod builtin;
mod color;
mod tile;
mod tiling;
mod union;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use color::{Color, ColorParseError};
pub use tile::{matches, Direction, TileSet, TileSetMeta, WangTile};
pub use tiling::{is_valid_tiling, is_valid_wrapped, Cell, Tiling, ValidationReport, Violation};
pub use union::disjoint_union;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("duplicate tile {tile} at index {index}")]
    DuplicateTile { index: usize, tile: String },
    #[error("unknown builtin tileset {name:?}; valid names: {valid}")]
    UnknownBuiltin { name: String, valid: String },
    #[error("malformed tiling: {0}")]
    MalformedTiling(String),
    #[error("invalid json: {0}")]
    Json(String),
}
