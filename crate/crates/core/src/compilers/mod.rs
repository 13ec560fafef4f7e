//! Translations from machines and trees to prototile sets, and the decoders
//! that read traces and paths back out of tilings.

pub mod eca_hex;
pub mod eca_wang;
pub mod tm;
pub mod tree;

pub use eca_hex::{compile_eca_hex, decode_eca_hex, is_valid_hex_tiling, tile_eca_hex, HexRole, HexTile, HexTileSet, HexTiling};
pub use eca_wang::{compile_eca_wang, decode_eca_wang, tile_eca_wang, EcaWang, EcaWangLayout};
pub use tm::{compile_tm, compile_tm_with, decode_tm_rows, CompiledTm, TmLayout, TmOptions};
pub use tree::{
    compile_tree, grow_spokes_patch, recover_path, recover_path_from, solve_tree, CompiledTree, TreeKind, TreeRole,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("input symbol {0:?} is not a machine symbol")]
    InputSymbol(String),
    #[error("window of width {width} cannot hold {needed} columns")]
    WindowTooSmall { width: usize, needed: usize },
    #[error("tree is empty")]
    EmptyTree,
    #[error("input must be a non-empty bit string")]
    BadInput,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("cell ({0},{1}) holds no tile")]
    Untiled(usize, usize),
    #[error("row {row} has {count} head markers")]
    HeadCount { row: usize, count: usize },
    #[error("tile {0} does not belong to this construction")]
    ForeignTile(usize),
    #[error("row {0} is malformed")]
    MalformedRow(usize),
    #[error("tiling does not match the compiled layout")]
    LayoutMismatch,
    #[error("no root tile reachable from the start cell")]
    CannotLocateRoot,
}
