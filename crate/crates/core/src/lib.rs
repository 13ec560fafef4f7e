//! Wang tiles, a constraint solver for finite tiling problems, and compilers
//! from Turing machines, finite trees and elementary cellular automata to
//! prototile sets.

pub mod compilers;
pub mod machines;
pub mod render;
pub mod solver;
pub mod tiles;
pub mod trees;

pub use tiles::{
    builtin, disjoint_union, is_valid_tiling, matches, Cell, Color, Direction, TileError, TileSet,
    TileSetMeta, Tiling, ValidationReport, WangTile,
};
