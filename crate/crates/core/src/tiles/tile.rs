use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::color::Color;
use super::TileError;

/// Side of a cell in the von Neumann neighbourhood.
///
/// Rows grow downwards: the neighbour in direction `Down` of cell `(x, y)`
/// is `(x, y + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Up,
    Right,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Left,
        Direction::Up,
        Direction::Right,
        Direction::Down,
    ];

    pub fn inverse(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    pub fn offset(self) -> (i64, i64) {
        match self {
            Direction::Left => (-1, 0),
            Direction::Up => (0, -1),
            Direction::Right => (1, 0),
            Direction::Down => (0, 1),
        }
    }
}

/// A Wang tile `⟨left, up, right, bottom⟩`. Tiles are placed by translation only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WangTile {
    #[serde(rename = "l")]
    pub left: Color,
    #[serde(rename = "u")]
    pub up: Color,
    #[serde(rename = "r")]
    pub right: Color,
    #[serde(rename = "b")]
    pub bottom: Color,
}

impl WangTile {
    pub fn new(left: Color, up: Color, right: Color, bottom: Color) -> Self {
        WangTile {
            left,
            up,
            right,
            bottom,
        }
    }

    /// Tile whose four edges are atoms.
    pub fn atoms(l: &str, u: &str, r: &str, b: &str) -> Self {
        WangTile::new(Color::atom(l), Color::atom(u), Color::atom(r), Color::atom(b))
    }

    pub fn edge(&self, dir: Direction) -> &Color {
        match dir {
            Direction::Left => &self.left,
            Direction::Up => &self.up,
            Direction::Right => &self.right,
            Direction::Down => &self.bottom,
        }
    }

    pub fn map_colors(&self, mut f: impl FnMut(&Color) -> Color) -> WangTile {
        WangTile::new(f(&self.left), f(&self.up), f(&self.right), f(&self.bottom))
    }
}

impl fmt::Display for WangTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{},{},{},{}⟩",
            self.left.label(),
            self.up.label(),
            self.right.label(),
            self.bottom.label()
        )
    }
}

/// True iff `b`, placed next to `a` on side `dir` of `a`, meets it on an
/// equal edge colour.
pub fn matches(a: &WangTile, b: &WangTile, dir: Direction) -> bool {
    a.edge(dir) == b.edge(dir.inverse())
}

/// Construction metadata: a kind tag plus free-form parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TileSetMeta {
    pub kind: String,
    #[serde(flatten)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

impl TileSetMeta {
    pub fn new(kind: &str) -> Self {
        TileSetMeta {
            kind: kind.to_string(),
            params: serde_json::Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// An ordered, duplicate-free list of prototiles. A tile's index is its id.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TileSet {
    pub name: String,
    pub meta: TileSetMeta,
    tiles: Vec<WangTile>,
}

impl TileSet {
    pub fn new(
        name: impl Into<String>,
        meta: TileSetMeta,
        tiles: Vec<WangTile>,
    ) -> Result<Self, TileError> {
        let mut seen = HashSet::with_capacity(tiles.len());
        for (i, t) in tiles.iter().enumerate() {
            if !seen.insert(t) {
                return Err(TileError::DuplicateTile { index: i, tile: t.to_string() });
            }
        }
        Ok(TileSet {
            name: name.into(),
            meta,
            tiles,
        })
    }

    /// Builds a set, silently dropping repeated tiles (first occurrence wins).
    pub fn dedup(name: impl Into<String>, meta: TileSetMeta, tiles: Vec<WangTile>) -> Self {
        let mut seen = HashSet::with_capacity(tiles.len());
        let tiles = tiles.into_iter().filter(|t| seen.insert(t.clone())).collect();
        TileSet {
            name: name.into(),
            meta,
            tiles,
        }
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&WangTile> {
        self.tiles.get(index)
    }

    pub fn position(&self, tile: &WangTile) -> Option<usize> {
        self.tiles.iter().position(|t| t == tile)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tileset serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, TileError> {
        serde_json::from_str(text).map_err(|e| TileError::Json(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for TileSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            #[serde(default)]
            meta: TileSetMeta,
            tiles: Vec<WangTile>,
        }
        let raw = Raw::deserialize(deserializer)?;
        TileSet::new(raw.name, raw.meta, raw.tiles).map_err(serde::de::Error::custom)
    }
}
