use serde::{Deserialize, Serialize};

use super::tile::{matches, Direction, TileSet};
use super::TileError;

/// Content of one lattice cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// Nothing placed yet.
    Empty,
    /// The wildcard `*`, which meets every edge.
    Wildcard,
    Tile(usize),
}

impl Cell {
    pub fn tile(self) -> Option<usize> {
        match self {
            Cell::Tile(i) => Some(i),
            _ => None,
        }
    }
}

/// A finite rectangular window of the lattice, cells stored row-major.
/// Row `y + 1` lies below row `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub origin: (i64, i64),
    pub width: usize,
    pub height: usize,
    cells: Vec<Cell>,
}

impl Tiling {
    pub fn empty(width: usize, height: usize) -> Self {
        Tiling::filled(width, height, Cell::Empty)
    }

    pub fn filled(width: usize, height: usize, cell: Cell) -> Self {
        Tiling {
            origin: (0, 0),
            width,
            height,
            cells: vec![cell; width * height],
        }
    }

    /// Builds a tiling from rows of tile indices.
    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        Tiling {
            origin: (0, 0),
            width,
            height,
            cells: rows.iter().flatten().map(|&i| Cell::Tile(i)).collect(),
        }
    }

    pub fn with_origin(mut self, x: i64, y: i64) -> Self {
        self.origin = (x, y);
        self
    }

    /// Cell at local coordinates (column `x`, row `y`).
    pub fn get(&self, x: usize, y: usize) -> Cell {
        assert!(x < self.width && y < self.height, "cell ({x},{y}) outside window");
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, cell: Cell) {
        assert!(x < self.width && y < self.height, "cell ({x},{y}) outside window");
        self.cells[y * self.width + x] = cell;
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn row(&self, y: usize) -> &[Cell] {
        &self.cells[y * self.width..(y + 1) * self.width]
    }

    pub fn column(&self, x: usize) -> Vec<Cell> {
        (0..self.height).map(|y| self.get(x, y)).collect()
    }

    /// True iff no cell is empty or wildcard.
    pub fn is_total(&self) -> bool {
        self.cells.iter().all(|c| matches!(c, Cell::Tile(_)))
    }

    /// Repeats the window `nx` times across and `ny` times down.
    pub fn unfold(&self, nx: usize, ny: usize) -> Tiling {
        let mut out = Tiling::empty(self.width * nx, self.height * ny).with_origin(self.origin.0, self.origin.1);
        for y in 0..out.height {
            for x in 0..out.width {
                out.set(x, y, self.get(x % self.width, y % self.height));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tiling serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, TileError> {
        serde_json::from_str(text).map_err(|e| TileError::Json(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawTiling {
    width: usize,
    height: usize,
    origin: [i64; 2],
    cells: Vec<Vec<Option<usize>>>,
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let cells = (0..self.height)
            .map(|y| self.row(y).iter().map(|c| c.tile()).collect())
            .collect();
        RawTiling {
            width: self.width,
            height: self.height,
            origin: [self.origin.0, self.origin.1],
            cells,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawTiling::deserialize(deserializer)?;
        if raw.cells.len() != raw.height || raw.cells.iter().any(|r| r.len() != raw.width) {
            return Err(serde::de::Error::custom("cells do not match width/height"));
        }
        // null is read back as a wildcard; the JSON form does not separate it from "unassigned".
        let cells = raw
            .cells
            .into_iter()
            .flatten()
            .map(|c| c.map_or(Cell::Wildcard, Cell::Tile))
            .collect();
        Ok(Tiling {
            origin: (raw.origin[0], raw.origin[1]),
            width: raw.width,
            height: raw.height,
            cells,
        })
    }
}

/// An internal edge whose two tiles disagree. Coordinates are absolute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cell: (i64, i64),
    pub dir: Direction,
    pub neighbour: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub total: bool,
    pub violations: Vec<Violation>,
}

/// Checks every internal edge between two placed tiles. Wildcards and empty
/// cells meet anything; outward-facing boundary edges are unconstrained.
pub fn is_valid_tiling(ts: &TileSet, t: &Tiling) -> Result<ValidationReport, TileError> {
    is_valid_wrapped(ts, t, false, false)
}

/// Like [`is_valid_tiling`] but additionally checks the edges that wrap from
/// the last column to the first (`wrap_x`) and from the last row to the first
/// (`wrap_y`).
pub fn is_valid_wrapped(
    ts: &TileSet,
    t: &Tiling,
    wrap_x: bool,
    wrap_y: bool,
) -> Result<ValidationReport, TileError> {
    for (i, c) in t.cells.iter().enumerate() {
        if let Cell::Tile(idx) = c {
            if *idx >= ts.len() {
                return Err(TileError::MalformedTiling(format!(
                    "cell {} holds tile {idx} but the set has {} tiles",
                    i,
                    ts.len()
                )));
            }
        }
    }
    let (w, h) = (t.width, t.height);
    let abs = |x: usize, y: usize| (t.origin.0 + x as i64, t.origin.1 + y as i64);
    let mut violations = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let Cell::Tile(a) = t.get(x, y) else { continue };
            let right = if x + 1 < w {
                Some(x + 1)
            } else if wrap_x {
                Some(0)
            } else {
                None
            };
            if let Some(nx) = right {
                if let Cell::Tile(b) = t.get(nx, y) {
                    if !matches(&ts.tiles()[a], &ts.tiles()[b], Direction::Right) {
                        violations.push(Violation {
                            cell: abs(x, y),
                            dir: Direction::Right,
                            neighbour: abs(nx, y),
                        });
                    }
                }
            }
            let down = if y + 1 < h {
                Some(y + 1)
            } else if wrap_y {
                Some(0)
            } else {
                None
            };
            if let Some(ny) = down {
                if let Cell::Tile(b) = t.get(x, ny) {
                    if !matches(&ts.tiles()[a], &ts.tiles()[b], Direction::Down) {
                        violations.push(Violation {
                            cell: abs(x, y),
                            dir: Direction::Down,
                            neighbour: abs(x, ny),
                        });
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        ok: violations.is_empty(),
        total: t.is_total(),
        violations,
    })
}
