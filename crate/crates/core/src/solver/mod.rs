//! Finite tiling search: rectangles with pins and wildcards, tori, bounded
//! period search and a brute-force enumerator used as a test oracle.

mod engine;
mod oracle;
mod period;

pub use oracle::enumerate_tilings;
pub use period::{find_period, solve_torus, PeriodResult, TorusTiling};

use thiserror::Error;

use crate::tiles::{Tiling, TileSet};
use engine::{Grid, Init, Model, Search};

/// Environment variable that caps the number of search workers.
pub const THREADS_ENV: &str = "WANGFORGE_THREADS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("region must have positive width and height")]
    EmptyRegion,
    #[error("two pins on cell ({0},{1})")]
    PinConflict(usize, usize),
    #[error("pin at ({0},{1}) lies outside the region")]
    PinOutside(usize, usize),
    #[error("pin names tile {0}, but the set has {1} tiles")]
    BadTileIndex(usize, usize),
    #[error("tie-break order is not a permutation of the tile indices")]
    BadTieBreak,
    #[error("the pinned first row cannot be tiled")]
    InconsistentPins,
    #[error("pins must lie in row 0")]
    PinNotInFirstRow,
    #[error("oracle limited to w*h <= 12 and at most 8 tiles (got {cells} cells, {tiles} tiles)")]
    OracleTooLarge { cells: usize, tiles: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PinValue {
    Tile(usize),
    Wildcard,
}

/// Fixes the content of cell `(x, y)`, in coordinates local to the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pin {
    pub x: usize,
    pub y: usize,
    pub value: PinValue,
}

impl Pin {
    pub fn tile(x: usize, y: usize, index: usize) -> Self {
        Pin { x, y, value: PinValue::Tile(index) }
    }

    pub fn wildcard(x: usize, y: usize) -> Self {
        Pin { x, y, value: PinValue::Wildcard }
    }
}

/// Order in which candidate tiles are tried.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    Ascending,
    /// Explicit ranking: earlier entries are tried first.
    Order(Vec<usize>),
}

/// A rectangle (optionally wrapping) to be tiled.
///
/// Wildcard pins are always honoured. Free cells take the wildcard only when
/// `wildcard_allowed`, and at most `wildcard_budget` of them do so.
#[derive(Clone, Debug)]
pub struct SolveRequest<'a> {
    pub tileset: &'a TileSet,
    pub width: usize,
    pub height: usize,
    pub pins: Vec<Pin>,
    pub wildcard_allowed: bool,
    pub wildcard_budget: Option<usize>,
    pub tie_break: TieBreak,
    pub wrap_x: bool,
    pub wrap_y: bool,
    /// Worker count; `None` reads [`THREADS_ENV`] and defaults to 1.
    pub threads: Option<usize>,
}

impl<'a> SolveRequest<'a> {
    pub fn new(tileset: &'a TileSet, width: usize, height: usize) -> Self {
        SolveRequest {
            tileset,
            width,
            height,
            pins: Vec::new(),
            wildcard_allowed: false,
            wildcard_budget: None,
            tie_break: TieBreak::Ascending,
            wrap_x: false,
            wrap_y: false,
            threads: None,
        }
    }

    pub fn pin(mut self, x: usize, y: usize, index: usize) -> Self {
        self.pins.push(Pin::tile(x, y, index));
        self
    }

    pub fn pins(mut self, pins: impl IntoIterator<Item = Pin>) -> Self {
        self.pins.extend(pins);
        self
    }

    pub fn wildcards(mut self, budget: Option<usize>) -> Self {
        self.wildcard_allowed = true;
        self.wildcard_budget = budget;
        self
    }

    pub fn tie_break(mut self, tb: TieBreak) -> Self {
        self.tie_break = tb;
        self
    }

    pub fn wrap(mut self, x: bool, y: bool) -> Self {
        self.wrap_x = x;
        self.wrap_y = y;
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.threads = Some(n.max(1));
        self
    }
}

fn env_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Lexicographically first tiling of the request's rectangle, if any.
///
/// Cells are compared in row-major order, tiles by tie-break rank, with the
/// wildcard after every tile. Only internal edges (and wrapped edges, when
/// requested) are constrained.
pub fn solve_rect(req: &SolveRequest) -> Result<Option<Tiling>, SolveError> {
    let (w, h) = (req.width, req.height);
    if w == 0 || h == 0 {
        return Err(SolveError::EmptyRegion);
    }
    let n = req.tileset.len();
    let order = match &req.tie_break {
        TieBreak::Ascending => (0..n).collect::<Vec<_>>(),
        TieBreak::Order(o) => {
            let mut seen = vec![false; n];
            if o.len() != n || o.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(SolveError::BadTieBreak);
            }
            o.clone()
        }
    };
    let mut rank = vec![0; n];
    for (r, &t) in order.iter().enumerate() {
        rank[t] = r;
    }
    let mut init = vec![Init::Free; w * h];
    let mut pinned = vec![false; w * h];
    for p in &req.pins {
        if p.x >= w || p.y >= h {
            return Err(SolveError::PinOutside(p.x, p.y));
        }
        let c = p.y * w + p.x;
        if std::mem::replace(&mut pinned[c], true) {
            return Err(SolveError::PinConflict(p.x, p.y));
        }
        init[c] = match p.value {
            PinValue::Tile(t) if t >= n => return Err(SolveError::BadTileIndex(t, n)),
            PinValue::Tile(t) => Init::Pinned(rank[t]),
            PinValue::Wildcard => Init::PinnedWildcard,
        };
    }
    let model = Model::new(req.tileset, order);
    let grid = Grid::new(w, h, req.wrap_x, req.wrap_y);
    let budget = if req.wildcard_allowed { req.wildcard_budget } else { None };
    let mut search = Search::new(&model, &grid, budget);
    let threads = req.threads.unwrap_or_else(env_threads);
    let Some(raw) = search.run(&init, req.wildcard_allowed, threads) else {
        return Ok(None);
    };
    let mut t = Tiling::empty(w, h);
    for (i, cell) in engine::to_cells(&model, raw).into_iter().enumerate() {
        t.set(i % w, i / w, cell);
    }
    Ok(Some(t))
}

/// True iff the `n`×`n` square can be tiled without pins or wildcards.
pub fn block_tileable(ts: &TileSet, n: usize) -> bool {
    assert!(n >= 1, "block size must be positive");
    matches!(solve_rect(&SolveRequest::new(ts, n, n)), Ok(Some(_)))
}

/// Largest `h <= cap` for which the `width`×`h` rectangle with the given
/// row-0 pins tiles. Returns `cap` when no blockage is seen.
///
/// Tileability is monotone in height (drop the last row), so this bisects.
pub fn max_tileable_height(
    ts: &TileSet,
    width: usize,
    first_row_pins: &[Pin],
    cap: usize,
) -> Result<usize, SolveError> {
    assert!(cap >= 1, "cap must be positive");
    if first_row_pins.iter().any(|p| p.y != 0) {
        return Err(SolveError::PinNotInFirstRow);
    }
    let tiles = |h: usize| -> Result<bool, SolveError> {
        let req = SolveRequest::new(ts, width, h).pins(first_row_pins.iter().copied());
        Ok(solve_rect(&req)?.is_some())
    };
    if !tiles(1)? {
        return Err(SolveError::InconsistentPins);
    }
    let (mut lo, mut hi) = (1, cap);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if tiles(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::{builtin, is_valid_tiling, Cell, TileSetMeta, WangTile};

    fn set(tiles: &[[&str; 4]]) -> TileSet {
        TileSet::new(
            "t",
            TileSetMeta::new("test"),
            tiles.iter().map(|[l, u, r, b]| WangTile::atoms(l, u, r, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn uniform_tile_fills_square() {
        let ts = set(&[["0", "0", "0", "0"]]);
        let t = solve_rect(&SolveRequest::new(&ts, 3, 3)).unwrap().unwrap();
        assert!(t.cells().iter().all(|c| *c == Cell::Tile(0)));
    }

    #[test]
    fn tile_that_cannot_sit_beside_itself() {
        let ts = set(&[["0", "0", "1", "0"]]);
        assert_eq!(solve_rect(&SolveRequest::new(&ts, 2, 1)).unwrap(), None);
        assert!(!block_tileable(&ts, 2));
        assert!(block_tileable(&set(&[["0", "0", "0", "0"]]), 5));
    }

    #[test]
    fn pin_conflict_is_rejected() {
        let ts = set(&[["0", "0", "0", "0"]]);
        let req = SolveRequest::new(&ts, 2, 2).pin(0, 0, 0).pin(0, 0, 0);
        assert_eq!(solve_rect(&req), Err(SolveError::PinConflict(0, 0)));
        let req = SolveRequest::new(&ts, 2, 2).pin(2, 0, 0);
        assert_eq!(solve_rect(&req), Err(SolveError::PinOutside(2, 0)));
    }

    #[test]
    fn jeandel_rao_six_by_six() {
        let ts = builtin("jeandel-rao11").unwrap();
        let t = solve_rect(&SolveRequest::new(&ts, 6, 6)).unwrap().unwrap();
        let r = is_valid_tiling(&ts, &t).unwrap();
        assert!(r.ok && r.total);
    }

    #[test]
    fn culik_six_block() {
        assert!(block_tileable(&builtin("culik13").unwrap(), 6));
    }

    #[test]
    fn wildcard_fills_gap_only_when_allowed() {
        // 0 and 1 cannot meet horizontally; pins force them two apart.
        let ts = set(&[["a", "x", "a", "x"], ["b", "x", "b", "x"]]);
        let req = SolveRequest::new(&ts, 3, 1).pin(0, 0, 0).pin(2, 0, 1);
        assert_eq!(solve_rect(&req).unwrap(), None);
        let t = solve_rect(&req.clone().wildcards(Some(1))).unwrap().unwrap();
        assert_eq!(t.row(0), &[Cell::Tile(0), Cell::Wildcard, Cell::Tile(1)]);
        let t = solve_rect(&req.wildcards(Some(0))).unwrap();
        assert_eq!(t, None);
    }

    #[test]
    fn wildcard_comes_after_tiles() {
        let ts = set(&[["a", "x", "a", "x"]]);
        let t = solve_rect(&SolveRequest::new(&ts, 2, 2).wildcards(None)).unwrap().unwrap();
        assert!(t.is_total());
    }

    #[test]
    fn pinned_wildcard_does_not_use_budget() {
        let ts = set(&[["a", "x", "a", "x"]]);
        let req = SolveRequest::new(&ts, 3, 1)
            .pins([Pin::wildcard(1, 0)])
            .wildcards(Some(0));
        let t = solve_rect(&req).unwrap().unwrap();
        assert_eq!(t.row(0), &[Cell::Tile(0), Cell::Wildcard, Cell::Tile(0)]);
    }

    #[test]
    fn tie_break_changes_first_solution() {
        let ts = set(&[["a", "a", "a", "a"], ["b", "b", "b", "b"]]);
        let asc = solve_rect(&SolveRequest::new(&ts, 2, 2)).unwrap().unwrap();
        assert_eq!(asc.get(0, 0), Cell::Tile(0));
        let rev = solve_rect(&SolveRequest::new(&ts, 2, 2).tie_break(TieBreak::Order(vec![1, 0])))
            .unwrap()
            .unwrap();
        assert!(rev.cells().iter().all(|c| *c == Cell::Tile(1)));
        let bad = SolveRequest::new(&ts, 2, 2).tie_break(TieBreak::Order(vec![0, 0]));
        assert_eq!(solve_rect(&bad), Err(SolveError::BadTieBreak));
    }

    #[test]
    fn worker_count_does_not_change_answer() {
        let ts = builtin("culik13").unwrap();
        let one = solve_rect(&SolveRequest::new(&ts, 5, 5).threads(1)).unwrap();
        let four = solve_rect(&SolveRequest::new(&ts, 5, 5).threads(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn max_height_of_uniform_set_is_cap() {
        let ts = set(&[["0", "0", "0", "0"]]);
        let pins = [Pin::tile(0, 0, 0), Pin::tile(2, 0, 0)];
        assert_eq!(max_tileable_height(&ts, 3, &pins, 9), Ok(9));
    }

    #[test]
    fn max_height_detects_bad_first_row() {
        let ts = set(&[["0", "0", "1", "0"]]);
        let pins = [Pin::tile(0, 0, 0), Pin::tile(1, 0, 0)];
        assert_eq!(max_tileable_height(&ts, 2, &pins, 4), Err(SolveError::InconsistentPins));
        let pins = [Pin::tile(0, 1, 0)];
        assert_eq!(max_tileable_height(&ts, 2, &pins, 4), Err(SolveError::PinNotInFirstRow));
    }

    #[test]
    fn max_height_finds_blocking_row() {
        // A column that counts down 3, 2, 1 and then cannot continue.
        let ts = set(&[["x", "s", "x", "3"], ["x", "3", "x", "2"], ["x", "2", "x", "1"], ["x", "1", "x", "end"]]);
        let pins = [Pin::tile(0, 0, 0)];
        assert_eq!(max_tileable_height(&ts, 1, &pins, 10), Ok(4));
    }
}
