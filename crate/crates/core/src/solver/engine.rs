//! Arc-consistent backtracking search over per-cell tile bitsets.
//!
//! Cells are decided in row-major order and values tried in ascending
//! internal index, wildcard last. Arc consistency only removes values that
//! occur in no solution, so the first leaf reached is the lexicographically
//! first solution. Undo is trail based.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::tiles::{Cell, Color, Direction, TileSet};

const DIRS: [Direction; 4] = Direction::ALL;

fn dir_index(d: Direction) -> usize {
    match d {
        Direction::Left => 0,
        Direction::Up => 1,
        Direction::Right => 2,
        Direction::Down => 3,
    }
}

/// Tile data relabelled by search rank and compiled to colour ids.
pub(crate) struct Model {
    n: usize,
    nw: usize,
    ncolors: usize,
    /// `edge[d][t]`: colour id on side `d` of internal tile `t`.
    edge: [Vec<u32>; 4],
    /// `by_edge[d][c]`: bitset of internal tiles whose side `d` has colour `c`.
    by_edge: [Vec<Vec<u64>>; 4],
    /// internal index -> external tile index
    pub(crate) order: Vec<usize>,
}

impl Model {
    pub(crate) fn new(ts: &TileSet, order: Vec<usize>) -> Self {
        let n = order.len();
        let nw = n.div_ceil(64).max(1);
        let mut ids: HashMap<&Color, u32> = HashMap::new();
        let mut edge: [Vec<u32>; 4] = Default::default();
        for &ext in &order {
            let tile = &ts.tiles()[ext];
            for d in DIRS {
                let next = ids.len() as u32;
                let id = *ids.entry(tile.edge(d)).or_insert(next);
                edge[dir_index(d)].push(id);
            }
        }
        let ncolors = ids.len();
        let by_edge = std::array::from_fn(|d| {
            let mut sets = vec![vec![0u64; nw]; ncolors];
            for (t, &c) in edge[d].iter().enumerate() {
                sets[c as usize][t / 64] |= 1 << (t % 64);
            }
            sets
        });
        Model {
            n,
            nw,
            ncolors,
            edge,
            by_edge,
            order,
        }
    }
}

/// Cell graph: up to four neighbours per cell, `None` at a free boundary.
pub(crate) struct Grid {
    pub(crate) width: usize,
    pub(crate) height: usize,
    nbr: Vec<[Option<u32>; 4]>,
}

impl Grid {
    pub(crate) fn new(width: usize, height: usize, wrap_x: bool, wrap_y: bool) -> Self {
        let mut nbr = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                let mut n = [None; 4];
                for d in DIRS {
                    let (dx, dy) = d.offset();
                    let (mut nx, mut ny) = (x as i64 + dx, y as i64 + dy);
                    if wrap_x {
                        nx = nx.rem_euclid(width as i64);
                    }
                    if wrap_y {
                        ny = ny.rem_euclid(height as i64);
                    }
                    if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
                        n[dir_index(d)] = Some((ny as usize * width + nx as usize) as u32);
                    }
                }
                nbr.push(n);
            }
        }
        Grid { width, height, nbr }
    }

    fn len(&self) -> usize {
        self.width * self.height
    }
}

/// Initial domain of one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Init {
    Free,
    Pinned(usize),
    PinnedWildcard,
}

#[derive(Clone)]
struct State {
    dom: Vec<u64>,
    wild: Vec<bool>,
    trail: Vec<Undo>,
}

#[derive(Clone, Copy)]
enum Undo {
    Word(u32, u32, u64),
    Wild(u32),
}

pub(crate) struct Search<'a> {
    model: &'a Model,
    grid: &'a Grid,
    pinned: Vec<bool>,
    budget: Option<usize>,
}

struct Scratch {
    stamp: Vec<u32>,
    gen: u32,
    queue: Vec<u32>,
    queued: Vec<bool>,
    mask: Vec<u64>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(model: &'a Model, grid: &'a Grid, budget: Option<usize>) -> Self {
        Search {
            model,
            grid,
            pinned: vec![false; grid.len()],
            budget,
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            stamp: vec![0; self.model.ncolors],
            gen: 0,
            queue: Vec::new(),
            queued: vec![false; self.grid.len()],
            mask: vec![0; self.model.nw],
        }
    }

    /// Runs the search. `init` gives each cell's starting domain, `wildcards`
    /// whether free cells may take the wildcard. Returns internal tile ids
    /// (`None` for a wildcard) per cell.
    pub(crate) fn run(
        &mut self,
        init: &[Init],
        wildcards: bool,
        threads: usize,
    ) -> Option<Vec<Option<usize>>> {
        let m = self.model;
        let nw = m.nw;
        let cells = self.grid.len();
        let mut st = State {
            dom: vec![0; cells * nw],
            wild: vec![false; cells],
            trail: Vec::new(),
        };
        let mut full = vec![0u64; nw];
        for t in 0..m.n {
            full[t / 64] |= 1 << (t % 64);
        }
        for (c, how) in init.iter().enumerate() {
            match *how {
                Init::Free => {
                    st.dom[c * nw..(c + 1) * nw].copy_from_slice(&full);
                    st.wild[c] = wildcards;
                }
                Init::Pinned(t) => st.dom[c * nw + t / 64] |= 1 << (t % 64),
                Init::PinnedWildcard => {
                    st.wild[c] = true;
                    self.pinned[c] = true;
                }
            }
            // A cell that is its own neighbour constrains itself.
            for d in DIRS {
                if self.grid.nbr[c][dir_index(d)] == Some(c as u32) {
                    let di = dir_index(d);
                    let oi = dir_index(d.inverse());
                    for t in 0..m.n {
                        if m.edge[di][t] != m.edge[oi][t] {
                            st.dom[c * nw + t / 64] &= !(1 << (t % 64));
                        }
                    }
                }
            }
        }
        if (0..cells).any(|c| !st.wild[c] && st.dom[c * nw..(c + 1) * nw].iter().all(|w| *w == 0)) {
            return None;
        }
        let mut sc = self.scratch();
        let all: Vec<u32> = (0..cells as u32).collect();
        if !self.propagate(&mut st, &mut sc, &all) {
            return None;
        }
        st.trail.clear();
        let Some(first) = self.next_open(&st, 0) else {
            return Some(self.extract(&st));
        };
        let values = self.values(&st, first);
        if threads <= 1 || values.len() < 2 {
            return if self.dfs(&mut st, &mut sc, first) {
                Some(self.extract(&st))
            } else {
                None
            };
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let this = &*self;
        pool.install(|| {
            values.par_iter().find_map_first(|&v| {
                let mut st = st.clone();
                let mut sc = this.scratch();
                if this.assign(&mut st, &mut sc, first, v) && this.dfs(&mut st, &mut sc, first + 1) {
                    Some(this.extract(&st))
                } else {
                    None
                }
            })
        })
    }

    fn extract(&self, st: &State) -> Vec<Option<usize>> {
        let nw = self.model.nw;
        (0..self.grid.len())
            .map(|c| {
                let words = &st.dom[c * nw..(c + 1) * nw];
                words
                    .iter()
                    .enumerate()
                    .find(|(_, w)| **w != 0)
                    .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
            })
            .collect()
    }

    fn size(&self, st: &State, c: usize) -> u32 {
        let nw = self.model.nw;
        st.dom[c * nw..(c + 1) * nw]
            .iter()
            .map(|w| w.count_ones())
            .sum::<u32>()
            + st.wild[c] as u32
    }

    fn next_open(&self, st: &State, from: usize) -> Option<usize> {
        (from..self.grid.len()).find(|&c| self.size(st, c) > 1)
    }

    /// Candidate values of a cell in search order; `usize::MAX` is the wildcard.
    fn values(&self, st: &State, c: usize) -> Vec<usize> {
        let nw = self.model.nw;
        let mut out = Vec::new();
        for (i, &w) in st.dom[c * nw..(c + 1) * nw].iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        if st.wild[c] {
            out.push(usize::MAX);
        }
        out
    }

    fn dfs(&self, st: &mut State, sc: &mut Scratch, from: usize) -> bool {
        let Some(c) = self.next_open(st, from) else {
            return true;
        };
        for v in self.values(st, c) {
            let mark = st.trail.len();
            if self.assign(st, sc, c, v) && self.dfs(st, sc, c + 1) {
                return true;
            }
            self.undo(st, mark);
        }
        false
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            match st.trail.pop().unwrap() {
                Undo::Word(c, w, old) => st.dom[c as usize * self.model.nw + w as usize] = old,
                Undo::Wild(c) => st.wild[c as usize] = true,
            }
        }
    }

    fn set_word(st: &mut State, nw: usize, c: usize, w: usize, value: u64) {
        let slot = &mut st.dom[c * nw + w];
        if *slot != value {
            st.trail.push(Undo::Word(c as u32, w as u32, *slot));
            *slot = value;
        }
    }

    fn clear_wild(st: &mut State, c: usize) {
        if st.wild[c] {
            st.wild[c] = false;
            st.trail.push(Undo::Wild(c as u32));
        }
    }

    fn assign(&self, st: &mut State, sc: &mut Scratch, c: usize, v: usize) -> bool {
        let nw = self.model.nw;
        for w in 0..nw {
            let value = if v != usize::MAX && v / 64 == w { 1u64 << (v % 64) } else { 0 };
            Self::set_word(st, nw, c, w, value);
        }
        if v != usize::MAX {
            Self::clear_wild(st, c);
        }
        self.propagate(st, sc, &[c as u32])
    }

    /// Restores arc consistency starting from the `changed` cells, then
    /// enforces the wildcard budget. Returns false on a wipe-out.
    fn propagate(&self, st: &mut State, sc: &mut Scratch, changed: &[u32]) -> bool {
        for &c in changed {
            if !sc.queued[c as usize] {
                sc.queued[c as usize] = true;
                sc.queue.push(c);
            }
        }
        loop {
            if !self.ac(st, sc) {
                return false;
            }
            match self.enforce_budget(st, sc) {
                None => return false,
                Some(false) => return true,
                Some(true) => {}
            }
        }
    }

    fn ac(&self, st: &mut State, sc: &mut Scratch) -> bool {
        let m = self.model;
        let nw = m.nw;
        let mut ok = true;
        while let Some(y) = sc.queue.pop() {
            let y = y as usize;
            sc.queued[y] = false;
            if !ok {
                continue;
            }
            if st.wild[y] {
                // A possible wildcard supports every neighbour value.
                continue;
            }
            for d in DIRS {
                let Some(x) = self.grid.nbr[y][dir_index(d)] else { continue };
                let x = x as usize;
                if x == y {
                    continue;
                }
                // x sees y on side d.inverse()
                let side = dir_index(d.inverse());
                let facing = dir_index(d);
                sc.gen = sc.gen.wrapping_add(1);
                if sc.gen == 0 {
                    sc.stamp.fill(0);
                    sc.gen = 1;
                }
                sc.mask.fill(0);
                for w in 0..nw {
                    let mut bits = st.dom[y * nw + w];
                    while bits != 0 {
                        let u = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let col = m.edge[facing][u] as usize;
                        if sc.stamp[col] != sc.gen {
                            sc.stamp[col] = sc.gen;
                            for (k, b) in m.by_edge[side][col].iter().enumerate() {
                                sc.mask[k] |= b;
                            }
                        }
                    }
                }
                let mut changed = false;
                let mut empty = true;
                for w in 0..nw {
                    let old = st.dom[x * nw + w];
                    let new = old & sc.mask[w];
                    if new != old {
                        Self::set_word(st, nw, x, w, new);
                        changed = true;
                    }
                    empty &= new == 0;
                }
                if empty && !st.wild[x] {
                    ok = false;
                    break;
                }
                if changed && !sc.queued[x] {
                    sc.queued[x] = true;
                    sc.queue.push(x as u32);
                }
            }
        }
        ok
    }

    /// `None`: over budget. `Some(true)`: wildcards were stripped and the
    /// affected cells queued. `Some(false)`: nothing to do.
    fn enforce_budget(&self, st: &mut State, sc: &mut Scratch) -> Option<bool> {
        let Some(budget) = self.budget else {
            return Some(false);
        };
        let nw = self.model.nw;
        let tiles_empty = |st: &State, c: usize| st.dom[c * nw..(c + 1) * nw].iter().all(|w| *w == 0);
        let forced = (0..self.grid.len())
            .filter(|&c| !self.pinned[c] && st.wild[c] && tiles_empty(st, c))
            .count();
        if forced > budget {
            return None;
        }
        if forced < budget {
            return Some(false);
        }
        let mut any = false;
        for c in 0..self.grid.len() {
            if !self.pinned[c] && st.wild[c] && !tiles_empty(st, c) {
                Self::clear_wild(st, c);
                any = true;
                if !sc.queued[c] {
                    sc.queued[c] = true;
                    sc.queue.push(c as u32);
                }
            }
        }
        Some(any)
    }
}

pub(crate) fn to_cells(model: &Model, raw: Vec<Option<usize>>) -> Vec<Cell> {
    raw.into_iter()
        .map(|v| v.map_or(Cell::Wildcard, |i| Cell::Tile(model.order[i])))
        .collect()
}
