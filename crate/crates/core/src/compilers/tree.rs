//! Finite trees to Wang tiles, three ways.
//!
//! * `ait`: a root, a central column spelling a path upwards (and a second
//!   copy downwards), a middle row counting the distance from the root, and
//!   diagonal quadrant fillers. With `R` the depth bound the set has
//!   `1 + 2R + 4·max(2R-1, 0) + 2(N-1)` tiles for `N` nodes.
//! * `pit`: only the root row and columns of node tiles; every column of a
//!   tiling repeats, so tilings are horizontally periodic. `1 + 2(N-1)` tiles.
//! * `spokes`: four arms leave the root and quadrant fillers bind them into a
//!   diamond. `1 + 4(N-1) + 4·#{τ : |τ| ≥ 2}` tiles.
//!
//! All solves pin the root at the centre of the window.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::solver::{solve_rect, Pin, SolveRequest};
use crate::tiles::{Cell, Color, TileSet, TileSetMeta, Tiling, WangTile};
use crate::trees::{node_from_str, node_to_string, FiniteTree, Node};

use super::{CompileError, DecodeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    Ait,
    Pit,
    Spokes,
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeKind::Ait => "ait",
            TreeKind::Pit => "pit",
            TreeKind::Spokes => "spokes",
        })
    }
}

impl FromStr for TreeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ait" => Ok(TreeKind::Ait),
            "pit" => Ok(TreeKind::Pit),
            "spokes" => Ok(TreeKind::Spokes),
            _ => Err(format!("unknown tree construction {s:?} (expected ait, pit or spokes)")),
        }
    }
}

/// What a tile means within its construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeRole {
    Root,
    /// Column tile above the root carrying this node.
    Up(Node),
    /// Column tile below the root.
    Down(Node),
    /// Middle-row tile at this distance left of the root.
    MidLeft(usize),
    MidRight(usize),
    /// Quadrant `j` (1 upper left, then clockwise) at diagonal index `i`.
    Quad(u8, usize),
    SpokeUp(Node),
    SpokeRight(Node),
    SpokeDown(Node),
    SpokeLeft(Node),
    /// Quadrant `j` filler keyed by the node `τ` it hands outwards.
    SpokeQuad(u8, Node),
}

impl TreeRole {
    fn tag(&self) -> String {
        let n = |s: &Node| node_to_string(s);
        match self {
            TreeRole::Root => "root".into(),
            TreeRole::Up(s) => format!("up:{}", n(s)),
            TreeRole::Down(s) => format!("down:{}", n(s)),
            TreeRole::MidLeft(i) => format!("mid-left:{i}"),
            TreeRole::MidRight(i) => format!("mid-right:{i}"),
            TreeRole::Quad(j, i) => format!("quad{j}:{i}"),
            TreeRole::SpokeUp(s) => format!("spoke-up:{}", n(s)),
            TreeRole::SpokeRight(s) => format!("spoke-right:{}", n(s)),
            TreeRole::SpokeDown(s) => format!("spoke-down:{}", n(s)),
            TreeRole::SpokeLeft(s) => format!("spoke-left:{}", n(s)),
            TreeRole::SpokeQuad(j, s) => format!("spoke-quad{j}:{}", n(s)),
        }
    }

    fn parse_tag(tag: &str) -> Option<TreeRole> {
        if tag == "root" {
            return Some(TreeRole::Root);
        }
        let (head, arg) = tag.split_once(':')?;
        let node = || node_from_str(arg);
        let num = || arg.parse::<usize>().ok();
        let quad = |prefix: &str| head.strip_prefix(prefix).and_then(|j| j.parse::<u8>().ok()).filter(|j| (1..=4).contains(j));
        Some(match head {
            "up" => TreeRole::Up(node()?),
            "down" => TreeRole::Down(node()?),
            "mid-left" => TreeRole::MidLeft(num()?),
            "mid-right" => TreeRole::MidRight(num()?),
            "spoke-up" => TreeRole::SpokeUp(node()?),
            "spoke-right" => TreeRole::SpokeRight(node()?),
            "spoke-down" => TreeRole::SpokeDown(node()?),
            "spoke-left" => TreeRole::SpokeLeft(node()?),
            _ if head.starts_with("spoke-quad") => TreeRole::SpokeQuad(quad("spoke-quad")?, node()?),
            _ if head.starts_with("quad") => TreeRole::Quad(quad("quad")?, num()?),
            _ => return None,
        })
    }

    /// Step that moves one cell closer to the root.
    fn toward_root(&self) -> Option<(i64, i64)> {
        match self {
            TreeRole::Root => None,
            TreeRole::Up(_) | TreeRole::SpokeUp(_) => Some((0, 1)),
            TreeRole::Down(_) | TreeRole::SpokeDown(_) => Some((0, -1)),
            TreeRole::MidLeft(_) | TreeRole::SpokeLeft(_) => Some((1, 0)),
            TreeRole::MidRight(_) | TreeRole::SpokeRight(_) => Some((-1, 0)),
            TreeRole::Quad(j, _) | TreeRole::SpokeQuad(j, _) => Some(if *j <= 2 { (0, 1) } else { (0, -1) }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompiledTree {
    pub tileset: TileSet,
    pub kind: TreeKind,
    pub root_index: usize,
    pub roles: Vec<TreeRole>,
    pub depth_bound: usize,
}

impl CompiledTree {
    /// Default solve window and the root's cell in it.
    pub fn window(&self) -> (usize, usize, (usize, usize)) {
        let r = self.depth_bound;
        match self.kind {
            TreeKind::Ait | TreeKind::Spokes => (2 * r + 1, 2 * r + 1, (r, r)),
            TreeKind::Pit => (3, 2 * r + 1, (1, r)),
        }
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(&self.tileset).expect("tileset serializes");
        let (w, h, (rx, ry)) = self.window();
        v["layout"] = json!({
            "kind": self.kind.to_string(),
            "root": self.root_index,
            "window": [w, h],
            "root_cell": [rx, ry],
            "roles": self.roles.iter().map(TreeRole::tag).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&v).expect("json")
    }

    /// Reads back the output of [`CompiledTree::to_json`].
    pub fn from_json(text: &str) -> Result<Self, String> {
        let tileset = TileSet::from_json(text).map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let layout = &v["layout"];
        let kind: TreeKind = layout["kind"].as_str().ok_or("missing layout.kind")?.parse()?;
        let roles = layout["roles"]
            .as_array()
            .ok_or("missing layout.roles")?
            .iter()
            .map(|r| r.as_str().and_then(TreeRole::parse_tag).ok_or(format!("bad role {r}")))
            .collect::<Result<Vec<_>, _>>()?;
        if roles.len() != tileset.len() {
            return Err("one role per tile expected".into());
        }
        let root_index = roles.iter().position(|r| *r == TreeRole::Root).ok_or("no root tile")?;
        let depth_bound = tileset.meta.params.get("depth").and_then(|d| d.as_u64()).ok_or("missing meta.depth")? as usize;
        Ok(CompiledTree { tileset, kind, root_index, roles, depth_bound })
    }
}

fn idx(tag: &str, ix: &[i64]) -> Color {
    Color::indexed(tag, ix)
}

fn node_ix(s: &[u32]) -> Vec<i64> {
    s.iter().map(|&d| d as i64).collect()
}

fn parent(s: &[u32]) -> &[u32] {
    &s[..s.len() - 1]
}

/// Non-root nodes, shortest first, lexicographic within a length.
fn column_nodes(tree: &FiniteTree) -> Vec<Node> {
    let mut v: Vec<Node> = tree.nodes().iter().filter(|n| !n.is_empty()).cloned().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

pub fn compile_tree(tree: &FiniteTree, kind: TreeKind) -> Result<CompiledTree, CompileError> {
    if tree.is_empty() {
        return Err(CompileError::EmptyTree);
    }
    let (tiles, roles) = match kind {
        TreeKind::Ait => ait(tree),
        TreeKind::Pit => pit(tree),
        TreeKind::Spokes => spokes(tree),
    };
    let meta = TileSetMeta::new(&kind.to_string())
        .with("depth", tree.depth_bound)
        .with("branching", tree.branching_bound)
        .with("nodes", tree.len());
    let tileset = TileSet::new(kind.to_string(), meta, tiles).expect("construction tiles are distinct");
    let root_index = roles.iter().position(|r| *r == TreeRole::Root).unwrap();
    Ok(CompiledTree {
        tileset,
        kind,
        root_index,
        roles,
        depth_bound: tree.depth_bound,
    })
}

fn ait(tree: &FiniteTree) -> (Vec<WangTile>, Vec<TreeRole>) {
    let r = tree.depth_bound as i64;
    let c = |j: i64, i: i64| idx("c", &[j, i]);
    let mut tiles = vec![WangTile::new(idx("ML", &[0]), idx("U", &[]), idx("MR", &[0]), idx("D", &[]))];
    let mut roles = vec![TreeRole::Root];
    for k in 1..=r {
        tiles.push(WangTile::new(idx("ML", &[k]), c(1, k), idx("ML", &[k - 1]), c(4, k)));
        roles.push(TreeRole::MidLeft(k as usize));
    }
    for k in 1..=r {
        tiles.push(WangTile::new(idx("MR", &[k - 1]), c(2, k), idx("MR", &[k]), c(3, k)));
        roles.push(TreeRole::MidRight(k as usize));
    }
    // The corner cell of a (2R+1)-square sits on diagonal 2R-1.
    for i in 1..2 * r {
        let quads = [
            WangTile::new(c(1, i + 1), c(1, i + 1), c(1, i), c(1, i)),
            WangTile::new(c(2, i), c(2, i + 1), c(2, i + 1), c(2, i)),
            WangTile::new(c(3, i), c(3, i), c(3, i + 1), c(3, i + 1)),
            WangTile::new(c(4, i + 1), c(4, i), c(4, i), c(4, i + 1)),
        ];
        for (j, t) in quads.into_iter().enumerate() {
            tiles.push(t);
            roles.push(TreeRole::Quad(j as u8 + 1, i as usize));
        }
    }
    let nodes = column_nodes(tree);
    for s in &nodes {
        let d = s.len() as i64;
        tiles.push(WangTile::new(c(1, d), idx("U", &node_ix(s)), c(2, d), idx("U", &node_ix(parent(s)))));
        roles.push(TreeRole::Up(s.clone()));
    }
    for s in &nodes {
        let d = s.len() as i64;
        tiles.push(WangTile::new(c(4, d), idx("D", &node_ix(parent(s))), c(3, d), idx("D", &node_ix(s))));
        roles.push(TreeRole::Down(s.clone()));
    }
    (tiles, roles)
}

fn pit(tree: &FiniteTree) -> (Vec<WangTile>, Vec<TreeRole>) {
    let m = idx("M", &[]);
    let mut tiles = vec![WangTile::new(m.clone(), idx("U", &[]), m, idx("D", &[]))];
    let mut roles = vec![TreeRole::Root];
    let nodes = column_nodes(tree);
    for s in &nodes {
        let lvl = idx("Ulvl", &[s.len() as i64]);
        tiles.push(WangTile::new(lvl.clone(), idx("U", &node_ix(s)), lvl, idx("U", &node_ix(parent(s)))));
        roles.push(TreeRole::Up(s.clone()));
    }
    for s in &nodes {
        let lvl = idx("Dlvl", &[s.len() as i64]);
        tiles.push(WangTile::new(lvl.clone(), idx("D", &node_ix(parent(s))), lvl, idx("D", &node_ix(s))));
        roles.push(TreeRole::Down(s.clone()));
    }
    (tiles, roles)
}

fn spokes(tree: &FiniteTree) -> (Vec<WangTile>, Vec<TreeRole>) {
    let plain = |s: &[u32]| Color::seq(s);
    let sup = |s: &[u32], j: u32| idx(&format!("s{j}"), &node_ix(s));
    // The parent colour, with λ replaced by the root's colour on that side.
    let par = |s: &[u32], side: &str| {
        let p = parent(s);
        if p.is_empty() {
            idx(side, &[])
        } else {
            plain(p)
        }
    };
    let mut nodes: Vec<Node> = tree.nodes().iter().filter(|n| !n.is_empty()).cloned().collect();
    nodes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let mut tiles = Vec::new();
    let mut roles = Vec::new();
    for s in &nodes {
        tiles.push(WangTile::new(sup(s, 1), plain(s), sup(s, 2), par(s, "U")));
        roles.push(TreeRole::SpokeUp(s.clone()));
    }
    for s in &nodes {
        tiles.push(WangTile::new(par(s, "R"), sup(s, 2), plain(s), sup(s, 3)));
        roles.push(TreeRole::SpokeRight(s.clone()));
    }
    for s in &nodes {
        tiles.push(WangTile::new(sup(s, 4), par(s, "D"), sup(s, 3), plain(s)));
        roles.push(TreeRole::SpokeDown(s.clone()));
    }
    for s in &nodes {
        tiles.push(WangTile::new(plain(s), sup(s, 1), par(s, "L"), sup(s, 4)));
        roles.push(TreeRole::SpokeLeft(s.clone()));
    }
    for j in 1..=4u32 {
        for t in nodes.iter().filter(|t| t.len() >= 2) {
            let s = parent(t);
            let (sj, tj) = (sup(s, j), sup(t, j));
            let tile = match j {
                1 => WangTile::new(tj.clone(), tj, sj.clone(), sj),
                2 => WangTile::new(sj.clone(), tj.clone(), tj, sj),
                3 => WangTile::new(sj.clone(), sj, tj.clone(), tj),
                _ => WangTile::new(tj.clone(), sj.clone(), sj, tj),
            };
            tiles.push(tile);
            roles.push(TreeRole::SpokeQuad(j as u8, t.clone()));
        }
    }
    tiles.push(WangTile::new(idx("L", &[]), idx("U", &[]), idx("R", &[]), idx("D", &[])));
    roles.push(TreeRole::Root);
    (tiles, roles)
}

/// Pinned-root solve in the construction's default window. For `spokes` this
/// is the largest diamond patch (see [`grow_spokes_patch`]).
pub fn solve_tree(ct: &CompiledTree) -> Option<Tiling> {
    match ct.kind {
        TreeKind::Spokes => Some(grow_spokes_patch(ct).1),
        _ => {
            let (w, h, (rx, ry)) = ct.window();
            let req = SolveRequest::new(&ct.tileset, w, h).pin(rx, ry, ct.root_index);
            solve_rect(&req).expect("root pin is well formed")
        }
    }
}

/// Spokes solve of the diamond `|x| + |y| <= r` around the pinned root, the
/// rest of the window pinned to wildcards. Returns the largest tileable `r`
/// (at most the depth bound) and its tiling.
pub fn grow_spokes_patch(ct: &CompiledTree) -> (usize, Tiling) {
    assert_eq!(ct.kind, TreeKind::Spokes, "diamond patches are a spokes construction");
    let (w, h, (rx, ry)) = ct.window();
    let attempt = |r: usize| {
        let mut pins = vec![Pin::tile(rx, ry, ct.root_index)];
        for y in 0..h {
            for x in 0..w {
                if x.abs_diff(rx) + y.abs_diff(ry) > r {
                    pins.push(Pin::wildcard(x, y));
                }
            }
        }
        solve_rect(&SolveRequest::new(&ct.tileset, w, h).pins(pins)).expect("pins are well formed")
    };
    let mut best = (0, attempt(0).expect("the root alone always tiles"));
    for r in 1..=ct.depth_bound {
        match attempt(r) {
            Some(t) => best = (r, t),
            None => break,
        }
    }
    best
}

/// [`recover_path_from`] starting at the top-left cell, or at the first tiled
/// cell in row-major order if that one is empty.
pub fn recover_path(ct: &CompiledTree, t: &Tiling) -> Result<Node, DecodeError> {
    let start = (0..t.height)
        .flat_map(|y| (0..t.width).map(move |x| (x, y)))
        .find(|&(x, y)| matches!(t.get(x, y), Cell::Tile(_)))
        .ok_or(DecodeError::CannotLocateRoot)?;
    recover_path_from(ct, t, start)
}

/// Walks from `start` to the root (quadrant cells head for the middle row or
/// arm, middle-row and arm cells head along it, column cells along the
/// column), then reads the column upwards and returns the longest node seen.
pub fn recover_path_from(ct: &CompiledTree, t: &Tiling, start: (usize, usize)) -> Result<Node, DecodeError> {
    let role_at = |x: i64, y: i64| -> Result<&TreeRole, DecodeError> {
        if x < 0 || y < 0 || x as usize >= t.width || y as usize >= t.height {
            return Err(DecodeError::CannotLocateRoot);
        }
        match t.get(x as usize, y as usize) {
            Cell::Tile(i) => ct.roles.get(i).ok_or(DecodeError::ForeignTile(i)),
            _ => Err(DecodeError::CannotLocateRoot),
        }
    };
    let (mut x, mut y) = (start.0 as i64, start.1 as i64);
    for _ in 0..=t.width * t.height {
        let role = role_at(x, y)?;
        let Some((dx, dy)) = role.toward_root() else {
            let mut best = Vec::new();
            let mut yy = y - 1;
            while let Ok(TreeRole::Up(s) | TreeRole::SpokeUp(s)) = role_at(x, yy) {
                best = s.clone();
                yy -= 1;
            }
            return Ok(best);
        };
        x += dx;
        y += dy;
    }
    Err(DecodeError::CannotLocateRoot)
}
