//! Elementary cellular automata as 18 Wang tiles.
//!
//! Cell `i` of generation `j` is a distributor tile. Between two distributors
//! a pair of swap tiles crosses their bits over, and below each distributor a
//! rule tile reads `(left, own, right)` and hands `f(a,b,c)` to the next
//! distributor down.

use serde_json::json;

use crate::machines::{format_bits, EcaRule};
use crate::solver::Pin;
use crate::tiles::{Cell, Color, TileSet, TileSetMeta, Tiling, WangTile};

use super::{CompileError, DecodeError};

/// Where each kind of tile sits relative to the distributor of cell `(i, j)`,
/// which itself is at `(stride.0 * i, stride.1 * j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcaWangLayout {
    pub stride: (usize, usize),
    pub swap_top: (usize, usize),
    pub swap_bottom: (usize, usize),
    pub rule: (usize, usize),
}

impl Default for EcaWangLayout {
    fn default() -> Self {
        EcaWangLayout {
            stride: (2, 2),
            swap_top: (1, 0),
            swap_bottom: (1, 1),
            rule: (0, 1),
        }
    }
}

impl EcaWangLayout {
    pub fn distributor(&self, i: usize, j: usize) -> (usize, usize) {
        (self.stride.0 * i, self.stride.1 * j)
    }

    /// Window for `cells` cells and `rows` generations after the input.
    pub fn window(&self, cells: usize, rows: usize) -> (usize, usize) {
        (self.stride.0 * (cells - 1) + 1, self.stride.1 * rows + 1)
    }
}

#[derive(Clone, Debug)]
pub struct EcaWang {
    pub rule: EcaRule,
    pub tileset: TileSet,
    pub layout: EcaWangLayout,
}

fn bit(b: u8) -> Color {
    Color::atom(b.to_string())
}

fn out(b: u8) -> Color {
    Color::indexed("out", &[b as i64])
}

fn blank() -> Color {
    Color::atom("B")
}

fn swap(s: u8, t: u8) -> Color {
    Color::indexed("sw", &[s as i64, t as i64])
}

impl EcaWang {
    pub fn rule_tile(a: u8, b: u8, c: u8) -> usize {
        (4 * a + 2 * b + c) as usize
    }

    /// Upper and lower halves of the crossover carrying `s` left, `t` right.
    pub fn swap_tiles(s: u8, t: u8) -> (usize, usize) {
        let k = (2 * s + t) as usize;
        (8 + 2 * k, 9 + 2 * k)
    }

    pub fn distributor_tile(x: u8) -> usize {
        16 + x as usize
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(&self.tileset).expect("tileset serializes");
        v["layout"] = json!({
            "stride": [self.layout.stride.0, self.layout.stride.1],
            "distributor": [0, 0],
            "swap_top": [self.layout.swap_top.0, self.layout.swap_top.1],
            "swap_bottom": [self.layout.swap_bottom.0, self.layout.swap_bottom.1],
            "rule": [self.layout.rule.0, self.layout.rule.1],
        });
        serde_json::to_string_pretty(&v).expect("json")
    }

    /// Pins for row 0: the input on distributors with the upper swap halves
    /// between them. Distributors alone do not fix the lattice phase, since a
    /// rule tile also fits between two of them.
    pub fn input_pins(&self, input: &[u8]) -> Vec<Pin> {
        let mut pins = Vec::with_capacity(2 * input.len());
        for (i, &x) in input.iter().enumerate() {
            let (px, py) = self.layout.distributor(i, 0);
            pins.push(Pin::tile(px, py, Self::distributor_tile(x)));
            if let Some(&y) = input.get(i + 1) {
                let (dx, dy) = self.layout.swap_top;
                pins.push(Pin::tile(px + dx, py + dy, Self::swap_tiles(x, y).0));
            }
        }
        pins
    }
}

/// Tiles 0..8 are rule tiles by `4a + 2b + c`, 8..16 the swap pairs by
/// `2s + t` (upper half first), 16 and 17 the distributors for 0 and 1.
pub fn compile_eca_wang(rule: EcaRule) -> EcaWang {
    let mut tiles = Vec::with_capacity(18);
    for n in 0..8u8 {
        let (a, b, c) = (n >> 2 & 1, n >> 1 & 1, n & 1);
        tiles.push(WangTile::new(bit(a), bit(b), bit(c), out(rule.table(a, b, c))));
    }
    for k in 0..4u8 {
        let (s, t) = (k >> 1, k & 1);
        tiles.push(WangTile::new(bit(s), blank(), bit(t), swap(s, t)));
        tiles.push(WangTile::new(bit(t), swap(s, t), bit(s), blank()));
    }
    for x in 0..2u8 {
        tiles.push(WangTile::new(bit(x), out(x), bit(x), bit(x)));
    }
    let meta = TileSetMeta::new("eca18").with("rule", rule.number());
    let tileset = TileSet::new(format!("eca18-rule{}", rule.number()), meta, tiles).expect("distinct");
    EcaWang {
        rule,
        tileset,
        layout: EcaWangLayout::default(),
    }
}

/// Deterministic fill of `rows` generations below `input`, zero beyond both
/// ends of the row.
pub fn tile_eca_wang(ew: &EcaWang, input: &[u8], rows: usize) -> Result<Tiling, CompileError> {
    if input.is_empty() || input.iter().any(|&b| b > 1) {
        return Err(CompileError::BadInput);
    }
    let lay = &ew.layout;
    let n = input.len();
    let (w, h) = lay.window(n, rows);
    let mut t = Tiling::empty(w, h);
    let mut put = |(x, y): (usize, usize), (dx, dy): (usize, usize), idx: usize| {
        if x + dx < w && y + dy < h {
            t.set(x + dx, y + dy, Cell::Tile(idx));
        }
    };
    let mut row = input.to_vec();
    for j in 0..=rows {
        for i in 0..n {
            let at = lay.distributor(i, j);
            put(at, (0, 0), EcaWang::distributor_tile(row[i]));
            if i + 1 < n {
                let (top, bottom) = EcaWang::swap_tiles(row[i], row[i + 1]);
                put(at, lay.swap_top, top);
                if j < rows {
                    put(at, lay.swap_bottom, bottom);
                }
            }
        }
        if j == rows {
            break;
        }
        let next: Vec<u8> = (0..n)
            .map(|i| {
                let a = if i > 0 { row[i - 1] } else { 0 };
                let c = if i + 1 < n { row[i + 1] } else { 0 };
                let at = lay.distributor(i, j);
                put(at, lay.rule, EcaWang::rule_tile(a, row[i], c));
                ew.rule.table(a, row[i], c)
            })
            .collect();
        row = next;
    }
    Ok(t)
}

/// Reads the distributor bits, one string per generation.
pub fn decode_eca_wang(ew: &EcaWang, t: &Tiling) -> Result<Vec<String>, DecodeError> {
    let (sx, sy) = ew.layout.stride;
    if t.width == 0 || t.height == 0 || !(t.width - 1).is_multiple_of(sx) || !(t.height - 1).is_multiple_of(sy) {
        return Err(DecodeError::LayoutMismatch);
    }
    let (n, rows) = ((t.width - 1) / sx + 1, (t.height - 1) / sy);
    (0..=rows)
        .map(|j| {
            let bits = (0..n)
                .map(|i| {
                    let (x, y) = ew.layout.distributor(i, j);
                    match t.get(x, y) {
                        Cell::Tile(k) if k == EcaWang::distributor_tile(0) => Ok(0),
                        Cell::Tile(k) if k == EcaWang::distributor_tile(1) => Ok(1),
                        Cell::Tile(k) if k >= ew.tileset.len() => Err(DecodeError::ForeignTile(k)),
                        Cell::Tile(_) => Err(DecodeError::MalformedRow(j)),
                        _ => Err(DecodeError::Untiled(x, y)),
                    }
                })
                .collect::<Result<Vec<u8>, _>>()?;
            Ok(format_bits(&bits))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{eca_run, parse_bits};
    use crate::solver::{solve_rect, SolveRequest};
    use crate::tiles::is_valid_tiling;

    #[test]
    fn eighteen_tiles_for_every_rule() {
        for n in 0..=255u8 {
            assert_eq!(compile_eca_wang(EcaRule(n)).tileset.len(), 18);
        }
    }

    #[test]
    fn rule30_rule_tile_100() {
        let ew = compile_eca_wang(EcaRule(30));
        let t = ew.tileset.get(EcaWang::rule_tile(1, 0, 0)).unwrap();
        assert_eq!(t.bottom, out(1));
        let zero = compile_eca_wang(EcaRule(0));
        assert!((0..8).all(|i| zero.tileset.get(i).unwrap().bottom == out(0)));
    }

    #[test]
    fn generated_tiling_is_valid_and_decodes() {
        let ew = compile_eca_wang(EcaRule(30));
        let input = parse_bits("0001000").unwrap();
        let t = tile_eca_wang(&ew, &input, 3).unwrap();
        assert_eq!((t.width, t.height), (13, 7));
        let rep = is_valid_tiling(&ew.tileset, &t).unwrap();
        assert!(rep.ok && rep.total, "{:?}", rep.violations);
        let want: Vec<String> = eca_run(EcaRule(30), &input, 3).iter().map(|r| format_bits(r)).collect();
        assert_eq!(decode_eca_wang(&ew, &t).unwrap(), want);
    }

    #[test]
    fn solver_agrees_with_generation() {
        let ew = compile_eca_wang(EcaRule(110));
        let input = parse_bits("01101").unwrap();
        let (w, h) = ew.layout.window(input.len(), 4);
        let req = SolveRequest::new(&ew.tileset, w, h).pins(ew.input_pins(&input));
        let t = solve_rect(&req).unwrap().unwrap();
        let rows = decode_eca_wang(&ew, &t).unwrap();
        // Free window edges fall back to the lowest index, i.e. a zero neighbour.
        let want: Vec<String> = eca_run(EcaRule(110), &input, 4).iter().map(|r| format_bits(r)).collect();
        assert_eq!(rows, want);
        assert_eq!(t, tile_eca_wang(&ew, &input, 4).unwrap());
    }

    #[test]
    fn bad_layout_is_rejected() {
        let ew = compile_eca_wang(EcaRule(30));
        assert_eq!(decode_eca_wang(&ew, &Tiling::empty(4, 3)), Err(DecodeError::LayoutMismatch));
        assert_eq!(tile_eca_wang(&ew, &[], 2), Err(CompileError::BadInput));
    }
}
