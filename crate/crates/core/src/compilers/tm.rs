//! Turing machine to Wang tiles.
//!
//! Time runs down the page: the bottom edges of row `k` spell configuration
//! `c_k`, with the head cell carrying the colour `(s,q)`. Row 0 is pinned. A
//! halting step emits `H` to the right, which no tile accepts, so a machine
//! halting at step `k` tiles exactly `k` rows.

use std::collections::{BTreeSet, HashMap};

use serde_json::json;

use crate::machines::{Move, TmConfig, TuringMachine, HALT};
use crate::solver::Pin;
use crate::tiles::{Cell, Color, TileSet, TileSetMeta, Tiling, WangTile};

use super::{CompileError, DecodeError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TmOptions {
    /// Only emit head tiles for states some rule can enter (plus the start).
    pub reachable_only: bool,
}

/// Tape position `p` sits in window column `head_col + p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmLayout {
    pub width: usize,
    pub head_col: usize,
}

impl TmLayout {
    pub fn column(&self, pos: i64) -> i64 {
        self.head_col as i64 + pos
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Bottom {
    Symbol(String),
    Head(String, String),
}

#[derive(Clone, Debug)]
pub struct CompiledTm {
    pub tileset: TileSet,
    pub first_row_pins: Vec<Pin>,
    pub layout: TmLayout,
    machine: TuringMachine,
    bottoms: HashMap<Color, Bottom>,
}

impl CompiledTm {
    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    /// Tileset JSON with a `layout` object alongside the tiles.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(&self.tileset).expect("tileset serializes");
        v["layout"] = json!({
            "width": self.layout.width,
            "head_col": self.layout.head_col,
            "row_k_bottoms": "configuration after k steps",
            "first_row": self.first_row_pins.iter().map(|p| match p.value {
                crate::solver::PinValue::Tile(i) => json!(i),
                crate::solver::PinValue::Wildcard => json!(null),
            }).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&v).expect("json")
    }
}

fn side_blank() -> Color {
    Color::atom("B")
}

fn halt_color() -> Color {
    Color::atom("H")
}

fn pair(s: &str, q: &str) -> Color {
    Color::atom(format!("({s},{q})"))
}

pub fn compile_tm(tm: &TuringMachine, input: &[String], width: usize) -> Result<CompiledTm, CompileError> {
    compile_tm_with(tm, input, width, TmOptions::default())
}

/// Tiles, in order: symbol tiles `⟨B,s,B,s⟩`; head tiles `⟨q,s,B,(s,q)⟩` and
/// `⟨B,s,q,(s,q)⟩`; one computation tile per rule (`⟨B,(s,q),q',s'⟩` moving
/// right, `⟨q',(s,q),B,s'⟩` moving left, `⟨B,(s,q),H,s'⟩` halting); finally
/// the start emitter `⟨B,▷,q0,blank⟩` that sits left of the head in row 0.
///
/// Tile count: `|Σ| + 2|Σ||Q| + |rules| + 1` with all states covered.
pub fn compile_tm_with(
    tm: &TuringMachine,
    input: &[String],
    width: usize,
    opts: TmOptions,
) -> Result<CompiledTm, CompileError> {
    for s in input {
        if !tm.symbols().contains(s) {
            return Err(CompileError::InputSymbol(s.clone()));
        }
    }
    let needed = input.len().max(1) + 1;
    if width < needed {
        return Err(CompileError::WindowTooSmall { width, needed });
    }
    let head_col = ((width - input.len().max(1)) / 2).max(1);

    let states: Vec<&String> = if opts.reachable_only {
        let mut live: BTreeSet<&str> = tm.rules().iter().map(|r| r.next.as_str()).collect();
        live.insert(tm.start());
        tm.states().iter().filter(|q| live.contains(q.as_str())).collect()
    } else {
        tm.states().iter().collect()
    };

    let mut tiles = Vec::new();
    let mut bottoms = HashMap::new();
    for s in tm.symbols() {
        tiles.push(WangTile::new(side_blank(), Color::atom(s), side_blank(), Color::atom(s)));
        bottoms.insert(Color::atom(s), Bottom::Symbol(s.clone()));
    }
    for q in &states {
        for s in tm.symbols() {
            let p = pair(s, q);
            tiles.push(WangTile::new(Color::atom(*q), Color::atom(s), side_blank(), p.clone()));
            tiles.push(WangTile::new(side_blank(), Color::atom(s), Color::atom(*q), p.clone()));
            bottoms.insert(p, Bottom::Head(s.clone(), q.to_string()));
        }
    }
    for r in tm.rules() {
        let up = pair(&r.symbol, &r.state);
        let down = Color::atom(&r.write);
        let t = if r.next == HALT {
            WangTile::new(side_blank(), up, halt_color(), down)
        } else {
            match r.mv {
                Move::R => WangTile::new(side_blank(), up, Color::atom(&r.next), down),
                Move::L => WangTile::new(Color::atom(&r.next), up, side_blank(), down),
            }
        };
        tiles.push(t);
    }
    let emitter = WangTile::new(
        side_blank(),
        Color::atom("▷"),
        Color::atom(tm.start()),
        Color::atom(tm.blank()),
    );
    tiles.push(emitter.clone());

    let meta = TileSetMeta::new("tm")
        .with("symbols", tm.symbols().to_vec())
        .with("states", states.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        .with("rules", tm.rules().len())
        .with("reachable_only", opts.reachable_only);
    let tileset = TileSet::new("tm", meta, tiles).expect("schema tiles are distinct");

    let sym_tile = |s: &str| tileset.position(&WangTile::new(side_blank(), Color::atom(s), side_blank(), Color::atom(s))).unwrap();
    let s0 = input.first().map_or(tm.blank(), String::as_str);
    let head_tile = tileset
        .position(&WangTile::new(Color::atom(tm.start()), Color::atom(s0), side_blank(), pair(s0, tm.start())))
        .expect("start state always has head tiles");
    let mut first_row_pins = Vec::with_capacity(width);
    for x in 0..width {
        let t = if x + 1 == head_col {
            tileset.position(&emitter).unwrap()
        } else if x == head_col {
            head_tile
        } else if x > head_col && x - head_col < input.len() {
            sym_tile(&input[x - head_col])
        } else {
            sym_tile(tm.blank())
        };
        first_row_pins.push(Pin::tile(x, 0, t));
    }
    Ok(CompiledTm {
        tileset,
        first_row_pins,
        layout: TmLayout { width, head_col },
        machine: tm.clone(),
        bottoms,
    })
}

/// Reads one configuration per row from the bottom edges.
pub fn decode_tm_rows(ct: &CompiledTm, t: &Tiling) -> Result<Vec<TmConfig>, DecodeError> {
    if t.width != ct.layout.width {
        return Err(DecodeError::LayoutMismatch);
    }
    let tm = &ct.machine;
    let mut out = Vec::with_capacity(t.height);
    for y in 0..t.height {
        let mut cells = Vec::with_capacity(t.width);
        let mut heads = Vec::new();
        for x in 0..t.width {
            let Cell::Tile(i) = t.get(x, y) else {
                return Err(DecodeError::Untiled(x, y));
            };
            let tile = ct.tileset.get(i).ok_or(DecodeError::ForeignTile(i))?;
            let pos = x as i64 - ct.layout.head_col as i64;
            match ct.bottoms.get(&tile.bottom) {
                Some(Bottom::Symbol(s)) => cells.push((pos, s.clone())),
                Some(Bottom::Head(s, q)) => {
                    cells.push((pos, s.clone()));
                    heads.push((pos, q.clone()));
                }
                None => return Err(DecodeError::ForeignTile(i)),
            }
        }
        if heads.len() != 1 {
            return Err(DecodeError::HeadCount { row: y, count: heads.len() });
        }
        let (head, state) = heads.pop().unwrap();
        out.push(TmConfig::from_cells(tm, cells, head, &state, y));
    }
    Ok(out)
}
