//! Elementary cellular automata on a hexagon and lozenge lattice, 15 tiles.
//!
//! Hexagons sit in horizontal rows. A rule hexagon takes `a` from its upper
//! left, `b` from the hexagon directly above and `c` from its upper right,
//! and shows `f(a,b,c)` on its lower edges. Between two hexagons of a row a
//! lozenge crosses their outputs over to the next row. Row 0 is made of
//! `I`-hexagons spelling the input, capped by half lozenges.
//!
//! Addressing is axial: hexagon `(r, i)`, lozenge `(r, i)` between hexagons
//! `(r, i)` and `(r, i + 1)`.

use std::fmt;

use serde_json::json;

use crate::machines::{format_bits, EcaRule};
use crate::tiles::Color;

use super::{CompileError, DecodeError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HexTile {
    Hex { ul: Color, top: Color, ur: Color, bottom: Color },
    Lozenge { nw: Color, ne: Color, sw: Color, se: Color },
    HalfLozenge { sw: Color, se: Color },
}

impl fmt::Display for HexTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HexTile::Hex { ul, top, ur, bottom } => {
                write!(f, "hex⟨{},{},{},{}⟩", ul.label(), top.label(), ur.label(), bottom.label())
            }
            HexTile::Lozenge { nw, ne, sw, se } => {
                write!(f, "loz⟨{},{},{},{}⟩", nw.label(), ne.label(), sw.label(), se.label())
            }
            HexTile::HalfLozenge { sw, se } => write!(f, "half⟨{},{}⟩", sw.label(), se.label()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HexRole {
    Rule,
    Lozenge,
    Init,
}

impl HexRole {
    pub fn as_str(self) -> &'static str {
        match self {
            HexRole::Rule => "rule",
            HexRole::Lozenge => "lozenge",
            HexRole::Init => "init",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexTileSet {
    pub name: String,
    pub rule: EcaRule,
    pub tiles: Vec<HexTile>,
    pub roles: Vec<HexRole>,
}

impl HexTileSet {
    pub const HALF: usize = 14;

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn rule_hex(a: u8, b: u8, c: u8) -> usize {
        (4 * a + 2 * b + c) as usize
    }

    /// Lozenge receiving `s` from the left hexagon and `t` from the right.
    pub fn lozenge(s: u8, t: u8) -> usize {
        8 + (2 * s + t) as usize
    }

    pub fn init_hex(x: u8) -> usize {
        12 + x as usize
    }

    pub fn to_json(&self) -> String {
        let c = |c: &Color| c.canonical();
        let tiles: Vec<_> = self
            .tiles
            .iter()
            .zip(&self.roles)
            .map(|(t, role)| match t {
                HexTile::Hex { ul, top, ur, bottom } => json!({
                    "kind": "hex", "role": role.as_str(),
                    "ul": c(ul), "top": c(top), "ur": c(ur), "bottom": c(bottom),
                }),
                HexTile::Lozenge { nw, ne, sw, se } => json!({
                    "kind": "lozenge", "role": role.as_str(),
                    "nw": c(nw), "ne": c(ne), "sw": c(sw), "se": c(se),
                }),
                HexTile::HalfLozenge { sw, se } => json!({
                    "kind": "half-lozenge", "role": role.as_str(), "sw": c(sw), "se": c(se),
                }),
            })
            .collect();
        let v = json!({
            "name": self.name,
            "geometry": "hex15",
            "meta": { "kind": "eca15", "rule": self.rule.number() },
            "tiles": tiles,
        });
        serde_json::to_string_pretty(&v).expect("json")
    }
}

/// A finite window: hexagon rows `0..=R` of equal width, `R` lozenge rows of
/// one fewer cell between them, and the half-lozenge cap above row 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexTiling {
    pub width: usize,
    pub hexes: Vec<Vec<usize>>,
    pub lozenges: Vec<Vec<usize>>,
    pub halves: Vec<usize>,
}

fn bit(b: u8) -> Color {
    Color::atom(b.to_string())
}

fn i_color() -> Color {
    Color::atom("I")
}

/// Tiles 0..8 are the rule hexagons by `4a + 2b + c`, 8..12 the lozenges by
/// `2s + t`, 12 and 13 the `I`-hexagons for 0 and 1, 14 the half lozenge.
pub fn compile_eca_hex(rule: EcaRule) -> HexTileSet {
    let mut tiles = Vec::with_capacity(15);
    let mut roles = Vec::with_capacity(15);
    for n in 0..8u8 {
        let (a, b, c) = (n >> 2 & 1, n >> 1 & 1, n & 1);
        tiles.push(HexTile::Hex { ul: bit(a), top: bit(b), ur: bit(c), bottom: bit(rule.table(a, b, c)) });
        roles.push(HexRole::Rule);
    }
    for k in 0..4u8 {
        let (s, t) = (k >> 1, k & 1);
        tiles.push(HexTile::Lozenge { nw: bit(s), ne: bit(t), sw: bit(t), se: bit(s) });
        roles.push(HexRole::Lozenge);
    }
    for x in 0..2u8 {
        tiles.push(HexTile::Hex { ul: i_color(), top: i_color(), ur: i_color(), bottom: bit(x) });
        roles.push(HexRole::Init);
    }
    tiles.push(HexTile::HalfLozenge { sw: i_color(), se: i_color() });
    roles.push(HexRole::Init);
    HexTileSet {
        name: format!("eca15-rule{}", rule.number()),
        rule,
        tiles,
        roles,
    }
}

/// Every shared edge must carry equal colours. Edges on the window border are
/// unconstrained. Returns the first clash found.
pub fn is_valid_hex_tiling(hs: &HexTileSet, ht: &HexTiling) -> Result<(), String> {
    let rows = ht.hexes.len();
    if rows == 0 || ht.lozenges.len() + 1 != rows {
        return Err("hexagon and lozenge row counts disagree".into());
    }
    let w = ht.width;
    let lw = w.saturating_sub(1);
    if ht.hexes.iter().any(|r| r.len() != w) || ht.lozenges.iter().any(|r| r.len() != lw) || ht.halves.len() != lw {
        return Err("row of the wrong width".into());
    }
    let get = |i: usize| hs.tiles.get(i).ok_or(format!("tile {i} is out of range"));
    let hex = |i: usize| -> Result<(&Color, &Color, &Color, &Color), String> {
        match get(i)? {
            HexTile::Hex { ul, top, ur, bottom } => Ok((ul, top, ur, bottom)),
            other => Err(format!("{other} is not a hexagon")),
        }
    };
    let loz = |i: usize| -> Result<(&Color, &Color, &Color, &Color), String> {
        match get(i)? {
            HexTile::Lozenge { nw, ne, sw, se } => Ok((nw, ne, sw, se)),
            other => Err(format!("{other} is not a lozenge")),
        }
    };
    for (i, &k) in ht.halves.iter().enumerate() {
        let HexTile::HalfLozenge { sw, se } = get(k)? else {
            return Err(format!("cap {i} is not a half lozenge"));
        };
        if sw != hex(ht.hexes[0][i])?.2 || se != hex(ht.hexes[0][i + 1])?.0 {
            return Err(format!("cap {i} clashes with row 0"));
        }
    }
    for r in 0..rows - 1 {
        for i in 0..w {
            if hex(ht.hexes[r][i])?.3 != hex(ht.hexes[r + 1][i])?.1 {
                return Err(format!("hexagon ({r},{i}) clashes with the one below"));
            }
        }
        for i in 0..lw {
            let (nw, ne, sw, se) = loz(ht.lozenges[r][i])?;
            let ok = nw == hex(ht.hexes[r][i])?.3
                && ne == hex(ht.hexes[r][i + 1])?.3
                && sw == hex(ht.hexes[r + 1][i])?.2
                && se == hex(ht.hexes[r + 1][i + 1])?.0;
            if !ok {
                return Err(format!("lozenge ({r},{i}) clashes with a neighbour"));
            }
        }
    }
    Ok(())
}

/// Deterministic fill. `width` defaults to `|input|`; a wider window pads
/// the input with zeros, centred.
pub fn tile_eca_hex(hs: &HexTileSet, input: &[u8], rows: usize, width: Option<usize>) -> Result<HexTiling, CompileError> {
    if input.is_empty() || input.iter().any(|&b| b > 1) {
        return Err(CompileError::BadInput);
    }
    let w = width.unwrap_or(input.len());
    if w < input.len() {
        return Err(CompileError::WindowTooSmall { width: w, needed: input.len() });
    }
    let pad = (w - input.len()) / 2;
    let mut row = vec![0u8; w];
    row[pad..pad + input.len()].copy_from_slice(input);

    let mut hexes = vec![row.iter().map(|&x| HexTileSet::init_hex(x)).collect::<Vec<_>>()];
    let mut lozenges = Vec::with_capacity(rows);
    for _ in 0..rows {
        lozenges.push((0..w - 1).map(|i| HexTileSet::lozenge(row[i], row[i + 1])).collect());
        let mut tiles = Vec::with_capacity(w);
        let mut next = Vec::with_capacity(w);
        for i in 0..w {
            let a = if i > 0 { row[i - 1] } else { 0 };
            let c = if i + 1 < w { row[i + 1] } else { 0 };
            tiles.push(HexTileSet::rule_hex(a, row[i], c));
            next.push(hs.rule.table(a, row[i], c));
        }
        hexes.push(tiles);
        row = next;
    }
    Ok(HexTiling {
        width: w,
        hexes,
        lozenges,
        halves: vec![HexTileSet::HALF; w - 1],
    })
}

/// Bottom labels of each hexagon row, row 0 being the input.
pub fn decode_eca_hex(hs: &HexTileSet, ht: &HexTiling) -> Result<Vec<String>, DecodeError> {
    ht.hexes
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let bits = row
                .iter()
                .map(|&k| match hs.tiles.get(k) {
                    None => Err(DecodeError::ForeignTile(k)),
                    Some(HexTile::Hex { bottom, .. }) if *bottom == bit(0) => Ok(0),
                    Some(HexTile::Hex { bottom, .. }) if *bottom == bit(1) => Ok(1),
                    Some(_) => Err(DecodeError::MalformedRow(r)),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            Ok(format_bits(&bits))
        })
        .collect()
}
