use super::tile::{TileSet, TileSetMeta, WangTile};
use super::TileError;

pub const BUILTIN_NAMES: [&str; 3] = ["culik13", "jeandel-rao11", "binary16"];

const CULIK13: [[&str; 4]; 13] = [
    ["-2", "1", "-1", "2"],
    ["-2", "1", "0", "1"],
    ["-1", "1", "0", "2"],
    ["-1", "0", "-2", "1"],
    ["0", "0", "-2", "2"],
    ["0", "0", "-1", "1"],
    ["0'", "0'", "0'", "0"],
    ["0'", "2", "0'", "1"],
    ["0'", "1", "1/2", "0"],
    ["0'", "1", "1/2", "0'"],
    ["1/2", "0'", "1/2", "0"],
    ["1/2", "2", "1/2", "1"],
    ["1/2", "1", "0'", "1"],
];

const JEANDEL_RAO11: [[&str; 4]; 11] = [
    ["3", "1", "1", "1"],
    ["3", "2", "1", "2"],
    ["3", "1", "3", "3"],
    ["2", "4", "2", "1"],
    ["2", "2", "2", "0"],
    ["0", "0", "0", "1"],
    ["0", "1", "3", "2"],
    ["1", "2", "0", "2"],
    ["1", "2", "1", "4"],
    ["1", "3", "3", "2"],
    ["3", "1", "0", "1"],
];

// Listed left, up, right, bottom.
const BINARY16: [&str; 16] = [
    "0000", "0001", "0100", "0101", "0010", "0011", "0110", "0111", "1000", "1001", "1100", "1101",
    "1010", "1011", "1110", "1111",
];

fn from_table(name: &str, rows: &[[&str; 4]]) -> TileSet {
    let tiles = rows
        .iter()
        .map(|[l, u, r, b]| WangTile::atoms(l, u, r, b))
        .collect();
    TileSet::new(name, TileSetMeta::new("builtin"), tiles).expect("builtin sets have no duplicates")
}

/// One of the reference sets: `culik13`, `jeandel-rao11` or `binary16`.
pub fn builtin(name: &str) -> Result<TileSet, TileError> {
    match name {
        "culik13" => Ok(from_table(name, &CULIK13)),
        "jeandel-rao11" => Ok(from_table(name, &JEANDEL_RAO11)),
        "binary16" => {
            let rows: Vec<[&str; 4]> = BINARY16
                .iter()
                .map(|s| {
                    let b: Vec<&str> = (0..4).map(|i| &s[i..i + 1]).collect();
                    [b[0], b[1], b[2], b[3]]
                })
                .collect();
            Ok(from_table(name, &rows))
        }
        _ => Err(TileError::UnknownBuiltin {
            name: name.to_string(),
            valid: BUILTIN_NAMES.join(", "),
        }),
    }
}
