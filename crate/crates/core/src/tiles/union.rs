use super::tile::{TileSet, TileSetMeta};

/// Tints every colour of set `i` (1-based) with `i` and concatenates the sets.
///
/// No tile of one tint can meet a tile of another, since their colours differ
/// in the tint component. The output meta records where each source starts.
pub fn disjoint_union(sets: &[TileSet]) -> TileSet {
    assert!(!sets.is_empty(), "disjoint_union needs at least one set");
    let mut tiles = Vec::new();
    let mut bounds = Vec::new();
    for (i, ts) in sets.iter().enumerate() {
        let tint = i as u32 + 1;
        bounds.push(serde_json::json!({
            "name": ts.name,
            "start": tiles.len(),
            "len": ts.len(),
        }));
        tiles.extend(ts.tiles().iter().map(|t| t.map_colors(|c| c.tinted(tint))));
    }
    let name = sets.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join("+");
    let meta = TileSetMeta::new("union").with("components", bounds);
    TileSet::new(name, meta, tiles).expect("tinted tiles from distinct sets cannot collide")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::{matches, Color, Direction, WangTile};

    fn one(l: &str, u: &str, r: &str, b: &str) -> TileSet {
        TileSet::new(l, TileSetMeta::new("test"), vec![WangTile::atoms(l, u, r, b)]).unwrap()
    }

    #[test]
    fn explicit_mapping() {
        let u = disjoint_union(&[one("a", "b", "c", "d"), one("e", "f", "g", "h")]);
        let t = |i: u32, s: &str| Color::atom(s).tinted(i);
        assert_eq!(
            u.tiles(),
            &[
                WangTile::new(t(1, "a"), t(1, "b"), t(1, "c"), t(1, "d")),
                WangTile::new(t(2, "e"), t(2, "f"), t(2, "g"), t(2, "h")),
            ]
        );
    }

    #[test]
    fn single_set_is_just_tinted() {
        let a = one("a", "a", "a", "a");
        let u = disjoint_union(std::slice::from_ref(&a));
        assert_eq!(u.len(), 1);
        assert_eq!(u.tiles()[0].left, Color::atom("a").tinted(1));
    }

    #[test]
    fn no_cross_tint_meets() {
        let a = TileSet::new(
            "a",
            TileSetMeta::new("test"),
            vec![
                WangTile::atoms("0", "0", "0", "0"),
                WangTile::atoms("0", "1", "1", "0"),
                WangTile::atoms("1", "1", "0", "1"),
            ],
        )
        .unwrap();
        let b = TileSet::new(
            "b",
            TileSetMeta::new("test"),
            vec![
                WangTile::atoms("0", "0", "0", "0"),
                WangTile::atoms("1", "0", "1", "0"),
                WangTile::atoms("0", "1", "0", "1"),
                WangTile::atoms("1", "1", "1", "1"),
            ],
        )
        .unwrap();
        let u = disjoint_union(&[a, b]);
        for x in &u.tiles()[..3] {
            for y in &u.tiles()[3..] {
                for d in Direction::ALL {
                    assert!(!matches(x, y, d));
                    assert!(!matches(y, x, d));
                }
            }
        }
    }
}
