use crate::tiles::{matches, Direction, TileSet, Tiling};

use super::SolveError;

/// Every total tiling of the `w`×`h` rectangle, in lexicographic order
/// (row-major cells, ascending tile index), truncated after `limit`.
///
/// Plain exhaustive search that uses nothing but [`matches`]; it exists to
/// check the real solver and refuses anything but tiny instances.
pub fn enumerate_tilings(
    ts: &TileSet,
    w: usize,
    h: usize,
    limit: usize,
) -> Result<Vec<Tiling>, SolveError> {
    if w * h > 12 || ts.len() > 8 {
        return Err(SolveError::OracleTooLarge { cells: w * h, tiles: ts.len() });
    }
    if w == 0 || h == 0 {
        return Err(SolveError::EmptyRegion);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(w * h);
    walk(ts, w, h, limit, &mut cur, &mut out);
    Ok(out)
}

fn walk(ts: &TileSet, w: usize, h: usize, limit: usize, cur: &mut Vec<usize>, out: &mut Vec<Tiling>) {
    if out.len() >= limit {
        return;
    }
    let i = cur.len();
    if i == w * h {
        let rows: Vec<Vec<usize>> = cur.chunks(w).map(<[usize]>::to_vec).collect();
        out.push(Tiling::from_rows(&rows));
        return;
    }
    let (x, y) = (i % w, i / w);
    for t in 0..ts.len() {
        let tile = &ts.tiles()[t];
        if x > 0 && !matches(&ts.tiles()[cur[i - 1]], tile, Direction::Right) {
            continue;
        }
        if y > 0 && !matches(&ts.tiles()[cur[i - w]], tile, Direction::Down) {
            continue;
        }
        cur.push(t);
        walk(ts, w, h, limit, cur, out);
        cur.pop();
        if out.len() >= limit {
            return;
        }
    }
}
