use crate::tiles::{TileSet, Tiling};

use super::{solve_rect, SolveRequest};

/// A `p`×`q` window whose edges also match across both wraparounds. Unfolded
/// it tiles the plane with periods `(p, 0)` and `(0, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusTiling {
    pub p: usize,
    pub q: usize,
    pub cells: Tiling,
}

/// Outcome of a bounded period search. Finding nothing is not a proof of
/// aperiodicity, hence the name of the second variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodResult {
    Found(TorusTiling),
    NoneUpToBound { max_p: usize, max_q: usize },
}

/// First `p`×`q` torus tiling (width `p`, height `q`), in the same order as
/// [`solve_rect`].
pub fn solve_torus(ts: &TileSet, p: usize, q: usize) -> Option<TorusTiling> {
    assert!(p >= 1 && q >= 1, "torus dimensions must be positive");
    let req = SolveRequest::new(ts, p, q).wrap(true, true);
    solve_rect(&req)
        .expect("an unpinned torus request is well formed")
        .map(|cells| TorusTiling { p, q, cells })
}

/// Smallest torus within the bounds, ordered by area and then by `p`.
pub fn find_period(ts: &TileSet, max_p: usize, max_q: usize) -> PeriodResult {
    assert!(max_p >= 1 && max_q >= 1, "bounds must be positive");
    let mut dims: Vec<(usize, usize)> = (1..=max_p)
        .flat_map(|p| (1..=max_q).map(move |q| (p, q)))
        .collect();
    dims.sort_by_key(|&(p, q)| (p * q, p));
    for (p, q) in dims {
        if let Some(t) = solve_torus(ts, p, q) {
            return PeriodResult::Found(t);
        }
    }
    PeriodResult::NoneUpToBound { max_p, max_q }
}
