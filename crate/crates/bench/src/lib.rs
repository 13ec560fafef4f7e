//! Shared fixtures for the criterion benches.

use wangforge_core::compilers::{compile_tree, CompiledTree, TreeKind};
use wangforge_core::trees::{from_predicate, normalize, Predicate};

/// A full tree of the given shape compiled with `kind`.
pub fn full_tree(kind: TreeKind, depth: usize, branching: u32) -> CompiledTree {
    let t = normalize(&from_predicate(&Predicate::All, depth, branching).unwrap()).0;
    compile_tree(&t, kind).unwrap()
}

/// Deterministic pseudo-random bit row.
pub fn bits(len: usize, seed: u64) -> Vec<u8> {
    let mut x = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    (0..len)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x & 1) as u8
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        assert_eq!(bits(16, 1), bits(16, 1));
        assert_eq!(full_tree(TreeKind::Pit, 2, 2).tileset.len(), 1 + 2 * 6);
    }
}
