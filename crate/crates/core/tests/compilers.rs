use proptest::prelude::*;

use wangforge_core::compilers::*;
use wangforge_core::machines::{eca_run, fixtures, format_bits, tm_run, EcaRule, TuringMachine};
use wangforge_core::solver::{max_tileable_height, solve_rect, solve_torus, SolveRequest};
use wangforge_core::trees::{from_predicate, normalize, FiniteTree, Node, Predicate};
use wangforge_core::{disjoint_union, is_valid_tiling};

fn random_tree(seed: u64, depth: usize, branching: u32, density: f64) -> FiniteTree {
    normalize(&from_predicate(&Predicate::Random { seed, density }, depth, branching).unwrap()).0
}

/// Lexicographically least node at the depth bound, by scanning every node.
fn least_full_path(t: &FiniteTree) -> Option<Node> {
    t.nodes().iter().filter(|n| n.len() == t.depth_bound).min().cloned()
}

fn least_longest(t: &FiniteTree) -> Node {
    let m = t.nodes().iter().map(Vec::len).max().unwrap();
    t.nodes().iter().filter(|n| n.len() == m).min().cloned().unwrap()
}

#[test]
fn tree_round_trips_on_random_trees() {
    for seed in 0..30u64 {
        let depth = 1 + (seed % 4) as usize;
        let branching = 1 + (seed % 3) as u32;
        let t = random_tree(seed, depth, branching, 0.7);
        let want = least_full_path(&t);

        let ait = compile_tree(&t, TreeKind::Ait).unwrap();
        match (&want, solve_tree(&ait)) {
            (Some(p), Some(sol)) => {
                assert!(is_valid_tiling(&ait.tileset, &sol).unwrap().ok);
                assert_eq!(&recover_path(&ait, &sol).unwrap(), p, "seed {seed}");
            }
            (None, None) => {}
            (w, s) => panic!("seed {seed}: expected {w:?}, solve gave {:?}", s.is_some()),
        }

        let pit = compile_tree(&t, TreeKind::Pit).unwrap();
        let sol = solve_tree(&pit);
        assert_eq!(sol.is_some(), want.is_some(), "seed {seed}");
        if let (Some(p), Some(sol)) = (&want, sol) {
            assert_eq!(&recover_path(&pit, &sol).unwrap(), p);
        }

        let sp = compile_tree(&t, TreeKind::Spokes).unwrap();
        let (r, sol) = grow_spokes_patch(&sp);
        let best = least_longest(&t);
        assert_eq!(r, best.len(), "seed {seed}");
        assert_eq!(recover_path(&sp, &sol).unwrap(), best, "seed {seed}");
    }
}

#[test]
fn tree_tile_counts_follow_closed_forms() {
    for seed in 0..20u64 {
        let t = random_tree(seed, 1 + (seed % 5) as usize, 2 + (seed % 2) as u32, 0.6);
        let (n, r) = (t.len(), t.depth_bound);
        let deep = t.nodes().iter().filter(|s| s.len() >= 2).count();
        let q = if r == 0 { 0 } else { 2 * r - 1 };
        assert_eq!(compile_tree(&t, TreeKind::Ait).unwrap().tileset.len(), 1 + 2 * r + 4 * q + 2 * (n - 1));
        assert_eq!(compile_tree(&t, TreeKind::Pit).unwrap().tileset.len(), 1 + 2 * (n - 1));
        assert_eq!(compile_tree(&t, TreeKind::Spokes).unwrap().tileset.len(), 1 + 4 * (n - 1) + 4 * deep);
    }
}

#[test]
fn pit_cylinder_has_horizontal_period_one() {
    for p in 1..=4usize {
        let path: Node = vec![1; p];
        let t = FiniteTree::new(p, 2, (0..=p).map(|i| path[..i].to_vec())).unwrap();
        let ct = compile_tree(&t, TreeKind::Pit).unwrap();
        let req = SolveRequest::new(&ct.tileset, 1, 2 * p + 1).pin(0, p, ct.root_index).wrap(true, false);
        let sol = solve_rect(&req).unwrap().expect("cylinder tiles");
        assert_eq!(recover_path(&ct, &sol).unwrap(), path);
        // The up and down columns never meet, so the full torus is empty.
        assert!(solve_torus(&ct.tileset, 1, 2 * p + 1).is_none());
    }
}

fn machines() -> Vec<(&'static str, TuringMachine, &'static str)> {
    vec![
        ("halter", fixtures::immediate_halter(), "1"),
        ("mover", fixtures::right_mover(), ""),
        ("bb2", fixtures::busy_beaver2(), ""),
    ]
}

#[test]
fn tm_rows_follow_the_trace() {
    let cap = 20;
    for (name, tm, input) in machines() {
        let input = tm.parse_input(input).unwrap();
        let ct = compile_tm(&tm, &input, 50).unwrap();
        let h = max_tileable_height(&ct.tileset, 50, &ct.first_row_pins, cap).unwrap();
        let trace = tm_run(&tm, &input, cap);
        assert_eq!(trace.halt_step().is_some(), h < cap, "{name}");
        let sol = solve_rect(&SolveRequest::new(&ct.tileset, 50, h).pins(ct.first_row_pins.clone()))
            .unwrap()
            .unwrap();
        let rows = decode_tm_rows(&ct, &sol).unwrap();
        assert_eq!(rows, trace.configs[..h].to_vec(), "{name}");
    }
}

#[test]
fn tm_with_input() {
    let tm = fixtures::busy_beaver2();
    let input = tm.parse_input("101").unwrap();
    let ct = compile_tm(&tm, &input, 30).unwrap();
    let h = max_tileable_height(&ct.tileset, 30, &ct.first_row_pins, 20).unwrap();
    let trace = tm_run(&tm, &input, 20);
    assert_eq!(Some(h), trace.halt_step());
    let sol = solve_rect(&SolveRequest::new(&ct.tileset, 30, h).pins(ct.first_row_pins.clone()))
        .unwrap()
        .unwrap();
    assert_eq!(decode_tm_rows(&ct, &sol).unwrap(), trace.configs[..h].to_vec());
}

#[test]
fn compiled_sets_survive_json() {
    let t = random_tree(7, 3, 2, 0.8);
    for kind in [TreeKind::Ait, TreeKind::Pit, TreeKind::Spokes] {
        let ct = compile_tree(&t, kind).unwrap();
        let v: serde_json::Value = serde_json::from_str(&ct.to_json()).unwrap();
        assert_eq!(v["layout"]["roles"].as_array().unwrap().len(), ct.tileset.len());
        let back = wangforge_core::TileSet::from_json(&ct.to_json()).unwrap();
        assert_eq!(back.tiles(), ct.tileset.tiles());
    }
    let hs = compile_eca_hex(EcaRule(30));
    let v: serde_json::Value = serde_json::from_str(&hs.to_json()).unwrap();
    assert_eq!(v["geometry"], "hex15");
    assert_eq!(v["tiles"][14]["role"], "init");
    let ew = compile_eca_wang(EcaRule(30));
    assert_eq!(wangforge_core::TileSet::from_json(&ew.to_json()).unwrap().len(), 18);
}

#[test]
fn union_of_compiled_sets_keeps_tints_apart() {
    let a = compile_eca_wang(EcaRule(30)).tileset;
    let b = compile_tree(&random_tree(3, 2, 2, 1.0), TreeKind::Pit).unwrap().tileset;
    let u = disjoint_union(&[a.clone(), b]);
    for (i, x) in u.tiles().iter().enumerate() {
        for (j, y) in u.tiles().iter().enumerate() {
            let (ti, tj) = (i >= a.len(), j >= a.len());
            if ti != tj {
                for d in wangforge_core::Direction::ALL {
                    assert!(!wangforge_core::matches(x, y, d));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eca_geometries_agree_with_simulation(rule in any::<u8>(), bits in prop::collection::vec(0u8..2, 1..14), rows in 0usize..10) {
        let want: Vec<String> = eca_run(EcaRule(rule), &bits, rows).iter().map(|r| format_bits(r)).collect();
        let ew = compile_eca_wang(EcaRule(rule));
        let wt = tile_eca_wang(&ew, &bits, rows).unwrap();
        prop_assert!(is_valid_tiling(&ew.tileset, &wt).unwrap().ok);
        prop_assert_eq!(decode_eca_wang(&ew, &wt).unwrap(), want.clone());
        let hs = compile_eca_hex(EcaRule(rule));
        let ht = tile_eca_hex(&hs, &bits, rows, None).unwrap();
        prop_assert!(is_valid_hex_tiling(&hs, &ht).is_ok());
        prop_assert_eq!(decode_eca_hex(&hs, &ht).unwrap(), want);
    }

    #[test]
    fn ait_start_cell_does_not_matter(seed in any::<u64>(), x in 0usize..7, y in 0usize..7) {
        let t = random_tree(seed, 3, 2, 0.9);
        let ct = compile_tree(&t, TreeKind::Ait).unwrap();
        if let Some(sol) = solve_tree(&ct) {
            prop_assert_eq!(recover_path_from(&ct, &sol, (x, y)).unwrap(), least_full_path(&t).unwrap());
        }
    }
}
