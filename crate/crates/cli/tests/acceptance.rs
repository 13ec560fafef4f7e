//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines land on stdout in order.
//! The process fails if any criterion fails other than those listed in
//! `KNOWN_UNREACHABLE`.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wangforge_core::compilers::*;
use wangforge_core::machines::{
    eca_run, fixtures, format_bits, permutivity, tag_run, tm_run, EcaRule, PermutivityClass, TagSystem,
};
use wangforge_core::solver::{
    block_tileable, enumerate_tilings, find_period, max_tileable_height, solve_rect, solve_torus, PeriodResult,
    SolveRequest, TieBreak,
};
use wangforge_core::trees::{from_predicate, normalize, FiniteTree, Node, Predicate};
use wangforge_core::{builtin, disjoint_union, is_valid_tiling, matches, Direction, TileSet, TileSetMeta, WangTile};

/// Criteria whose expected values cannot be produced by a faithful
/// implementation; they are still run and reported.
const KNOWN_UNREACHABLE: &[usize] = &[2];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows_of(rows: &[Vec<u8>]) -> Vec<String> {
    rows.iter().map(|r| format_bits(r)).collect()
}

fn c1_rule30_table() -> Outcome {
    let want = [(7, 0), (6, 0), (5, 0), (4, 1), (3, 1), (2, 1), (1, 1), (0, 0)];
    let r = EcaRule(30);
    for (n, f) in want {
        let got = r.table(n >> 2 & 1, n >> 1 & 1, n & 1);
        ensure(got == f, || format!("{n:03b} -> {got}, want {f}"))?;
    }
    Ok("111..000 -> 0,0,0,1,1,1,1,0".into())
}

fn c2_tag_trace() -> Outcome {
    let want = ["11", "1101", "101110", "0111011", "111011", "11011110"];
    let stated = TagSystem::new(vec![vec![1, 0, 1], vec![1, 1, 0], vec![1, 0]]);
    let got: Vec<String> = tag_run(&stated, &[1, 1], 5).states.iter().map(|s| format_bits(&s.d)).collect();
    // With a last production of 11 the expected column is reproduced.
    let alt = TagSystem::new(vec![vec![1, 0, 1], vec![1, 1, 0], vec![1, 1]]);
    let alt_got: Vec<String> = tag_run(&alt, &[1, 1], 5).states.iter().map(|s| format_bits(&s.d)).collect();
    let note = if alt_got == want { "P=[101,110,11] reproduces it" } else { "P=[101,110,11] does not either" };
    if got == want {
        Ok(format!("{} rows match", got.len()))
    } else {
        Err(format!("P=[101,110,10] gives {}; {note}", got.join(",")))
    }
}

fn c3_eca_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    for rule in [30u8, 90, 110] {
        let ew = compile_eca_wang(EcaRule(rule));
        let hs = compile_eca_hex(EcaRule(rule));
        for _ in 0..20 {
            let input: Vec<u8> = (0..12).map(|_| rng.gen_range(0..2)).collect();
            let want = rows_of(&eca_run(EcaRule(rule), &input, 12));
            let wt = tile_eca_wang(&ew, &input, 12).map_err(|e| e.to_string())?;
            ensure(is_valid_tiling(&ew.tileset, &wt).unwrap().ok, || format!("rule {rule}: invalid Wang tiling"))?;
            ensure(decode_eca_wang(&ew, &wt).ok() == Some(want.clone()), || format!("rule {rule}: Wang rows differ"))?;
            let ht = tile_eca_hex(&hs, &input, 12, None).map_err(|e| e.to_string())?;
            is_valid_hex_tiling(&hs, &ht).map_err(|e| format!("rule {rule}: {e}"))?;
            ensure(decode_eca_hex(&hs, &ht).ok() == Some(want), || format!("rule {rule}: hex rows differ"))?;
            runs += 1;
        }
    }
    for n in 0..=255u8 {
        let (w, h) = (compile_eca_wang(EcaRule(n)).tileset.len(), compile_eca_hex(EcaRule(n)).len());
        ensure(w == 18 && h == 15, || format!("rule {n}: {w} Wang, {h} hex tiles"))?;
    }
    Ok(format!("{runs} inputs x 2 geometries; sizes 18/15 for all rules"))
}

fn c4_permutivity() -> Outcome {
    for n in 0..=255u8 {
        // Bit k of the rule number is f at neighbourhood k = 4a+2b+c.
        let (lo, hi) = (n & 0x0f, n >> 4);
        let left = lo ^ hi == 0x0f;
        let right = (n ^ (n >> 1)) & 0x55 == 0x55;
        let want = match (left, right) {
            (true, true) => PermutivityClass::Both,
            (true, false) => PermutivityClass::Leftmost,
            (false, true) => PermutivityClass::Rightmost,
            (false, false) => PermutivityClass::Neither,
        };
        ensure(permutivity(EcaRule(n)) == want, || format!("rule {n}: {:?} vs {want:?}", permutivity(EcaRule(n))))?;
    }
    let named = [(30, PermutivityClass::Leftmost), (90, PermutivityClass::Both), (110, PermutivityClass::Neither)];
    for (n, c) in named {
        ensure(permutivity(EcaRule(n)) == c, || format!("rule {n} is {:?}", permutivity(EcaRule(n))))?;
    }
    Ok("256 rules; 30 Leftmost, 90 Both, 110 Neither".into())
}

fn c5_tm_tiling() -> Outcome {
    let (cap, width) = (20, 50);
    let machines = [
        ("immediate-halter", fixtures::immediate_halter(), "1"),
        ("right-mover", fixtures::right_mover(), ""),
        ("busy-beaver-2", fixtures::busy_beaver2(), ""),
    ];
    let mut notes = Vec::new();
    for (name, tm, input) in machines {
        let input = tm.parse_input(input).unwrap();
        let ct = compile_tm(&tm, &input, width).map_err(|e| e.to_string())?;
        let h = max_tileable_height(&ct.tileset, width, &ct.first_row_pins, cap).map_err(|e| e.to_string())?;
        let trace = tm_run(&tm, &input, cap);
        let halts = trace.halt_step().is_some();
        ensure(halts == (h < cap), || format!("{name}: halts={halts}, height {h}"))?;
        let req = SolveRequest::new(&ct.tileset, width, h).pins(ct.first_row_pins.clone());
        let t = solve_rect(&req).map_err(|e| e.to_string())?.ok_or(format!("{name}: height {h} does not re-solve"))?;
        let rows = decode_tm_rows(&ct, &t).map_err(|e| format!("{name}: {e}"))?;
        ensure(rows == trace.configs[..h], || format!("{name}: decoded rows differ from the trace"))?;
        notes.push(format!("{name} h={h}"));
    }
    Ok(notes.join(", "))
}

fn random_trees(count: usize, seed: u64) -> Vec<FiniteTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let depth = rng.gen_range(1..=5);
            let branching = rng.gen_range(1..=3);
            let density = rng.gen_range(0.45..0.95);
            let pred = Predicate::Random { seed: rng.gen(), density };
            normalize(&from_predicate(&pred, depth, branching).unwrap()).0
        })
        .collect()
}

fn least_at(t: &FiniteTree, len: usize) -> Option<Node> {
    t.nodes().iter().filter(|n| n.len() == len).min().cloned()
}

fn c6_tree_round_trips() -> Outcome {
    let trees = random_trees(50, 6);
    let mut full = 0;
    for (k, t) in trees.iter().enumerate() {
        let want = least_at(t, t.depth_bound);
        full += want.is_some() as usize;
        let ait = compile_tree(t, TreeKind::Ait).unwrap();
        match (solve_tree(&ait), &want) {
            (Some(sol), Some(p)) => {
                let got = recover_path(&ait, &sol).map_err(|e| format!("tree {k} ait: {e}"))?;
                ensure(&got == p, || format!("tree {k} ait: {got:?} vs {p:?}"))?;
            }
            (None, None) => {}
            (s, _) => return Err(format!("tree {k} ait: solve {} but full path {want:?}", s.is_some())),
        }
        let pit = compile_tree(t, TreeKind::Pit).unwrap();
        match (solve_tree(&pit), &want) {
            (Some(sol), Some(p)) => {
                let got = recover_path(&pit, &sol).map_err(|e| format!("tree {k} pit: {e}"))?;
                ensure(&got == p, || format!("tree {k} pit: {got:?} vs {p:?}"))?;
            }
            (None, None) => {}
            (s, _) => return Err(format!("tree {k} pit: solve {} but full path {want:?}", s.is_some())),
        }
        let sp = compile_tree(t, TreeKind::Spokes).unwrap();
        let (r, sol) = grow_spokes_patch(&sp);
        let longest = t.nodes().iter().map(Vec::len).max().unwrap();
        ensure(r == longest, || format!("tree {k} spokes: radius {r}, longest path {longest}"))?;
        let got = recover_path(&sp, &sol).map_err(|e| format!("tree {k} spokes: {e}"))?;
        let expect = least_at(t, longest).unwrap();
        ensure(got == expect, || format!("tree {k} spokes: {got:?} vs {expect:?}"))?;
        if let Some(p) = &want {
            ensure(&got == p, || format!("tree {k} spokes: {got:?} vs {p:?}"))?;
        }
    }
    Ok(format!("50 trees, {full} with a full-depth path, 3 constructions each"))
}

fn c7_pit_periodicity() -> Outcome {
    for (k, t) in random_trees(20, 7).iter().enumerate() {
        let ct = compile_tree(t, TreeKind::Pit).unwrap();
        let r = t.depth_bound;
        let req = SolveRequest::new(&ct.tileset, 5, 2 * r + 1).pin(2, r, ct.root_index);
        if let Some(sol) = solve_rect(&req).map_err(|e| e.to_string())? {
            for x in 1..5 {
                ensure(sol.column(x) == sol.column(0), || format!("tree {k}: column {x} differs"))?;
            }
        }
    }
    for p in 1..=5usize {
        let path: Node = (0..p).map(|i| (i % 2) as u32).collect();
        let t = FiniteTree::new(p, 2, (0..=p).map(|i| path[..i].to_vec())).unwrap();
        let ct = compile_tree(&t, TreeKind::Pit).unwrap();
        // Horizontal wrap of width 1, the whole column in height 2p+1.
        let req = SolveRequest::new(&ct.tileset, 1, 2 * p + 1).pin(0, p, ct.root_index).wrap(true, false);
        let sol = solve_rect(&req).map_err(|e| e.to_string())?.ok_or(format!("p={p}: cylinder 1x{} fails", 2 * p + 1))?;
        let got = recover_path(&ct, &sol).map_err(|e| e.to_string())?;
        ensure(got == path, || format!("p={p}: recovered {got:?}"))?;
    }
    Ok("columns identical; 1x(2p+1) horizontal wrap tiles for p=1..5".into())
}

fn c8_periods() -> Outcome {
    let single = TileSet::new("one", TileSetMeta::new("test"), vec![WangTile::atoms("a", "b", "a", "b")]).unwrap();
    let period = |ts: &TileSet, m| match find_period(ts, m, m) {
        PeriodResult::Found(t) => Some((t.p, t.q)),
        PeriodResult::NoneUpToBound { .. } => None,
    };
    ensure(period(&single, 3) == Some((1, 1)), || "single tile".into())?;
    let b16 = builtin("binary16").unwrap();
    ensure(period(&b16, 3) == Some((1, 1)), || format!("binary16 gave {:?}", period(&b16, 3)))?;
    for name in ["culik13", "jeandel-rao11"] {
        let ts = builtin(name).unwrap();
        for p in 1..=4 {
            for q in 1..=4 {
                ensure(solve_torus(&ts, p, q).is_none(), || format!("{name} has a {p}x{q} torus"))?;
            }
        }
    }
    Ok("(1,1), (1,1); culik13 and jeandel-rao11 have no torus up to 4x4".into())
}

fn c9_blocks() -> Outcome {
    for name in ["jeandel-rao11", "culik13"] {
        ensure(block_tileable(&builtin(name).unwrap(), 8), || format!("{name} fails 8x8"))?;
    }
    Ok("8x8 blocks for both".into())
}

fn all_tiles(colours: &[&str]) -> Vec<WangTile> {
    let mut v = Vec::new();
    for l in colours {
        for u in colours {
            for r in colours {
                for b in colours {
                    v.push(WangTile::atoms(l, u, r, b));
                }
            }
        }
    }
    v
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

fn agree(ts: &TileSet) -> Result<(), String> {
    for w in 1..=3 {
        for h in 1..=3 {
            let got = solve_rect(&SolveRequest::new(ts, w, h)).map_err(|e| e.to_string())?;
            let want = enumerate_tilings(ts, w, h, 1).map_err(|e| e.to_string())?.into_iter().next();
            if got != want {
                return Err(format!("{w}x{h} on {:?}", ts.tiles().iter().map(|t| t.to_string()).collect::<Vec<_>>()));
            }
        }
    }
    Ok(())
}

fn c10_oracle() -> Outcome {
    let mut sets = 0;
    let mut check = |pool: &[WangTile], ids: &[usize]| -> Result<(), String> {
        let ts = TileSet::new("s", TileSetMeta::new("test"), ids.iter().map(|&i| pool[i].clone()).collect()).unwrap();
        sets += 1;
        agree(&ts)
    };
    let mut err = None;
    let two = all_tiles(&["0", "1"]);
    for k in 1..=5 {
        subsets(two.len(), k, 0, &mut Vec::new(), &mut |ids| {
            if err.is_none() {
                err = check(&two, ids).err();
            }
        });
    }
    let three = all_tiles(&["0", "1", "2"]);
    for k in 1..=2 {
        subsets(three.len(), k, 0, &mut Vec::new(), &mut |ids| {
            if err.is_none() {
                err = check(&three, ids).err();
            }
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..3000 {
        let k = rng.gen_range(3..=5);
        let mut ids: Vec<usize> = Vec::new();
        while ids.len() < k {
            let i = rng.gen_range(0..three.len());
            if !ids.contains(&i) {
                ids.push(i);
            }
        }
        ids.sort();
        if err.is_none() {
            err = check(&three, &ids).err();
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(format!(
            "{sets} sets x 9 regions (exhaustive: 2 colours up to 5 tiles, 3 colours up to 2; sampled: 3 colours 3-5 tiles)"
        )),
    }
}

fn c11_union() -> Outcome {
    let tree = |p: &str, kind| {
        let t = normalize(&from_predicate(&p.parse::<Predicate>().unwrap(), 3, 2).unwrap()).0;
        compile_tree(&t, kind).unwrap().tileset
    };
    let bb2 = fixtures::busy_beaver2();
    let pool = vec![
        builtin("binary16").unwrap(),
        builtin("culik13").unwrap(),
        compile_eca_wang(EcaRule(0)).tileset,
        compile_eca_wang(EcaRule(30)).tileset,
        compile_eca_wang(EcaRule(110)).tileset,
        compile_tm(&bb2, &[], 12).unwrap().tileset,
        tree("comb:2", TreeKind::Ait),
        tree("path:01", TreeKind::Pit),
        tree("all", TreeKind::Spokes),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tori = 0;
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        let u = disjoint_union(&[pool[a].clone(), pool[b].clone()]);
        let split = pool[a].len();
        let tint = |i: usize| i >= split;
        for (i, x) in u.tiles().iter().enumerate() {
            for (j, y) in u.tiles().iter().enumerate() {
                if tint(i) != tint(j) {
                    for d in Direction::ALL {
                        ensure(!matches(x, y, d), || format!("{} meets {} across tints", x, y))?;
                    }
                }
            }
        }
        let reversed = TieBreak::Order((0..u.len()).rev().collect());
        for (p, q) in [(1, 1), (2, 2), (2, 3)] {
            for tb in [TieBreak::Ascending, reversed.clone()] {
                let req = SolveRequest::new(&u, p, q).wrap(true, true).tie_break(tb);
                if let Some(t) = solve_rect(&req).map_err(|e| e.to_string())? {
                    tori += 1;
                    let tints: Vec<bool> = t.cells().iter().filter_map(|c| c.tile()).map(tint).collect();
                    ensure(tints.iter().all(|&x| x == tints[0]), || format!("mixed torus in {}", u.name))?;
                }
            }
        }
    }
    ensure(tori > 0, || "no torus was found, so the single-tint check never ran".into())?;
    Ok(format!("20 pairs, {tori} torus tilings all single-tint"))
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap_or_default()
}

fn c12_determinism() -> Outcome {
    let commands: [(&[&str], &str); 4] = [
        (&["eca", "hex", "--rule", "30", "--input", "00100", "--rows", "8", "--render", "svg"], "eca_hex_rule30.out"),
        (&["solve", "--tileset", "culik13", "--width", "6", "--height", "6"], "culik13_6x6.json"),
        (&["solve", "--tileset", "culik13", "--width", "6", "--height", "6", "--format", "svg"], "culik13_6x6.svg"),
        (&["period", "--tileset", "binary16", "--max", "3"], "binary16_period.txt"),
    ];
    for (args, gold) in commands {
        let mut outs = Vec::new();
        for threads in ["1", "1", "4"] {
            let o = Command::new(env!("CARGO_BIN_EXE_wangforge"))
                .args(args)
                .env("WANGFORGE_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} exited {:?}", o.status.code()))?;
            outs.push(o.stdout);
        }
        ensure(outs.windows(2).all(|w| w[0] == w[1]), || format!("{args:?} differs between runs"))?;
        ensure(outs[0] == golden(gold), || format!("{args:?} differs from {gold}"))?;
    }
    Ok("4 golden commands, 3 runs each (1 and 4 threads), byte-identical".into())
}

type Criterion = (usize, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "rule-30 table", c1_rule30_table),
        (2, "cyclic tag trace", c2_tag_trace),
        (3, "ECA round-trip, both geometries", c3_eca_round_trip),
        (4, "permutivity", c4_permutivity),
        (5, "TM <-> tiling", c5_tm_tiling),
        (6, "tree round-trips", c6_tree_round_trips),
        (7, "PIT periodicity", c7_pit_periodicity),
        (8, "period search", c8_periods),
        (9, "aperiodic sets tile 8x8 blocks", c9_blocks),
        (10, "solver vs oracle", c10_oracle),
        (11, "disjoint union isolation", c11_union),
        (12, "determinism and rendering", c12_determinism),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} ({ms} ms)"),
            Err(why) => {
                println!("FAIL {n:>2} {name}: {why} ({ms} ms)");
                if !KNOWN_UNREACHABLE.contains(&n) {
                    unexpected.push(n);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
