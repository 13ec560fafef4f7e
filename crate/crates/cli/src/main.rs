//! `wangforge`: build, solve and render Wang tile problems from the shell.
//!
//! Exit status is 0 on success, 1 when the question has a negative answer
//! (no tiling, no period up to the bound, undecodable tiling) and 2 on bad
//! usage or unreadable input.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wangforge_core::compilers::{
    compile_eca_hex, compile_eca_wang, compile_tm_with, compile_tree, decode_eca_hex, decode_eca_wang, decode_tm_rows,
    grow_spokes_patch, recover_path, recover_path_from, solve_tree, tile_eca_hex, tile_eca_wang, CompiledTree,
    TmOptions, TreeKind,
};
use wangforge_core::machines::{
    eca_run, fixtures, format_bits, parse_bits, permutivity, tag_run, tm_run, EcaRule, TagSystem, TuringMachine,
};
use wangforge_core::render::{render, RenderFormat, RenderOptions, Subject};
use wangforge_core::solver::{
    find_period, max_tileable_height, solve_rect, solve_torus, Pin, PeriodResult, SolveRequest,
};
use wangforge_core::tiles::BUILTIN_NAMES;
use wangforge_core::trees::{from_predicate, node_to_string, normalize, MembershipTable, Predicate};
use wangforge_core::{builtin, TileSet, Tiling};

/// A negative answer rather than a malformed request.
#[derive(Debug)]
struct Domain(String);

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Domain {}

fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Domain(msg.into()).into())
}

#[derive(Parser)]
#[command(name = "wangforge", version, about = "Wang tiles: compilers, solver, period search and renderers")]
struct Cli {
    /// Machine-readable JSON on stdout where a command supports it.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in tilesets, or print one as JSON.
    Builtin { name: Option<String> },
    /// Compile a machine, tree or automaton to a tileset.
    #[command(subcommand)]
    Compile(CompileCmd),
    /// Lexicographically first tiling of a rectangle.
    Solve(SolveArgs),
    /// Smallest torus tiling up to a bound.
    Period {
        #[arg(long)]
        tileset: String,
        #[arg(long)]
        max: usize,
    },
    /// Tiling of one p×q torus.
    Torus {
        #[arg(long)]
        tileset: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Run a Turing machine directly, or through its tiling with --tiled.
    TmRun {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Decode the rows of a solved tiling instead of simulating.
        #[arg(long)]
        tiled: bool,
        #[arg(long, default_value_t = 50)]
        width: usize,
    },
    #[command(subcommand)]
    Eca(EcaCmd),
    #[command(subcommand)]
    Tag(TagCmd),
    /// Read the encoded path out of a solved tree tiling.
    RecoverPath {
        /// Compiled tree JSON from `compile tree`.
        #[arg(long)]
        tileset: PathBuf,
        /// Tiling JSON; solved in the default window when omitted.
        #[arg(long)]
        tiling: Option<PathBuf>,
        /// Start the walk here instead of the first tiled cell.
        #[arg(long, value_parser = parse_point)]
        start: Option<(usize, usize)>,
    },
    /// Draw a tileset or a tiling.
    Render {
        #[arg(long)]
        tileset: String,
        #[arg(long)]
        tiling: Option<PathBuf>,
        #[command(flatten)]
        out: RenderArgs,
    },
}

#[derive(Args, Clone)]
struct RenderArgs {
    #[arg(long, default_value = "svg")]
    format: RenderFormat,
    #[arg(long, default_value_t = 40)]
    cell: u32,
    #[arg(long)]
    labels: bool,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CompileCmd {
    Tm {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long, default_value_t = 50)]
        width: usize,
        #[arg(long)]
        reachable_only: bool,
    },
    Tree {
        #[arg(long, default_value = "ait")]
        kind: TreeKind,
        #[command(flatten)]
        tree: TreeArgs,
    },
    Eca {
        #[arg(long)]
        rule: u8,
        #[arg(long, default_value = "wang")]
        geometry: EcaGeometry,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum EcaGeometry {
    Wang,
    Hex,
}

#[derive(Args, Clone)]
struct MachineArgs {
    /// Machine JSON file, or one of the fixtures `halter`, `mover`, `bb2`.
    #[arg(long)]
    machine: String,
    /// Input word, one character per symbol.
    #[arg(long, default_value = "")]
    input: String,
}

#[derive(Args, Clone)]
struct TreeArgs {
    /// Membership table JSON.
    #[arg(long, conflicts_with = "predicate")]
    table: Option<PathBuf>,
    /// `all`, `path:010`, `comb:k`, `random:seed:density` or `random`.
    #[arg(long)]
    predicate: Option<String>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 2)]
    branching: u32,
    /// Seed for a bare `random` predicate.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    tileset: String,
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    /// `x,y=index` or `x,y=*` for a wildcard; repeatable.
    #[arg(long = "pin", value_parser = parse_pin)]
    pins: Vec<Pin>,
    /// Let free cells stay untiled.
    #[arg(long)]
    wildcard: bool,
    /// Cap on free wildcard cells.
    #[arg(long, requires = "wildcard")]
    budget: Option<usize>,
    #[arg(long)]
    wrap_x: bool,
    #[arg(long)]
    wrap_y: bool,
    /// Output as `json` (default) or a render format.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EcaCmd {
    /// Simulate directly.
    Run {
        #[arg(long)]
        rule: u8,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 8)]
        rows: usize,
    },
    /// Tile with the 15 hexagon and lozenge tiles, print the decoded rows.
    Hex {
        #[arg(long)]
        rule: u8,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long)]
        width: Option<usize>,
        /// Also draw the tiling (svg only).
        #[arg(long)]
        render: Option<RenderFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tile with the 18 Wang tiles, print the decoded rows.
    Wang {
        #[arg(long)]
        rule: u8,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long)]
        render: Option<RenderFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TagCmd {
    Run {
        /// Comma-separated productions, e.g. `101,110,10`; empty ones allowed.
        #[arg(long)]
        productions: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
}

fn parse_point(s: &str) -> Result<(usize, usize), String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    Ok((
        x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?,
        y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?,
    ))
}

fn parse_pin(s: &str) -> Result<Pin, String> {
    let (at, val) = s.split_once('=').ok_or("expected x,y=index")?;
    let (x, y) = parse_point(at)?;
    match val.trim() {
        "*" => Ok(Pin::wildcard(x, y)),
        v => v.parse().map(|i| Pin::tile(x, y, i)).map_err(|_| format!("bad tile index {v:?}")),
    }
}

fn bits(s: &str) -> Result<Vec<u8>> {
    match parse_bits(s) {
        Some(b) if !b.is_empty() => Ok(b),
        _ => bail!("expected a non-empty bit string, got {s:?}"),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_tileset(spec: &str) -> Result<TileSet> {
    if BUILTIN_NAMES.contains(&spec) {
        return Ok(builtin(spec)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("{spec:?} is neither a file nor a built-in ({})", BUILTIN_NAMES.join(", "));
    }
    Ok(TileSet::from_json(&read(path)?)?)
}

fn load_machine(m: &MachineArgs) -> Result<(TuringMachine, Vec<String>)> {
    let tm = match m.machine.as_str() {
        "halter" => fixtures::immediate_halter(),
        "mover" => fixtures::right_mover(),
        "bb2" => fixtures::busy_beaver2(),
        path => TuringMachine::from_json(&read(Path::new(path))?)?,
    };
    let input = tm.parse_input(&m.input)?;
    Ok((tm, input))
}

fn load_tree(a: &TreeArgs) -> Result<MembershipTable> {
    if let Some(p) = &a.table {
        return Ok(MembershipTable::from_json(&read(p)?)?);
    }
    let pred = match a.predicate.as_deref() {
        None => bail!("give --table or --predicate"),
        Some("random") => Predicate::Random { seed: a.seed, density: 0.5 },
        Some(p) => p.parse()?,
    };
    Ok(from_predicate(&pred, a.depth, a.branching)?)
}

/// Writes to `--out` when given, stdout otherwise.
fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes)?;
            so.flush()?;
            Ok(())
        }
    }
}

fn println_out(s: impl AsRef<str>) -> Result<()> {
    let mut so = std::io::stdout().lock();
    writeln!(so, "{}", s.as_ref())?;
    Ok(())
}

fn render_opts(a: &RenderArgs) -> RenderOptions {
    let mut o = RenderOptions::new(a.format);
    o.cell_size = a.cell;
    o.show_labels = a.labels;
    o
}

fn output_tiling(ts: &TileSet, t: &Tiling, format: &str, out: Option<&Path>) -> Result<()> {
    if format == "json" {
        return emit(out, format!("{}\n", t.to_json()).as_bytes());
    }
    let f: RenderFormat = format.parse().map_err(|e: String| anyhow!(e))?;
    emit(out, &render(Subject::Tiling(ts, t), &RenderOptions::new(f))?)
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Builtin { name: None } => {
            for n in BUILTIN_NAMES {
                println_out(n)?;
            }
        }
        Cmd::Builtin { name: Some(n) } => println_out(builtin(&n)?.to_json())?,

        Cmd::Compile(CompileCmd::Tm { machine, width, reachable_only }) => {
            let (tm, input) = load_machine(&machine)?;
            let ct = compile_tm_with(&tm, &input, width, TmOptions { reachable_only })?;
            println_out(ct.to_json())?;
        }
        Cmd::Compile(CompileCmd::Tree { kind, tree }) => {
            let (t, report) = normalize(&load_tree(&tree)?);
            if !report.is_clean() {
                eprintln!("normalized: dropped {} node(s) without a parent", report.deleted.len());
            }
            println_out(compile_tree(&t, kind)?.to_json())?;
        }
        Cmd::Compile(CompileCmd::Eca { rule, geometry }) => match geometry {
            EcaGeometry::Wang => println_out(compile_eca_wang(EcaRule(rule)).to_json())?,
            EcaGeometry::Hex => println_out(compile_eca_hex(EcaRule(rule)).to_json())?,
        },

        Cmd::Solve(a) => {
            let ts = load_tileset(&a.tileset)?;
            let mut req = SolveRequest::new(&ts, a.width, a.height).pins(a.pins.clone()).wrap(a.wrap_x, a.wrap_y);
            if a.wildcard {
                req = req.wildcards(a.budget);
            }
            match solve_rect(&req)? {
                Some(t) => output_tiling(&ts, &t, &a.format, a.out.as_deref())?,
                None => return domain(format!("no tiling of {}x{} exists", a.width, a.height)),
            }
        }
        Cmd::Period { tileset, max } => {
            if max == 0 {
                bail!("--max must be positive");
            }
            let ts = load_tileset(&tileset)?;
            match find_period(&ts, max, max) {
                PeriodResult::Found(t) => {
                    if json {
                        let tiling: serde_json::Value = serde_json::from_str(&t.cells.to_json())?;
                        println_out(serde_json::to_string_pretty(&json!({"period": [t.p, t.q], "tiling": tiling}))?)?;
                    } else {
                        println_out(format!("({},{})", t.p, t.q))?;
                    }
                }
                PeriodResult::NoneUpToBound { max_p, max_q } => {
                    if json {
                        println_out(json!({"period": null, "bound": [max_p, max_q]}).to_string())?;
                    } else {
                        println_out(format!("none up to ({max_p},{max_q})"))?;
                    }
                    return domain("no period found within the bound");
                }
            }
        }
        Cmd::Torus { tileset, p, q } => {
            if p == 0 || q == 0 {
                bail!("torus dimensions must be positive");
            }
            let ts = load_tileset(&tileset)?;
            match solve_torus(&ts, p, q) {
                Some(t) => println_out(t.cells.to_json())?,
                None => return domain(format!("no {p}x{q} torus tiling")),
            }
        }
        Cmd::TmRun { machine, steps, tiled, width } => {
            if steps == 0 {
                bail!("--steps must be positive");
            }
            let (tm, input) = load_machine(&machine)?;
            let configs = if tiled {
                let ct = compile_tm_with(&tm, &input, width, TmOptions::default())?;
                let h = max_tileable_height(&ct.tileset, width, &ct.first_row_pins, steps + 1)?;
                let req = SolveRequest::new(&ct.tileset, width, h).pins(ct.first_row_pins.clone());
                let t = solve_rect(&req)?.ok_or_else(|| anyhow!("tileable height {h} did not re-solve"))?;
                decode_tm_rows(&ct, &t).map_err(|e| Domain(e.to_string()))?
            } else {
                tm_run(&tm, &input, steps).configs
            };
            if json {
                let rows: Vec<_> = configs
                    .iter()
                    .map(|c| json!({"step": c.step, "state": c.state, "head": c.head, "tape": c.render(&tm)}))
                    .collect();
                println_out(serde_json::to_string_pretty(&rows)?)?;
            } else {
                for c in &configs {
                    println_out(c.render(&tm))?;
                }
            }
        }

        Cmd::Eca(EcaCmd::Run { rule, input, rows }) => {
            let rule = EcaRule(rule);
            let out: Vec<String> = eca_run(rule, &bits(&input)?, rows).iter().map(|r| format_bits(r)).collect();
            if json {
                let class = format!("{:?}", permutivity(rule));
                println_out(json!({"rule": rule.number(), "permutivity": class, "rows": out}).to_string())?;
            } else {
                for r in out {
                    println_out(r)?;
                }
            }
        }
        Cmd::Eca(EcaCmd::Hex { rule, input, rows, width, render: fmt, out }) => {
            let hs = compile_eca_hex(EcaRule(rule));
            let ht = tile_eca_hex(&hs, &bits(&input)?, rows, width)?;
            if let Some(f) = fmt {
                emit(out.as_deref(), &render(Subject::Hex(&hs, &ht), &RenderOptions::new(f))?)?;
            }
            print_rows(&decode_eca_hex(&hs, &ht).map_err(|e| Domain(e.to_string()))?, json)?;
        }
        Cmd::Eca(EcaCmd::Wang { rule, input, rows, render: fmt, out }) => {
            let ew = compile_eca_wang(EcaRule(rule));
            let t = tile_eca_wang(&ew, &bits(&input)?, rows)?;
            if let Some(f) = fmt {
                emit(out.as_deref(), &render(Subject::Tiling(&ew.tileset, &t), &RenderOptions::new(f))?)?;
            }
            print_rows(&decode_eca_wang(&ew, &t).map_err(|e| Domain(e.to_string()))?, json)?;
        }

        Cmd::Tag(TagCmd::Run { productions, word, steps }) => {
            let prods = productions
                .split(',')
                .map(|p| if p.is_empty() { Some(Vec::new()) } else { parse_bits(p) })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| anyhow!("productions must be bit strings"))?;
            let word = if word.is_empty() { Vec::new() } else { bits(&word)? };
            let trace = tag_run(&TagSystem::new(prods), &word, steps);
            if json {
                let states: Vec<_> = trace.states.iter().map(|s| json!({"i": s.i, "d": format_bits(&s.d)})).collect();
                println_out(json!({"states": states, "halted": trace.halted}).to_string())?;
            } else {
                for s in &trace.states {
                    println_out(format!("{} {}", s.i, format_bits(&s.d)))?;
                }
            }
        }

        Cmd::RecoverPath { tileset, tiling, start } => {
            let ct = CompiledTree::from_json(&read(&tileset)?).map_err(|e| anyhow!(e))?;
            let t = match tiling {
                Some(p) => Tiling::from_json(&read(&p)?)?,
                None => match ct.kind {
                    TreeKind::Spokes => grow_spokes_patch(&ct).1,
                    _ => match solve_tree(&ct) {
                        Some(t) => t,
                        None => return domain("the pinned window does not tile: no path reaches the depth bound"),
                    },
                },
            };
            let path = match start {
                Some(s) => recover_path_from(&ct, &t, s),
                None => recover_path(&ct, &t),
            }
            .map_err(|e| Domain(e.to_string()))?;
            if json {
                println_out(json!({"path": node_to_string(&path), "length": path.len()}).to_string())?;
            } else {
                println_out(if path.is_empty() { "λ".to_string() } else { node_to_string(&path) })?;
            }
        }

        Cmd::Render { tileset, tiling, out } => {
            let ts = load_tileset(&tileset)?;
            let opts = render_opts(&out);
            let bytes = match tiling {
                Some(p) => render(Subject::Tiling(&ts, &Tiling::from_json(&read(&p)?)?), &opts)?,
                None => render(Subject::TileSet(&ts), &opts)?,
            };
            emit(out.out.as_deref(), &bytes)?;
        }
    }
    Ok(())
}

fn print_rows(rows: &[String], json: bool) -> Result<()> {
    if json {
        println_out(json!({ "rows": rows }).to_string())
    } else {
        rows.iter().try_for_each(println_out)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Domain>() => {
            eprintln!("wangforge: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("wangforge: {e:#}");
            ExitCode::from(2)
        }
    }
}
