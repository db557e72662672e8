//! `sdagw`: S-DAG width, cops-and-robber game graphs and structured parity
//! game solving from the command line. Every command prints JSON; `--pretty`
//! switches to indented JSON. Exit status 0 means success, 2 a negative
//! answer (width bound exceeded, invalid S-DAG), 1 an error.

mod check;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cr_game::{build_game_graph_with_budget, solve_game, state_budget, state_bound, GameState};
use game_sdag_bridge::{compute_sdag_width, WidthOutcome};
use graph_core::{gen_digraph, parse_edge_list, write_edge_list, Digraph, GenModel};
use parity_core::{parse_pgsolver_with, random_game, write_pgsolver, zielonka_solve, ParityGame, ParseOptions, Winners};
use parity_structured::{solve_parity_structured, StructuredOutcome};
use sdag::{nicefy, validate_nice, validate_sdag, SDag};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "sdagw", version, about = "S-DAG width and structured parity game solving")]
struct Cli {
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum S-DAG width of a digraph in edge-list format.
    Width {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Also emit the nicefied S-DAG.
        #[arg(long)]
        nice: bool,
    },
    /// Checks an S-DAG (JSON) against a digraph.
    ValidateSdag {
        graph: PathBuf,
        sdag: PathBuf,
        /// Additionally require the nice shape.
        #[arg(long)]
        nice: bool,
    },
    /// Rewrites an S-DAG into nice form.
    Nicefy {
        graph: PathBuf,
        sdag: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Builds the size-k cops-and-robber game graph and its winners.
    GameGraph {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        emit_dot: bool,
    },
    /// Solves a parity game in PGSolver format.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Sdag)]
        engine: Engine,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Write the frontier of every S-DAG node to this file.
        #[arg(long)]
        emit_frontiers: Option<PathBuf>,
        /// Replace self-loops `v -> v` by two-step cycles through fresh vertices.
        #[arg(long)]
        unroll_loops: bool,
    },
    /// Deterministic generators.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
    /// Runs the seeded property and oracle suites; nonzero on any mismatch.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep size, e.g. `n=8` for arenas up to eight vertices.
        #[arg(long, default_value = "n=6")]
        scale: String,
        /// Wall-clock budget in seconds; exceeding it is a failure.
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
        /// Deliberately break one component to confirm the suite notices.
        #[arg(long, value_enum, hide = true)]
        inject: Option<check::Fault>,
    },
}

#[derive(Subcommand, Debug)]
enum GenWhat {
    /// A digraph in edge-list format.
    Graph {
        /// `erdos:P`, `cycle`, `path`, `dag:P`, `banded:W` or `banded:W:P`.
        #[arg(long)]
        model: GenModel,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A parity game in PGSolver format.
    Game {
        #[arg(long)]
        model: GenModel,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        max_priority: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Sdag,
    Zielonka,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Width { graph, max_k, nice } => cmd_width(cli, graph, *max_k, *nice),
        Command::ValidateSdag { graph, sdag, nice } => cmd_validate(cli, graph, sdag, *nice),
        Command::Nicefy { graph, sdag, output } => {
            let d = read_graph(graph)?;
            let s = read_sdag(sdag, &d)?;
            let t = nicefy(&d, &s)?;
            write_out(output.as_deref(), &if cli.pretty { t.to_json_pretty() } else { t.to_json() })?;
            Ok(0)
        }
        Command::GameGraph { graph, k, emit_dot } => cmd_game_graph(cli, graph, *k, *emit_dot),
        Command::Solve { game, engine, max_k, emit_frontiers, unroll_loops } => cmd_solve(cli, game, *engine, *max_k, emit_frontiers.as_deref(), *unroll_loops),
        Command::Gen { what } => {
            match what {
                GenWhat::Graph { model, n, seed, output } => write_out(output.as_deref(), &write_edge_list(&gen_digraph(*model, *n, *seed)?))?,
                GenWhat::Game { model, n, max_priority, seed, output } => {
                    write_out(output.as_deref(), &write_pgsolver(&random_game(*model, *n, *max_priority, *seed)?))?
                }
            }
            Ok(0)
        }
        Command::OracleCheck { seed, scale, budget_secs, inject } => {
            let n = parse_scale(scale)?;
            let report = check::run(*seed, n, std::time::Duration::from_secs(*budget_secs), *inject)?;
            let ok = report["ok"].as_bool() == Some(true);
            print_json(cli, &report);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn parse_scale(s: &str) -> Result<usize> {
    let v = s.strip_prefix("n=").with_context(|| format!("scale `{s}` is not of the form n=N"))?;
    let n: usize = v.parse().with_context(|| format!("scale `{s}` is not of the form n=N"))?;
    if !(3..=12).contains(&n) {
        bail!("scale n must lie in 3..=12");
    }
    Ok(n)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Digraph> {
    parse_edge_list(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_sdag(path: &Path, d: &Digraph) -> Result<SDag> {
    SDag::from_json(&read_text(path)?, d).with_context(|| format!("in {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            emit(text);
            if !text.ends_with('\n') {
                emit("\n");
            }
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn print_json(cli: &Cli, v: &Value) {
    if cli.pretty {
        emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable")));
    } else {
        emit(&format!("{v}\n"));
    }
}

fn sdag_value(s: &SDag) -> Value {
    serde_json::from_str(&s.to_json()).expect("S-DAG JSON parses")
}

fn cmd_width(cli: &Cli, path: &Path, max_k: usize, want_nice: bool) -> Result<u8> {
    let d = read_graph(path)?;
    match compute_sdag_width(&d, max_k, want_nice)? {
        WidthOutcome::Exceeded { max_k } => {
            print_json(cli, &json!({ "k": null, "exceeded": true, "max_k": max_k }));
            Ok(2)
        }
        WidthOutcome::Found { k, sdag, nice, robber_start_below } => {
            let stats = match build_game_graph_with_budget(&d, k, state_budget()) {
                Ok(g) => json!({ "states": g.len(), "moves": g.move_count(), "state_bound": state_bound(d.vertex_count(), k).to_string() }),
                Err(e) => json!({ "skipped": e.to_string() }),
            };
            let mut out = json!({
                "k": k,
                "exceeded": false,
                "sdag": sdag_value(&sdag),
                "robber_start_below": robber_start_below,
                "game_stats": stats,
            });
            if let Some(t) = nice {
                out["nice"] = sdag_value(&t);
            }
            print_json(cli, &out);
            Ok(0)
        }
    }
}

fn cmd_validate(cli: &Cli, graph: &Path, sdag: &Path, want_nice: bool) -> Result<u8> {
    let d = read_graph(graph)?;
    let s = read_sdag(sdag, &d)?;
    let rep = validate_sdag(&d, &s);
    let mut valid = rep.is_valid();
    let mut out = json!({ "valid": valid, "width": s.width(), "nodes": s.node_count(), "report": format!("{rep:?}") });
    if want_nice {
        let nr = validate_nice(&d, &s);
        out["nice"] = json!(nr.is_nice());
        out["nice_report"] = json!(format!("{nr:?}"));
        valid &= nr.is_nice();
    }
    print_json(cli, &out);
    Ok(if valid { 0 } else { 2 })
}

fn cmd_game_graph(cli: &Cli, path: &Path, k: usize, emit_dot: bool) -> Result<u8> {
    let d = read_graph(path)?;
    let g = build_game_graph_with_budget(&d, k, state_budget())?;
    let sol = solve_game(&g);
    if emit_dot {
        let mut s = String::from("digraph game {\n");
        for (i, st) in g.states.iter().enumerate() {
            let shape = if st.is_cigs() { "box" } else { "ellipse" };
            let colour = if sol.cop_wins[i] { "blue" } else { "red" };
            writeln!(s, "  {i} [label=\"{st}\", shape={shape}, color={colour}];").unwrap();
        }
        for i in 0..g.len() {
            for t in g.successors(i) {
                writeln!(s, "  {i} -> {t};").unwrap();
            }
        }
        s.push_str("}\n");
        emit(&s);
        return Ok(0);
    }
    let states: Vec<Value> = g
        .states
        .iter()
        .enumerate()
        .map(|(i, st)| {
            let kind = match st {
                GameState::Cigs { .. } => "cigs",
                GameState::Rigs1 { .. } => "rigs1",
                GameState::Rigs2 { .. } => "rigs2",
            };
            json!({ "id": i, "kind": kind, "state": st.to_string(), "cop_wins": sol.cop_wins[i], "successors": g.successors(i) })
        })
        .collect();
    print_json(
        cli,
        &json!({
            "k": k,
            "state_count": g.len(),
            "move_count": g.move_count(),
            "state_bound": state_bound(d.vertex_count(), k).to_string(),
            "starts": g.starts,
            "cop_wins_all": sol.cop_wins_all(&g),
            "violations": g.violations,
            "states": states,
        }),
    );
    Ok(0)
}

fn winners_value(g: &ParityGame, w: &Winners) -> Value {
    let names: Vec<&str> = (0..g.vertex_count()).map(|v| if w.even.contains(v) { "even" } else { "odd" }).collect();
    json!({ "even": w.even.to_vec(), "odd": w.odd.to_vec(), "winner": names })
}

fn cmd_solve(cli: &Cli, path: &Path, engine: Engine, max_k: usize, emit: Option<&Path>, unroll_loops: bool) -> Result<u8> {
    let g = parse_pgsolver_with(&read_text(path)?, ParseOptions { unroll_loops }).with_context(|| format!("in {}", path.display()))?;
    let mut out = json!({ "vertices": g.vertex_count() });
    let mut structured = None;
    if engine != Engine::Zielonka {
        match solve_parity_structured(&g, max_k)? {
            StructuredOutcome::WidthExceeded { max_k } => {
                out["exceeded"] = json!(true);
                out["max_k"] = json!(max_k);
                print_json(cli, &out);
                return Ok(2);
            }
            StructuredOutcome::Solved(sol) => {
                if let Some(p) = emit {
                    let nodes: Vec<Value> = sol
                        .frontiers
                        .iter()
                        .enumerate()
                        .map(|(t, fr)| {
                            let tuples: Vec<Value> = fr.iter().map(|(v, r)| json!({ "start": v, "result": r.to_string() })).collect();
                            json!({ "node": t, "label": sol.sdag.label(t), "frontier": tuples })
                        })
                        .collect();
                    let doc = json!({ "k": sol.k, "sdag": sdag_value(&sol.sdag), "frontiers": nodes });
                    std::fs::write(p, serde_json::to_string_pretty(&doc)?).with_context(|| format!("cannot write {}", p.display()))?;
                }
                out["k"] = json!(sol.k);
                out["sdag"] = winners_value(&g, &sol.winners);
                structured = Some(sol.winners);
            }
        }
    }
    if engine != Engine::Sdag {
        let z = zielonka_solve(&g);
        out["zielonka"] = winners_value(&g, &z);
        if let Some(s) = &structured {
            let agree = *s == z;
            out["agree"] = json!(agree);
            if !agree {
                print_json(cli, &out);
                bail!("the engines disagree");
            }
        }
    }
    print_json(cli, &out);
    Ok(0)
}
