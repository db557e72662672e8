//! The seeded property and oracle suites behind `sdagw oracle-check`.

use anyhow::Result;
use clap::ValueEnum;
use graph_core::GenModel;
use parity_core::{frontier_oracle, outcome_leq, parse_pgsolver, priority_rank, random_game, write_pgsolver, zielonka_solve, Outcome, ParityGame};
use parity_structured::{solve_parity_structured, SdagView, StructuredOutcome};
use serde_json::{json, Value};
use std::time::{Duration, Instant};

/// A deliberate defect used to confirm that the suite detects breakage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Exits at different vertices compare as if they were at the same one.
    OutcomeLeq,
}

#[derive(Default)]
struct Tally {
    samples: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn value(&self, name: &str) -> Value {
        json!({ "name": name, "samples": self.samples, "failures": self.failures, "first_failure": self.first })
    }
}

/// The outcome order read off its definition: `WinOdd` at the bottom,
/// `WinEven` at the top, exits comparable only at the same vertex.
fn reference_outcome_leq(a: &Outcome, b: &Outcome) -> bool {
    let rank = |o: &Outcome| match o {
        Outcome::WinOdd => 0,
        Outcome::Exit(..) => 1,
        Outcome::WinEven => 2,
    };
    match (a, b) {
        (Outcome::Exit(v, p), Outcome::Exit(w, q)) => v == w && priority_rank(*p) <= priority_rank(*q),
        _ => rank(a) < rank(b) || (rank(a) == rank(b) && rank(a) != 1),
    }
}

fn game(seed: u64, max_n: usize, max_priority: u32) -> Result<ParityGame> {
    let n = 2 + (seed as usize % (max_n - 1));
    let model = match seed % 3 {
        0 => GenModel::Erdos(0.2 + (seed % 5) as f64 * 0.1),
        1 => GenModel::Banded { w: 2, p: 0.5 },
        _ => GenModel::Dag(0.4),
    };
    Ok(random_game(model, n, max_priority, seed)?)
}

/// Runs every suite on arenas of up to `max_n` vertices. The report's `ok`
/// is false on any failure or when the time budget runs out.
pub fn run(seed: u64, max_n: usize, budget: Duration, inject: Option<Fault>) -> Result<Value> {
    let start = Instant::now();
    let leq = |a: &Outcome, b: &Outcome| match inject {
        Some(Fault::OutcomeLeq) => match (a, b) {
            (Outcome::Exit(_, p), Outcome::Exit(_, q)) => priority_rank(*p) <= priority_rank(*q),
            _ => outcome_leq(a, b),
        },
        None => outcome_leq(a, b),
    };

    let mut order = Tally::default();
    let outcomes: Vec<Outcome> = [Outcome::WinOdd, Outcome::WinEven].into_iter().chain((0..3).flat_map(|v| (0..6).map(move |p| Outcome::Exit(v, p)))).collect();
    for a in &outcomes {
        for b in &outcomes {
            order.record(leq(a, b) == reference_outcome_leq(a, b), || format!("{a} ⊴ {b}"));
        }
    }

    let games = 40 * max_n as u64;
    let (mut pg, mut engine, mut solver) = (Tally::default(), Tally::default(), Tally::default());
    let mut timed_out = false;
    for s in seed..seed + games {
        if start.elapsed() > budget {
            timed_out = true;
            break;
        }
        let g = game(s, max_n, 4)?;
        let text = write_pgsolver(&g);
        let back = parse_pgsolver(&text)?;
        pg.record(back == g && write_pgsolver(&back) == text, || format!("seed {s}"));
        let StructuredOutcome::Solved(sol) = solve_parity_structured(&g, max_n)? else {
            solver.record(false, || format!("seed {s}: width above n"));
            continue;
        };
        solver.record(sol.winners == zielonka_solve(&g), || format!("seed {s}"));
        let view = SdagView::new(&sol.sdag)?;
        for d in 0..sol.sdag.node_count() {
            let region = view.region(d);
            if region.len() > 7 {
                continue;
            }
            let oracle = frontier_oracle(&g, &region, view.bag(d))?;
            engine.record(oracle == sol.frontiers[d], || format!("seed {s} node {d}"));
        }
    }
    let checks = vec![order.value("outcome-order"), pg.value("pgsolver-round-trip"), engine.value("engine-vs-oracle"), solver.value("structured-vs-zielonka")];
    let failures: usize = [&order, &pg, &engine, &solver].iter().map(|t| t.failures).sum();
    Ok(json!({
        "seed": seed,
        "max_n": max_n,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "timed_out": timed_out,
        "checks": checks,
        "ok": failures == 0 && !timed_out,
    }))
}
