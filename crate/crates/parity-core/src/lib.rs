//! Parity games, the orders on priorities, outcomes and results, frontiers,
//! a brute-force frontier oracle and a Zielonka solver.

mod frontier;
mod game;
mod order;
mod pgsolver;
mod zielonka;

pub use frontier::{dominance_filter, dominance_filter_with, frontier_oracle, frontier_oracle_with, play_outcome, restricted_result, EvenStrategy, Frontier, DEFAULT_ORACLE_BUDGET};
pub use game::{random_game, ParityGame, Player};
pub use order::{outcome_leq, priority_leq, priority_rank, result_leq, result_leq_with, Outcome, ResultOrder, ResultSet};
pub use pgsolver::{parse_pgsolver, parse_pgsolver_with, write_pgsolver, ParseOptions};
pub use zielonka::{zielonka_solve, Winners};

#[derive(Debug, thiserror::Error)]
pub enum ParityError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} has no successors")]
    DeadEnd(usize),
    #[error("line {line}: self-loop at vertex {vertex}; parity games here are loop-free (use the unroll-loops option to replace it by a 2-cycle)")]
    SelfLoop { vertex: usize, line: usize },
    #[error("strategy enumeration exceeds the budget of {0} strategies")]
    Budget(u128),
    #[error("invalid strategy: {0}")]
    Strategy(String),
    #[error("invalid game: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
}
