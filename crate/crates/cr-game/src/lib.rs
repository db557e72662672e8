//! The S-DAG cops-and-robber game of size k: states, legal moves, the game
//! graph, winners and cop strategies.

mod canon;
mod graph;
mod state;
mod strategy;

pub use canon::{solve_canonical, CanonMove, CanonicalSolver};
pub use graph::{build_game_graph, build_game_graph_with_budget, solve_game, state_bound, GameGraph, OptionEdges, Solution};
pub use state::{is_retreat, legal_c1_moves, legal_c2_moves, legal_cop_moves, range, robber_moves, GameState, RobberOption};
pub use strategy::{complete_strategy, is_legal_cop_move, simulate_play, CopStrategy, Play, RobberPolicy};

/// Environment variable capping the number of explored states.
pub const BUDGET_ENV: &str = "SDAG_BUDGET_STATES";
/// Budget used when the variable is unset or unparsable.
pub const DEFAULT_BUDGET: usize = 5_000_000;

pub fn state_budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, thiserror::Error)]
pub enum CrError {
    #[error("state budget of {0} exceeded")]
    Budget(usize),
    #[error("strategy is not winning: {0}")]
    NotWinning(String),
    #[error("strategy is incomplete: {0}")]
    Incomplete(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("internal error: {0}")]
    Internal(String),
}
