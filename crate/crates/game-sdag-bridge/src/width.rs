use crate::{strategy_to_sdag, BridgeError};
use cr_game::{range, CanonicalSolver};
use graph_core::{Digraph, VertexSet};
use sdag::{nicefy, SDag};

/// Result of the minimum-width search.
#[derive(Clone, Debug)]
pub enum WidthOutcome {
    Found {
        k: usize,
        sdag: SDag,
        /// The nicefied S-DAG when requested.
        nice: Option<SDag>,
        /// A start vertex from which the robber wins at `k - 1`.
        robber_start_below: Option<usize>,
    },
    /// No `k ≤ max_k` lets the cops win.
    Exceeded { max_k: usize },
}

impl WidthOutcome {
    pub fn width(&self) -> Option<usize> {
        match self {
            WidthOutcome::Found { k, .. } => Some(*k),
            WidthOutcome::Exceeded { .. } => None,
        }
    }
}

/// First start vertex from which the robber wins at size `k`.
pub fn robber_winning_start(d: &Digraph, k: usize) -> Result<Option<usize>, BridgeError> {
    first_robber_start(d, &mut CanonicalSolver::new(d, k))
}

/// Same as [`robber_winning_start`], reusing the memo of an existing solver.
fn first_robber_start(d: &Digraph, solver: &mut CanonicalSolver) -> Result<Option<usize>, BridgeError> {
    let empty = VertexSet::new();
    for r in 0..d.vertex_count() {
        if !solver.wins(&range(d, &empty, r))? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Scans `k = 0, 1, …, max_k` for the least size at which the cops win and
/// builds an S-DAG of that width from the winning strategy.
pub fn compute_sdag_width(d: &Digraph, max_k: usize, nice: bool) -> Result<WidthOutcome, BridgeError> {
    let mut robber_start_below = None;
    for k in 0..=max_k {
        let mut solver = CanonicalSolver::new(d, k);
        let Some(strategy) = solver.strategy()? else {
            robber_start_below = first_robber_start(d, &mut solver)?;
            continue;
        };
        let sdag = strategy_to_sdag(d, k, &strategy)?;
        let nice = if nice { Some(nicefy(d, &sdag)?) } else { None };
        return Ok(WidthOutcome::Found { k, sdag, nice, robber_start_below });
    }
    Ok(WidthOutcome::Exceeded { max_k })
}
