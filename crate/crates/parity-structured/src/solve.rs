//! Solving parity games bottom-up along a nice S-DAG of small width.

use crate::gadget::{frontier_branch_in, frontier_deg_one_in, SdagView};
use crate::StructError;
use game_sdag_bridge::{compute_sdag_width, WidthOutcome};
use graph_core::VertexSet;
use parity_core::{Frontier, ParityGame, Winners};
use sdag::SDag;

#[derive(Clone, Debug)]
pub struct StructuredSolution {
    /// Width of the S-DAG used.
    pub k: usize,
    pub winners: Winners,
    /// The nice S-DAG the frontiers belong to.
    pub sdag: SDag,
    /// Frontier of every S-DAG node.
    pub frontiers: Vec<Frontier>,
}

#[derive(Clone, Debug)]
pub enum StructuredOutcome {
    Solved(StructuredSolution),
    /// The arena has no S-DAG of width at most `max_k`.
    WidthExceeded { max_k: usize },
}

/// Finds a minimum-width nice S-DAG (up to `max_k`) of the arena and solves
/// the game along it.
pub fn solve_parity_structured(g: &ParityGame, max_k: usize) -> Result<StructuredOutcome, StructError> {
    match compute_sdag_width(g.digraph(), max_k, true)? {
        WidthOutcome::Exceeded { max_k } => Ok(StructuredOutcome::WidthExceeded { max_k }),
        WidthOutcome::Found { k, nice, .. } => {
            let nice = nice.ok_or_else(|| StructError::Internal("no nice S-DAG returned".into()))?;
            let mut sol = solve_with_sdag(g, &nice)?;
            sol.k = k;
            Ok(StructuredOutcome::Solved(sol))
        }
    }
}

/// Solves the game along the given nice S-DAG, whose single source must
/// have an empty bag and cover every vertex below it.
pub fn solve_with_sdag(g: &ParityGame, s: &SDag) -> Result<StructuredSolution, StructError> {
    let view = SdagView::new(s)?;
    let n = g.vertex_count();
    let mut frontiers: Vec<Frontier> = vec![Frontier::new(); s.node_count()];
    for &d in view.order.iter().rev() {
        frontiers[d] = match view.children[d][..] {
            [] => Frontier::new(),
            [c] => frontier_deg_one_in(g, &view, d, &frontiers[c])?,
            [c1, c2] => frontier_branch_in(g, &view, d, &frontiers[c1], &frontiers[c2])?,
            _ => return Err(StructError::NotNice(format!("S-DAG node {d} has more than two children"))),
        };
    }
    let sources = s.sources();
    let [root] = sources[..] else {
        return Err(StructError::NotNice(format!("the S-DAG has {} sources", sources.len())));
    };
    if view.region(root) != VertexSet::full(n) {
        return Err(StructError::Precondition("the source of the S-DAG does not span the arena".into()));
    }
    let mut even = VertexSet::new();
    let mut odd = VertexSet::new();
    for v in 0..n {
        let rs: Vec<_> = frontiers[root].results_at(v).collect();
        match rs[..] {
            [r] if r.is_win_even() => even.insert(v),
            [r] if r.is_win_odd() => odd.insert(v),
            _ => return Err(StructError::Internal(format!("source frontier at {v} is not decided: {}", frontiers[root]))),
        };
    }
    Ok(StructuredSolution { k: s.width(), winners: Winners { even, odd }, sdag: s.clone(), frontiers })
}
