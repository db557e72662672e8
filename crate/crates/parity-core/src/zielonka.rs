use crate::{ParityGame, Player};
use graph_core::VertexSet;

/// The partition of the vertices into the winning regions of both players.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Winners {
    pub even: VertexSet,
    pub odd: VertexSet,
}

impl Winners {
    pub fn winner(&self, v: usize) -> Player {
        if self.even.contains(v) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    /// Winner of every vertex, in id order.
    pub fn to_vec(&self, n: usize) -> Vec<Player> {
        (0..n).map(|v| self.winner(v)).collect()
    }
}

/// Vertices of `arena` from which `player` can force a visit to `target`
/// while staying in `arena`.
fn attractor(g: &ParityGame, arena: &VertexSet, target: &VertexSet, player: Player) -> VertexSet {
    let mut attr = target.intersection(arena);
    let mut count: Vec<usize> = (0..g.vertex_count()).map(|v| g.successors(v).intersection(arena).len()).collect();
    let mut queue: Vec<usize> = attr.iter().collect();
    while let Some(w) = queue.pop() {
        for u in &g.digraph().predecessors(w).intersection(arena) {
            if attr.contains(u) {
                continue;
            }
            let forced = if g.owner(u) == player {
                true
            } else {
                count[u] -= 1;
                count[u] == 0
            };
            if forced {
                attr.insert(u);
                queue.push(u);
            }
        }
    }
    attr
}

fn opponent(p: Player) -> Player {
    match p {
        Player::Even => Player::Odd,
        Player::Odd => Player::Even,
    }
}

/// Returns `(W_even, W_odd)` of the subgame on `arena`; every vertex of
/// `arena` keeps a successor inside it.
fn solve(g: &ParityGame, arena: &VertexSet) -> (VertexSet, VertexSet) {
    let Some(p) = arena.iter().map(|v| g.priority(v)).min() else {
        return (VertexSet::new(), VertexSet::new());
    };
    let alpha = if p % 2 == 0 { Player::Even } else { Player::Odd };
    let top: VertexSet = arena.iter().filter(|&v| g.priority(v) == p).collect();
    let a = attractor(g, arena, &top, alpha);
    let (w0, w1) = solve(g, &arena.difference(&a));
    let w_opp = if alpha == Player::Even { &w1 } else { &w0 };
    if w_opp.is_empty() {
        return if alpha == Player::Even { (arena.clone(), VertexSet::new()) } else { (VertexSet::new(), arena.clone()) };
    }
    let b = attractor(g, arena, w_opp, opponent(alpha));
    let (mut x0, mut x1) = solve(g, &arena.difference(&b));
    if alpha == Player::Even {
        x1.union_with(&b);
    } else {
        x0.union_with(&b);
    }
    (x0, x1)
}

/// Solves the game with Zielonka's recursive attractor decomposition,
/// peeling off the least priority first (the least priority seen infinitely
/// often decides a play).
pub fn zielonka_solve(g: &ParityGame) -> Winners {
    let (even, odd) = solve(g, &VertexSet::full(g.vertex_count()));
    Winners { even, odd }
}
