use crate::state::{is_retreat, legal_cop_moves, robber_moves, GameState};
use crate::strategy::CopStrategy;
use crate::{state_budget, CrError};
use graph_core::{Digraph, VertexSet};
use std::collections::{BTreeMap, HashMap};

/// One robber choice at a RIGS node: the new position and the cop replies
/// as `(side, node)` pairs.
pub type OptionEdges = (usize, Vec<(u8, usize)>);

/// The forward-explored game graph from all start states `(∅, r0)`.
#[derive(Clone, Debug)]
pub struct GameGraph {
    pub k: usize,
    pub states: Vec<GameState>,
    index: HashMap<GameState, usize>,
    /// Cop moves of each CIGS node, ascending by state encoding; empty for RIGS.
    pub cop_moves: Vec<Vec<usize>>,
    /// Robber choices of each RIGS node; empty for CIGS.
    pub robber_options: Vec<Vec<OptionEdges>>,
    /// Start nodes, indexed by the robber's first vertex.
    pub starts: Vec<usize>,
    /// Double-separator nodes with a robber choice that admits no cop reply.
    pub violations: Vec<(usize, usize)>,
}

impl GameGraph {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn id(&self, s: &GameState) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// All successor nodes of `i`.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        let mut out = self.cop_moves[i].clone();
        for (_, replies) in &self.robber_options[i] {
            out.extend(replies.iter().map(|&(_, t)| t));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn move_count(&self) -> usize {
        (0..self.len()).map(|i| self.successors(i).len()).sum()
    }

    /// Nodes such that every move points to a later node, or `None` if cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let succ: Vec<Vec<usize>> = (0..n).map(|i| self.successors(i)).collect();
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = stack.pop() {
            order.push(i);
            for &t in &succ[i] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// `|V|^{k+1} + |V|^{2k+1} + |V|^{3k+1}`, saturating.
pub fn state_bound(n: usize, k: usize) -> u128 {
    let p = |e: usize| (n as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    p(k + 1).saturating_add(p(2 * k + 1)).saturating_add(p(3 * k + 1))
}

/// Explores every state reachable from the start states. The state budget
/// comes from `SDAG_BUDGET_STATES`.
pub fn build_game_graph(d: &Digraph, k: usize) -> Result<GameGraph, CrError> {
    build_game_graph_with_budget(d, k, state_budget())
}

pub fn build_game_graph_with_budget(d: &Digraph, k: usize, budget: usize) -> Result<GameGraph, CrError> {
    let n = d.vertex_count();
    let mut g = GameGraph {
        k,
        states: Vec::new(),
        index: HashMap::new(),
        cop_moves: Vec::new(),
        robber_options: Vec::new(),
        starts: Vec::new(),
        violations: Vec::new(),
    };
    let intern = |g: &mut GameGraph, s: GameState| -> Result<usize, CrError> {
        if let Some(&i) = g.index.get(&s) {
            return Ok(i);
        }
        if g.states.len() >= budget {
            return Err(CrError::Budget(budget));
        }
        let i = g.states.len();
        g.index.insert(s.clone(), i);
        g.states.push(s);
        g.cop_moves.push(Vec::new());
        g.robber_options.push(Vec::new());
        Ok(i)
    };
    for r in 0..n {
        let i = intern(&mut g, GameState::cigs(VertexSet::new(), r))?;
        g.starts.push(i);
    }
    let mut next = 0;
    while next < g.states.len() {
        let i = next;
        next += 1;
        let s = g.states[i].clone();
        match &s {
            GameState::Cigs { x, r } => {
                let mut ids = Vec::new();
                for mv in legal_cop_moves(d, k, x, *r) {
                    ids.push(intern(&mut g, mv)?);
                }
                g.cop_moves[i] = ids;
            }
            _ => {
                let mut opts = Vec::new();
                for o in robber_moves(d, &s) {
                    if o.replies.is_empty() {
                        g.violations.push((i, o.r));
                    }
                    let mut replies = Vec::new();
                    for (j, t) in o.replies {
                        replies.push((j, intern(&mut g, t)?));
                    }
                    opts.push((o.r, replies));
                }
                g.robber_options[i] = opts;
            }
        }
    }
    Ok(g)
}

/// Winner labels and the extracted cop strategy.
#[derive(Clone, Debug)]
pub struct Solution {
    pub cop_wins: Vec<bool>,
    pub strategy: CopStrategy,
}

impl Solution {
    /// Whether the cops win from every start state.
    pub fn cop_wins_all(&self, g: &GameGraph) -> bool {
        g.starts.iter().all(|&s| self.cop_wins[s])
    }
}

/// Backward induction over the acyclic game graph.
///
/// At a cop-winning CIGS the strategy takes the least winning move in the
/// order (retreat?, state encoding): moves that only drop cops keep the
/// robber's range unchanged, so they come last to keep plays short. At a
/// double-separator state the reply prefers side 1.
pub fn solve_game(g: &GameGraph) -> Solution {
    let order = g.topological_order().expect("the game graph is acyclic");
    let mut win = vec![false; g.len()];
    for &i in order.iter().rev() {
        win[i] = match &g.states[i] {
            GameState::Cigs { .. } => g.cop_moves[i].iter().any(|&t| win[t]),
            _ => g.robber_options[i].iter().all(|(_, replies)| replies.iter().any(|&(_, t)| win[t])),
        };
    }
    let mut strategy = CopStrategy { k: g.k, f: BTreeMap::new(), g: BTreeMap::new(), complete: true };
    for i in 0..g.len() {
        if !win[i] {
            continue;
        }
        match &g.states[i] {
            GameState::Cigs { x, r } => {
                let best = g.cop_moves[i]
                    .iter()
                    .filter(|&&t| win[t])
                    .min_by_key(|&&t| (is_retreat(x, &g.states[t]), &g.states[t]))
                    .copied()
                    .expect("a winning CIGS has a winning move");
                strategy.f.insert((x.clone(), *r), g.states[best].clone());
            }
            GameState::Rigs2 { .. } => {
                for (r, replies) in &g.robber_options[i] {
                    let j = replies.iter().find(|&&(_, t)| win[t]).map(|&(j, _)| j).expect("winning RIGS2");
                    strategy.g.insert((g.states[i].clone(), *r), j);
                }
            }
            GameState::Rigs1 { .. } => {}
        }
    }
    Solution { cop_wins: win, strategy }
}
