use crate::graph::{solve_game, GameGraph};
use crate::state::{range, robber_moves, strict_set, GameState};
use crate::CrError;
use graph_core::{Digraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A cop strategy `(f, g)`: `f` picks the move at a CIGS `(X, r)`, `g` the
/// side `j ∈ {1,2}` at a double-separator state once the robber chose `r′`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CopStrategy {
    pub k: usize,
    pub f: BTreeMap<(VertexSet, usize), GameState>,
    pub g: BTreeMap<(GameState, usize), u8>,
    pub complete: bool,
}

impl CopStrategy {
    pub fn cop_move(&self, x: &VertexSet, r: usize) -> Option<&GameState> {
        self.f.get(&(x.clone(), r))
    }

    /// The CIGS reached when the robber answers the RIGS `p` with `r′`.
    pub fn next_cigs(&self, p: &GameState, r_new: usize) -> Option<GameState> {
        match p {
            GameState::Cigs { .. } => None,
            GameState::Rigs1 { xprime, .. } => Some(GameState::cigs(xprime.clone(), r_new)),
            GameState::Rigs2 { s1, s2, .. } => match self.g.get(&(p.clone(), r_new))? {
                1 => Some(GameState::cigs(s1.clone(), r_new)),
                _ => Some(GameState::cigs(s2.clone(), r_new)),
            },
        }
    }

    /// All CIGS and RIGS states occurring in plays consistent with the
    /// strategy, in breadth-first order from the start states.
    ///
    /// Fails when a consistent CIGS has no move (the robber would win there),
    /// a move is illegal, or a `g` choice is missing or illegal.
    pub fn consistent_states(&self, d: &Digraph) -> Result<Vec<GameState>, CrError> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue: VecDeque<GameState> = (0..d.vertex_count()).map(|r| GameState::cigs(VertexSet::new(), r)).collect();
        for s in &queue {
            seen.insert(s.clone());
        }
        while let Some(s) = queue.pop_front() {
            order.push(s.clone());
            let next: Vec<GameState> = match &s {
                GameState::Cigs { x, r } => {
                    let mv = self.cop_move(x, *r).ok_or_else(|| CrError::NotWinning(format!("no cop move at {s}")))?;
                    if !is_legal_cop_move(d, self.k, x, *r, mv) {
                        return Err(CrError::IllegalMove(format!("{s} -> {mv}")));
                    }
                    vec![mv.clone()]
                }
                _ => {
                    let mut out = Vec::new();
                    for o in robber_moves(d, &s) {
                        let t = self.next_cigs(&s, o.r).ok_or_else(|| CrError::Incomplete(format!("no reply at {s} for robber {}", o.r)))?;
                        if !o.replies.iter().any(|(_, u)| *u == t) {
                            return Err(CrError::IllegalMove(format!("{s} -> {t}")));
                        }
                        out.push(t);
                    }
                    out
                }
            };
            for t in next {
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        Ok(order)
    }

    /// Whether every consistent play ends at a RIGS with only legal moves.
    pub fn is_winning(&self, d: &Digraph) -> bool {
        self.consistent_states(d).is_ok()
    }
}

/// Direct legality check for a cop move from the CIGS `(x, r)`.
pub fn is_legal_cop_move(d: &Digraph, k: usize, x: &VertexSet, r: usize, mv: &GameState) -> bool {
    let big_r = range(d, x, r);
    match mv {
        GameState::Cigs { .. } => false,
        GameState::Rigs1 { r: r2, xbot, xprime } => {
            *r2 == r
                && xprime.len() <= k
                && *xbot == x.intersection(xprime)
                && xprime.difference(x).is_subset(&big_r)
                && range(d, xbot, r) == big_r
                && xprime != x
        }
        GameState::Rigs2 { r: r2, xbot, s1, s2 } => {
            if *r2 != r || s1 >= s2 || s1.len() > k || s2.len() > k {
                return false;
            }
            let both = s1.union(s2);
            if *xbot != x.intersection(&both) || !s1.intersection(s2).is_subset(xbot) || range(d, xbot, r) != big_r {
                return false;
            }
            let (g1, g2) = (strict_set(d, &big_r, s1), strict_set(d, &big_r, s2));
            big_r.difference(&both).is_subset(&g1.union(&g2))
                && s1.difference(xbot).is_subset(&g2)
                && s2.difference(xbot).is_subset(&g1)
        }
    }
}

/// Fills the gaps of a winning strategy on every consistent state: a missing
/// `f` gets the solver's move, a missing `g` gets side 1 when legal and
/// side 2 otherwise. The result is checked to be winning.
pub fn complete_strategy(d: &Digraph, g: &GameGraph, s: &CopStrategy) -> Result<CopStrategy, CrError> {
    let sol = solve_game(g);
    let mut out = s.clone();
    out.k = g.k;
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<GameState> = (0..d.vertex_count()).map(|r| GameState::cigs(VertexSet::new(), r)).collect();
    while let Some(st) = queue.pop_front() {
        if !seen.insert(st.clone()) {
            continue;
        }
        match &st {
            GameState::Cigs { x, r } => {
                let key = (x.clone(), *r);
                if !out.f.contains_key(&key) {
                    let mv = sol.strategy.f.get(&key).ok_or_else(|| CrError::NotWinning(format!("robber wins from {st}")))?;
                    out.f.insert(key.clone(), mv.clone());
                }
                queue.push_back(out.f[&key].clone());
            }
            _ => {
                for o in robber_moves(d, &st) {
                    let key = (st.clone(), o.r);
                    if matches!(st, GameState::Rigs2 { .. }) && !out.g.contains_key(&key) {
                        let j = if o.replies.iter().any(|&(j, _)| j == 1) { 1 } else { 2 };
                        out.g.insert(key, j);
                    }
                    queue.push_back(out.next_cigs(&st, o.r).expect("reply defined"));
                }
            }
        }
    }
    out.complete = true;
    out.consistent_states(d)?;
    Ok(out)
}

/// How the robber picks its moves in [`simulate_play`].
#[derive(Clone, Debug)]
pub enum RobberPolicy {
    /// Start and move where the robber's next range is largest (least vertex on ties).
    AdversarialMaxReach,
    /// Uniform choices from a seeded generator.
    Random(u64),
    /// The start vertex followed by the robber's answers, in order.
    Scripted(Vec<usize>),
}

/// A sequence of game states starting at `(∅, r0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub states: Vec<GameState>,
}

impl Play {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The cops win a finished play iff it ends at a RIGS.
    pub fn cop_won(&self) -> bool {
        self.states.last().is_some_and(|s| !s.is_cigs())
    }
}

/// Plays the cop strategy against a robber policy until no move is left.
pub fn simulate_play(d: &Digraph, cop: &CopStrategy, policy: &RobberPolicy) -> Result<Play, CrError> {
    let n = d.vertex_count();
    if n == 0 {
        return Ok(Play { states: Vec::new() });
    }
    let mut rng = match policy {
        RobberPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut script = match policy {
        RobberPolicy::Scripted(s) => s.iter().copied(),
        _ => [].iter().copied(),
    };
    let mut pick = |opts: &[(usize, usize)], script: &mut dyn Iterator<Item = usize>| -> Result<usize, CrError> {
        // opts: (vertex, size of the resulting range)
        match policy {
            RobberPolicy::AdversarialMaxReach => Ok(opts.iter().max_by_key(|&&(v, s)| (s, std::cmp::Reverse(v))).unwrap().0),
            RobberPolicy::Random(_) => Ok(opts[rng.as_mut().unwrap().gen_range(0..opts.len())].0),
            RobberPolicy::Scripted(_) => {
                let v = script.next().ok_or_else(|| CrError::IllegalMove("robber script exhausted".into()))?;
                if opts.iter().any(|&(u, _)| u == v) {
                    Ok(v)
                } else {
                    Err(CrError::IllegalMove(format!("robber cannot move to {v}")))
                }
            }
        }
    };
    let empty = VertexSet::new();
    let starts: Vec<(usize, usize)> = (0..n).map(|v| (v, range(d, &empty, v).len())).collect();
    let mut state = GameState::cigs(empty, pick(&starts, &mut script)?);
    let mut states = vec![state.clone()];
    let mut seen = BTreeSet::from([state.clone()]);
    loop {
        let GameState::Cigs { x, r } = &state else { unreachable!() };
        let Some(mv) = cop.cop_move(x, *r) else { break };
        if !is_legal_cop_move(d, cop.k, x, *r, mv) {
            return Err(CrError::IllegalMove(format!("{state} -> {mv}")));
        }
        let rigs = mv.clone();
        states.push(rigs.clone());
        let mut opts = Vec::new();
        for o in robber_moves(d, &rigs) {
            let t = cop.next_cigs(&rigs, o.r).ok_or_else(|| CrError::Incomplete(format!("no reply at {rigs} for robber {}", o.r)))?;
            if !o.replies.iter().any(|(_, u)| *u == t) {
                return Err(CrError::IllegalMove(format!("{rigs} -> {t}")));
            }
            opts.push((o.r, t.range(d).len()));
        }
        if opts.is_empty() {
            break;
        }
        let v = pick(&opts, &mut script)?;
        state = cop.next_cigs(&rigs, v).expect("checked above");
        if !seen.insert(state.clone()) {
            return Err(CrError::Internal(format!("state {state} repeated")));
        }
        states.push(state.clone());
    }
    Ok(Play { states })
}
