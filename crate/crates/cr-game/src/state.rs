use graph_core::{reach_unchecked, Digraph, VertexSet};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A state of the size-k game.
///
/// Variant order, and then field order, give the lexicographic state
/// encoding used for all tie-breaks: cop-initiative states first, then
/// single-separator and double-separator robber-initiative states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GameState {
    /// Cops on `x`, robber on `r`; the cop player moves.
    Cigs { x: VertexSet, r: usize },
    /// The cops announced `xprime`; `xbot = x ∩ xprime` stays in place.
    Rigs1 { r: usize, xbot: VertexSet, xprime: VertexSet },
    /// The cops announced two separators `s1 < s2`; `xbot = x ∩ (s1 ∪ s2)`.
    Rigs2 { r: usize, xbot: VertexSet, s1: VertexSet, s2: VertexSet },
}

impl GameState {
    pub fn cigs(x: VertexSet, r: usize) -> Self {
        GameState::Cigs { x, r }
    }

    pub fn is_cigs(&self) -> bool {
        matches!(self, GameState::Cigs { .. })
    }

    pub fn robber(&self) -> usize {
        match *self {
            GameState::Cigs { r, .. } | GameState::Rigs1 { r, .. } | GameState::Rigs2 { r, .. } => r,
        }
    }

    /// The set that bounds the robber's current range: `x` for a CIGS and
    /// `xbot` for a RIGS.
    pub fn blocking_set(&self) -> &VertexSet {
        match self {
            GameState::Cigs { x, .. } => x,
            GameState::Rigs1 { xbot, .. } | GameState::Rigs2 { xbot, .. } => xbot,
        }
    }

    /// `Reach_{D∖X}(r)` (CIGS) or `Reach_{D∖X⊥}(r)` (RIGS).
    pub fn range(&self, d: &Digraph) -> VertexSet {
        range(d, self.blocking_set(), self.robber())
    }
}

impl fmt::Debug for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameState::Cigs { x, r } => write!(f, "({x},{r})"),
            GameState::Rigs1 { r, xbot, xprime } => write!(f, "R1[{r};{xbot};{xprime}]"),
            GameState::Rigs2 { r, xbot, s1, s2 } => write!(f, "R2[{r};{xbot};{s1}|{s2}]"),
        }
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `Reach_{D∖x}(r)`; empty when `r ∈ x`.
pub fn range(d: &Digraph, x: &VertexSet, r: usize) -> VertexSet {
    reach_unchecked(d, x, &VertexSet::singleton(r))
}

/// Vertices `w ∈ big_r ∖ s` whose range in `D∖s` is a proper subset of `big_r`.
pub(crate) fn strict_set(d: &Digraph, big_r: &VertexSet, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    let mut left = big_r.difference(s);
    while let Some(w) = left.first() {
        let rw = range(d, s, w);
        if rw.is_subset(big_r) && rw != *big_r {
            // every vertex of rw reaches a subset of rw
            let inside = rw.intersection(&left);
            out.union_with(&inside);
            left.difference_with(&inside);
        } else {
            left.remove(w);
        }
    }
    out
}

/// All legal single-separator moves from the CIGS `(x, r)`, sorted.
pub fn legal_c1_moves(d: &Digraph, k: usize, x: &VertexSet, r: usize) -> Vec<GameState> {
    let big_r = range(d, x, r);
    let mut out = Vec::new();
    for xp in x.union(&big_r).subsets_up_to(k) {
        if xp == *x {
            continue;
        }
        let xbot = x.intersection(&xp);
        if range(d, &xbot, r) != big_r {
            continue;
        }
        out.push(GameState::Rigs1 { r, xbot, xprime: xp });
    }
    out.sort();
    out
}

/// All legal double-separator moves from the CIGS `(x, r)`, sorted.
///
/// A separator outside `x ∪ R` can never satisfy the side conditions, so
/// candidates are drawn from there. Pairs are unordered with `s1 < s2`;
/// equal pairs always fail the strictness condition.
pub fn legal_c2_moves(d: &Digraph, k: usize, x: &VertexSet, r: usize) -> Vec<GameState> {
    let big_r = range(d, x, r);
    let mut cands = x.union(&big_r).subsets_up_to(k);
    cands.sort();
    let strict: Vec<VertexSet> = cands.iter().map(|s| strict_set(d, &big_r, s)).collect();
    let mut out = Vec::new();
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            let (s1, s2) = (&cands[i], &cands[j]);
            let both = s1.union(s2);
            let xbot = x.intersection(&both);
            if !s1.intersection(s2).is_subset(&xbot) {
                continue;
            }
            let covered = strict[i].union(&strict[j]);
            if !big_r.difference(&both).is_subset(&covered)
                || !s1.difference(&xbot).is_subset(&strict[j])
                || !s2.difference(&xbot).is_subset(&strict[i])
            {
                continue;
            }
            if range(d, &xbot, r) != big_r {
                continue;
            }
            out.push(GameState::Rigs2 { r, xbot, s1: s1.clone(), s2: s2.clone() });
        }
    }
    out.sort();
    out
}

/// All legal cop moves, sorted by state encoding.
pub fn legal_cop_moves(d: &Digraph, k: usize, x: &VertexSet, r: usize) -> Vec<GameState> {
    let mut out = legal_c1_moves(d, k, x, r);
    out.extend(legal_c2_moves(d, k, x, r));
    out
}

/// One robber choice at a RIGS and the CIGS states the cop may answer with.
/// The reply tag is 0 for single-separator states, otherwise the side `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobberOption {
    pub r: usize,
    pub replies: Vec<(u8, GameState)>,
}

/// Robber choices from a RIGS state, ascending by the new robber position.
/// For a double-separator state an option may have no replies; callers treat
/// that as a structural violation.
pub fn robber_moves(d: &Digraph, state: &GameState) -> Vec<RobberOption> {
    let reach = state.range(d);
    match state {
        GameState::Cigs { .. } => Vec::new(),
        GameState::Rigs1 { xprime, .. } => reach
            .difference(xprime)
            .iter()
            .map(|r| RobberOption { r, replies: vec![(0, GameState::cigs(xprime.clone(), r))] })
            .collect(),
        GameState::Rigs2 { s1, s2, .. } => reach
            .iter()
            .map(|r| {
                let mut replies = Vec::new();
                for (j, s) in [(1u8, s1), (2u8, s2)] {
                    let rr = range(d, s, r);
                    if !s.contains(r) && rr.is_subset(&reach) && rr != reach {
                        replies.push((j, GameState::cigs(s.clone(), r)));
                    }
                }
                RobberOption { r, replies }
            })
            .collect(),
    }
}

/// A cop move that only drops cops, keeping the robber's range unchanged.
pub fn is_retreat(x: &VertexSet, mv: &GameState) -> bool {
    match mv {
        GameState::Rigs1 { xprime, .. } => xprime.is_subset(x),
        _ => false,
    }
}
