use crate::BridgeError;
use cr_game::{range, CopStrategy, GameState};
use graph_core::{Digraph, VertexSet};
use std::collections::BTreeMap;

/// Cop choice sets `CC(X⊥, S, r)` of a complete winning strategy, built
/// from its consistent robber-initiative states.
///
/// For a single-separator state the set is `Reach_{D∖X⊥}(r)∖S`. For a
/// double-separator state it holds the robber positions `w` answered with
/// `S`. A key produced by both kinds takes the union, which equals the
/// single-separator set.
#[derive(Clone, Debug, Default)]
pub struct ChoiceIndex {
    sets: BTreeMap<(VertexSet, VertexSet, usize), VertexSet>,
}

impl ChoiceIndex {
    pub fn new(d: &Digraph, strategy: &CopStrategy, states: &[GameState]) -> Self {
        let mut sets: BTreeMap<(VertexSet, VertexSet, usize), VertexSet> = BTreeMap::new();
        for p in states {
            match p {
                GameState::Cigs { .. } => {}
                GameState::Rigs1 { r, xbot, xprime } => {
                    let cc = range(d, xbot, *r).difference(xprime);
                    sets.entry((xbot.clone(), xprime.clone(), *r)).or_default().union_with(&cc);
                }
                GameState::Rigs2 { r, xbot, s1, s2 } => {
                    sets.entry((xbot.clone(), s1.clone(), *r)).or_default();
                    sets.entry((xbot.clone(), s2.clone(), *r)).or_default();
                    for w in &range(d, xbot, *r) {
                        if let Some(GameState::Cigs { x, .. }) = strategy.next_cigs(p, w) {
                            sets.get_mut(&(xbot.clone(), x, *r)).expect("inserted above").insert(w);
                        }
                    }
                }
            }
        }
        ChoiceIndex { sets }
    }

    pub fn get(&self, x: &VertexSet, s: &VertexSet, r: usize) -> Option<&VertexSet> {
        self.sets.get(&(x.clone(), s.clone(), r))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(VertexSet, VertexSet, usize), &VertexSet)> {
        self.sets.iter()
    }
}

/// `CC(X, S, r)` for a complete winning strategy.
pub fn cop_choice_set(d: &Digraph, strategy: &CopStrategy, x: &VertexSet, s: &VertexSet, r: usize) -> Result<VertexSet, BridgeError> {
    let states = strategy.consistent_states(d)?;
    let idx = ChoiceIndex::new(d, strategy, &states);
    idx.get(x, s, r).cloned().ok_or_else(|| BridgeError::UnknownKey { x: x.clone(), s: s.clone(), r })
}
