use crate::BridgeError;
use cr_game::{range, CopStrategy, GameState};
use graph_core::{Digraph, VertexSet};
use sdag::{validate_nice, validate_sdag, Derived, SDag};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Checks the four forward-facing conditions of node `x` for the CIGS
/// `(X, r)`, given the children of `x`: covering `X ⊆ A(bot x)`, blocking
/// by `X ∩ bag(x)`, controlled range `R ⊆ bottom(bot x)`, and `R` meeting
/// the bag of every child.
pub fn check_forward_facing(d: &Digraph, der: &Derived, children: &[usize], x: usize, cops: &VertexSet, r: usize) -> Result<(), String> {
    let big_r = range(d, cops, r);
    let bot = &der.bot[x];
    if !cops.is_subset(bot.a()) {
        return Err(format!("covering fails at node {x}"));
    }
    if range(d, &cops.intersection(&der.bag[x]), r) != big_r {
        return Err(format!("blocking fails at node {x}"));
    }
    if !big_r.is_subset(&bot.bottom()) {
        return Err(format!("controlled fails at node {x}"));
    }
    for &c in children {
        if !big_r.intersects(&der.bag[c]) {
            return Err(format!("child {c} of node {x} misses the range"));
        }
    }
    Ok(())
}

struct Finder<'a> {
    children: Vec<Vec<usize>>,
    der: &'a Derived,
    /// Sink chosen for a start node and a robber range.
    memo: HashMap<(usize, VertexSet), usize>,
}

impl Finder<'_> {
    /// Least-id sink of the part of the DAG below `t` whose bottom
    /// separations keep `big_r` on their bottom side.
    fn sink(&mut self, t: usize, big_r: &VertexSet) -> Option<usize> {
        let key = (t, big_r.clone());
        if let Some(&x) = self.memo.get(&key) {
            return Some(x);
        }
        let inside = |v: usize| big_r.is_subset(&self.der.bot[v].bottom());
        if !inside(t) {
            return None;
        }
        let mut seen = vec![false; self.children.len()];
        seen[t] = true;
        let mut stack = vec![t];
        let mut best: Option<usize> = None;
        while let Some(v) = stack.pop() {
            let mut sink = true;
            for &c in &self.children[v] {
                if inside(c) {
                    sink = false;
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
            if sink && best.is_none_or(|b| v < b) {
                best = Some(v);
            }
        }
        let x = best?;
        self.memo.insert(key, x);
        Some(x)
    }
}

/// Reads a complete cop strategy off a nice S-DAG of width at most `k`.
///
/// Each consistent CIGS gets a forward-facing node, the least-id sink of
/// the sub-DAG below its cop choice node that still controls the robber's
/// range. A CIGS reached along several routes keeps the node of its first
/// (breadth-first) visit, and so does an announced double separator's
/// answer to each robber position. A unary node announces `bag(c) ∩ (X ∪ R)`. A
/// binary node announces both children's bags, with `c1` the child of least
/// id; the robber is answered on `c1`'s side when it lies below `c1`'s top
/// separation. Every assignment is checked against the forward-facing
/// conditions, and the final strategy is checked for legality.
pub fn sdag_to_strategy(d: &Digraph, s: &SDag, k: usize) -> Result<CopStrategy, BridgeError> {
    let rep = validate_sdag(d, s);
    if !rep.is_valid() {
        return Err(BridgeError::NotNice(format!("invalid S-DAG: {rep:?}")));
    }
    let nice = validate_nice(d, s);
    if !nice.is_nice() {
        return Err(BridgeError::NotNice(format!("{nice:?}")));
    }
    if rep.width > k {
        return Err(BridgeError::TooWide { width: rep.width, k });
    }
    let der = s.derive();
    let root = s.sources()[0];
    let mut finder = Finder { children: s.children(), der: &der, memo: HashMap::new() };
    let mut strat = CopStrategy { k, f: BTreeMap::new(), g: BTreeMap::new(), complete: true };
    let mut queue: VecDeque<(VertexSet, usize, usize)> = (0..d.vertex_count()).map(|r| (VertexSet::new(), r, root)).collect();
    while let Some((x, r, t)) = queue.pop_front() {
        if strat.f.contains_key(&(x.clone(), r)) {
            continue;
        }
        let state = GameState::cigs(x.clone(), r);
        let big_r = range(d, &x, r);
        let ff = finder.sink(t, &big_r).ok_or_else(|| BridgeError::ForwardFacing(format!("{state} below node {t}")))?;
        check_forward_facing(d, &der, &finder.children[ff], ff, &x, r).map_err(|e| BridgeError::ForwardFacing(format!("{state}: {e}")))?;
        let reachable = x.union(&big_r);
        match finder.children[ff].as_slice() {
            &[c] => {
                let xp = der.bag[c].intersection(&reachable);
                let mv = GameState::Rigs1 { r, xbot: x.intersection(&der.bag[c]), xprime: xp.clone() };
                for v in &big_r.difference(&xp) {
                    queue.push_back((xp.clone(), v, c));
                }
                strat.f.insert((x, r), mv);
            }
            &[c1, c2] => {
                let s1 = der.bag[c1].intersection(&reachable);
                let s2 = der.bag[c2].intersection(&reachable);
                let xbot = x.intersection(&der.bag[c1].union(&der.bag[c2]));
                let swap = s2 < s1;
                let mv = if swap {
                    GameState::Rigs2 { r, xbot, s1: s2.clone(), s2: s1.clone() }
                } else {
                    GameState::Rigs2 { r, xbot, s1: s1.clone(), s2: s2.clone() }
                };
                let below_c1 = der.top[c1].bottom();
                for v in &big_r {
                    // the same announcement may come from several CIGS; the
                    // first answer stays
                    if strat.g.contains_key(&(mv.clone(), v)) {
                        continue;
                    }
                    let (side, sep, node) = if below_c1.contains(v) { (1u8, &s1, c1) } else { (2u8, &s2, c2) };
                    let j = if swap { 3 - side } else { side };
                    strat.g.insert((mv.clone(), v), j);
                    queue.push_back((sep.clone(), v, node));
                }
                strat.f.insert((x, r), mv);
            }
            _ => return Err(BridgeError::ForwardFacing(format!("{state}: node {ff} has no children"))),
        }
    }
    strat.consistent_states(d)?;
    Ok(strat)
}
