//! A solver on robber ranges instead of full game states.
//!
//! At a CIGS `(X, r)` with range `R = Reach_{D∖X}(r)` only the boundary
//! `B = N⁺(R)∖R ⊆ X` constrains the robber: cops outside `B` neither block
//! nor enable anything, and moves built from `B` are legal from every
//! `X ⊇ B`. So the winner depends on `R` alone, and the solver memoizes
//! on it. Moves are:
//!
//! * single separator `X′ = B ∪ Y` with `∅ ≠ Y ⊆ R`; the robber then picks
//!   any range of `D∖X′` inside `R∖Y`;
//! * double separator `S1 < S2 ⊆ B ∪ R` with `S1 ∩ S2 ⊆ B ⊆ S1 ∪ S2` whose
//!   strict sets cover `R`; the robber picks `r′ ∈ R` and the cops answer
//!   with a side `j` where `r′` is strict and the new range is winning.
//!
//! Winning moves are materialized into a [`CopStrategy`] over the states
//! consistent with it.

use crate::state::GameState;
use crate::strategy::CopStrategy;
use crate::{state_budget, CrError};
use graph_core::{Digraph, VertexSet};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonMove {
    Single(VertexSet),
    Double(VertexSet, VertexSet),
}

/// For every vertex of `u`: its reach inside the induced subgraph `D[u]`
/// and whether that reach meets `esc`.
struct Ranges {
    reach: Vec<VertexSet>,
    escapes: Vec<bool>,
}

fn ranges_within(d: &Digraph, u: &VertexSet, esc: &VertexSet) -> Ranges {
    let n = d.vertex_count();
    let mut t = Tarjan {
        d,
        u,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Ranges { reach: vec![VertexSet::new(); n], escapes: vec![false; n] },
        esc,
    };
    for v in u {
        if t.index[v] == usize::MAX {
            t.visit(v);
        }
    }
    t.out
}

struct Tarjan<'a> {
    d: &'a Digraph,
    u: &'a VertexSet,
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: usize,
    out: Ranges,
    esc: &'a VertexSet,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = self.next;
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for w in &self.d.successors(v).intersection(self.u) {
            if self.index[w] == usize::MAX {
                self.visit(w);
                self.low[v] = self.low[v].min(self.low[w]);
            } else if self.on_stack[w] {
                self.low[v] = self.low[v].min(self.index[w]);
            }
        }
        if self.low[v] != self.index[v] {
            return;
        }
        let mut comp = VertexSet::new();
        loop {
            let w = self.stack.pop().unwrap();
            self.on_stack[w] = false;
            comp.insert(w);
            if w == v {
                break;
            }
        }
        // successor components are finished already
        let mut reach = comp.clone();
        let mut escapes = comp.intersects(self.esc);
        for w in &comp {
            for y in &self.d.successors(w).intersection(self.u).difference(&comp) {
                reach.union_with(&self.out.reach[y]);
                escapes |= self.out.escapes[y];
            }
        }
        for w in &comp {
            self.out.reach[w] = reach.clone();
            self.out.escapes[w] = escapes;
        }
    }
}

/// A double-separator candidate with its strict set and the ranges of the
/// strict vertices.
struct Candidate {
    s: VertexSet,
    strict: VertexSet,
    reach: Vec<VertexSet>,
    winning: Option<VertexSet>,
}

pub struct CanonicalSolver<'a> {
    d: &'a Digraph,
    k: usize,
    budget: usize,
    memo: HashMap<VertexSet, Option<CanonMove>>,
}

impl<'a> CanonicalSolver<'a> {
    pub fn new(d: &'a Digraph, k: usize) -> Self {
        Self::with_budget(d, k, state_budget())
    }

    pub fn with_budget(d: &'a Digraph, k: usize, budget: usize) -> Self {
        CanonicalSolver { d, k, budget, memo: HashMap::new() }
    }

    /// Number of ranges solved so far.
    pub fn solved_ranges(&self) -> usize {
        self.memo.len()
    }

    fn boundary(&self, big_r: &VertexSet) -> VertexSet {
        self.d.out_neighbours(big_r).difference(big_r)
    }

    /// Whether the cops win once the robber's range is `big_r`.
    pub fn wins(&mut self, big_r: &VertexSet) -> Result<bool, CrError> {
        Ok(self.solve(big_r)?.is_some())
    }

    /// The chosen winning move at `big_r`, if any.
    pub fn solve(&mut self, big_r: &VertexSet) -> Result<Option<CanonMove>, CrError> {
        if let Some(m) = self.memo.get(big_r) {
            return Ok(m.clone());
        }
        if self.memo.len() >= self.budget {
            return Err(CrError::Budget(self.budget));
        }
        let m = self.search(big_r)?;
        self.memo.insert(big_r.clone(), m.clone());
        Ok(m)
    }

    fn search(&mut self, big_r: &VertexSet) -> Result<Option<CanonMove>, CrError> {
        let b = self.boundary(big_r);
        if b.len() > self.k {
            return Ok(None);
        }
        let d = self.d;
        // single separator, least X′ first
        let mut ys: Vec<VertexSet> = big_r.subsets_up_to(self.k - b.len()).into_iter().filter(|y| !y.is_empty()).map(|y| y.union(&b)).collect();
        ys.sort();
        'single: for xp in ys {
            let rest = big_r.difference(&xp);
            let rg = ranges_within(d, &rest, &VertexSet::new());
            let mut left = rest.clone();
            while let Some(v) = left.first() {
                let rv = rg.reach[v].clone();
                left.remove(v);
                if !self.wins(&rv)? {
                    continue 'single;
                }
                // vertices sharing this component have the same range
                for w in &rv.intersection(&left) {
                    if rg.reach[w] == rv {
                        left.remove(w);
                    }
                }
            }
            return Ok(Some(CanonMove::Single(xp)));
        }
        // double separator
        let pool = big_r.union(&b);
        let mut cands: Vec<Candidate> = Vec::new();
        let mut ss = pool.subsets_up_to(self.k);
        ss.sort();
        for s in ss {
            let rest = big_r.difference(&s);
            let esc: VertexSet = rest.iter().filter(|&w| d.successors(w).intersects(&b.difference(&s))).collect();
            let rg = ranges_within(d, &rest, &esc);
            let strict: VertexSet = rest.iter().filter(|&w| !rg.escapes[w] && rg.reach[w] != *big_r).collect();
            // a legal pair needs both strict sets nonempty: a single strict
            // set can never be all of R, since a vertex whose range is R is
            // strict only for separators meeting R
            if strict.is_empty() {
                continue;
            }
            cands.push(Candidate { s, strict, reach: rg.reach, winning: None });
        }
        // every legal pair covers R; a vertex covered by few candidates
        // restricts the first member of the pair
        let mut cover_count = vec![0usize; d.vertex_count()];
        for c in &cands {
            for w in &c.strict {
                cover_count[w] += 1;
            }
        }
        let Some(pivot) = big_r.iter().min_by_key(|&w| cover_count[w]) else {
            return Ok(None);
        };
        let mut best: Option<(usize, usize)> = None;
        for i in 0..cands.len() {
            if !cands[i].strict.contains(pivot) {
                continue;
            }
            for j in 0..cands.len() {
                if i == j {
                    continue;
                }
                let (lo, hi) = if cands[i].s < cands[j].s { (i, j) } else { (j, i) };
                if best.is_some_and(|bp| bp <= (lo, hi)) {
                    continue;
                }
                let (c1, c2) = (&cands[lo], &cands[hi]);
                if !c1.s.intersection(&c2.s).is_subset(&b) || !b.is_subset(&c1.s.union(&c2.s)) {
                    continue;
                }
                if c1.strict.union(&c2.strict) != *big_r {
                    continue;
                }
                let w1 = self.winning_part(&mut cands, lo)?;
                let w2 = self.winning_part(&mut cands, hi)?;
                if w1.union(&w2) == *big_r {
                    best = Some((lo, hi));
                }
            }
        }
        Ok(best.map(|(i, j)| CanonMove::Double(cands[i].s.clone(), cands[j].s.clone())))
    }

    /// Strict vertices of candidate `i` from which the cops win after
    /// answering with that side.
    fn winning_part(&mut self, cands: &mut [Candidate], i: usize) -> Result<VertexSet, CrError> {
        if let Some(w) = &cands[i].winning {
            return Ok(w.clone());
        }
        let mut out = VertexSet::new();
        let mut left = cands[i].strict.clone();
        while let Some(v) = left.first() {
            let rv = cands[i].reach[v].clone();
            let same: VertexSet = rv.intersection(&left).iter().filter(|&w| cands[i].reach[w] == rv).collect();
            left.difference_with(&same);
            if self.wins(&rv)? {
                out.union_with(&same);
            }
        }
        cands[i].winning = Some(out.clone());
        Ok(out)
    }

    /// Whether the cops win from every start state.
    pub fn wins_everywhere(&mut self) -> Result<bool, CrError> {
        let empty = VertexSet::new();
        for r in 0..self.d.vertex_count() {
            let big_r = crate::state::range(self.d, &empty, r);
            if !self.wins(&big_r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Materializes the solver's moves into a complete strategy over all
    /// consistent states, or `None` when the robber wins from some start.
    pub fn strategy(&mut self) -> Result<Option<CopStrategy>, CrError> {
        if !self.wins_everywhere()? {
            return Ok(None);
        }
        let d = self.d;
        let mut strat = CopStrategy { k: self.k, f: BTreeMap::new(), g: BTreeMap::new(), complete: true };
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<(VertexSet, usize)> = (0..d.vertex_count()).map(|r| (VertexSet::new(), r)).collect();
        while let Some((x, r)) = queue.pop_front() {
            if !seen.insert((x.clone(), r)) {
                continue;
            }
            let big_r = crate::state::range(d, &x, r);
            let mv = self.solve(&big_r)?.ok_or_else(|| CrError::Internal(format!("lost range {big_r} in a winning strategy")))?;
            match mv {
                CanonMove::Single(xp) => {
                    let st = GameState::Rigs1 { r, xbot: x.intersection(&xp), xprime: xp.clone() };
                    for v in &big_r.difference(&xp) {
                        queue.push_back((xp.clone(), v));
                    }
                    strat.f.insert((x, r), st);
                }
                CanonMove::Double(s1, s2) => {
                    let xbot = x.intersection(&s1.union(&s2));
                    let st = GameState::Rigs2 { r, xbot, s1: s1.clone(), s2: s2.clone() };
                    for v in &big_r {
                        let mut side = None;
                        for (j, s) in [(1u8, &s1), (2u8, &s2)] {
                            let rv = crate::state::range(d, s, v);
                            if !s.contains(v) && rv.is_subset(&big_r) && rv != big_r && self.wins(&rv)? {
                                side = Some((j, s));
                                break;
                            }
                        }
                        let (j, s) = side.ok_or_else(|| CrError::Internal(format!("no winning reply at {st} for {v}")))?;
                        strat.g.insert((st.clone(), v), j);
                        queue.push_back((s.clone(), v));
                    }
                    strat.f.insert((x, r), st);
                }
            }
        }
        Ok(Some(strat))
    }
}

/// Cop-win verdict from every start and a complete winning strategy.
pub fn solve_canonical(d: &Digraph, k: usize) -> Result<Option<CopStrategy>, CrError> {
    CanonicalSolver::new(d, k).strategy()
}
