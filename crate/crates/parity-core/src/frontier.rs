//! Outcomes of plays, results of Even strategies inside a region, frontiers
//! and the brute-force frontier oracle.

use crate::order::{result_leq_with, Outcome, ResultOrder, ResultSet};
use crate::{ParityError, ParityGame};
use graph_core::VertexSet;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A memoryless Even strategy: the chosen successor per vertex, `None` where
/// no choice is recorded.
pub type EvenStrategy = Vec<Option<usize>>;

/// Default cap on the number of Even strategies the oracle enumerates.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 22;

/// The outcome of a lasso-shaped play `prefix · cycleʷ`. With an empty
/// cycle the play is finite and ends at the last vertex of `prefix`, giving
/// `Exit(last, least priority on the play)`. Otherwise the play is infinite
/// and Even wins iff the least priority on the cycle is even.
pub fn play_outcome(g: &ParityGame, prefix: &[usize], cycle: &[usize]) -> Result<Outcome, ParityError> {
    let walk: Vec<usize> = prefix.iter().chain(cycle).copied().chain(cycle.first().copied()).collect();
    if walk.is_empty() {
        return Err(ParityError::Invalid("empty play".into()));
    }
    if let Some(&v) = walk.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(ParityError::Invalid(format!("vertex {v} is not in the game")));
    }
    if let Some(w) = walk.windows(2).find(|w| !g.successors(w[0]).contains(w[1])) {
        return Err(ParityError::Invalid(format!("{} -> {} is not a move", w[0], w[1])));
    }
    if cycle.is_empty() {
        let last = *prefix.last().unwrap();
        let p = prefix.iter().map(|&v| g.priority(v)).min().unwrap();
        return Ok(Outcome::Exit(last, p));
    }
    let p = cycle.iter().map(|&v| g.priority(v)).min().unwrap();
    Ok(if p % 2 == 0 { Outcome::WinEven } else { Outcome::WinOdd })
}

/// Moves available at `u` once Even's memoryless strategy is fixed.
fn moves(g: &ParityGame, f: &[Option<usize>], u: usize) -> Result<VertexSet, ParityError> {
    if !g.even_vertices().contains(u) {
        return Ok(g.successors(u).clone());
    }
    match f.get(u).copied().flatten() {
        Some(w) if g.successors(u).contains(w) => Ok(VertexSet::singleton(w)),
        Some(w) => Err(ParityError::Strategy(format!("{u} -> {w} is not a move"))),
        None => Err(ParityError::Strategy(format!("no choice at Even vertex {u}"))),
    }
}

/// The result of the memoryless Even strategy `f` from `v` inside `region`:
/// the `⊴`-minimal outcomes Odd can achieve in plays that stay in `region`
/// until they first leave it. Odd reaches `WinOdd` through a reachable cycle
/// with odd least priority, otherwise each reachable exit contributes the
/// `⊑`-least priority Odd can arrange on the way, and with neither Even wins.
pub fn restricted_result(g: &ParityGame, region: &VertexSet, f: &[Option<usize>], v: usize) -> Result<ResultSet, ParityError> {
    if !region.contains(v) {
        return Err(ParityError::Invalid(format!("start {v} is outside the region")));
    }
    // search over (vertex, least priority so far)
    let mut seen: BTreeSet<(usize, u32)> = BTreeSet::new();
    let mut stack = vec![(v, g.priority(v))];
    seen.insert((v, g.priority(v)));
    let mut reached = VertexSet::new();
    let mut exits: Vec<Outcome> = Vec::new();
    let mut succ: BTreeMap<usize, VertexSet> = BTreeMap::new();
    while let Some((u, m)) = stack.pop() {
        reached.insert(u);
        if !succ.contains_key(&u) {
            succ.insert(u, moves(g, f, u)?);
        }
        for w in &succ[&u] {
            let m2 = m.min(g.priority(w));
            if !region.contains(w) {
                exits.push(Outcome::Exit(w, m2));
            } else if seen.insert((w, m2)) {
                stack.push((w, m2));
            }
        }
    }
    if has_cycle_with_min_parity(g, &reached, &succ, 1) {
        return Ok(ResultSet::win_odd());
    }
    if exits.is_empty() {
        return Ok(ResultSet::win_even());
    }
    Ok(ResultSet::minimal(exits))
}

/// Whether the graph `succ` restricted to `within` has a cycle whose least
/// priority has the given parity.
fn has_cycle_with_min_parity(g: &ParityGame, within: &VertexSet, succ: &BTreeMap<usize, VertexSet>, parity: u32) -> bool {
    within.iter().filter(|&u| g.priority(u) % 2 == parity).any(|u| {
        let q = g.priority(u);
        let allowed: VertexSet = within.iter().filter(|&w| g.priority(w) >= q).collect();
        let mut seen = VertexSet::new();
        let mut stack: Vec<usize> = succ[&u].intersection(&allowed).iter().collect();
        while let Some(w) = stack.pop() {
            if w == u {
                return true;
            }
            if seen.insert(w) {
                stack.extend(succ[&w].intersection(&allowed).iter());
            }
        }
        false
    })
}

/// A set of `(start vertex, result)` tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Frontier {
    tuples: BTreeSet<(usize, ResultSet)>,
}

impl Frontier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: usize, r: ResultSet) -> bool {
        self.tuples.insert((v, r))
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, ResultSet)> {
        self.tuples.iter()
    }

    /// Results recorded for start `v`.
    pub fn results_at(&self, v: usize) -> impl Iterator<Item = &ResultSet> {
        self.tuples.range((v, ResultSet::win_odd())..).take_while(move |(u, _)| *u == v).map(|(_, r)| r)
    }

    /// Vertices that start some tuple.
    pub fn starts(&self) -> VertexSet {
        self.tuples.iter().map(|(v, _)| *v).collect()
    }

    /// Vertices appearing as exits in some result.
    pub fn exit_vertices(&self) -> VertexSet {
        self.tuples.iter().flat_map(|(_, r)| r.exit_vertices()).collect()
    }

    /// Renames start and exit vertices through `map`.
    pub fn map_vertices(&self, map: impl Fn(usize) -> usize) -> Frontier {
        let mut out = Frontier::new();
        for (v, r) in &self.tuples {
            let r2 = ResultSet::minimal(r.outcomes().iter().map(|o| match *o {
                Outcome::Exit(w, p) => Outcome::Exit(map(w), p),
                o => o,
            }));
            out.insert(map(*v), r2);
        }
        out
    }

    pub fn union(&self, o: &Frontier) -> Frontier {
        Frontier { tuples: self.tuples.union(&o.tuples).cloned().collect() }
    }
}

impl FromIterator<(usize, ResultSet)> for Frontier {
    fn from_iter<I: IntoIterator<Item = (usize, ResultSet)>>(iter: I) -> Self {
        Frontier { tuples: iter.into_iter().collect() }
    }
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuples.iter().map(|(v, r)| format!("({v},{r})")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Drops `(v, r)` whenever some `(v, r′)` has `r ◁ r′`, using the default
/// result order.
pub fn dominance_filter(fr: &Frontier) -> Frontier {
    dominance_filter_with(fr, ResultOrder::default())
}

pub fn dominance_filter_with(fr: &Frontier, order: ResultOrder) -> Frontier {
    let mut out = Frontier::new();
    let mut i = fr.tuples.iter().peekable();
    while let Some((v, _)) = i.peek() {
        let v = *v;
        let mut group = Vec::new();
        while let Some((_, r)) = i.next_if(|(u, _)| *u == v) {
            group.push(r);
        }
        for r in &group {
            let dominated = group.iter().any(|r2| result_leq_with(order, r, r2) && !result_leq_with(order, r2, r));
            if !dominated {
                out.insert(v, (*r).clone());
            }
        }
    }
    out
}

/// The frontier of `region` by enumeration: every memoryless Even strategy
/// choosing, at each Even vertex of the region, a successor in
/// `region ∪ exits`; every start in the region; results reduced with
/// [`dominance_filter`].
pub fn frontier_oracle(g: &ParityGame, region: &VertexSet, exits: &VertexSet) -> Result<Frontier, ParityError> {
    frontier_oracle_with(g, region, exits, ResultOrder::default(), DEFAULT_ORACLE_BUDGET)
}

pub fn frontier_oracle_with(g: &ParityGame, region: &VertexSet, exits: &VertexSet, order: ResultOrder, budget: u128) -> Result<Frontier, ParityError> {
    let allowed = region.union(exits);
    let choosers: Vec<usize> = region.intersection(g.even_vertices()).iter().collect();
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(choosers.len());
    let mut total: u128 = 1;
    for &u in &choosers {
        let opts: Vec<usize> = g.successors(u).intersection(&allowed).iter().collect();
        if opts.is_empty() {
            return Err(ParityError::Strategy(format!("Even vertex {u} has no move inside the region or to an exit")));
        }
        total = total.saturating_mul(opts.len() as u128);
        options.push(opts);
    }
    if total > budget {
        return Err(ParityError::Budget(budget));
    }
    let mut f: EvenStrategy = vec![None; g.vertex_count()];
    let mut idx = vec![0usize; choosers.len()];
    let mut all = Frontier::new();
    loop {
        for (i, &u) in choosers.iter().enumerate() {
            f[u] = Some(options[i][idx[i]]);
        }
        for v in region {
            all.insert(v, restricted_result(g, region, &f, v)?);
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(dominance_filter_with(&all, order));
            }
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
