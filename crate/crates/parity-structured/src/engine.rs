//! Frontier computation over nice DAG decompositions, one arc at a time.

use crate::dagdec::DagDecomposition;
use crate::StructError;
use graph_core::VertexSet;
use parity_core::{dominance_filter, Frontier, Outcome, ParityGame, ResultSet};
use std::collections::{BTreeMap, BTreeSet};

/// `X_{t0} = X_{t1} ∪ {v}`: the region does not change, so neither does the
/// frontier. Fails unless `v` is new below `t1`.
pub fn frontier_step_introduce(dd: &DagDecomposition, fr: &Frontier, t0: usize, t1: usize) -> Result<Frontier, StructError> {
    let (x0, x1) = (dd.bag(t0), dd.bag(t1));
    let added = x0.difference(x1);
    if !x1.is_subset(x0) || added.len() != 1 {
        return Err(StructError::NotNice(format!("arc {t0} -> {t1} does not introduce one vertex")));
    }
    let below = dd.below_sets().ok_or_else(|| StructError::InvalidDecomposition("cyclic".into()))?;
    introduce_at(dd, &below[t1], fr, t0, t1)
}

fn introduce_at(dd: &DagDecomposition, below1: &VertexSet, fr: &Frontier, t0: usize, t1: usize) -> Result<Frontier, StructError> {
    let added = dd.bag(t0).difference(dd.bag(t1));
    let v = added.first().unwrap();
    if below1.contains(v) {
        return Err(StructError::Precondition(format!("introduced vertex {v} already occurs below node {t1}")));
    }
    Ok(fr.clone())
}

/// `X_{t0} = X_{t1} ∖ {v}`: `v` joins the region. See [`expand_frontier`].
pub fn frontier_step_expand(g: &ParityGame, dd: &DagDecomposition, fr: &Frontier, t0: usize, t1: usize) -> Result<Frontier, StructError> {
    let regions = dd.regions().ok_or_else(|| StructError::InvalidDecomposition("cyclic".into()))?;
    expand_at(g, dd, &regions[t1], fr, t0, t1)
}

fn expand_at(g: &ParityGame, dd: &DagDecomposition, region1: &VertexSet, fr: &Frontier, t0: usize, t1: usize) -> Result<Frontier, StructError> {
    let (x0, x1) = (dd.bag(t0), dd.bag(t1));
    let removed = x1.difference(x0);
    if !x0.is_subset(x1) || removed.len() != 1 {
        return Err(StructError::NotNice(format!("arc {t0} -> {t1} does not forget one vertex")));
    }
    expand_frontier(g, fr, region1, removed.first().unwrap())
}

/// Extends the frontier `fr` of `region` to the frontier of `region ∪ {v}`,
/// where `v` is outside `region` and every exit of `fr` lies outside
/// `region`.
///
/// Plays from a start are cut into segments at the visits to `v`. A segment
/// starting at a region vertex `u` behaves like one of the results recorded
/// for `u`; Even fixes one such result per segment start and, if `v` is hers,
/// one move at `v`. Odd then picks how the segments chain: each return to
/// `v` carries the least priority seen since the previous visit, a cycle
/// through `v` is won by the parity of its least priority, and every other
/// ending is kept as an outcome.
pub fn expand_frontier(g: &ParityGame, fr: &Frontier, region: &VertexSet, v: usize) -> Result<Frontier, StructError> {
    if region.contains(v) {
        return Err(StructError::Precondition(format!("vertex {v} is already in the region")));
    }
    if let Some((u, _)) = fr.iter().find(|(u, _)| !region.contains(*u)) {
        return Err(StructError::Precondition(format!("frontier starts at {u}, outside the region")));
    }
    if let Some(w) = fr.exit_vertices().iter().find(|&w| region.contains(w)) {
        return Err(StructError::Precondition(format!("frontier exits at {w}, inside the region")));
    }
    let opts: BTreeMap<usize, Vec<&ResultSet>> = region.iter().map(|u| (u, fr.results_at(u).collect())).collect();
    if let Some((u, _)) = opts.iter().find(|(_, rs)| rs.is_empty()) {
        return Err(StructError::Precondition(format!("frontier has no result for {u}")));
    }
    let ctx = Ctx { g, region, v };
    let even_v = g.even_vertices().contains(v);
    let moves: Vec<Vec<usize>> = if even_v {
        g.successors(v).iter().map(|c| vec![c]).collect()
    } else {
        vec![g.successors(v).to_vec()]
    };
    if moves.is_empty() || moves[0].is_empty() {
        return Err(StructError::Precondition(format!("vertex {v} has no move")));
    }

    let mut out = Frontier::new();
    for s in region.iter().chain(std::iter::once(v)) {
        let firsts: Vec<Option<&ResultSet>> = if s == v { vec![None] } else { opts[&s].iter().map(|r| Some(*r)).collect() };
        let mut results: BTreeSet<ResultSet> = BTreeSet::new();
        for first in firsts {
            let reaches_v = first.is_none_or(|r| r.outcomes().iter().any(|o| matches!(o, Outcome::Exit(w, _) if *w == v)));
            if !reaches_v {
                results.insert(first.unwrap().clone());
                continue;
            }
            for avail in &moves {
                // segment starts whose result Even still has to fix
                let free: Vec<usize> = avail.iter().copied().filter(|&c| region.contains(c) && c != s).collect();
                let mut idx = vec![0usize; free.len()];
                loop {
                    let mut sigma: BTreeMap<usize, &ResultSet> = free.iter().zip(&idx).map(|(&c, &i)| (c, opts[&c][i])).collect();
                    if let Some(r) = first {
                        sigma.insert(s, r);
                    }
                    results.insert(ctx.combine(first, avail, &sigma));
                    let mut i = 0;
                    loop {
                        if i == idx.len() {
                            break;
                        }
                        idx[i] += 1;
                        if idx[i] < opts[&free[i]].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == idx.len() {
                        break;
                    }
                }
            }
        }
        for r in results {
            out.insert(s, r);
        }
    }
    Ok(dominance_filter(&out))
}

struct Ctx<'a> {
    g: &'a ParityGame,
    region: &'a VertexSet,
    v: usize,
}

impl Ctx<'_> {
    /// The result of one macro strategy: `first` is the result of the initial
    /// segment (`None` when the play starts at `v`), `avail` the moves at `v`
    /// and `sigma` the fixed results of segments starting at them.
    fn combine(&self, first: Option<&ResultSet>, avail: &[usize], sigma: &BTreeMap<usize, &ResultSet>) -> ResultSet {
        let (g, v) = (self.g, self.v);
        let mut outcomes: Vec<Outcome> = Vec::new();
        // least priorities with which a play can stand at v
        let mut at_v: BTreeSet<u32> = BTreeSet::new();
        match first {
            None => {
                at_v.insert(g.priority(v));
            }
            Some(r) => {
                for &o in r.outcomes() {
                    match o {
                        Outcome::Exit(w, q) if w == v => {
                            at_v.insert(q);
                        }
                        o => outcomes.push(o),
                    }
                }
            }
        }
        let mut queue: Vec<u32> = at_v.iter().copied().collect();
        while let Some(m) = queue.pop() {
            for &c in avail {
                if !self.region.contains(c) {
                    outcomes.push(Outcome::Exit(c, m.min(g.priority(c))));
                    continue;
                }
                for &o in sigma[&c].outcomes() {
                    match o {
                        Outcome::Exit(w, q) if w == v => {
                            if at_v.insert(m.min(q)) {
                                queue.push(m.min(q));
                            }
                        }
                        Outcome::Exit(w, q) => outcomes.push(Outcome::Exit(w, m.min(q))),
                        o => outcomes.push(o),
                    }
                }
            }
        }
        if !at_v.is_empty() {
            for &c in avail.iter().filter(|&&c| self.region.contains(c)) {
                for &o in sigma[&c].outcomes() {
                    if let Outcome::Exit(w, q) = o {
                        if w == v {
                            outcomes.push(if q % 2 == 1 { Outcome::WinOdd } else { Outcome::WinEven });
                        }
                    }
                }
            }
        }
        ResultSet::minimal(outcomes)
    }
}

/// Node `t0` with children `t1`, `t2` carrying equal bags: the regions are
/// disjoint and a play never crosses from one into the other without passing
/// the bag, so the frontier is the union.
pub fn frontier_step_split(dd: &DagDecomposition, fr1: &Frontier, fr2: &Frontier, t0: usize) -> Result<Frontier, StructError> {
    let cs = &dd.children()[t0];
    if cs.len() != 2 || dd.bag(cs[0]) != dd.bag(t0) || dd.bag(cs[1]) != dd.bag(t0) {
        return Err(StructError::NotNice(format!("node {t0} is not a split of two equal bags")));
    }
    Ok(dominance_filter(&fr1.union(fr2)))
}

/// Computes the frontier of every node of the nice decomposition `dd` that
/// lies below `target`, bottom-up. Nodes in `seeds` take the given frontier
/// and are not looked beneath. A leaf has an empty region and frontier.
pub fn propagate(g: &ParityGame, dd: &DagDecomposition, target: usize, seeds: &BTreeMap<usize, Frontier>) -> Result<BTreeMap<usize, Frontier>, StructError> {
    let order = dd.topological_nodes().ok_or_else(|| StructError::InvalidDecomposition("cyclic".into()))?;
    let regions = dd.regions().expect("acyclic");
    let children = dd.children();
    // nodes to compute: reachable from target without entering a seed
    let mut needed = vec![false; dd.node_count()];
    let mut stack = vec![target];
    while let Some(t) = stack.pop() {
        if needed[t] {
            continue;
        }
        needed[t] = true;
        if !seeds.contains_key(&t) {
            stack.extend(children[t].iter().copied());
        }
    }
    let mut done: BTreeMap<usize, Frontier> = BTreeMap::new();
    for &t in order.iter().rev().filter(|&&t| needed[t]) {
        let fr = if let Some(s) = seeds.get(&t) {
            s.clone()
        } else {
            match children[t].as_slice() {
                [] => {
                    if !regions[t].is_empty() {
                        return Err(StructError::Internal(format!("leaf {t} has a nonempty region")));
                    }
                    Frontier::new()
                }
                &[c] => {
                    let (xt, xc) = (dd.bag(t), dd.bag(c));
                    if xt == xc {
                        done[&c].clone()
                    } else if xc.is_subset(xt) && xt.len() == xc.len() + 1 {
                        introduce_at(dd, &regions[c].union(xc), &done[&c], t, c)?
                    } else {
                        expand_at(g, dd, &regions[c], &done[&c], t, c)?
                    }
                }
                &[a, b] => frontier_step_split(dd, &done[&a], &done[&b], t)?,
                _ => return Err(StructError::NotNice(format!("node {t} has more than two children"))),
            }
        };
        done.insert(t, fr);
    }
    Ok(done)
}
