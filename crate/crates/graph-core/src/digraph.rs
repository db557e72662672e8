use crate::{GraphError, VertexSet};
use std::collections::BTreeSet;

/// Simple loop-free digraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    succ: Vec<VertexSet>,
    pred: Vec<VertexSet>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut succ = vec![VertexSet::new(); n];
        let mut pred = vec![VertexSet::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u.max(v), n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !succ[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            pred[v].insert(u);
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Digraph { n, edges: list, succ, pred })
    }

    pub fn empty(n: usize) -> Self {
        Digraph::new(n, []).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(v)
    }

    pub fn successors(&self, v: usize) -> &VertexSet {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &VertexSet {
        &self.pred[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.pred[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Union of successor sets of `set`.
    pub fn out_neighbours(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in set {
            out.union_with(&self.succ[v]);
        }
        out
    }
}

/// `Reach_{D - removed}(sources)`: every vertex reachable by a (possibly
/// empty) path from a source avoiding `removed`.
pub fn reach(d: &Digraph, removed: &VertexSet, sources: &VertexSet) -> Result<VertexSet, GraphError> {
    if let Some(v) = sources.intersection(removed).first() {
        return Err(GraphError::SourceRemoved(v));
    }
    Ok(reach_unchecked(d, removed, sources))
}

/// Like [`reach`] but silently drops sources that lie in `removed`.
pub fn reach_unchecked(d: &Digraph, removed: &VertexSet, sources: &VertexSet) -> VertexSet {
    let mut seen = sources.difference(removed);
    let mut frontier = seen.clone();
    while !frontier.is_empty() {
        let mut next = d.out_neighbours(&frontier);
        next.difference_with(removed);
        next.difference_with(&seen);
        seen.union_with(&next);
        frontier = next;
    }
    seen
}

pub fn is_dag(d: &Digraph) -> bool {
    topological_order(d).is_ok()
}

/// Kahn's algorithm; among available vertices the smallest id goes first.
pub fn topological_order(d: &Digraph) -> Result<Vec<usize>, GraphError> {
    let mut indeg: Vec<usize> = (0..d.n).map(|v| d.in_degree(v)).collect();
    let mut ready: BTreeSet<usize> = (0..d.n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(d.n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for w in d.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == d.n {
        Ok(order)
    } else {
        Err(GraphError::Cyclic)
    }
}
