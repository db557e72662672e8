//! DAG decompositions of digraphs: validation and the rewrite into a nice
//! form whose arcs add or remove one vertex, or split into two equal bags.

use crate::StructError;
use graph_core::{Digraph, VertexSet};
use std::collections::BTreeSet;
use std::fmt;

/// A DAG of nodes, each carrying a bag of vertices of the underlying digraph.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DagDecomposition {
    labels: Vec<String>,
    bags: Vec<VertexSet>,
    arcs: BTreeSet<(usize, usize)>,
}

impl DagDecomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>, bag: VertexSet) -> usize {
        self.labels.push(label.into());
        self.bags.push(bag);
        self.labels.len() - 1
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u < self.node_count() && v < self.node_count(), "arc endpoint is not a node");
        self.arcs.insert((u, v));
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        self.arcs.remove(&(u, v))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn bag(&self, t: usize) -> &VertexSet {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    /// Children of every node, ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.arcs {
            out[u].push(v);
        }
        out
    }

    /// Parents of every node, ascending.
    pub fn parents(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.arcs {
            out[v].push(u);
        }
        out
    }

    pub fn sources(&self) -> Vec<usize> {
        let p = self.parents();
        (0..self.node_count()).filter(|&t| p[t].is_empty()).collect()
    }

    /// Node order with every arc pointing forward, or `None` if cyclic.
    pub fn topological_nodes(&self) -> Option<Vec<usize>> {
        let n = self.node_count();
        let children = self.children();
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.arcs {
            indeg[v] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&t| indeg[t] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(t) = ready.pop_first() {
            order.push(t);
            for &c in &children[t] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// `X_{⪰t}` for every node: the union of the bags of all descendants,
    /// `t` included. Requires an acyclic decomposition.
    pub fn below_sets(&self) -> Option<Vec<VertexSet>> {
        let order = self.topological_nodes()?;
        let children = self.children();
        let mut below = self.bags.clone();
        for &t in order.iter().rev() {
            for &c in &children[t] {
                let add = below[c].clone();
                below[t].union_with(&add);
            }
        }
        Some(below)
    }

    /// Node sets reachable from every node (the node itself included).
    pub fn descendants(&self) -> Option<Vec<BTreeSet<usize>>> {
        let order = self.topological_nodes()?;
        let children = self.children();
        let mut desc: Vec<BTreeSet<usize>> = (0..self.node_count()).map(|t| BTreeSet::from([t])).collect();
        for &t in order.iter().rev() {
            for &c in &children[t] {
                let add = desc[c].clone();
                desc[t].extend(add);
            }
        }
        Some(desc)
    }

    /// The region `V_t = X_{⪰t} ∖ X_t` of every node.
    pub fn regions(&self) -> Option<Vec<VertexSet>> {
        let below = self.below_sets()?;
        Some(below.iter().zip(&self.bags).map(|(b, x)| b.difference(x)).collect())
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }
}

/// An edge leaving a guarded set through a vertex that is not in the guard.
/// `arc` is `None` for the condition on a source node.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GuardViolation {
    pub arc: Option<(usize, usize)>,
    pub node: usize,
    pub edge: (usize, usize),
}

/// Outcome of [`validate_dagdec`], with a witness for every failed condition.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct DagDecReport {
    pub acyclic: bool,
    /// Vertices of the digraph found in no bag.
    pub uncovered: VertexSet,
    /// Bag entries outside the digraph's vertex range.
    pub out_of_range: VertexSet,
    /// `(t, t′, t″, v)` with `t ⪯ t′ ⪯ t″`, `v ∈ X_t ∩ X_{t″}` and `v ∉ X_{t′}`.
    pub connectivity: Option<(usize, usize, usize, usize)>,
    pub guarding: Option<GuardViolation>,
}

impl DagDecReport {
    pub fn is_valid(&self) -> bool {
        self.acyclic && self.uncovered.is_empty() && self.out_of_range.is_empty() && self.connectivity.is_none() && self.guarding.is_none()
    }
}

impl fmt::Display for DagDecReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.acyclic {
            return write!(f, "the decomposition has a cycle");
        }
        let mut parts = Vec::new();
        if !self.out_of_range.is_empty() {
            parts.push(format!("bags mention unknown vertices {}", self.out_of_range));
        }
        if !self.uncovered.is_empty() {
            parts.push(format!("vertices {} are in no bag", self.uncovered));
        }
        if let Some((t, t1, t2, v)) = self.connectivity {
            parts.push(format!("vertex {v} is in the bags of {t} and {t2} but not of {t1} between them"));
        }
        if let Some(g) = &self.guarding {
            let (u, w) = g.edge;
            match g.arc {
                Some((t, c)) => parts.push(format!("edge {u} -> {w} leaves the part below arc {t} -> {c} outside the guard")),
                None => parts.push(format!("edge {u} -> {w} leaves the part below source {}", g.node)),
            }
        }
        if parts.is_empty() {
            write!(f, "valid")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Checks that `dd` is a DAG decomposition of `d`: the bags cover the
/// vertices, the nodes whose bags contain a vertex are convex along directed
/// paths, below every arc `(t, t′)` the set `X_{⪰t′} ∖ X_t` can only be left
/// through `X_t ∩ X_{t′}`, and nothing leaves `X_{⪰s}` for a source `s`.
pub fn validate_dagdec(d: &Digraph, dd: &DagDecomposition) -> DagDecReport {
    let mut rep = DagDecReport::default();
    let Some(below) = dd.below_sets() else {
        return rep;
    };
    rep.acyclic = true;
    let n = d.vertex_count();
    let mut covered = VertexSet::new();
    for b in dd.bags() {
        covered.union_with(b);
    }
    rep.out_of_range = covered.iter().filter(|&v| v >= n).collect();
    rep.uncovered = VertexSet::full(n).difference(&covered);

    // Convexity reduces to single arcs: a vertex dropped along (t, t′) must
    // not reappear below t′.
    let desc = dd.descendants().expect("acyclic");
    'conn: for (t, c) in dd.arcs() {
        let dropped = dd.bag(t).difference(dd.bag(c));
        for v in &dropped.intersection(&below[c]) {
            let t2 = *desc[c].iter().find(|&&x| dd.bag(x).contains(v)).expect("v is below c");
            rep.connectivity = Some((t, c, t2, v));
            break 'conn;
        }
    }

    let leaves = |set: &VertexSet, guard: &VertexSet| -> Option<(usize, usize)> {
        for u in set {
            if u >= n {
                continue;
            }
            for w in d.successors(u) {
                if !set.contains(w) && !guard.contains(w) {
                    return Some((u, w));
                }
            }
        }
        None
    };
    for (t, c) in dd.arcs() {
        let part = below[c].difference(dd.bag(t));
        let guard = dd.bag(t).intersection(dd.bag(c));
        if let Some(edge) = leaves(&part, &guard) {
            rep.guarding = Some(GuardViolation { arc: Some((t, c)), node: c, edge });
            return rep;
        }
    }
    for s in dd.sources() {
        if let Some(edge) = leaves(&below[s], &VertexSet::new()) {
            rep.guarding = Some(GuardViolation { arc: None, node: s, edge });
            return rep;
        }
    }
    rep
}

/// Rewrites a valid decomposition into nice form. Original node ids are kept
/// and new nodes are appended. Afterwards there is a single source, every
/// node has at most two children, a node with two children has both bags
/// equal to its own, and every other arc adds or removes exactly one vertex
/// (or keeps the bag unchanged).
pub fn nicefy_dagdec(d: &Digraph, dd: &DagDecomposition) -> Result<DagDecomposition, StructError> {
    let rep = validate_dagdec(d, dd);
    if !rep.is_valid() {
        return Err(StructError::InvalidDecomposition(rep.to_string()));
    }
    let mut out = dd.clone();
    if out.node_count() == 0 {
        return Ok(out);
    }

    let sources = out.sources();
    if sources.len() > 1 {
        let root = out.add_node("root", VertexSet::new());
        for s in sources {
            out.add_arc(root, s);
        }
    }

    // branching nodes become combs of equal-bag copies
    let children = out.children();
    for t in 0..children.len() {
        let cs = &children[t];
        if cs.len() < 2 {
            continue;
        }
        for &c in cs {
            out.remove_arc(t, c);
        }
        let bag = out.bag(t).clone();
        let label = out.label(t).to_string();
        let mut cur = t;
        for (j, &c) in cs.iter().enumerate() {
            let copy = out.add_node(format!("{label}~{j}"), bag.clone());
            out.add_arc(cur, copy);
            out.add_arc(copy, c);
            if j + 2 < cs.len() {
                let rest = out.add_node(format!("{label}~split{j}"), bag.clone());
                out.add_arc(cur, rest);
                cur = rest;
            } else if j + 2 == cs.len() {
                let last = cs[j + 1];
                let copy2 = out.add_node(format!("{label}~{}", j + 1), bag.clone());
                out.add_arc(cur, copy2);
                out.add_arc(copy2, last);
                break;
            }
        }
    }

    // remaining arcs become one-vertex steps: first removals, then additions
    let arcs: Vec<(usize, usize)> = out.arcs().collect();
    for (t, c) in arcs {
        let removed = out.bag(t).difference(out.bag(c));
        let added = out.bag(c).difference(out.bag(t));
        if removed.len() + added.len() <= 1 {
            continue;
        }
        out.remove_arc(t, c);
        let label = format!("{}>{}", out.label(t), out.label(c));
        let mut bag = out.bag(t).clone();
        let mut cur = t;
        let steps: Vec<(bool, usize)> = removed.iter().map(|v| (false, v)).chain(added.iter().map(|v| (true, v))).collect();
        for (i, &(add, v)) in steps.iter().enumerate().take(steps.len() - 1) {
            if add {
                bag.insert(v);
            } else {
                bag.remove(v);
            }
            let step = out.add_node(format!("{label}#{i}"), bag.clone());
            out.add_arc(cur, step);
            cur = step;
        }
        out.add_arc(cur, c);
    }

    let rep = validate_dagdec(d, &out);
    if !rep.is_valid() {
        return Err(StructError::Internal(format!("nicefied decomposition is invalid: {rep}")));
    }
    if let Some(t) = nice_violation(&out) {
        return Err(StructError::Internal(format!("node {t} is not nice after rewriting")));
    }
    Ok(out)
}

/// First node breaking the nice shape, if any.
pub(crate) fn nice_violation(dd: &DagDecomposition) -> Option<usize> {
    if dd.node_count() > 0 && dd.sources().len() != 1 {
        return Some(dd.sources()[0]);
    }
    let children = dd.children();
    (0..dd.node_count()).find(|&t| match children[t].as_slice() {
        [] => false,
        [c] => dd.bag(t).symmetric_difference(dd.bag(*c)).len() > 1,
        [a, b] => dd.bag(*a) != dd.bag(t) || dd.bag(*b) != dd.bag(t),
        _ => true,
    })
}
