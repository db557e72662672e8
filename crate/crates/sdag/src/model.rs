use crate::SdagError;
use graph_core::{Digraph, VertexSet};
use separations::{join_all, meet_all, Separation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

/// A DAG of nodes whose arcs carry separations of the underlying digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDag {
    vertex_count: usize,
    labels: Vec<String>,
    sigma: BTreeMap<(usize, usize), Separation>,
}

/// Top/bottom separations and bags of every node.
#[derive(Clone, Debug)]
pub struct Derived {
    pub top: Vec<Separation>,
    pub bot: Vec<Separation>,
    pub bag: Vec<VertexSet>,
}

impl SDag {
    pub fn new(vertex_count: usize) -> Self {
        SDag { vertex_count, labels: Vec::new(), sigma: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    /// Adds or overwrites the arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize, s: Separation) {
        assert!(u < self.labels.len() && v < self.labels.len(), "arc endpoint is not a node");
        self.sigma.insert((u, v), s);
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> Option<Separation> {
        self.sigma.remove(&(u, v))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn set_label(&mut self, t: usize, l: impl Into<String>) {
        self.labels[t] = l.into();
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &Separation)> {
        self.sigma.iter().map(|(&(u, v), s)| (u, v, s))
    }

    pub fn sigma(&self, u: usize, v: usize) -> Option<&Separation> {
        self.sigma.get(&(u, v))
    }

    /// Children of every node, ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for &(u, v) in self.sigma.keys() {
            out[u].push(v);
        }
        out
    }

    /// Parents of every node, ascending.
    pub fn parents(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.node_count()];
        for &(u, v) in self.sigma.keys() {
            inc[v].push(u);
        }
        inc
    }

    pub fn sources(&self) -> Vec<usize> {
        let inc = self.parents();
        (0..self.node_count()).filter(|&t| inc[t].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let out = self.children();
        (0..self.node_count()).filter(|&t| out[t].is_empty()).collect()
    }

    /// Node order with every arc pointing forward, or `None` if cyclic.
    pub fn topological_nodes(&self) -> Option<Vec<usize>> {
        let n = self.node_count();
        let children = self.children();
        let mut indeg = vec![0usize; n];
        for &(_, v) in self.sigma.keys() {
            indeg[v] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&t| indeg[t] == 0).collect();
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

    pub fn derive(&self) -> Derived {
        let n = self.vertex_count;
        let k = self.node_count();
        let mut incoming: Vec<Vec<&Separation>> = vec![Vec::new(); k];
        for (&(_, v), s) in &self.sigma {
            incoming[v].push(s);
        }
        let top: Vec<Separation> = incoming.iter().map(|ss| join_all(n, ss.iter().copied())).collect();
        let children = self.children();
        let bot: Vec<Separation> = children.iter().map(|cs| meet_all(n, cs.iter().map(|&c| &top[c]))).collect();
        let bag = (0..k).map(|t| bot[t].a().intersection(top[t].b())).collect();
        Derived { top, bot, bag }
    }

    pub fn width(&self) -> usize {
        self.derive().bag.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Keeps only the nodes flagged in `keep`, renumbering them densely in
    /// ascending order. Returns the old-to-new map.
    pub fn retain_nodes(&mut self, keep: &[bool]) -> Vec<Option<usize>> {
        let mut map = vec![None; self.node_count()];
        let mut labels = Vec::new();
        for (t, l) in self.labels.iter().enumerate() {
            if keep[t] {
                map[t] = Some(labels.len());
                labels.push(l.clone());
            }
        }
        let sigma = std::mem::take(&mut self.sigma)
            .into_iter()
            .filter_map(|((u, v), s)| Some(((map[u]?, map[v]?), s)))
            .collect();
        self.labels = labels;
        self.sigma = sigma;
        map
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serialisable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serialisable")
    }

    fn to_file(&self) -> SdagFile {
        SdagFile {
            nodes: (0..self.node_count()).collect(),
            labels: Some(self.labels.clone()),
            arcs: self.sigma.keys().map(|&(u, v)| [u, v]).collect(),
            sigma: self.sigma.iter().map(|(&(u, v), s)| (format!("{u}->{v}"), s.clone())).collect(),
        }
    }

    /// Reads the JSON form; node ids may be arbitrary integers and are
    /// renumbered densely in the order listed.
    pub fn from_json(text: &str, d: &Digraph) -> Result<Self, SdagError> {
        let f: SdagFile = serde_json::from_str(text).map_err(|e| SdagError::Format(e.to_string()))?;
        let mut out = SDag::new(d.vertex_count());
        let mut ids = BTreeMap::new();
        for (i, &id) in f.nodes.iter().enumerate() {
            let label = f.labels.as_ref().and_then(|l| l.get(i).cloned()).unwrap_or_else(|| id.to_string());
            if ids.insert(id, out.add_node(label)).is_some() {
                return Err(SdagError::Format(format!("duplicate node {id}")));
            }
        }
        for [u, v] in f.arcs {
            let key = format!("{u}->{v}");
            let s = f.sigma.get(&key).ok_or_else(|| SdagError::Format(format!("no separation for arc {key}")))?;
            let (Some(&a), Some(&b)) = (ids.get(&u), ids.get(&v)) else {
                return Err(SdagError::Format(format!("arc {key} uses an unknown node")));
            };
            out.add_arc(a, b, s.clone());
        }
        Ok(out)
    }

    /// DOT rendering with bag labels.
    pub fn to_dot(&self) -> String {
        let der = self.derive();
        let mut s = String::from("digraph SDag {\n");
        for t in 0..self.node_count() {
            let _ = writeln!(s, "  n{t} [label=\"{t}: {}\"];", der.bag[t]);
        }
        for (u, v, sep) in self.arcs() {
            let _ = writeln!(s, "  n{u} -> n{v} [label=\"{}\"];", sep.separator());
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct SdagFile {
    nodes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    arcs: Vec<[usize; 2]>,
    sigma: BTreeMap<String, Separation>,
}
