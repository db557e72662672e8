//! The decompositions that turn one S-DAG node into frontier computations:
//! a four-node chain for nodes with one child and an arena with indexed
//! vertex copies for nodes with two children.

use crate::dagdec::{nicefy_dagdec, validate_dagdec, DagDecomposition};
use crate::engine::propagate;
use crate::StructError;
use graph_core::{Digraph, VertexSet};
use parity_core::{dominance_filter, Frontier, Outcome, ParityGame, ResultSet};
use sdag::{Derived, SDag};
use std::collections::{BTreeMap, HashMap};

/// Precomputed per-node data of an S-DAG: separations, bags, children and
/// `X_{⪰d}`, the union of the bags of all descendants of `d`.
#[derive(Clone, Debug)]
pub struct SdagView {
    pub derived: Derived,
    pub children: Vec<Vec<usize>>,
    pub below: Vec<VertexSet>,
    pub order: Vec<usize>,
}

impl SdagView {
    pub fn new(s: &SDag) -> Result<Self, StructError> {
        let order = s.topological_nodes().ok_or_else(|| StructError::Precondition("the S-DAG has a cycle".into()))?;
        let derived = s.derive();
        let children = s.children();
        let mut below = derived.bag.clone();
        for &t in order.iter().rev() {
            for &c in &children[t] {
                let add = below[c].clone();
                below[t].union_with(&add);
            }
        }
        Ok(SdagView { derived, children, below, order })
    }

    pub fn bag(&self, d: usize) -> &VertexSet {
        &self.derived.bag[d]
    }

    /// `V_d = X_{⪰d} ∖ bag(d)`.
    pub fn region(&self, d: usize) -> VertexSet {
        self.below[d].difference(self.bag(d))
    }
}

/// The chain `d⊤′ → d′ → c′ → c⊥′` for a node `d` with the single child `c`.
#[derive(Clone, Debug)]
pub struct DegOneGadget {
    pub dec: DagDecomposition,
    pub top: usize,
    pub d: usize,
    pub c: usize,
    pub bottom: usize,
}

pub fn deg_one_gadget(d: &Digraph, s: &SDag, node: usize) -> Result<DegOneGadget, StructError> {
    deg_one_gadget_in(d, &SdagView::new(s)?, node)
}

fn deg_one_gadget_in(d: &Digraph, view: &SdagView, node: usize) -> Result<DegOneGadget, StructError> {
    let [c] = view.children[node][..] else {
        return Err(StructError::Precondition(format!("node {node} does not have exactly one child")));
    };
    let n = d.vertex_count();
    let mut dec = DagDecomposition::new();
    let top = dec.add_node("d_top", VertexSet::full(n).difference(&view.region(node)));
    let dn = dec.add_node("d", view.bag(node).clone());
    let cn = dec.add_node("c", view.bag(c).clone());
    let bottom = dec.add_node("c_below", view.below[c].clone());
    dec.add_arc(top, dn);
    dec.add_arc(dn, cn);
    dec.add_arc(cn, bottom);
    let rep = validate_dagdec(d, &dec);
    if !rep.is_valid() {
        return Err(StructError::InvalidDecomposition(format!("one-child gadget at node {node}: {rep}")));
    }
    Ok(DegOneGadget { dec, top, d: dn, c: cn, bottom })
}

/// The frontier of node `d` from the frontier of its only child; a sink has
/// an empty region and frontier.
pub fn frontier_deg_one(g: &ParityGame, s: &SDag, node: usize, child: &Frontier) -> Result<Frontier, StructError> {
    frontier_deg_one_in(g, &SdagView::new(s)?, node, child)
}

pub(crate) fn frontier_deg_one_in(g: &ParityGame, view: &SdagView, node: usize, child: &Frontier) -> Result<Frontier, StructError> {
    if view.children[node].is_empty() {
        return Ok(Frontier::new());
    }
    let gad = deg_one_gadget_in(g.digraph(), view, node)?;
    let nice = nicefy_dagdec(g.digraph(), &gad.dec)?;
    let seeds = BTreeMap::from([(gad.c, child.clone())]);
    let mut frs = propagate(g, &nice, gad.d, &seeds)?;
    Ok(dominance_filter(&frs.remove(&gad.d).expect("target is computed")))
}

/// The arena `P′` and decomposition `T′` for a node with two children.
/// Vertices of `P′` are copies `(v, i)`: index 0 for the separator of the
/// node's bottom separation, index `i ∈ {1, 2}` for the part strictly below
/// child `c_i`. Child 1 is the child with the smaller node id.
#[derive(Clone, Debug)]
pub struct BranchGadget {
    pub game: ParityGame,
    pub dec: DagDecomposition,
    /// `(vertex, index)` of every vertex of `P′`.
    pub gamma: Vec<(usize, u8)>,
    pub index: HashMap<(usize, u8), usize>,
    pub children: [usize; 2],
    /// Nodes `d′`, `d⊥′`, `c1′`, `c2′`, `c1⪰′`, `c2⪰′` of `T′`.
    pub d: usize,
    pub d_bot: usize,
    pub c: [usize; 2],
    pub c_below: [usize; 2],
}

pub fn build_branch_gadget(g: &ParityGame, s: &SDag, node: usize) -> Result<BranchGadget, StructError> {
    build_branch_gadget_in(g, &SdagView::new(s)?, node)
}

fn build_branch_gadget_in(g: &ParityGame, view: &SdagView, node: usize) -> Result<BranchGadget, StructError> {
    let [c1, c2] = view.children[node][..] else {
        return Err(StructError::Precondition(format!("node {node} does not have exactly two children")));
    };
    let bag = view.bag(node);
    let sep = view.derived.bot[node].separator();
    let parts = [sep.clone(), view.below[c1].difference(bag), view.below[c2].difference(bag)];
    let mut gamma: Vec<(usize, u8)> = Vec::new();
    let mut index: HashMap<(usize, u8), usize> = HashMap::new();
    for (i, part) in parts.iter().enumerate() {
        for v in part {
            index.insert((v, i as u8), gamma.len());
            gamma.push((v, i as u8));
        }
    }
    let child_bags = [view.bag(c1), view.bag(c2)];
    let mut edges = Vec::new();
    for (id, &(u, i)) in gamma.iter().enumerate() {
        let mut targets: Vec<u8> = vec![0];
        if i > 0 {
            targets.push(i);
            if child_bags[i as usize - 1].contains(u) {
                targets.push(3 - i);
            }
        }
        for w in g.successors(u) {
            for &j in &targets {
                if let Some(&x) = index.get(&(w, j)) {
                    edges.push((id, x));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let digraph = Digraph::new(gamma.len(), edges).map_err(|e| StructError::Internal(format!("gadget arena: {e}")))?;
    let even: VertexSet = (0..gamma.len()).filter(|&x| g.even_vertices().contains(gamma[x].0)).collect();
    let priority = gamma.iter().map(|&(v, _)| g.priority(v)).collect();
    let game = ParityGame::new_partial(digraph, even, priority)?;

    let copies = |vs: &VertexSet, i: u8| -> VertexSet { vs.iter().filter_map(|v| index.get(&(v, i)).copied()).collect() };
    let mut dec = DagDecomposition::new();
    let zero = copies(&sep, 0);
    let dn = dec.add_node("d", zero.clone());
    let mut bot_bag = zero.clone();
    for (i, cb) in child_bags.iter().enumerate() {
        bot_bag.union_with(&copies(&cb.difference(bag), i as u8 + 1));
    }
    let d_bot = dec.add_node("d_bot", bot_bag);
    dec.add_arc(dn, d_bot);
    let mut c = [0; 2];
    let mut c_below = [0; 2];
    for (k, &ch) in [c1, c2].iter().enumerate() {
        let i = k as u8 + 1;
        let xc = copies(view.bag(ch), i).union(&copies(view.bag(ch), 0));
        c[k] = dec.add_node(format!("c{i}"), xc);
        let xb = copies(&view.below[ch].difference(bag), i).union(&copies(&view.below[ch].intersection(bag), 0));
        c_below[k] = dec.add_node(format!("c{i}_below"), xb);
        dec.add_arc(d_bot, c[k]);
        dec.add_arc(c[k], c_below[k]);
    }
    let rep = validate_dagdec(game.digraph(), &dec);
    if !rep.is_valid() {
        return Err(StructError::InvalidDecomposition(format!("two-child gadget at node {node}: {rep}")));
    }
    Ok(BranchGadget { game, dec, gamma, index, children: [c1, c2], d: dn, d_bot, c, c_below })
}

/// The frontier of node `d` from the frontiers of its two children (child 1
/// has the smaller node id).
pub fn frontier_branch(g: &ParityGame, s: &SDag, node: usize, fr1: &Frontier, fr2: &Frontier) -> Result<Frontier, StructError> {
    frontier_branch_in(g, &SdagView::new(s)?, node, fr1, fr2)
}

pub(crate) fn frontier_branch_in(g: &ParityGame, view: &SdagView, node: usize, fr1: &Frontier, fr2: &Frontier) -> Result<Frontier, StructError> {
    let gad = build_branch_gadget_in(g, view, node)?;
    let bag = view.bag(node);
    let mut seeds = BTreeMap::new();
    for (k, fr) in [fr1, fr2].into_iter().enumerate() {
        let i = k as u8 + 1;
        let mut moved = Frontier::new();
        for (v, r) in fr.iter() {
            let start = *gad.index.get(&(*v, i)).ok_or_else(|| StructError::Precondition(format!("child frontier starts at {v}, which has no copy")))?;
            let mut outs = Vec::new();
            for &o in r.outcomes() {
                outs.push(match o {
                    Outcome::Exit(w, p) => {
                        let j = if bag.contains(w) { 0 } else { i };
                        let x = *gad.index.get(&(w, j)).ok_or_else(|| StructError::Precondition(format!("child frontier exits at {w}, which has no copy")))?;
                        Outcome::Exit(x, p)
                    }
                    o => o,
                });
            }
            moved.insert(start, ResultSet::minimal(outs));
        }
        seeds.insert(gad.c[k], moved);
    }
    let nice = nicefy_dagdec(gad.game.digraph(), &gad.dec)?;
    let mut frs = propagate(&gad.game, &nice, gad.d, &seeds)?;
    let fr = frs.remove(&gad.d).expect("target is computed");
    if let Some(w) = fr.exit_vertices().iter().find(|&x| gad.gamma[x].1 != 0) {
        return Err(StructError::Internal(format!("gadget frontier exits at an indexed copy {:?}", gad.gamma[w])));
    }
    Ok(dominance_filter(&fr.map_vertices(|x| gad.gamma[x].0)))
}
