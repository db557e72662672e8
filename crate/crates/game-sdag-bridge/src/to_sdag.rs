use crate::{BridgeError, ChoiceIndex};
use cr_game::{CopStrategy, GameState};
use graph_core::{Digraph, VertexSet};
use sdag::{validate_sdag, SDag};
use separations::range_sep;
use std::collections::HashMap;

/// A balanced binary tree over sorted leaf labels. Node 0 is the root.
#[derive(Clone, Debug)]
pub struct BinaryTree {
    /// Children of each node (empty for leaves).
    pub children: Vec<Vec<usize>>,
    /// Leaf label of each node.
    pub leaf: Vec<Option<usize>>,
}

impl BinaryTree {
    /// Height `⌈log2 |leaves|⌉`; a single leaf is the root itself.
    pub fn balanced(leaves: &[usize]) -> Self {
        assert!(!leaves.is_empty(), "a tree needs at least one leaf");
        let mut t = BinaryTree { children: Vec::new(), leaf: Vec::new() };
        t.build(leaves);
        t
    }

    fn build(&mut self, leaves: &[usize]) -> usize {
        let id = self.children.len();
        self.children.push(Vec::new());
        self.leaf.push(None);
        if let [w] = leaves {
            self.leaf[id] = Some(*w);
            return id;
        }
        let (l, r) = leaves.split_at(leaves.len().div_ceil(2));
        let a = self.build(l);
        let b = self.build(r);
        self.children[id] = vec![a, b];
        id
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn height(&self) -> usize {
        fn h(t: &BinaryTree, v: usize) -> usize {
            t.children[v].iter().map(|&c| 1 + h(t, c)).max().unwrap_or(0)
        }
        h(self, 0)
    }
}

/// Labels of the leaves reachable from `node` within `tree`.
pub fn leaf_reach(tree: &BinaryTree, node: usize) -> VertexSet {
    let mut out = VertexSet::new();
    let mut stack = vec![node];
    while let Some(v) = stack.pop() {
        if let Some(w) = tree.leaf[v] {
            out.insert(w);
        }
        stack.extend(&tree.children[v]);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    /// `t_{X,r}` for a consistent CIGS.
    T(VertexSet, usize),
    /// `t_{(X⊥,S),r}`, root of the tree over `CC(X⊥,S,r)`.
    Pair(VertexSet, VertexSet, usize),
    /// `c_{(X⊥,X′),r}` between a CIGS and its single-separator move.
    C(VertexSet, VertexSet, usize),
}

struct Builder<'a> {
    d: &'a Digraph,
    out: SDag,
    nodes: HashMap<Key, usize>,
    cc: ChoiceIndex,
}

impl Builder<'_> {
    fn node(&mut self, key: Key) -> usize {
        if let Some(&i) = self.nodes.get(&key) {
            return i;
        }
        let label = match &key {
            Key::T(x, r) => format!("t[{x},{r}]"),
            Key::Pair(x, s, r) => format!("t[({x},{s}),{r}]"),
            Key::C(x, s, r) => format!("c[({x},{s}),{r}]"),
        };
        let i = self.out.add_node(label);
        self.nodes.insert(key, i);
        i
    }

    fn arc(&mut self, u: usize, v: usize, s: &VertexSet, x: &VertexSet) -> Result<(), BridgeError> {
        let sep = range_sep(self.d, s, x).map_err(|e| BridgeError::Internal(e.to_string()))?;
        self.out.add_arc(u, v, sep);
        Ok(())
    }

    /// A tree with separator `s` whose leaves are `t_{s,w}` for `w ∈ leaves`,
    /// hanging below `root`.
    fn tree(&mut self, root: usize, s: &VertexSet, leaves: &VertexSet) -> Result<(), BridgeError> {
        let tree = BinaryTree::balanced(&leaves.to_vec());
        let mut ids = vec![root; tree.len()];
        let label = self.out.label(root).to_string();
        for v in 1..tree.len() {
            ids[v] = match tree.leaf[v] {
                Some(w) => self.node(Key::T(s.clone(), w)),
                None => self.out.add_node(format!("{label}/{v}")),
            };
        }
        for v in 0..tree.len() {
            for &c in &tree.children[v] {
                self.arc(ids[v], ids[c], s, &leaf_reach(&tree, c))?;
            }
        }
        Ok(())
    }

    /// The node `t_{(X⊥,S),r}`; identified with the leaf when `CC` has one
    /// member, otherwise the root of its tree.
    fn pair(&mut self, xbot: &VertexSet, s: &VertexSet, r: usize) -> Result<(usize, VertexSet), BridgeError> {
        let cc = self.cc.get(xbot, s, r).cloned().ok_or_else(|| BridgeError::UnknownKey { x: xbot.clone(), s: s.clone(), r })?;
        if cc.len() == 1 {
            return Ok((self.node(Key::T(s.clone(), cc.first().unwrap())), cc));
        }
        let key = Key::Pair(xbot.clone(), s.clone(), r);
        let fresh = !self.nodes.contains_key(&key);
        let id = self.node(key);
        if fresh && cc.len() >= 2 {
            self.tree(id, s, &cc)?;
        }
        Ok((id, cc))
    }
}

/// Builds an S-DAG of width at most `k` from a complete winning strategy:
/// one node per consistent CIGS, pair nodes for the separators the cops
/// announce, binary trees fanning out to the next CIGS nodes, and a root
/// tree over the start states. The result is validated before returning.
pub fn strategy_to_sdag(d: &Digraph, k: usize, strategy: &CopStrategy) -> Result<SDag, BridgeError> {
    let states = strategy.consistent_states(d)?;
    let cc = ChoiceIndex::new(d, strategy, &states);
    let mut b = Builder { d, out: SDag::new(d.vertex_count()), nodes: HashMap::new(), cc };
    let n = d.vertex_count();
    // with one vertex the root tree is a single leaf, identified with t0
    let root = (n != 1).then(|| b.out.add_node("t0"));
    for p in &states {
        if let GameState::Cigs { x, r } = p {
            b.node(Key::T(x.clone(), *r));
        }
    }
    for p in &states {
        let GameState::Cigs { x, r } = p else { continue };
        let t = b.node(Key::T(x.clone(), *r));
        match strategy.cop_move(x, *r).expect("consistent states have moves") {
            GameState::Rigs1 { xbot, xprime, .. } => {
                let c = b.node(Key::C(xbot.clone(), xprime.clone(), *r));
                b.arc(t, c, xbot, &VertexSet::singleton(*r))?;
                let (child, set) = b.pair(xbot, xprime, *r)?;
                b.arc(c, child, xprime, &set)?;
            }
            GameState::Rigs2 { xbot, s1, s2, .. } => {
                for s in [s1, s2] {
                    let (child, set) = b.pair(xbot, s, *r)?;
                    b.arc(t, child, s, &set)?;
                }
            }
            GameState::Cigs { .. } => unreachable!("cop moves lead to RIGS"),
        }
    }
    if let Some(root) = root.filter(|_| n > 0) {
        b.tree(root, &VertexSet::new(), &VertexSet::full(n))?;
    }
    let out = b.out;
    let rep = validate_sdag(d, &out);
    if !rep.is_valid() {
        return Err(BridgeError::Internal(format!("constructed S-DAG is invalid: {rep:?}")));
    }
    if rep.width > k {
        return Err(BridgeError::TooWide { width: rep.width, k });
    }
    Ok(out)
}
