use crate::{validate_nice, validate_sdag, SDag, SdagError};
use graph_core::{Digraph, VertexSet};
use separations::{sep_leq, Separation};

/// Constant in the size guarantee `|out| <= NICE_SIZE_FACTOR * |in| * |V|`.
pub const NICE_SIZE_FACTOR: usize = 8;

/// Rewrites a valid S-DAG into a nice one of no larger width.
///
/// Passes: (i) a single root above the old sources, (ii) every arc carries
/// the top separation of its head, (iii) bag jumps along unary arcs become
/// one-vertex chains, (iv) children of binary nodes are split so their top
/// and bottom separations agree, (v) comparable sibling arcs are dropped
/// and orphaned parts pruned. Passes (iv) and (v) can leave fresh unary
/// arcs with larger jumps, so (iii) runs once more at the end.
///
/// In (iii), vertices entering the bag are added through the bottom side of
/// the arc, which would change the child's top separation. Nodes gaining two
/// or more vertices therefore first get their own addition chain, so every
/// remaining unary jump adds at most one vertex.
pub fn nicefy(d: &Digraph, s: &SDag) -> Result<SDag, SdagError> {
    let rep = validate_sdag(d, s);
    if !rep.is_valid() {
        return Err(SdagError::Invalid(format!("{rep:?}")));
    }
    if s.node_count() == 0 {
        return Err(SdagError::Invalid("empty S-DAG".into()));
    }
    let width = rep.width;
    let mut t = s.clone();
    let root = add_root(&mut t);
    normalise_sigma(&mut t);
    expand_jumps(&mut t);
    split_binary_children(&mut t);
    let root = drop_comparable_siblings(&mut t, root);
    expand_jumps(&mut t);
    debug_assert_eq!(t.sources(), vec![root]);

    let rep = validate_sdag(d, &t);
    if !rep.is_valid() {
        return Err(SdagError::Internal(format!("nicefy produced an invalid S-DAG: {rep:?}")));
    }
    if rep.width > width {
        return Err(SdagError::Internal(format!("nicefy raised the width from {width} to {}", rep.width)));
    }
    let nice = validate_nice(d, &t);
    if !nice.is_nice() {
        return Err(SdagError::Internal(format!("nicefy output is not nice: {nice:?}")));
    }
    let bound = NICE_SIZE_FACTOR * s.node_count() * d.vertex_count().max(1);
    if t.node_count() > bound {
        return Err(SdagError::Internal(format!("nicefy output has {} nodes, bound {bound}", t.node_count())));
    }
    Ok(t)
}

fn add_root(t: &mut SDag) -> usize {
    let n = t.vertex_count();
    let sources = t.sources();
    if sources.len() == 1 {
        let r = t.add_node("root");
        t.add_arc(r, sources[0], Separation::minimum(n));
        return r;
    }
    fn tree(t: &mut SDag, leaves: &[usize], n: usize) -> usize {
        if leaves.len() == 1 {
            return leaves[0];
        }
        let (l, r) = leaves.split_at(leaves.len() / 2);
        let (a, b) = (tree(t, l, n), tree(t, r, n));
        let v = t.add_node("root-tree");
        t.add_arc(v, a, Separation::minimum(n));
        t.add_arc(v, b, Separation::minimum(n));
        v
    }
    tree(t, &sources, n)
}

fn normalise_sigma(t: &mut SDag) {
    let top = t.derive().top;
    let arcs: Vec<(usize, usize)> = t.arcs().map(|(u, v, _)| (u, v)).collect();
    for (u, v) in arcs {
        t.add_arc(u, v, top[v].clone());
    }
}

fn expand_jumps(t: &mut SDag) {
    split_additions(t);
    let der = t.derive();
    let children = t.children();
    for u in 0..children.len() {
        let [c] = children[u][..] else { continue };
        let (bt, bc) = (&der.bag[u], &der.bag[c]);
        let big_u: Vec<usize> = bt.difference(bc).to_vec();
        let big_w: Vec<usize> = bc.difference(bt).to_vec();
        let l = big_u.len() + big_w.len();
        if l <= 1 {
            continue;
        }
        debug_assert!(big_w.len() <= 1, "additions were split off beforehand");
        let a_bot = der.bot[c].a();
        let b_top = der.top[u].b();
        let w_set: VertexSet = big_w.iter().copied().collect();
        let u_set: VertexSet = big_u.iter().copied().collect();
        let mut seps = Vec::with_capacity(l);
        for i in 1..=big_u.len() {
            let gone: VertexSet = big_u[..i].iter().copied().collect();
            seps.push(Separation::new_unchecked(a_bot.difference(&w_set), b_top.difference(&gone)));
        }
        for i in 1..=big_w.len() {
            let pending: VertexSet = big_w[i - 1..].iter().copied().collect();
            seps.push(Separation::new_unchecked(a_bot.difference(&pending), b_top.difference(&u_set)));
        }
        t.remove_arc(u, c);
        let mut prev = u;
        for (i, sep) in seps.into_iter().enumerate() {
            let next = if i + 1 == l { c } else { t.add_node(format!("chain({u}->{c})#{}", i + 1)) };
            t.add_arc(prev, next, sep);
            prev = next;
        }
    }
}

/// A node whose bag exceeds its top separator by `W`, `|W| >= 2`, receives a
/// chain above it: a flat node with bag `V_S(topS)` taking over all in-arcs,
/// followed by nodes adding the vertices of `W` one at a time.
fn split_additions(t: &mut SDag) {
    let der = t.derive();
    let parents = t.parents();
    for c in 0..parents.len() {
        if parents[c].is_empty() {
            continue;
        }
        let top = &der.top[c];
        let w: Vec<usize> = der.bag[c].difference(top.a()).to_vec();
        if w.len() < 2 {
            continue;
        }
        let head = t.add_node(format!("{}/enter", t.label(c)));
        for &p in &parents[c] {
            let sep = t.remove_arc(p, c).unwrap();
            t.add_arc(p, head, sep);
        }
        let mut prev = head;
        let mut sep = top.clone();
        for (i, &wi) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { c } else { t.add_node(format!("{}/add#{}", t.label(c), i + 1)) };
            t.add_arc(prev, next, sep.clone());
            let mut a = sep.a().clone();
            a.insert(wi);
            sep = Separation::new_unchecked(a, top.b().clone());
            prev = next;
        }
    }
}

fn split_binary_children(t: &mut SDag) {
    let der = t.derive();
    let children = t.children();
    let mut split = vec![false; t.node_count()];
    for cs in &children {
        if cs.len() != 2 {
            continue;
        }
        for &c in cs {
            if split[c] || der.top[c] == der.bot[c] {
                continue;
            }
            split[c] = true;
            let low = t.add_node(format!("{}/bot", t.label(c)));
            for &g in &children[c] {
                let sep = t.remove_arc(c, g).unwrap();
                t.add_arc(low, g, sep);
            }
            t.add_arc(c, low, der.top[c].clone());
        }
    }
}

/// Returns the (renumbered) root.
fn drop_comparable_siblings(t: &mut SDag, root: usize) -> usize {
    let children = t.children();
    for (v, cs) in children.iter().enumerate() {
        let &[w1, w2] = &cs[..] else { continue };
        let (s1, s2) = (t.sigma(v, w1).unwrap().clone(), t.sigma(v, w2).unwrap().clone());
        if sep_leq(&s1, &s2) {
            t.remove_arc(v, w2);
        } else if sep_leq(&s2, &s1) {
            t.remove_arc(v, w1);
        }
    }
    // prune parts no longer reachable from the root
    let children = t.children();
    let mut keep = vec![false; t.node_count()];
    let mut stack = vec![root];
    keep[root] = true;
    while let Some(u) = stack.pop() {
        for &c in &children[u] {
            if !keep[c] {
                keep[c] = true;
                stack.push(c);
            }
        }
    }
    t.retain_nodes(&keep)[root].unwrap()
}
