use graph_core::{gen_digraph, reach, topological_order, Digraph, GenModel, VertexSet};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Digraph> {
    (1usize..9, any::<u64>(), 0.0f64..0.6).prop_map(|(n, seed, p)| gen_digraph(GenModel::Erdos(p), n, seed).unwrap())
}

fn subset(n: usize, mask: u32) -> VertexSet {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Reference reachability by depth-first search over adjacency lists.
fn dfs_reach(d: &Digraph, removed: &VertexSet, src: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(src);
    let mut stack = vec![src];
    while let Some(u) = stack.pop() {
        for &(a, b) in d.edges() {
            if a == u && !removed.contains(b) && seen.insert(b) {
                stack.push(b);
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn reach_matches_dfs(d in arb_graph(), rm in any::<u32>(), src in any::<u32>()) {
        let n = d.vertex_count();
        let removed = subset(n, rm);
        let sources = subset(n, src).difference(&removed);
        let r = reach(&d, &removed, &sources).unwrap();
        let mut expect = VertexSet::new();
        for s in &sources {
            expect.union_with(&dfs_reach(&d, &removed, s));
        }
        prop_assert_eq!(r, expect);
    }

    #[test]
    fn reach_monotone_and_additive(d in arb_graph(), r1 in any::<u32>(), extra in any::<u32>(), x in any::<u32>(), y in any::<u32>()) {
        let n = d.vertex_count();
        let small = subset(n, r1);
        let big = small.union(&subset(n, extra));
        let xs = subset(n, x).difference(&big);
        let ys = subset(n, y).difference(&big);
        let rb = reach(&d, &big, &xs).unwrap();
        prop_assert!(rb.is_subset(&reach(&d, &small, &xs).unwrap()));
        let both = reach(&d, &big, &xs.union(&ys)).unwrap();
        prop_assert_eq!(both, rb.union(&reach(&d, &big, &ys).unwrap()));
    }

    #[test]
    fn topo_order_respects_edges(n in 1usize..10, seed in any::<u64>()) {
        let d = gen_digraph(GenModel::Dag(0.4), n, seed).unwrap();
        let order = topological_order(&d).unwrap();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() { pos[v] = i; }
        prop_assert!(d.edges().iter().all(|&(u, v)| pos[u] < pos[v]));
    }

    #[test]
    fn set_ops_agree_with_btreeset(a in proptest::collection::btree_set(0usize..150, 0..20), b in proptest::collection::btree_set(0usize..150, 0..20)) {
        let sa: VertexSet = a.iter().copied().collect();
        let sb: VertexSet = b.iter().copied().collect();
        prop_assert_eq!(sa.union(&sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.intersection(&sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.difference(&sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        let va: Vec<usize> = a.iter().copied().collect();
        let vb: Vec<usize> = b.iter().copied().collect();
        prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
    }
}
