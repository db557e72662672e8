use graph_core::{gen_digraph, Digraph, GenModel, VertexSet};
use proptest::prelude::*;
use separations::*;

fn subset(n: usize, mask: u32) -> VertexSet {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Reference range separation built from an explicit DFS over edge pairs.
fn oracle_range(d: &Digraph, s: &VertexSet, x: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let n = d.vertex_count();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = x.iter().collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(u) = stack.pop() {
        for &(a, b) in d.edges() {
            if a == u && !s.contains(b) && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    let a = (0..n).filter(|&v| !seen[v]).collect();
    let b = (0..n).filter(|&v| seen[v] || s.contains(v)).collect();
    (a, b)
}

#[test]
fn meet_of_ranges_is_range_of_union_exhaustive() {
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|(u, v)| u != v).collect();
        for emask in 0u32..(1 << pairs.len()) {
            let d = Digraph::new(n, pairs.iter().enumerate().filter(|(i, _)| emask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            for sm in 0u32..(1 << n) {
                let s = subset(n, sm);
                let free = !sm & ((1 << n) - 1);
                for xm in 0u32..(1 << n) {
                    if xm & !free != 0 {
                        continue;
                    }
                    let x = subset(n, xm);
                    let rx = range_sep(&d, &s, &x).unwrap();
                    for ym in 0u32..(1 << n) {
                        if ym & !free != 0 {
                            continue;
                        }
                        let y = subset(n, ym);
                        let ry = range_sep(&d, &s, &y).unwrap();
                        assert_eq!(meet(&rx, &ry), range_sep(&d, &s, &x.union(&y)).unwrap());
                    }
                }
            }
        }
    }
}

fn arb_case() -> impl Strategy<Value = (Digraph, VertexSet, VertexSet)> {
    (1usize..8, any::<u64>(), 0.0f64..0.7, any::<u32>(), any::<u32>()).prop_map(|(n, seed, p, sm, xm)| {
        let d = gen_digraph(GenModel::Erdos(p), n, seed).unwrap();
        let s = subset(n, sm);
        let x = subset(n, xm).difference(&s);
        (d, s, x)
    })
}

proptest! {
    #[test]
    fn range_sep_is_valid_and_matches_oracle((d, s, x) in arb_case()) {
        let r = range_sep(&d, &s, &x).unwrap();
        prop_assert!(r.validate(&d).is_ok());
        prop_assert_eq!(r.separator(), s.clone());
        let (a, b) = oracle_range(&d, &s, &x);
        prop_assert_eq!(r.a().to_vec(), a);
        prop_assert_eq!(r.b().to_vec(), b);
    }

    #[test]
    fn lattice_laws((d, s, x) in arb_case(), ym in any::<u32>(), tm in any::<u32>()) {
        let n = d.vertex_count();
        let t = subset(n, tm);
        let y = subset(n, ym).difference(&t);
        let s1 = range_sep(&d, &s, &x).unwrap();
        let s2 = range_sep(&d, &t, &y).unwrap();
        let m = meet(&s1, &s2);
        let j = join(&s1, &s2);
        prop_assert!(m.validate(&d).is_ok() && j.validate(&d).is_ok());
        prop_assert!(sep_leq(&m, &s1) && sep_leq(&m, &s2) && sep_leq(&s1, &j) && sep_leq(&s2, &j));
        prop_assert_eq!(m.clone(), meet(&s2, &s1));
        prop_assert_eq!(j.clone(), join(&s2, &s1));
        prop_assert_eq!(meet(&m, &s1), m.clone());
        prop_assert_eq!(meet_all(n, [&s1, &s2, &s1]), m);
        prop_assert_eq!(join_all(n, [&s1, &s2]), j);
    }
}

#[test]
fn json_form() {
    let d = gen_digraph(GenModel::Cycle, 3, 0).unwrap();
    let s = range_sep(&d, &VertexSet::singleton(1), &VertexSet::singleton(0)).unwrap();
    let js = serde_json::to_string(&s).unwrap();
    assert_eq!(js, r#"{"a":[1,2],"b":[0,1]}"#);
    assert_eq!(serde_json::from_str::<Separation>(&js).unwrap(), s);
}
