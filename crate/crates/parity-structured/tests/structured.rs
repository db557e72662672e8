use graph_core::{Digraph, GenModel, VertexSet};
use parity_core::{frontier_oracle, random_game, zielonka_solve, Frontier, ParityGame, Player};
use parity_structured::{
    build_branch_gadget, deg_one_gadget, frontier_branch, frontier_deg_one, nicefy_dagdec, propagate, solve_parity_structured, validate_dagdec,
    DagDecomposition, SdagView, StructuredOutcome, StructuredSolution,
};
use std::collections::BTreeMap;

fn small_game(seed: u64, max_n: usize, max_priority: u32) -> ParityGame {
    let n = 2 + (seed as usize % (max_n - 1));
    let model = match seed % 3 {
        0 => GenModel::Erdos(0.2 + (seed % 5) as f64 * 0.1),
        1 => GenModel::Banded { w: 2, p: 0.5 },
        _ => GenModel::Dag(0.4),
    };
    random_game(model, n, max_priority, seed).unwrap()
}

fn solve(g: &ParityGame) -> StructuredSolution {
    match solve_parity_structured(g, g.vertex_count()).unwrap() {
        StructuredOutcome::Solved(sol) => sol,
        StructuredOutcome::WidthExceeded { .. } => panic!("width is at most n"),
    }
}

/// Compares every node of the decomposition whose region has at most seven
/// vertices with the oracle frontier on that region, exits in the bag.
fn oracle_mismatches(g: &ParityGame, dd: &DagDecomposition, frs: &BTreeMap<usize, Frontier>) -> (usize, usize) {
    let regions = dd.regions().unwrap();
    let (mut compared, mut bad) = (0, 0);
    for (&t, fr) in frs {
        if regions[t].len() > 7 {
            continue;
        }
        compared += 1;
        if frontier_oracle(g, &regions[t], dd.bag(t)).unwrap() != *fr {
            bad += 1;
        }
    }
    (compared, bad)
}

#[test]
fn two_cycles_from_the_examples() {
    let d = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
    for (prio, winner) in [([0, 1], Player::Even), ([1, 3], Player::Odd)] {
        let g = ParityGame::new(d.clone(), VertexSet::new(), prio.to_vec()).unwrap();
        assert_eq!(solve(&g).winners.to_vec(2), vec![winner; 2]);
    }
}

#[test]
fn width_above_the_bound_is_reported() {
    let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)]).unwrap();
    let g = ParityGame::new(d, VertexSet::new(), vec![0, 1, 2]).unwrap();
    assert!(matches!(solve_parity_structured(&g, 1).unwrap(), StructuredOutcome::WidthExceeded { max_k: 1 }));
}

#[test]
fn source_frontier_decides_every_vertex() {
    for seed in 0..60 {
        let g = small_game(seed, 8, 5);
        let sol = solve(&g);
        let root = sol.sdag.sources()[0];
        for (_, r) in sol.frontiers[root].iter() {
            assert!(r.is_win_even() || r.is_win_odd());
        }
        for fr in &sol.frontiers {
            assert!(fr.iter().all(|(_, r)| r.is_well_formed()));
        }
    }
}

#[test]
fn node_frontiers_exit_through_their_bags() {
    for seed in 0..100 {
        let g = small_game(seed, 9, 4);
        let sol = solve(&g);
        let view = SdagView::new(&sol.sdag).unwrap();
        for (d, fr) in sol.frontiers.iter().enumerate() {
            assert!(fr.starts().is_subset(&view.region(d)), "seed {seed} node {d}");
            assert!(fr.exit_vertices().is_subset(view.bag(d)), "seed {seed} node {d}");
        }
    }
}

#[test]
fn sinks_and_equal_bags_in_the_one_child_rule() {
    for seed in 0..40 {
        let g = small_game(seed, 8, 4);
        let sol = solve(&g);
        let view = SdagView::new(&sol.sdag).unwrap();
        for d in 0..sol.sdag.node_count() {
            match view.children[d][..] {
                [] => assert!(frontier_deg_one(&g, &sol.sdag, d, &Frontier::new()).unwrap().is_empty()),
                [c] => {
                    let fr = frontier_deg_one(&g, &sol.sdag, d, &sol.frontiers[c]).unwrap();
                    assert_eq!(fr, sol.frontiers[d]);
                    if view.bag(d) == view.bag(c) {
                        assert_eq!(fr, sol.frontiers[c]);
                    }
                }
                _ => {}
            }
        }
    }
}

#[test]
fn branch_gadget_copies_and_edges() {
    let mut branches = 0;
    let mut shared = 0;
    for seed in 0..200 {
        let g = small_game(seed, 9, 4);
        let sol = solve(&g);
        let view = SdagView::new(&sol.sdag).unwrap();
        for d in 0..sol.sdag.node_count() {
            let [c1, c2] = view.children[d][..] else { continue };
            branches += 1;
            let gad = build_branch_gadget(&g, &sol.sdag, d).unwrap();
            assert_eq!(gad.children, [c1, c2]);
            assert!(c1 < c2);
            assert!(validate_dagdec(gad.game.digraph(), &gad.dec).is_valid());
            let bag = view.bag(d);
            let sep = view.derived.bot[d].separator();
            for v in &view.below[d] {
                let expect = [sep.contains(v), view.below[c1].contains(v) && !bag.contains(v), view.below[c2].contains(v) && !bag.contains(v)];
                for (i, e) in expect.iter().enumerate() {
                    assert_eq!(gad.index.contains_key(&(v, i as u8)), *e, "seed {seed} node {d} vertex {v}");
                }
                if expect[1] && expect[2] {
                    shared += 1;
                }
            }
            for (x, &(v, i)) in gad.gamma.iter().enumerate() {
                assert_eq!(gad.index[&(v, i)], x);
                assert_eq!(gad.game.priority(x), g.priority(v));
                assert_eq!(gad.game.owner(x), g.owner(v));
                // every move of an indexed copy inside X_{⪰d} has an image
                if i > 0 {
                    for w in &g.successors(v).intersection(&view.below[d]) {
                        let images = gad.game.successors(x).iter().filter(|&y| gad.gamma[y].0 == w).count();
                        assert!(images >= 1, "seed {seed} node {d}: ({v},{i}) -> {w} has no image");
                    }
                }
            }
        }
    }
    assert!(branches > 50, "only {branches} two-child nodes");
    assert!(shared > 0, "no vertex below both children outside the bag");
}

#[test]
fn branch_rule_reproduces_the_node_frontier() {
    for seed in 0..80 {
        let g = small_game(seed, 9, 4);
        let sol = solve(&g);
        let view = SdagView::new(&sol.sdag).unwrap();
        for d in 0..sol.sdag.node_count() {
            if let [c1, c2] = view.children[d][..] {
                let fr = frontier_branch(&g, &sol.sdag, d, &sol.frontiers[c1], &sol.frontiers[c2]).unwrap();
                assert_eq!(fr, sol.frontiers[d]);
            }
        }
    }
}

/// Engine against the brute-force oracle on S-DAG nodes and on every node
/// of the nicefied gadget decompositions, run from scratch without seeds.
#[test]
fn engine_matches_oracle() {
    let (mut sdag_nodes, mut gadget_nodes, mut bad) = (0, 0, 0);
    for seed in 0..250 {
        let g = small_game(seed, 9, 4);
        let sol = solve(&g);
        let view = SdagView::new(&sol.sdag).unwrap();
        for d in 0..sol.sdag.node_count() {
            let region = view.region(d);
            if region.len() <= 7 {
                sdag_nodes += 1;
                if frontier_oracle(&g, &region, view.bag(d)).unwrap() != sol.frontiers[d] {
                    bad += 1;
                    eprintln!("seed {seed}: S-DAG node {d} differs");
                }
            }
            if seed % 5 != 0 {
                continue;
            }
            match view.children[d][..] {
                [_] => {
                    let gad = deg_one_gadget(g.digraph(), &sol.sdag, d).unwrap();
                    let nice = nicefy_dagdec(g.digraph(), &gad.dec).unwrap();
                    let frs = propagate(&g, &nice, gad.d, &BTreeMap::new()).unwrap();
                    let (c, b) = oracle_mismatches(&g, &nice, &frs);
                    gadget_nodes += c;
                    bad += b;
                }
                [_, _] => {
                    let gad = build_branch_gadget(&g, &sol.sdag, d).unwrap();
                    let nice = nicefy_dagdec(gad.game.digraph(), &gad.dec).unwrap();
                    let frs = propagate(&gad.game, &nice, gad.d, &BTreeMap::new()).unwrap();
                    let (c, b) = oracle_mismatches(&gad.game, &nice, &frs);
                    gadget_nodes += c;
                    bad += b;
                    // transported back, the gadget frontier is the node frontier
                    assert_eq!(frs[&gad.d].map_vertices(|x| gad.gamma[x].0), sol.frontiers[d]);
                }
                _ => {}
            }
        }
    }
    eprintln!("compared {sdag_nodes} S-DAG nodes and {gadget_nodes} gadget nodes");
    assert!(sdag_nodes >= 500 && gadget_nodes >= 500);
    assert_eq!(bad, 0);
}

#[test]
fn structured_solver_matches_zielonka() {
    for seed in 0..1000 {
        let g = small_game(seed, 9, 5);
        assert_eq!(solve(&g).winners, zielonka_solve(&g), "seed {seed}");
    }
}

#[test]
fn banded_games_up_to_forty_vertices() {
    for n in (10..=40).step_by(5) {
        let g = random_game(GenModel::Banded { w: 2, p: 0.5 }, n, 5, 7 * n as u64).unwrap();
        match solve_parity_structured(&g, 4).unwrap() {
            StructuredOutcome::Solved(sol) => assert_eq!(sol.winners, zielonka_solve(&g), "n = {n}"),
            StructuredOutcome::WidthExceeded { .. } => panic!("banded arena of width above 4 at n = {n}"),
        }
    }
}
