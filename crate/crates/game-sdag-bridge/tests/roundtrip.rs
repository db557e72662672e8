use cr_game::{build_game_graph, complete_strategy, simulate_play, solve_canonical, solve_game, GameState, RobberPolicy};
use game_sdag_bridge::*;
use graph_core::{gen_digraph, Digraph, GenModel, VertexSet};
use sdag::{nicefy, validate_nice, validate_sdag};

fn vs(x: &[usize]) -> VertexSet {
    VertexSet::from_slice(x)
}

fn c3() -> Digraph {
    Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
}

#[test]
fn leaf_reach_examples() {
    let t = BinaryTree::balanced(&[4]);
    assert_eq!(t.len(), 1);
    assert_eq!(leaf_reach(&t, 0), vs(&[4]));
    let t = BinaryTree::balanced(&[1, 3, 5, 7]);
    assert_eq!(t.height(), 2);
    assert_eq!(leaf_reach(&t, 0), vs(&[1, 3, 5, 7]));
    let mut halves: Vec<VertexSet> = t.children[0].iter().map(|&c| leaf_reach(&t, c)).collect();
    halves.sort();
    assert_eq!(halves, vec![vs(&[1, 3]), vs(&[5, 7])]);
    assert_eq!(BinaryTree::balanced(&[0, 1, 2, 3, 4]).height(), 3);
}

#[test]
fn g1_pipeline() {
    let d = Digraph::empty(1);
    let strat = solve_canonical(&d, 1).unwrap().unwrap();
    assert_eq!(cop_choice_set(&d, &strat, &vs(&[]), &vs(&[0]), 0).unwrap(), vs(&[]));
    assert!(matches!(cop_choice_set(&d, &strat, &vs(&[0]), &vs(&[0]), 0), Err(BridgeError::UnknownKey { .. })));
    let WidthOutcome::Found { k, sdag, nice, .. } = compute_sdag_width(&d, 1, true).unwrap() else { panic!() };
    assert_eq!((k, sdag.width()), (1, 1));
    let nice = nice.unwrap();
    let back = sdag_to_strategy(&d, &nice, 1).unwrap();
    assert!(back.is_winning(&d));
    assert!(matches!(compute_sdag_width(&d, 0, false).unwrap(), WidthOutcome::Exceeded { max_k: 0 }));
}

#[test]
fn c3_pipeline() {
    let d = c3();
    let g = build_game_graph(&d, 2).unwrap();
    let strat = complete_strategy(&d, &g, &solve_game(&g).strategy).unwrap();
    let states = strat.consistent_states(&d).unwrap();
    let probe = GameState::Rigs1 { r: 1, xbot: vs(&[0]), xprime: vs(&[0, 2]) };
    if states.contains(&probe) {
        assert_eq!(cop_choice_set(&d, &strat, &vs(&[0]), &vs(&[0, 2]), 1).unwrap(), vs(&[1]));
    }
    let s = strategy_to_sdag(&d, 2, &strat).unwrap();
    assert!(validate_sdag(&d, &s).is_valid());
    assert_eq!(s.width(), 2);
    let WidthOutcome::Found { k, sdag, nice, robber_start_below } = compute_sdag_width(&d, 3, true).unwrap() else { panic!() };
    assert_eq!((k, sdag.width()), (2, 2));
    assert!(robber_start_below.is_some());
    let back = sdag_to_strategy(&d, &nice.unwrap(), 2).unwrap();
    for p in std::iter::once(RobberPolicy::AdversarialMaxReach).chain((0..10).map(RobberPolicy::Random)) {
        assert!(simulate_play(&d, &back, &p).unwrap().cop_won());
    }
}

#[test]
fn c3_choice_set_through_single_move() {
    // cops: (∅,r) -> {0}; then from ({0},r) add vertex 2; then finish
    let d = c3();
    let mut strat = cr_game::CopStrategy { k: 2, complete: true, ..Default::default() };
    let e = vs(&[]);
    for r in 0..3 {
        strat.f.insert((e.clone(), r), GameState::Rigs1 { r, xbot: e.clone(), xprime: vs(&[0]) });
    }
    for r in [1, 2] {
        strat.f.insert((vs(&[0]), r), GameState::Rigs1 { r, xbot: vs(&[0]), xprime: vs(&[0, 2]) });
    }
    strat.f.insert((vs(&[0, 2]), 1), GameState::Rigs1 { r: 1, xbot: vs(&[2]), xprime: vs(&[1, 2]) });
    assert!(strat.is_winning(&d));
    assert_eq!(cop_choice_set(&d, &strat, &vs(&[0]), &vs(&[0, 2]), 1).unwrap(), vs(&[1]));
    let s = strategy_to_sdag(&d, 2, &strat).unwrap();
    assert!(s.width() <= 2);
}

#[test]
fn path_width_one() {
    let d = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
    let out = compute_sdag_width(&d, 3, true).unwrap();
    assert_eq!(out.width(), Some(1));
}

fn random_graphs(count: u64) -> Vec<Digraph> {
    let models = [GenModel::Erdos(0.3), GenModel::Erdos(0.5), GenModel::Dag(0.5), GenModel::Cycle, GenModel::Path, GenModel::banded(2)];
    (0..count).map(|seed| gen_digraph(models[seed as usize % models.len()].clone(), 1 + seed as usize % 6, seed).unwrap()).collect()
}

#[test]
fn round_trips_on_random_digraphs() {
    for d in random_graphs(120) {
        let n = d.vertex_count();
        let out = compute_sdag_width(&d, n, true).unwrap();
        let WidthOutcome::Found { k, sdag, nice, robber_start_below } = out else { panic!("width ≤ n always exists") };
        // minimality against the explicit game graph
        if k > 0 {
            let g = build_game_graph(&d, k - 1).unwrap();
            assert!(!solve_game(&g).cop_wins_all(&g));
            assert!(robber_start_below.is_some());
        }
        let g = build_game_graph(&d, k).unwrap();
        assert!(solve_game(&g).cop_wins_all(&g));
        // round trip A
        assert!(validate_sdag(&d, &sdag).is_valid());
        assert!(sdag.width() <= k);
        let bound = g.len() as u128 + (n as u128).pow(2 * k as u32 + 2);
        assert!((sdag.node_count() as u128) <= bound.max(4));
        // round trip B
        let nice = nice.unwrap();
        assert!(validate_nice(&d, &nice).is_nice());
        let back = sdag_to_strategy(&d, &nice, k).unwrap();
        for p in std::iter::once(RobberPolicy::AdversarialMaxReach).chain((0..10).map(RobberPolicy::Random)) {
            let play = simulate_play(&d, &back, &p).unwrap();
            assert!(play.cop_won());
            assert!(play.len() <= 2 * n + 2);
        }
        // the strategy from the full game graph converts as well
        let full = complete_strategy(&d, &g, &solve_game(&g).strategy).unwrap();
        let s2 = strategy_to_sdag(&d, k, &full).unwrap();
        assert!(s2.width() <= k);
        let again = sdag_to_strategy(&d, &nicefy(&d, &s2).unwrap(), k).unwrap();
        assert!(again.is_winning(&d));
    }
}

#[test]
fn rejects_bad_inputs() {
    let d = c3();
    let strat = solve_canonical(&d, 2).unwrap().unwrap();
    let s = strategy_to_sdag(&d, 2, &strat).unwrap();
    // not nice until nicefied
    if !validate_nice(&d, &s).is_nice() {
        assert!(matches!(sdag_to_strategy(&d, &s, 2), Err(BridgeError::NotNice(_))));
    }
    let nice = nicefy(&d, &s).unwrap();
    assert!(matches!(sdag_to_strategy(&d, &nice, 1), Err(BridgeError::TooWide { .. })));
    assert!(strategy_to_sdag(&d, 2, &cr_game::CopStrategy { k: 2, ..Default::default() }).is_err());
}
