use graph_core::{Digraph, GenModel, VertexSet};
use parity_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn game(n: usize, edges: &[(usize, usize)], even: &[usize], prio: &[u32]) -> ParityGame {
    ParityGame::new(Digraph::new(n, edges.iter().copied()).unwrap(), VertexSet::from_slice(even), prio.to_vec()).unwrap()
}

fn exit(v: usize, p: u32) -> Outcome {
    Outcome::Exit(v, p)
}

fn rs(os: &[Outcome]) -> ResultSet {
    ResultSet::minimal(os.iter().copied())
}

// ---------------------------------------------------------------- format

#[test]
fn parses_the_two_cycle() {
    let g = parse_pgsolver("parity 1; 0 0 0 1; 1 1 1 0;").unwrap();
    assert_eq!(g.vertex_count(), 2);
    assert_eq!(g.priorities(), &[0, 1]);
    assert_eq!(g.even_vertices(), &VertexSet::from_slice(&[0]));
    assert!(g.successors(0).contains(1) && g.successors(1).contains(0));
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(parse_pgsolver("parity 1;\n0 1 0;\n1 1 1 0;\n"), Err(ParityError::DeadEnd(0))));
    let e = parse_pgsolver("parity 0;\n0 2 0 0;\n").unwrap_err();
    assert!(matches!(e, ParityError::SelfLoop { vertex: 0, line: 2 }), "{e}");
    assert!(e.to_string().contains("self-loop"));
    let e = parse_pgsolver("parity 1;\n0 1 0 1;\n1 x 1 0;\n").unwrap_err();
    assert!(matches!(e, ParityError::Parse { line: 3, .. }), "{e}");
    assert!(matches!(parse_pgsolver("0 1 2 1;\n1 1 1 0;\n"), Err(ParityError::Parse { line: 1, .. })));
    assert!(matches!(parse_pgsolver("0 1 0 5;\n"), Err(ParityError::Parse { .. })));
    assert!(matches!(parse_pgsolver("0 1 0 1;\n1 1 1 0"), Err(ParityError::Parse { line: 2, .. })));
    assert!(matches!(parse_pgsolver("parity 2;\n0 1 0 1;\n1 1 1 0;\n"), Err(ParityError::Parse { .. })));
    assert!(matches!(parse_pgsolver("0 1 0 1;\n0 1 0 1;\n1 1 1 0;\n"), Err(ParityError::Parse { line: 2, .. })));
}

#[test]
fn unrolls_self_loops_on_request() {
    let text = "parity 1;\n0 3 1 0,1;\n1 2 0 1,0 \"b\";\n";
    let g = parse_pgsolver_with(text, ParseOptions { unroll_loops: true }).unwrap();
    assert_eq!(g.vertex_count(), 4);
    assert_eq!(g.priorities(), &[3, 2, 3, 2]);
    assert_eq!(g.successors(0), &VertexSet::from_slice(&[1, 2]));
    assert_eq!(g.successors(2), &VertexSet::from_slice(&[0]));
    assert_eq!(g.successors(3), &VertexSet::from_slice(&[1]));
    assert!(g.even_vertices().contains(3) && !g.even_vertices().contains(2));
    // winners on the original vertices match the looped game's: 1 can stay
    // on its loop (priority 2), 0 is Odd's and can stay on its loop (3)
    let w = zielonka_solve(&g);
    assert_eq!(w.winner(0), Player::Odd);
    assert_eq!(w.winner(1), Player::Even);
    let out = write_pgsolver(&g);
    assert!(out.starts_with("parity 3;"), "{out}");
    assert_eq!(parse_pgsolver(&out).unwrap(), g);
}

#[test]
fn round_trip_is_byte_stable() {
    let texts = [
        "parity 1; 0 0 0 1; 1 1 1 0;",
        "# a comment\nparity 2;\n0 4 0 1,2 \"start\";\n1 3 1 2; // trailing note\n2 2 1 0 \"x;y\";\n\n",
        "0   1 0 1 ;\n1 2 1\t0,0;",
        "// no header\n0 1 1 1,2;\n1 2 0 0;\n2 0 0 0 \"#not a comment\";\n# end\n",
    ];
    for t in texts {
        let g = parse_pgsolver(t).unwrap();
        assert_eq!(write_pgsolver(&g), t);
    }
    // a game built in code is written canonically and reads back equal
    let g = random_game(GenModel::Erdos(0.4), 6, 5, 3).unwrap();
    let text = write_pgsolver(&g);
    assert!(text.starts_with("parity 5;\n"));
    let back = parse_pgsolver(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(write_pgsolver(&back), text);
}

// ---------------------------------------------------------------- orders

/// The definition of `⊑`, spelled out.
fn prio_leq_def(i: u32, j: u32) -> bool {
    (i % 2 == 1 && j % 2 == 0) || (i % 2 == 0 && j % 2 == 0 && i >= j) || (i % 2 == 1 && j % 2 == 1 && i <= j)
}

#[test]
fn priority_order_examples_and_totality() {
    assert!(priority_leq(1, 2));
    assert!(priority_leq(4, 2));
    assert!(!priority_leq(3, 1));
    for i in 0..=12 {
        for j in 0..=12 {
            assert_eq!(priority_leq(i, j), prio_leq_def(i, j), "({i},{j})");
            assert!(priority_leq(i, j) || priority_leq(j, i), "total");
            if priority_leq(i, j) && priority_leq(j, i) {
                assert_eq!(i, j, "antisymmetric");
            }
            for k in 0..=12 {
                if priority_leq(i, j) && priority_leq(j, k) {
                    assert!(priority_leq(i, k), "transitive");
                }
            }
        }
    }
}

#[test]
fn numeric_min_is_monotone() {
    for a in 0..=12 {
        for p in 0..=12 {
            for q in 0..=12 {
                if priority_leq(p, q) {
                    assert!(priority_leq(a.min(p), a.min(q)), "a={a} p={p} q={q}");
                }
            }
        }
    }
}

#[test]
fn outcome_order_examples() {
    assert!(outcome_leq(&Outcome::WinOdd, &exit(4, 3)));
    assert!(outcome_leq(&exit(4, 2), &exit(4, 0)));
    assert!(!outcome_leq(&exit(1, 1), &exit(2, 1)) && !outcome_leq(&exit(2, 1), &exit(1, 1)));
    assert!(outcome_leq(&exit(0, 0), &Outcome::WinEven));
    assert!(!outcome_leq(&Outcome::WinEven, &exit(0, 0)));
    // results: the literal order lets an extra exit raise a result
    let one = rs(&[exit(1, 0)]);
    let two = rs(&[exit(1, 0), exit(2, 0)]);
    assert!(result_leq(&one, &two) && !result_leq(&two, &one));
    assert!(result_leq_with(ResultOrder::Smyth, &two, &one) && !result_leq_with(ResultOrder::Smyth, &one, &two));
    for order in [ResultOrder::Literal, ResultOrder::Smyth] {
        assert!(result_leq_with(order, &ResultSet::win_odd(), &one));
        assert!(result_leq_with(order, &two, &ResultSet::win_even()));
    }
}

#[test]
fn minimal_results_collapse() {
    assert_eq!(rs(&[exit(1, 2), Outcome::WinOdd]), ResultSet::win_odd());
    assert_eq!(rs(&[exit(1, 2), Outcome::WinEven]), rs(&[exit(1, 2)]));
    assert_eq!(rs(&[exit(1, 2), exit(1, 3), exit(1, 0)]), rs(&[exit(1, 3)]));
    assert!(rs(&[exit(2, 2), exit(1, 3)]).is_well_formed());
    assert_eq!(rs(&[Outcome::WinEven]), ResultSet::win_even());
}

// ---------------------------------------------------------------- plays and results

#[test]
fn play_outcomes() {
    let even = game(2, &[(0, 1), (1, 0)], &[0], &[0, 1]);
    assert_eq!(play_outcome(&even, &[], &[0, 1]).unwrap(), Outcome::WinEven);
    let odd = game(2, &[(0, 1), (1, 0)], &[], &[1, 3]);
    assert_eq!(play_outcome(&odd, &[0], &[1, 0]).unwrap(), Outcome::WinOdd);
    let ab = game(2, &[(0, 1), (1, 0)], &[], &[3, 0]);
    assert_eq!(play_outcome(&ab, &[0, 1], &[]).unwrap(), Outcome::Exit(1, 0));
    assert!(play_outcome(&ab, &[0, 0], &[]).is_err());
}

#[test]
fn restricted_result_examples() {
    // forced path 0 (priority 3) -> exit 1 (priority 0)
    let g = game(2, &[(0, 1), (1, 0)], &[], &[3, 0]);
    let region = VertexSet::from_slice(&[0]);
    assert_eq!(restricted_result(&g, &region, &[None, None], 0).unwrap(), rs(&[exit(1, 0)]));
    // Odd owns a 2-cycle with priorities (1,3), no exits
    let g = game(2, &[(0, 1), (1, 0)], &[], &[1, 3]);
    assert_eq!(restricted_result(&g, &VertexSet::full(2), &[None, None], 0).unwrap(), ResultSet::win_odd());
    // an exit and an odd cycle: WinOdd collapses the set
    let g = game(3, &[(0, 1), (1, 0), (0, 2), (2, 0)], &[], &[1, 3, 2]);
    assert_eq!(restricted_result(&g, &VertexSet::from_slice(&[0, 1]), &[None; 3], 0).unwrap(), ResultSet::win_odd());
    // Odd lowers the exit priority by looping through priority 1 first
    let g = game(4, &[(0, 1), (1, 0), (0, 2), (2, 3), (3, 2)], &[], &[4, 1, 6, 0]);
    let r = restricted_result(&g, &VertexSet::from_slice(&[0, 1]), &[None; 4], 0).unwrap();
    assert_eq!(r, ResultSet::win_odd());
    let g = game(4, &[(0, 1), (1, 0), (0, 2), (2, 3), (3, 2)], &[], &[4, 2, 5, 0]);
    let r = restricted_result(&g, &VertexSet::from_slice(&[0, 1]), &[None; 4], 0).unwrap();
    // cycle 0-1 has least priority 2 (even); exits at 2 with min 4 or 2; Odd prefers 4
    assert_eq!(r, rs(&[exit(2, 4)]));
    // missing Even choice
    let g = game(2, &[(0, 1), (1, 0)], &[0], &[0, 1]);
    assert!(matches!(restricted_result(&g, &VertexSet::full(2), &[None, None], 0), Err(ParityError::Strategy(_))));
}

#[test]
fn frontier_oracle_examples() {
    let g = game(3, &[(0, 1), (0, 2), (1, 0), (2, 0)], &[], &[1, 0, 2]);
    assert!(frontier_oracle(&g, &VertexSet::new(), &VertexSet::new()).unwrap().is_empty());
    // Odd vertex 0 with exits 1 (priority 0) and 2 (priority 2)
    let fr = frontier_oracle(&g, &VertexSet::singleton(0), &VertexSet::from_slice(&[1, 2])).unwrap();
    assert_eq!(fr, [(0, rs(&[exit(1, 0), exit(2, 1)]))].into_iter().collect());
    // the same vertex owned by Even: two incomparable singletons survive
    let g = game(3, &[(0, 1), (0, 2), (1, 0), (2, 0)], &[0], &[1, 0, 2]);
    let fr = frontier_oracle(&g, &VertexSet::singleton(0), &VertexSet::from_slice(&[1, 2])).unwrap();
    assert_eq!(fr, [(0, rs(&[exit(1, 0)])), (0, rs(&[exit(2, 1)]))].into_iter().collect());
    // budget
    let g = random_game(GenModel::Erdos(0.9), 9, 3, 1).unwrap();
    let all = VertexSet::full(9);
    assert!(matches!(frontier_oracle_with(&g, &all, &VertexSet::new(), ResultOrder::Smyth, 4), Err(ParityError::Budget(4))));
}

#[test]
fn dominance_filter_examples() {
    let fr: Frontier = [(0, ResultSet::win_odd()), (0, ResultSet::win_even())].into_iter().collect();
    assert_eq!(dominance_filter(&fr), [(0, ResultSet::win_even())].into_iter().collect());
    let inc: Frontier = [(0, rs(&[exit(1, 0)])), (0, rs(&[exit(2, 0)])), (1, ResultSet::win_odd())].into_iter().collect();
    assert_eq!(dominance_filter(&inc), inc);
    let mixed: Frontier = [(0, rs(&[exit(1, 0)])), (0, rs(&[exit(1, 0), exit(2, 1)])), (0, rs(&[exit(1, 1)]))].into_iter().collect();
    for order in [ResultOrder::Smyth, ResultOrder::Literal] {
        let once = dominance_filter_with(&mixed, order);
        assert_eq!(dominance_filter_with(&once, order), once, "idempotent");
    }
    assert_eq!(dominance_filter(&mixed), [(0, rs(&[exit(1, 0)]))].into_iter().collect());
    assert_eq!(dominance_filter_with(&mixed, ResultOrder::Literal), [(0, rs(&[exit(1, 0), exit(2, 1)]))].into_iter().collect());
}

/// Even vertex 0 chooses between Odd vertices 1 and 2 inside the region
/// {0,1,2}. Vertex 1 can only go to 3, vertex 2 to 3 or 4. Vertex 3 is won
/// by Even and vertex 4 by Odd, so Even must choose 1. The literal order
/// ranks the result of choosing 2 higher (it has an extra exit) and filters
/// away the only good choice; the default order keeps it.
#[test]
fn literal_order_discards_the_winning_choice() {
    let g = game(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 0), (4, 5), (5, 4)], &[0, 3], &[2, 2, 2, 2, 1, 1]);
    let w = zielonka_solve(&g);
    assert_eq!(w.winner(0), Player::Even);
    assert_eq!(w.winner(4), Player::Odd);
    let region = VertexSet::from_slice(&[0, 1, 2]);
    let exits = VertexSet::from_slice(&[3, 4]);
    let exits_ok = |r: &ResultSet| r.exit_vertices().all(|x| w.winner(x) == Player::Even);
    let smyth = frontier_oracle_with(&g, &region, &exits, ResultOrder::Smyth, DEFAULT_ORACLE_BUDGET).unwrap();
    let literal = frontier_oracle_with(&g, &region, &exits, ResultOrder::Literal, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!(smyth.results_at(0).all(exits_ok));
    assert!(literal.results_at(0).all(|r| !exits_ok(r)), "{literal}");
}

// ---------------------------------------------------------------- solvers

/// Whether some cycle of the graph `succ` restricted to `within` has an odd
/// least priority, via a transitive closure per odd threshold.
fn odd_cycle(g: &ParityGame, within: &[bool], succ: &[Vec<usize>]) -> bool {
    let n = within.len();
    (0..n).filter(|&u| within[u] && g.priority(u) % 2 == 1).any(|u| {
        let q = g.priority(u);
        let ok = |v: usize| within[v] && g.priority(v) >= q;
        let mut reach = vec![vec![false; n]; n];
        for a in (0..n).filter(|&a| ok(a)) {
            for &b in &succ[a] {
                if ok(b) {
                    reach[a][b] = true;
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                if reach[a][k] {
                    for b in 0..n {
                        if reach[k][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        reach[u][u]
    })
}

/// Even wins `v` iff some memoryless Even strategy leaves Odd no reachable
/// cycle with odd least priority.
fn brute_force_winners(g: &ParityGame) -> Vec<Player> {
    let n = g.vertex_count();
    let evens: Vec<usize> = g.even_vertices().iter().collect();
    let opts: Vec<Vec<usize>> = evens.iter().map(|&u| g.successors(u).iter().collect()).collect();
    let mut win = vec![false; n];
    let mut idx = vec![0usize; evens.len()];
    loop {
        let mut succ: Vec<Vec<usize>> = (0..n).map(|u| g.successors(u).iter().collect()).collect();
        for (i, &u) in evens.iter().enumerate() {
            succ[u] = vec![opts[i][idx[i]]];
        }
        for v in 0..n {
            let mut reach = vec![false; n];
            let mut stack = vec![v];
            reach[v] = true;
            while let Some(u) = stack.pop() {
                for &w in &succ[u] {
                    if !reach[w] {
                        reach[w] = true;
                        stack.push(w);
                    }
                }
            }
            if !odd_cycle(g, &reach, &succ) {
                win[v] = true;
            }
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return win.into_iter().map(|b| if b { Player::Even } else { Player::Odd }).collect();
            }
            idx[i] += 1;
            if idx[i] < opts[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn zielonka_examples() {
    let g = game(2, &[(0, 1), (1, 0)], &[0], &[0, 1]);
    assert_eq!(zielonka_solve(&g).to_vec(2), vec![Player::Even; 2]);
    let g = game(2, &[(0, 1), (1, 0)], &[0], &[1, 3]);
    assert_eq!(zielonka_solve(&g).to_vec(2), vec![Player::Odd; 2]);
}

#[test]
fn zielonka_matches_memoryless_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..300 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.15..0.6);
        let g = random_game(GenModel::Erdos(p), n, 4, 1000 + i).unwrap();
        let w = zielonka_solve(&g);
        assert!(w.even.is_disjoint(&w.odd) && w.even.union(&w.odd) == VertexSet::full(n));
        assert_eq!(w.to_vec(n), brute_force_winners(&g), "game {i}:\n{}", write_pgsolver(&g));
    }
}

#[test]
fn whole_game_frontier_gives_the_winners() {
    for i in 0..150 {
        let n = 2 + (i as usize % 5);
        let g = random_game(GenModel::Erdos(0.35), n, 4, 500 + i).unwrap();
        let fr = frontier_oracle(&g, &VertexSet::full(n), &VertexSet::new()).unwrap();
        let w = zielonka_solve(&g);
        for v in 0..n {
            let rs: Vec<&ResultSet> = fr.results_at(v).collect();
            assert_eq!(rs.len(), 1, "one optimal result per vertex");
            let expect = if w.winner(v) == Player::Even { ResultSet::win_even() } else { ResultSet::win_odd() };
            assert_eq!(rs[0], &expect, "game {i} vertex {v}");
        }
    }
}

#[test]
fn results_are_well_formed_and_guarded() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let n = rng.gen_range(3..=8);
        let g = random_game(GenModel::Erdos(0.3), n, 5, 40 + i).unwrap();
        let region: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let guard = g.digraph().out_neighbours(&region).difference(&region);
        let fr = frontier_oracle(&g, &region, &guard).unwrap();
        assert_eq!(fr.starts(), region);
        assert!(fr.exit_vertices().is_subset(&guard));
        for (_, r) in fr.iter() {
            assert!(r.is_well_formed(), "{r}");
            for o in r.outcomes() {
                if let Outcome::Exit(_, p) = o {
                    assert!(*p <= g.max_priority());
                }
            }
        }
    }
}
