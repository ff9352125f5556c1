//! Acceptance suite: one test per criterion, each printing a pass line with
//! its elapsed time. Random instances are seeded, so the suite is
//! deterministic.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nashsynth::arena::{Cost, CostValue, Game, ObjectiveKind, Vertex};
use nashsynth::characterize::{check_outcome, check_spath_outcome};
use nashsynth::cli::run_command;
use nashsynth::fixtures;
use nashsynth::format::parse_lasso;
use nashsynth::lasso::Lasso;
use nashsynth::mealy::{outcome_of_profile, MealyMachine, StrategyProfile};
use nashsynth::simplify::{
    simplify_buchi, simplify_cobuchi, simplify_reach, simplify_safety, simplify_spath,
};
use nashsynth::synth::{
    construct_spath_ne_outcome, synth_buchi, synth_cobuchi, synth_reach, synth_safety, synth_spath,
};
use nashsynth::verify::{best_response, check_memory_bounds, is_nash, DEFAULT_PRODUCT_BUDGET};
use nashsynth::zerosum::{
    attractor, solve_qualitative, solve_spath, spath_values, CoalitionView, Side,
};

use common::{
    attractor_oracle, buchi_oracle, coalition_two_player_game, random_arena, random_game,
    random_memoryless_profile, value_iteration_oracle,
};

const BUDGET: usize = DEFAULT_PRODUCT_BUDGET;

fn finish(name: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {name}: PASS ({elapsed:.2?})");
    assert!(
        elapsed < limit,
        "{name} exceeded its time limit: {elapsed:.2?} > {limit:.2?}"
    );
}

fn cost(c: u64) -> CostValue {
    CostValue::Cost(Cost::Finite(c))
}

#[test]
fn criterion_01_weighted_two_player_outcomes() {
    let start = Instant::now();
    let file = fixtures::fig1a();
    let game = &file.game;
    let a = parse_lasso("v0,t12,v1|v2", &file).unwrap();
    let ra = check_outcome(game, &a).unwrap();
    assert!(ra.is_ne_outcome);
    assert_eq!(game.eval(&a, 1), cost(3));
    assert_eq!(game.eval(&a, 2), cost(3));
    let b = parse_lasso("v0|v1,t1", &file).unwrap();
    let rb = check_outcome(game, &b).unwrap();
    assert!(rb.is_ne_outcome);
    assert_eq!(game.eval(&b, 1), cost(2));
    assert_eq!(game.eval(&b, 2), CostValue::Cost(Cost::Infinite));
    finish("01 fig1a check", start, Duration::from_millis(100));
}

#[test]
fn criterion_02_three_player_shortest_path_pipeline() {
    let start = Instant::now();
    let file = fixtures::fig4a();
    let game = &file.game;
    let input = parse_lasso("v0,v1,v3|t", &file).unwrap();
    assert!(check_outcome(game, &input).unwrap().is_ne_outcome);
    let simplified = simplify_spath(game, &input).unwrap();
    let profile = synth_spath(game, &simplified).unwrap();
    for p in game.players() {
        assert!(profile.machine(p).num_states() <= 9);
    }
    let report = is_nash(game, &profile, 0, BUDGET).unwrap();
    assert!(report.is_nash);
    for a in &report.players {
        assert_eq!(a.outcome_value, cost(5));
    }
    finish("02 fig4a pipeline", start, Duration::from_millis(500));
}

#[test]
fn criterion_03_four_player_reachability_memory() {
    let start = Instant::now();
    let file = fixtures::fig3a();
    let game = &file.game;
    let input = parse_lasso("v0,v1,v2,t1,v2,v1,v0|t2", &file).unwrap();
    let simplified = simplify_reach(game, &input).unwrap();
    let profile = synth_reach(game, &simplified).unwrap();
    for p in game.players() {
        assert_eq!(profile.machine(p).num_states(), 4);
        assert!(profile.machine(p).num_states() <= 16);
    }
    let outcome = outcome_of_profile(&game.arena, &profile, 0);
    let visited = outcome.vertex_set();
    assert!(visited.contains(&file.vertex_by_name("t1").unwrap()));
    assert!(visited.contains(&file.vertex_by_name("t2").unwrap()));
    assert!(is_nash(game, &profile, 0, BUDGET).unwrap().is_nash);
    finish("03 fig3a memory", start, Duration::from_millis(500));
}

fn lassos_of(game: &Game, rng: &mut StdRng, per_game: usize) -> Vec<Lasso> {
    let mut out = Vec::new();
    for _ in 0..per_game {
        let profile = random_memoryless_profile(rng, &game.arena);
        let v0 = rng.gen_range(0..game.arena.num_vertices());
        out.push(outcome_of_profile(&game.arena, &profile, v0));
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn criterion_04_random_pipeline_audit() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x7ab1e1);
    let classes = [
        ObjectiveKind::Reach,
        ObjectiveKind::ShortestPath,
        ObjectiveKind::Safe,
        ObjectiveKind::Buchi,
        ObjectiveKind::CoBuchi,
    ];
    let mut games_total = 0usize;
    let mut exercised = 0usize;
    for &class in &classes {
        for _ in 0..100 {
            let arena = random_arena(&mut rng, 10, 4, 5);
            let game = random_game(&mut rng, arena, class);
            games_total += 1;
            for input in lassos_of(&game, &mut rng, 3) {
                let accepted = check_outcome(&game, &input).unwrap().is_ne_outcome;
                if !accepted {
                    continue;
                }
                exercised += 1;
                let simplified = match class {
                    ObjectiveKind::Reach => simplify_reach(&game, &input),
                    ObjectiveKind::ShortestPath => simplify_spath(&game, &input),
                    ObjectiveKind::Safe => simplify_safety(&game, &input),
                    ObjectiveKind::Buchi => simplify_buchi(&game, &input),
                    ObjectiveKind::CoBuchi => simplify_cobuchi(&game, &input),
                }
                .expect("accepted plays simplify");
                let profile = match class {
                    ObjectiveKind::Reach => synth_reach(&game, &simplified),
                    ObjectiveKind::ShortestPath => synth_spath(&game, &simplified),
                    ObjectiveKind::Safe => synth_safety(&game, &simplified),
                    ObjectiveKind::Buchi => synth_buchi(&game, &simplified),
                    ObjectiveKind::CoBuchi => synth_cobuchi(&game, &simplified),
                }
                .expect("simplified outcomes synthesise");
                // (a) bound compliance against the input play's parameters
                let k = game
                    .visit_positions(&input)
                    .into_iter()
                    .filter(|&pos| pos > 0)
                    .count();
                let satpl_in = game.satisfied_players(&input);
                let audit = check_memory_bounds(
                    &profile,
                    class,
                    game.arena.num_players(),
                    game.arena.num_vertices(),
                    k,
                    satpl_in.len(),
                );
                assert!(audit.iter().all(|a| a.pass), "bound violation: {audit:?}");
                // (b) the synthesised profile is a Nash equilibrium
                let report = is_nash(&game, &profile, input.first(), BUDGET).unwrap();
                assert!(report.is_nash, "not an equilibrium: {:?}", report.players);
                // (c) class-specific outcome guarantee
                let output = &simplified.lasso;
                assert_eq!(report.outcome, *output);
                let satpl_out = game.satisfied_players(output);
                match class {
                    ObjectiveKind::Reach | ObjectiveKind::ShortestPath => {
                        for p in game.players() {
                            let before = game.eval(&input, p);
                            let after = game.eval(output, p);
                            assert!(after == before || after.improves_on(before));
                        }
                    }
                    ObjectiveKind::Safe | ObjectiveKind::CoBuchi => {
                        assert!(satpl_out.is_superset(&satpl_in));
                    }
                    ObjectiveKind::Buchi => assert_eq!(satpl_out, satpl_in),
                }
            }
        }
    }
    assert!(
        games_total >= 500,
        "need at least 500 games, ran {games_total}"
    );
    assert!(
        exercised >= 300,
        "too few accepted plays exercised: {exercised}"
    );
    println!("criterion 04: {exercised} accepted plays across {games_total} games");
    finish("04 random pipeline audit", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_zero_sum_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x0c0de5);
    for _ in 0..300 {
        let arena = random_arena(&mut rng, 8, 3, 5);
        let protagonist = rng.gen_range(1..=arena.num_players());
        let view = CoalitionView::new(&arena, protagonist);
        let side_of = |v: Vertex| view.side_of(v);
        let nv = arena.num_vertices();
        let target: BTreeSet<Vertex> = (0..nv).filter(|_| rng.gen_bool(0.3)).collect();
        for side in [Side::One, Side::Two] {
            let (region, _) = attractor(&view, &target, side);
            assert_eq!(region, attractor_oracle(&arena, side_of, &target, side));
        }
        let sol = solve_qualitative(&view, ObjectiveKind::Buchi, &target).unwrap();
        let oracle_region = buchi_oracle(&arena, side_of, &target, Side::One);
        assert_eq!(sol.win1, oracle_region);
        let complement: BTreeSet<Vertex> = (0..nv).filter(|v| !oracle_region.contains(v)).collect();
        assert_eq!(sol.win2, complement);
        let weight = |a: Vertex, b: Vertex| arena.weight(a, b);
        let values = spath_values(&view, &target, weight);
        assert_eq!(
            values,
            value_iteration_oracle(&arena, side_of, &target, weight)
        );
    }
    finish("05 zero-sum oracles", start, Duration::from_secs(30));
}

#[test]
fn criterion_06_punisher_guarantee() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x0c0de5); // same arenas as criterion 5
    for _ in 0..300 {
        let arena = random_arena(&mut rng, 8, 3, 5);
        let protagonist = rng.gen_range(1..=arena.num_players());
        let view = CoalitionView::new(&arena, protagonist);
        let nv = arena.num_vertices();
        let target: BTreeSet<Vertex> = (0..nv).filter(|_| rng.gen_bool(0.3)).collect();
        let weight = |a: Vertex, b: Vertex| arena.weight(a, b);
        let sol = solve_spath(&view, &target, weight).unwrap();
        let (reach1, _) = attractor(&view, &target, Side::One);
        // embed the coalition game as a two-player game and fix the
        // punisher as the second player's machine
        let two =
            coalition_two_player_game(&arena, protagonist, &target, ObjectiveKind::ShortestPath);
        let punisher = sol.punisher.clone();
        let m2 = MealyMachine::memoryless(&two.arena, 2, |v| {
            punisher
                .get(&v)
                .copied()
                .or_else(|| two.arena.successors(v).first().copied())
        })
        .unwrap();
        let optimal = sol.optimal.clone();
        let m1 = MealyMachine::memoryless(&two.arena, 1, |v| {
            optimal
                .get(&v)
                .copied()
                .or_else(|| two.arena.successors(v).first().copied())
        })
        .unwrap();
        let profile = StrategyProfile::new(vec![m1, m2]).unwrap();
        for v in 0..nv {
            let response = best_response(&two, &profile, 1, v, BUDGET).unwrap();
            let CostValue::Cost(best) = response.value else {
                panic!("shortest-path value")
            };
            assert!(
                best >= sol.values[v],
                "punisher failed at {v}: best response {best:?} < value {:?}",
                sol.values[v]
            );
            let outcome = outcome_of_profile(&two.arena, &profile, v);
            let achieved = two.eval(&outcome, 1);
            match sol.values[v] {
                Cost::Finite(c) => {
                    assert_eq!(achieved, cost(c), "optimal play misses the value at {v}")
                }
                Cost::Infinite => {}
            }
            if !reach1.contains(&v) {
                // inside the coalition's safety region no visit happens
                assert_eq!(achieved, CostValue::Cost(Cost::Infinite));
            }
        }
    }
    finish("06 punisher guarantee", start, Duration::from_secs(30));
}

#[test]
fn criterion_07_truncated_ladder_values() {
    let start = Instant::now();
    let game = fixtures::fig2_truncated(5);
    let view = CoalitionView::new(&game.arena, 1);
    let weight = |a: Vertex, b: Vertex| game.arena.weight(a, b);
    let values = spath_values(&view, game.arena.target_set(1), weight);
    // layout: v0 = 0, hub = 1, rung k = 1 + k, target = 7
    for k in 1..=5u64 {
        assert_eq!(values[1 + k as usize], Cost::Finite(k));
    }
    assert_eq!(values[1], Cost::Finite(6));
    assert_eq!(
        values,
        value_iteration_oracle(
            &game.arena,
            |v| view.side_of(v),
            game.arena.target_set(1),
            weight
        )
    );
    finish("07 ladder values", start, Duration::from_millis(500));
}

#[test]
fn criterion_08_buchi_memory_lower_bound() {
    let start = Instant::now();
    let file = fixtures::buchi1();
    let game = &file.game;
    let arena = &game.arena;
    // exhaustively: player 2 owns v0 (choices v1, v3), v2 and v3 (self
    // loops), so there are exactly two memoryless strategies
    for target in [1usize, 3] {
        let m2 = MealyMachine::memoryless(arena, 2, |v| match v {
            0 => Some(target),
            _ => arena.successors(v).first().copied(),
        })
        .unwrap();
        // all player-1 behaviour matters only at v1 (choices v0, v2); both
        // machines below cover every memoryless deterministic choice
        for p1_target in [0usize, 2] {
            let m1 = MealyMachine::memoryless(arena, 1, |v| match v {
                1 => Some(p1_target),
                _ => None,
            })
            .unwrap();
            let profile = StrategyProfile::new(vec![m1, m2.clone()]).unwrap();
            let outcome = outcome_of_profile(arena, &profile, 0);
            if game.eval(&outcome, 2) == CostValue::Win {
                // any profile with a memoryless player 2 and a winning
                // outcome for player 2 is refuted
                let report = is_nash(game, &profile, 0, BUDGET).unwrap();
                assert!(!report.is_nash);
                assert_eq!(
                    best_response(game, &profile, 1, 0, BUDGET).unwrap().value,
                    CostValue::Win
                );
            }
        }
    }
    // the handcrafted two-state machine for player 2 is an equilibrium in
    // which player 2 wins, against a memoryless player 1
    let m2 = MealyMachine::new(
        arena,
        2,
        0,
        vec!["q1".into(), "q2".into()],
        vec![vec![1, 0, 0, 0], vec![1, 1, 1, 1]],
        vec![
            vec![Some(1), None, Some(2), Some(3)],
            vec![Some(3), None, Some(2), Some(3)],
        ],
    )
    .unwrap();
    let m1 = MealyMachine::memoryless(arena, 1, |v| if v == 1 { Some(2) } else { None }).unwrap();
    let profile = StrategyProfile::new(vec![m1, m2]).unwrap();
    let outcome = outcome_of_profile(arena, &profile, 0);
    assert_eq!(game.eval(&outcome, 2), CostValue::Win);
    assert!(is_nash(game, &profile, 0, BUDGET).unwrap().is_nash);
    finish("08 Büchi lower bound", start, Duration::from_secs(1));
}

#[test]
fn criterion_09_existence_always_accepted() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xeb15);
    for _ in 0..300 {
        let arena = random_arena(&mut rng, 10, 4, 5);
        let v0 = rng.gen_range(0..arena.num_vertices());
        let game = random_game(&mut rng, arena, ObjectiveKind::ShortestPath);
        let lasso = construct_spath_ne_outcome(&game, v0).expect("construction succeeds");
        assert!(check_spath_outcome(&game, &lasso).unwrap().is_ne_outcome);
    }
    finish("09 existence", start, Duration::from_secs(30));
}

#[test]
fn criterion_10_selftest_determinism() {
    let start = Instant::now();
    let (code_a, out_a) = run_command(["nashsynth", "selftest"]);
    let (code_b, out_b) = run_command(["nashsynth", "selftest"]);
    assert_eq!(code_a, 0, "{out_a}");
    assert_eq!(code_b, 0);
    assert_eq!(out_a, out_b, "selftest reports must be byte-identical");
    finish("10 determinism", start, Duration::from_secs(10));
}
