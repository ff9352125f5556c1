//! Refute a profile with an exact best response: a memoryless punisher is
//! not enough here, and the verifier produces the profitable deviation.
//!
//! Run with `cargo run --example verify_profile`.

use nashsynth::fixtures;
use nashsynth::format::render_lasso;
use nashsynth::mealy::{MealyMachine, StrategyProfile};
use nashsynth::verify::{is_nash, DEFAULT_PRODUCT_BUDGET};

fn main() {
    let file = fixtures::fig1b();
    let game = &file.game;
    let arena = &game.arena;
    // ids: v0=0 t2=1 v1=2 v2=3 t1=4 v3=5 t3=6 t4=7
    // player 1 plays memoryless and always answers v3 with t3; players 3
    // and 4 try to march toward t1
    let m1 = MealyMachine::memoryless(arena, 1, |v| match v {
        0 => Some(2),
        4 => Some(3),
        5 => Some(6),
        _ => arena.successors(v).first().copied(),
    })
    .expect("moves follow edges");
    let m2 = MealyMachine::memoryless(arena, 2, |v| arena.successors(v).first().copied()).unwrap();
    let m3 = MealyMachine::memoryless(arena, 3, |v| {
        if v == 2 {
            Some(3)
        } else {
            arena.successors(v).first().copied()
        }
    })
    .unwrap();
    let m4 = MealyMachine::memoryless(arena, 4, |v| {
        if v == 3 {
            Some(4)
        } else {
            arena.successors(v).first().copied()
        }
    })
    .unwrap();
    let profile = StrategyProfile::new(vec![m1, m2, m3, m4]).expect("one machine per player");

    let report = is_nash(game, &profile, 0, DEFAULT_PRODUCT_BUDGET).expect("within budget");
    println!("outcome: {}", render_lasso(&report.outcome, &file));
    println!("equilibrium: {}", report.is_nash);
    for a in &report.players {
        print!(
            "player {}: outcome {}, best response {}",
            a.player, a.outcome_value, a.best_response_value
        );
        match &a.deviation {
            Some(witness) => println!(", deviates via {}", render_lasso(witness, &file)),
            None => println!(),
        }
    }
}
