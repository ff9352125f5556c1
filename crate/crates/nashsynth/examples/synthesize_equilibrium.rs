//! The full pipeline: check an intended outcome, simplify it, synthesise
//! Mealy machines realising it as a Nash equilibrium, audit their memory
//! against the class bounds, and verify the result independently.
//!
//! Run with `cargo run --example synthesize_equilibrium`.

use nashsynth::characterize::check_outcome;
use nashsynth::fixtures;
use nashsynth::format::{parse_lasso, render_lasso, serialize_machine};
use nashsynth::mealy::outcome_of_profile;
use nashsynth::simplify::simplify_reach;
use nashsynth::synth::synth_reach;
use nashsynth::verify::{check_memory_bounds, is_nash, DEFAULT_PRODUCT_BUDGET};

fn main() {
    let file = fixtures::fig3a();
    let game = &file.game;
    // an outcome that visits the targets of players 1 and 2; it needs
    // memory because no simple play connects both targets from v0
    let intended = parse_lasso("v0,v1,v2,t1,v2,v1,v0|t2", &file).expect("valid lasso");
    assert!(
        check_outcome(game, &intended)
            .expect("reach game")
            .is_ne_outcome
    );

    let simplified = simplify_reach(game, &intended).expect("accepted outcome");
    let profile = synth_reach(game, &simplified).expect("well-formed decomposition");

    let outcome = outcome_of_profile(&game.arena, &profile, 0);
    println!("realised outcome: {}", render_lasso(&outcome, &file));

    let k = game
        .visit_positions(&intended)
        .into_iter()
        .filter(|&pos| pos > 0)
        .count();
    let satpl = game.satisfied_players(&intended).len();
    for audit in check_memory_bounds(
        &profile,
        nashsynth::arena::ObjectiveKind::Reach,
        game.arena.num_players(),
        game.arena.num_vertices(),
        k,
        satpl,
    ) {
        println!(
            "player {}: {} states (coarse bound {}, refined bound {})",
            audit.player, audit.states, audit.coarse_bound, audit.refined_bound
        );
    }

    let report = is_nash(game, &profile, 0, DEFAULT_PRODUCT_BUDGET).expect("within budget");
    println!("equilibrium: {}", report.is_nash);

    println!("--- machine of player 1 ---");
    print!("{}", serialize_machine(profile.machine(1), &file));
}
