//! Decide whether plays are Nash-equilibrium outcomes.
//!
//! Run with `cargo run --example check_outcome`.

use nashsynth::characterize::check_outcome;
use nashsynth::fixtures;
use nashsynth::format::parse_lasso;

fn main() {
    let file = fixtures::fig1a();
    let game = &file.game;
    for text in ["v0,t12,v1|v2", "v0|v1,t1", "v0,v1|v2"] {
        let lasso = parse_lasso(text, &file).expect("valid lasso");
        let report = check_outcome(game, &lasso).expect("shortest-path game");
        println!("{text}: equilibrium outcome = {}", report.is_ne_outcome);
        println!("  costs {}", game.cost_profile(&lasso));
        for v in &report.violations {
            println!(
                "  violation: player {} at position {} ({:?})",
                v.player, v.position, v.reason
            );
        }
    }
}
