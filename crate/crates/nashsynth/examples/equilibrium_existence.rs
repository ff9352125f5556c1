//! Construct an equilibrium outcome of a shortest-path game from scratch:
//! every player follows a uniformly optimal strategy of their own
//! coalition game.
//!
//! Run with `cargo run --example equilibrium_existence`.

use nashsynth::characterize::check_spath_outcome;
use nashsynth::fixtures;
use nashsynth::format::render_lasso;
use nashsynth::synth::construct_spath_ne_outcome;

fn main() {
    let file = fixtures::fig1a();
    let game = &file.game;
    let lasso = construct_spath_ne_outcome(game, 0).expect("shortest-path game");
    println!("outcome from v0: {}", render_lasso(&lasso, &file));
    println!("costs {}", game.cost_profile(&lasso));
    let report = check_spath_outcome(game, &lasso).expect("shortest-path game");
    println!("accepted by the characterisation: {}", report.is_ne_outcome);

    // the ladder game, starting on the third rung
    let game = fixtures::fig2_truncated(5);
    let lasso = construct_spath_ne_outcome(&game, 4).expect("shortest-path game");
    println!(
        "ladder outcome from rung 3: {lasso} with costs {}",
        game.cost_profile(&lasso)
    );
}
