//! Solve the zero-sum coalition games of a multiplayer game: winning
//! regions with memoryless strategies for qualitative objectives, and
//! values with optimal and punishing strategies for shortest-path.
//!
//! Run with `cargo run --example solve_zero_sum`.

use nashsynth::arena::ObjectiveKind;
use nashsynth::fixtures;
use nashsynth::zerosum::{attractor, solve_qualitative, solve_spath, CoalitionView, Side};

fn main() {
    // the bundled three-player weighted game
    let file = fixtures::fig4a();
    let game = &file.game;
    for player in game.players() {
        let view = CoalitionView::new(&game.arena, player);
        let target = game.arena.target_set(player);
        let sol = solve_spath(&view, target, |a, b| game.arena.weight(a, b))
            .expect("values are consistent");
        println!("player {player} against the coalition:");
        for v in game.arena.vertices() {
            println!("  value({}) = {}", file.name(v), sol.values[v]);
        }
        for (v, t) in &sol.optimal {
            println!("  optimal: {} -> {}", file.name(*v), file.name(*t));
        }
        for (v, t) in &sol.punisher {
            println!("  punisher: {} -> {}", file.name(*v), file.name(*t));
        }
    }

    // qualitative solving on the bundled Büchi game
    let file = fixtures::buchi1();
    let game = &file.game;
    let view = CoalitionView::new(&game.arena, 2);
    let sol = solve_qualitative(&view, ObjectiveKind::Buchi, game.arena.target_set(2))
        .expect("Büchi is qualitative");
    println!("player 2 forces its Büchi target from: {:?}", sol.win1);
    let (region, _) = attractor(&view, game.arena.target_set(2), Side::One);
    println!("player 2 forces a single visit from:   {:?}", region);
}
