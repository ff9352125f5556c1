//! Build an arena programmatically, validate it, and evaluate plays.
//!
//! Run with `cargo run --example build_and_evaluate`.

use std::collections::BTreeSet;

use nashsynth::arena::{eval_cost, Arena, Game, ObjectiveKind};
use nashsynth::lasso::Lasso;

fn main() {
    // Two players on a diamond: player 1 picks the branch at `start`,
    // player 2 controls the merge vertex. Player 1 wants `goal` cheaply,
    // player 2 wants to avoid `trap`.
    let start = 0;
    let left = 1;
    let right = 2;
    let merge = 3;
    let goal = 4;
    let trap = 5;
    let arena = Arena::new(
        2,
        vec![1, 1, 1, 2, 1, 1],
        vec![
            (start, left, 2),
            (start, right, 5),
            (left, merge, 1),
            (right, merge, 1),
            (merge, goal, 1),
            (merge, trap, 0),
            (goal, goal, 0),
            (trap, trap, 0),
        ],
        vec![
            [goal].into_iter().collect::<BTreeSet<_>>(),
            [trap].into_iter().collect::<BTreeSet<_>>(),
        ],
    )
    .expect("the arena is well-formed");

    let game = Game::new(
        arena,
        vec![ObjectiveKind::ShortestPath, ObjectiveKind::Safe],
    )
    .expect("one objective per player");

    let good = Lasso::new(vec![start, left, merge], vec![goal]);
    let bad = Lasso::new(vec![start, left, merge], vec![trap]);
    for (name, lasso) in [("via goal", &good), ("into trap", &bad)] {
        println!("play {name}: {lasso}");
        println!(
            "  player 1 (spath): {}",
            eval_cost(&game.arena, lasso, ObjectiveKind::ShortestPath, 1)
        );
        println!("  player 2 (safe):  {}", game.eval(lasso, 2));
    }

    // a malformed arena is rejected with a precise error
    let deadlock = Arena::new(1, vec![1, 1], vec![(0, 1, 0)], vec![]);
    println!("deadlocked arena: {}", deadlock.unwrap_err());
}
