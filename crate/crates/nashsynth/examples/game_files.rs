//! The text formats: parse a game, serialise it canonically, and export
//! DOT for the arena and a machine.
//!
//! Run with `cargo run --example game_files`.

use nashsynth::dot::{arena_to_dot, machine_to_dot};
use nashsynth::format::{parse_game, serialize_game};
use nashsynth::mealy::MealyMachine;

fn main() {
    let text = "\
# a small two-player chase
players 2
vertex hub 1
vertex loop1 2
vertex loop2 1
vertex exit 2
edge hub loop1 2
edge loop1 loop2
edge loop2 hub
edge loop1 exit 4
edge exit exit
objective 1 spath exit
objective 2 safe exit
";
    let file = parse_game(text).expect("well-formed game");
    println!("canonical form:\n{}", serialize_game(&file));
    println!("arena DOT:\n{}", arena_to_dot(&file));

    let machine = MealyMachine::memoryless(&file.game.arena, 2, |v| {
        file.game.arena.successors(v).first().copied()
    })
    .expect("moves follow edges");
    println!("machine DOT:\n{}", machine_to_dot(&machine, &file));
}
