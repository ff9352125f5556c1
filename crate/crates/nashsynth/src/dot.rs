//! DOT (Graphviz) export of arenas and Mealy machines. Output is
//! layout-free and deterministically ordered by id.

use std::fmt::Write as _;

use crate::arena::{Arena, Game};
use crate::format::GameFile;
use crate::mealy::MealyMachine;

/// Renders the arena: one node per vertex annotated with its owner and the
/// players whose target it is; edges carry their weight when nonzero.
pub fn arena_to_dot(file: &GameFile) -> String {
    let game: &Game = &file.game;
    let arena: &Arena = &game.arena;
    let mut out = String::new();
    let _ = writeln!(out, "digraph arena {{");
    for v in arena.vertices() {
        let mut label = format!("{}\\nP{}", file.name(v), arena.owner(v));
        let targets: Vec<String> = game
            .players()
            .filter(|&p| arena.is_target(p, v))
            .map(|p| p.to_string())
            .collect();
        if !targets.is_empty() {
            let _ = write!(label, "\\nT: {}", targets.join(","));
        }
        let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
    }
    for v in arena.vertices() {
        for &s in arena.successors(v) {
            let w = arena.weight(v, s);
            if w == 0 {
                let _ = writeln!(out, "  v{v} -> v{s};");
            } else {
                let _ = writeln!(out, "  v{v} -> v{s} [label=\"{w}\"];");
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

/// Renders one machine: one node per memory state listing its next moves,
/// update edges labelled by the input vertex (parallel edges merged).
pub fn machine_to_dot(machine: &MealyMachine, file: &GameFile) -> String {
    let arena = &file.game.arena;
    let mut out = String::new();
    let _ = writeln!(out, "digraph machine_p{} {{", machine.owner_player());
    for m in 0..machine.num_states() {
        let mut label = machine.state_name(m).replace('"', "'");
        for v in arena.vertices() {
            if let Some(t) = machine.next_move(m, v) {
                let _ = write!(label, "\\n{} -> {}", file.name(v), file.name(t));
            }
        }
        let marker = if m == machine.initial_state() {
            ", shape=box"
        } else {
            ""
        };
        let _ = writeln!(out, "  m{m} [label=\"{label}\"{marker}];");
    }
    for m in 0..machine.num_states() {
        let mut grouped: Vec<(usize, Vec<String>)> = Vec::new();
        for v in arena.vertices() {
            let target = machine.update(m, v);
            match grouped.iter_mut().find(|(t, _)| *t == target) {
                Some((_, labels)) => labels.push(file.name(v).to_string()),
                None => grouped.push((target, vec![file.name(v).to_string()])),
            }
        }
        grouped.sort_by_key(|&(t, _)| t);
        for (target, labels) in grouped {
            let _ = writeln!(out, "  m{m} -> m{target} [label=\"{}\"];", labels.join(","));
        }
    }
    let _ = writeln!(out, "}}");
    out
}
