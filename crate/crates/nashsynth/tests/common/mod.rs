//! Shared test machinery: brute-force oracles, independent of the library's
//! solver implementations, and seeded random instance generators.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;

use nashsynth::arena::{Arena, Cost, Game, ObjectiveKind, PlayerId, Vertex};
use nashsynth::mealy::{MealyMachine, StrategyProfile};
use nashsynth::zerosum::Side;

/// One-step forcing predecessor for `side`: a vertex joins when the side
/// owns it and some successor is in the set, or the opponent owns it and
/// all successors are.
fn force_pre(
    arena: &Arena,
    side_of: &impl Fn(Vertex) -> Side,
    side: Side,
    set: &BTreeSet<Vertex>,
) -> BTreeSet<Vertex> {
    arena
        .vertices()
        .filter(|&v| {
            let succs = arena.successors(v);
            if side_of(v) == side {
                succs.iter().any(|s| set.contains(s))
            } else {
                succs.iter().all(|s| set.contains(s))
            }
        })
        .collect()
}

/// Attractor as a plain fixpoint, recomputed from scratch every round.
pub fn attractor_oracle(
    arena: &Arena,
    side_of: impl Fn(Vertex) -> Side,
    target: &BTreeSet<Vertex>,
    side: Side,
) -> BTreeSet<Vertex> {
    let mut set: BTreeSet<Vertex> = target.clone();
    loop {
        let mut next = set.clone();
        next.extend(force_pre(arena, &side_of, side, &set));
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Winning region of the Büchi player as the standard nested fixpoint
/// `νZ. μY. (T ∩ Pre(Z)) ∪ Pre(Y)`.
pub fn buchi_oracle(
    arena: &Arena,
    side_of: impl Fn(Vertex) -> Side,
    target: &BTreeSet<Vertex>,
    side: Side,
) -> BTreeSet<Vertex> {
    let mut z: BTreeSet<Vertex> = arena.vertices().collect();
    loop {
        let pre_z = force_pre(arena, &side_of, side, &z);
        let seed: BTreeSet<Vertex> = target.intersection(&pre_z).copied().collect();
        let mut y = BTreeSet::new();
        loop {
            let mut next: BTreeSet<Vertex> = seed.clone();
            next.extend(force_pre(arena, &side_of, side, &y));
            if next == y {
                break;
            }
            y = next;
        }
        if y == z {
            return z;
        }
        z = y;
    }
}

/// Shortest-path game values by plain value iteration from above.
pub fn value_iteration_oracle(
    arena: &Arena,
    side_of: impl Fn(Vertex) -> Side,
    target: &BTreeSet<Vertex>,
    weight: impl Fn(Vertex, Vertex) -> u64,
) -> Vec<Cost> {
    let nv = arena.num_vertices();
    let mut values: Vec<Cost> = (0..nv)
        .map(|v| {
            if target.contains(&v) {
                Cost::Finite(0)
            } else {
                Cost::Infinite
            }
        })
        .collect();
    loop {
        let mut next = values.clone();
        for v in arena.vertices() {
            if target.contains(&v) {
                continue;
            }
            let over: Vec<Cost> = arena
                .successors(v)
                .iter()
                .map(|&s| values[s].saturating_add(weight(v, s)))
                .collect();
            next[v] = match side_of(v) {
                Side::One => over.into_iter().min().expect("no deadlocks"),
                Side::Two => over.into_iter().max().expect("no deadlocks"),
            };
        }
        if next == values {
            return values;
        }
        values = next;
    }
}

/// Random arena: every vertex keeps between one and three distinct
/// successors; targets are sparse random subsets.
pub fn random_arena(
    rng: &mut StdRng,
    max_vertices: usize,
    max_players: usize,
    max_weight: u64,
) -> Arena {
    let nv = rng.gen_range(2..=max_vertices.max(2));
    let n = rng.gen_range(1..=max_players.max(1));
    let owners: Vec<PlayerId> = (0..nv).map(|_| rng.gen_range(1..=n)).collect();
    let mut edges = Vec::new();
    for v in 0..nv {
        let degree = rng.gen_range(1..=3.min(nv));
        let mut picked = BTreeSet::new();
        while picked.len() < degree {
            picked.insert(rng.gen_range(0..nv));
        }
        for dst in picked {
            edges.push((v, dst, rng.gen_range(0..=max_weight)));
        }
    }
    let targets: Vec<BTreeSet<Vertex>> = (0..n)
        .map(|_| (0..nv).filter(|_| rng.gen_bool(0.25)).collect())
        .collect();
    Arena::new(n, owners, edges, targets).expect("generated arenas are valid")
}

pub fn random_game(rng: &mut StdRng, arena: Arena, kind: ObjectiveKind) -> Game {
    let n = arena.num_players();
    let _ = rng;
    Game::new(arena, vec![kind; n]).expect("matching objective count")
}

/// A uniformly random memoryless profile.
pub fn random_memoryless_profile(rng: &mut StdRng, arena: &Arena) -> StrategyProfile {
    let machines = (1..=arena.num_players())
        .map(|p| {
            let choices: Vec<Vertex> = arena
                .vertices()
                .map(|v| {
                    let succs = arena.successors(v);
                    succs[rng.gen_range(0..succs.len())]
                })
                .collect();
            MealyMachine::memoryless(arena, p, |v| Some(choices[v])).expect("moves respect edges")
        })
        .collect();
    StrategyProfile::new(machines).expect("one machine per player")
}

/// The coalition game of `protagonist` as a standalone two-player game:
/// same vertices and edges, owner 1 exactly on the protagonist's vertices,
/// player 1 carrying the given target.
pub fn coalition_two_player_game(
    arena: &Arena,
    protagonist: PlayerId,
    target: &BTreeSet<Vertex>,
    kind: ObjectiveKind,
) -> Game {
    let owners: Vec<PlayerId> = arena
        .vertices()
        .map(|v| if arena.owner(v) == protagonist { 1 } else { 2 })
        .collect();
    let mut edges = Vec::new();
    for v in arena.vertices() {
        for &s in arena.successors(v) {
            edges.push((v, s, arena.weight(v, s)));
        }
    }
    let targets = vec![target.clone(), BTreeSet::new()];
    let two = Arena::new(2, owners, edges, targets).expect("derived arena is valid");
    Game::new(two, vec![kind, kind]).expect("two objectives")
}
