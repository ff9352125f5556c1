//! Mealy machines encoding finite-memory strategies, strategy profiles, and
//! the simulation of a profile to its unique outcome.
//!
//! A machine reads the vertices of the play one by one. The move prescribed
//! at a history `h·v` with `v` owned by the machine's player is
//! `next_move(state_after(h), v)`; the state is then updated by reading `v`.

use std::collections::HashMap;

use thiserror::Error;

use crate::arena::{Arena, PlayerId, Vertex};
use crate::lasso::Lasso;

/// Memory state index of a [`MealyMachine`], `0..num_states`.
pub type StateId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MealyError {
    #[error("update function is not total (state {state}, vertex {vertex})")]
    PartialUpdate { state: StateId, vertex: Vertex },
    #[error("next-move missing at owned vertex {vertex} in state {state}")]
    MissingMove { state: StateId, vertex: Vertex },
    #[error("next-move ({state}, {vertex}) -> {target} is not an arena edge")]
    MoveNotAnEdge {
        state: StateId,
        vertex: Vertex,
        target: Vertex,
    },
    #[error("machine shape does not match the arena")]
    ShapeMismatch,
    #[error("initial state {0} out of range")]
    BadInitialState(StateId),
    #[error("profile must contain one machine per player, owned in order")]
    BadProfile,
}

/// A finite-state strategy of one player: a total update function over
/// states × vertices and a next-move function defined at the vertices the
/// player owns. Memory size is the number of states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    owner_player: PlayerId,
    initial: StateId,
    /// Human-readable state names, used by exports; unique per machine.
    state_names: Vec<String>,
    /// `update[state][vertex]`, total.
    update: Vec<Vec<StateId>>,
    /// `next_move[state][vertex]`, `Some` exactly at vertices owned by
    /// `owner_player`.
    next_move: Vec<Vec<Option<Vertex>>>,
}

impl MealyMachine {
    pub fn new(
        arena: &Arena,
        owner_player: PlayerId,
        initial: StateId,
        state_names: Vec<String>,
        update: Vec<Vec<StateId>>,
        next_move: Vec<Vec<Option<Vertex>>>,
    ) -> Result<MealyMachine, MealyError> {
        let num_states = state_names.len();
        if update.len() != num_states || next_move.len() != num_states {
            return Err(MealyError::ShapeMismatch);
        }
        if initial >= num_states {
            return Err(MealyError::BadInitialState(initial));
        }
        for (m, row) in update.iter().enumerate() {
            if row.len() != arena.num_vertices() {
                return Err(MealyError::ShapeMismatch);
            }
            for (v, &m2) in row.iter().enumerate() {
                if m2 >= num_states {
                    return Err(MealyError::PartialUpdate {
                        state: m,
                        vertex: v,
                    });
                }
            }
        }
        for (m, row) in next_move.iter().enumerate() {
            if row.len() != arena.num_vertices() {
                return Err(MealyError::ShapeMismatch);
            }
            for (v, &mv) in row.iter().enumerate() {
                match mv {
                    Some(target) if arena.owner(v) == owner_player => {
                        if !arena.has_edge(v, target) {
                            return Err(MealyError::MoveNotAnEdge {
                                state: m,
                                vertex: v,
                                target,
                            });
                        }
                    }
                    Some(_) => return Err(MealyError::ShapeMismatch),
                    None if arena.owner(v) == owner_player => {
                        return Err(MealyError::MissingMove {
                            state: m,
                            vertex: v,
                        })
                    }
                    None => {}
                }
            }
        }
        Ok(MealyMachine {
            owner_player,
            initial,
            state_names,
            update,
            next_move,
        })
    }

    /// One-state machine playing a memoryless strategy. `choice` must cover
    /// every vertex owned by the player; other entries are ignored.
    pub fn memoryless(
        arena: &Arena,
        owner_player: PlayerId,
        choice: impl Fn(Vertex) -> Option<Vertex>,
    ) -> Result<MealyMachine, MealyError> {
        let nv = arena.num_vertices();
        let update = vec![vec![0; nv]];
        let mut moves = vec![None; nv];
        for v in arena.vertices() {
            if arena.owner(v) == owner_player {
                let target = choice(v).ok_or(MealyError::MissingMove {
                    state: 0,
                    vertex: v,
                })?;
                moves[v] = Some(target);
            }
        }
        MealyMachine::new(
            arena,
            owner_player,
            0,
            vec!["m0".to_string()],
            update,
            vec![moves],
        )
    }

    pub fn owner_player(&self) -> PlayerId {
        self.owner_player
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial_state(&self) -> StateId {
        self.initial
    }

    pub fn state_name(&self, m: StateId) -> &str {
        &self.state_names[m]
    }

    pub fn update(&self, m: StateId, v: Vertex) -> StateId {
        self.update[m][v]
    }

    pub fn next_move(&self, m: StateId, v: Vertex) -> Option<Vertex> {
        self.next_move[m][v]
    }

    /// Iterated update over a vertex sequence, starting at the initial state.
    pub fn run(&self, word: impl IntoIterator<Item = Vertex>) -> StateId {
        word.into_iter()
            .fold(self.initial, |m, v| self.update(m, v))
    }
}

/// One Mealy machine per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    machines: Vec<MealyMachine>,
}

impl StrategyProfile {
    pub fn new(machines: Vec<MealyMachine>) -> Result<StrategyProfile, MealyError> {
        for (i, m) in machines.iter().enumerate() {
            if m.owner_player() != i + 1 {
                return Err(MealyError::BadProfile);
            }
        }
        Ok(StrategyProfile { machines })
    }

    pub fn machine(&self, player: PlayerId) -> &MealyMachine {
        &self.machines[player - 1]
    }

    pub fn machines(&self) -> &[MealyMachine] {
        &self.machines
    }

    pub fn num_players(&self) -> usize {
        self.machines.len()
    }
}

/// Simulates the joint system of arena and machines from `v0`. The run is
/// deterministic and the joint state space finite, so a pair of current
/// vertex and memory vector repeats; the induced lasso is returned in
/// canonical form.
pub fn outcome_of_profile(arena: &Arena, profile: &StrategyProfile, v0: Vertex) -> Lasso {
    assert_eq!(profile.num_players(), arena.num_players());
    assert!(v0 < arena.num_vertices());
    let mut memories: Vec<StateId> = profile
        .machines()
        .iter()
        .map(|m| m.initial_state())
        .collect();
    let mut vertex = v0;
    let mut seen: HashMap<(Vertex, Vec<StateId>), usize> = HashMap::new();
    let mut trace: Vec<Vertex> = Vec::new();
    loop {
        let key = (vertex, memories.clone());
        if let Some(&start) = seen.get(&key) {
            let cycle = trace[start..].to_vec();
            let prefix = trace[..start].to_vec();
            return Lasso::new(prefix, cycle);
        }
        seen.insert(key, trace.len());
        trace.push(vertex);
        let owner = arena.owner(vertex);
        let machine = profile.machine(owner);
        let next = machine
            .next_move(memories[owner - 1], vertex)
            .expect("next-move is total at owned vertices");
        for (j, m) in profile.machines().iter().enumerate() {
            memories[j] = m.update(memories[j], vertex);
        }
        vertex = next;
    }
}

/// Simulates the profile and evaluates the outcome against every player's
/// objective.
pub fn outcome_with_costs(
    game: &crate::arena::Game,
    profile: &StrategyProfile,
    v0: Vertex,
) -> (Lasso, crate::arena::CostProfile) {
    let lasso = outcome_of_profile(&game.arena, profile, v0);
    let costs = game.cost_profile(&lasso);
    (lasso, costs)
}

/// Whether every move along the play is the one the owner's machine
/// prescribes. Replays the lasso until the joint memory state at the cycle
/// start recurs, so cycles are checked against every reachable memory.
pub fn profile_consistent_with(arena: &Arena, profile: &StrategyProfile, lasso: &Lasso) -> bool {
    let mut memories: Vec<StateId> = profile
        .machines()
        .iter()
        .map(|m| m.initial_state())
        .collect();
    let positions = lasso.positions();
    let mut pos = 0usize;
    let mut seen: HashMap<(usize, Vec<StateId>), ()> = HashMap::new();
    loop {
        let phase = if pos < positions.len() {
            pos
        } else {
            lasso.prefix().len() + (pos - lasso.prefix().len()) % lasso.cycle().len()
        };
        if seen.insert((phase, memories.clone()), ()).is_some() {
            return true;
        }
        let v = lasso.vertex_at(pos);
        let next = lasso.vertex_at(pos + 1);
        let owner = arena.owner(v);
        match profile.machine(owner).next_move(memories[owner - 1], v) {
            Some(mv) if mv == next => {}
            _ => return false,
        }
        for (j, m) in profile.machines().iter().enumerate() {
            memories[j] = m.update(memories[j], v);
        }
        pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Arena;
    use std::collections::BTreeSet;

    fn loop_arena() -> Arena {
        Arena::new(
            1,
            vec![1],
            vec![(0, 0, 0)],
            vec![[0].into_iter().collect::<BTreeSet<_>>()],
        )
        .unwrap()
    }

    #[test]
    fn trivial_machine_self_loop() {
        let arena = loop_arena();
        let machine = MealyMachine::memoryless(&arena, 1, |_| Some(0)).unwrap();
        let profile = StrategyProfile::new(vec![machine]).unwrap();
        let lasso = outcome_of_profile(&arena, &profile, 0);
        assert_eq!(lasso, Lasso::new(vec![], vec![0]));
        assert!(profile_consistent_with(&arena, &profile, &lasso));
    }

    #[test]
    fn rejects_move_off_edge() {
        let arena = Arena::new(1, vec![1, 1], vec![(0, 1, 0), (1, 0, 0)], vec![]).unwrap();
        let err = MealyMachine::memoryless(&arena, 1, |v| Some(v)).unwrap_err();
        assert_eq!(
            err,
            MealyError::MoveNotAnEdge {
                state: 0,
                vertex: 0,
                target: 0
            }
        );
    }

    #[test]
    fn two_state_machine_alternates() {
        // one vertex per player, player 1 alternates between two successors
        let arena = Arena::new(
            2,
            vec![1, 2, 2],
            vec![(0, 1, 0), (0, 2, 0), (1, 0, 0), (2, 0, 0)],
            vec![],
        )
        .unwrap();
        let m1 = MealyMachine::new(
            &arena,
            1,
            0,
            vec!["a".into(), "b".into()],
            // flip only when reading vertex 0
            vec![vec![1, 0, 0], vec![0, 1, 1]],
            vec![vec![Some(1), None, None], vec![Some(2), None, None]],
        )
        .unwrap();
        let m2 = MealyMachine::memoryless(&arena, 2, |_| Some(0)).unwrap();
        let profile = StrategyProfile::new(vec![m1, m2]).unwrap();
        let lasso = outcome_of_profile(&arena, &profile, 0);
        assert_eq!(lasso, Lasso::new(vec![], vec![0, 1, 0, 2]));
        assert!(profile_consistent_with(&arena, &profile, &lasso));
        // a foreign lasso is rejected
        assert!(!profile_consistent_with(
            &arena,
            &profile,
            &Lasso::new(vec![], vec![0, 1])
        ));
    }
}
