//! Building finite-memory Nash equilibria as explicit Mealy machines from
//! well-structured outcomes.
//!
//! The reachability, shortest-path and safety constructions share a
//! template machine over a finite simple decomposition whose states track
//! the last monitored player to move and the current segment. The machines
//! differ in how they react when the play leaves the current segment:
//! reachability freezes the memory and punishes as long as the play stays
//! outside; shortest-path and safety commit to a dedicated punishment state
//! per monitored player. Büchi and co-Büchi machines prepend a phase that
//! enforces a simple history vertex by vertex.
//!
//! Every entry the constructions leave open is resolved deterministically:
//! next moves default to the lowest-id successor and updates keep the
//! current state.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arena::{Arena, Game, ObjectiveKind, PlayerId, Vertex};
use crate::characterize::check_spath_outcome;
use crate::lasso::{Decomposition, Lasso};
use crate::mealy::{outcome_of_profile, MealyMachine, StateId, StrategyProfile};
use crate::simplify::{OutcomeShape, SimplifiedOutcome};
use crate::zerosum::{solve_qualitative, solve_spath, CoalitionView};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("decomposition contains a trivial segment")]
    TrivialSegment,
    #[error("simplified outcome has class {got}, expected {expected}")]
    ClassMismatch {
        expected: ObjectiveKind,
        got: ObjectiveKind,
    },
    #[error("per-player weight functions are not supported by synthesis")]
    PerPlayerWeights,
}

// ---------------------------------------------------------------------------
// Template machines over finite simple decompositions
// ---------------------------------------------------------------------------

/// The partially defined machine shared by the reachability, shortest-path
/// and safety constructions: states are pairs of a monitored player and an
/// element index of the decomposition; updates are defined exactly on
/// vertices occurring in the current element.
#[derive(Debug, Clone)]
pub struct TemplateMachine {
    monitored: Vec<PlayerId>,
    elements: Vec<Element>,
}

#[derive(Debug, Clone)]
enum Element {
    History(Vec<Vertex>),
    Tail(Lasso),
}

impl Element {
    fn contains(&self, v: Vertex) -> bool {
        match self {
            Element::History(seg) => seg.contains(&v),
            Element::Tail(lasso) => lasso.positions().contains(&v),
        }
    }

    fn first(&self) -> Vertex {
        match self {
            Element::History(seg) => seg[0],
            Element::Tail(lasso) => lasso.first(),
        }
    }

    /// Last vertex of a finite element; the tail has none.
    fn last(&self) -> Option<Vertex> {
        match self {
            Element::History(seg) => seg.last().copied(),
            Element::Tail(_) => None,
        }
    }

    /// Successor of `v` within the element, the junction excluded.
    fn next_within(&self, v: Vertex) -> Option<Vertex> {
        match self {
            Element::History(seg) => {
                let at = seg.iter().position(|&u| u == v)?;
                seg.get(at + 1).copied()
            }
            Element::Tail(lasso) => {
                let positions = lasso.positions();
                let at = positions.iter().position(|&u| u == v)?;
                Some(lasso.vertex_at(at + 1))
            }
        }
    }

    fn second(&self) -> Vertex {
        match self {
            Element::History(seg) => seg[1],
            Element::Tail(lasso) => lasso.vertex_at(1),
        }
    }
}

/// A memory state of a [`TemplateMachine`]: the last monitored player to
/// have moved and the element currently being followed (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemplateState {
    pub player: PlayerId,
    pub element: usize,
}

impl TemplateMachine {
    pub fn monitored(&self) -> &[PlayerId] {
        &self.monitored
    }

    /// Number of elements of the underlying decomposition.
    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// Number of template states.
    pub fn num_states(&self) -> usize {
        self.monitored.len() * self.elements.len()
    }

    pub fn initial_state(&self) -> TemplateState {
        TemplateState {
            player: self.monitored[0],
            element: 1,
        }
    }

    fn state_id(&self, state: TemplateState) -> StateId {
        let idx = self
            .monitored
            .iter()
            .position(|&p| p == state.player)
            .expect("monitored player");
        idx * self.elements.len() + (state.element - 1)
    }

    fn state_at(&self, id: StateId) -> TemplateState {
        let k = self.elements.len();
        TemplateState {
            player: self.monitored[id / k],
            element: id % k + 1,
        }
    }

    pub fn state_name(&self, state: TemplateState) -> String {
        format!("(P{},{})", state.player, state.element)
    }

    /// Partial update: defined iff `v` occurs in the current element.
    pub fn update(&self, arena: &Arena, state: TemplateState, v: Vertex) -> Option<TemplateState> {
        let element = &self.elements[state.element - 1];
        if !element.contains(v) {
            return None;
        }
        let player = if self.monitored.contains(&arena.owner(v)) {
            arena.owner(v)
        } else {
            state.player
        };
        let element_idx = if state.element < self.elements.len() && element.last() == Some(v) {
            state.element + 1
        } else {
            state.element
        };
        Some(TemplateState {
            player,
            element: element_idx,
        })
    }

    /// Partial next-move: the vertex following `v` on the decomposed play,
    /// crossing into the next element at the junction.
    pub fn next_vertex(&self, state: TemplateState, v: Vertex) -> Option<Vertex> {
        let element = &self.elements[state.element - 1];
        if !element.contains(v) {
            return None;
        }
        if state.element < self.elements.len() && element.last() == Some(v) {
            return Some(self.elements[state.element].second());
        }
        element.next_within(v)
    }

    /// Iterated partial update along a history; `None` once the history
    /// leaves the decomposition's elements.
    pub fn run(&self, arena: &Arena, history: &[Vertex]) -> Option<TemplateState> {
        let mut state = self.initial_state();
        for &v in history {
            state = self.update(arena, state, v)?;
        }
        Some(state)
    }
}

/// Builds the template machine for the monitored set over a finite simple
/// decomposition. Segments must be nontrivial.
pub fn build_template(
    _arena: &Arena,
    decomposition: &Decomposition,
    monitored: &BTreeSet<PlayerId>,
) -> Result<TemplateMachine, SynthError> {
    assert!(!monitored.is_empty(), "monitored set must be nonempty");
    if decomposition.segments.iter().any(|seg| seg.len() < 2) {
        return Err(SynthError::TrivialSegment);
    }
    let mut elements: Vec<Element> = decomposition
        .segments
        .iter()
        .map(|seg| Element::History(seg.clone()))
        .collect();
    elements.push(Element::Tail(decomposition.tail.clone()));
    Ok(TemplateMachine {
        monitored: monitored.iter().copied().collect(),
        elements,
    })
}

// ---------------------------------------------------------------------------
// Shared machine assembly
// ---------------------------------------------------------------------------

/// What happens when the play leaves the current element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OffSegment {
    /// Keep the memory state; punish while outside (reachability).
    Freeze,
    /// Move to the deviator's absorbing punishment state.
    Commit,
}

fn lowest_successor(arena: &Arena, v: Vertex) -> Vertex {
    arena.successors(v)[0]
}

/// Punishment move of `machine_owner` against `culprit` at `v`.
fn punish_move(
    arena: &Arena,
    punishers: &BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>>,
    machine_owner: PlayerId,
    culprit: PlayerId,
    v: Vertex,
) -> Vertex {
    if machine_owner != culprit {
        if let Some(&mv) = punishers[&culprit].get(&v) {
            return mv;
        }
    }
    lowest_successor(arena, v)
}

/// Assembles one machine per player from a template plus per-player
/// punishing strategies.
fn template_profile(
    arena: &Arena,
    template: &TemplateMachine,
    punishers: &BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>>,
    mode: OffSegment,
) -> StrategyProfile {
    let nv = arena.num_vertices();
    let base = template.num_states();
    let num_states = match mode {
        OffSegment::Freeze => base,
        OffSegment::Commit => base + template.monitored().len(),
    };
    let pun_state = |culprit: PlayerId| -> StateId {
        base + template
            .monitored()
            .iter()
            .position(|&p| p == culprit)
            .expect("monitored")
    };
    let mut names: Vec<String> = (0..base)
        .map(|id| template.state_name(template.state_at(id)))
        .collect();
    if mode == OffSegment::Commit {
        for &p in template.monitored() {
            names.push(format!("pun(P{p})"));
        }
    }
    let mut update = vec![vec![0usize; nv]; num_states];
    for id in 0..base {
        let state = template.state_at(id);
        for v in 0..nv {
            update[id][v] = match template.update(arena, state, v) {
                Some(next) => template.state_id(next),
                None => match mode {
                    OffSegment::Freeze => id,
                    OffSegment::Commit => pun_state(state.player),
                },
            };
        }
    }
    if mode == OffSegment::Commit {
        for &p in template.monitored() {
            let id = pun_state(p);
            for v in 0..nv {
                update[id][v] = id;
            }
        }
    }
    let machines = (1..=arena.num_players())
        .map(|me| {
            let mut moves = vec![vec![None; nv]; num_states];
            for id in 0..base {
                let state = template.state_at(id);
                for v in 0..nv {
                    if arena.owner(v) != me {
                        continue;
                    }
                    moves[id][v] = Some(match template.next_vertex(state, v) {
                        Some(next) => next,
                        None => punish_move(arena, punishers, me, state.player, v),
                    });
                }
            }
            if mode == OffSegment::Commit {
                for &p in template.monitored() {
                    let id = pun_state(p);
                    for v in 0..nv {
                        if arena.owner(v) == me {
                            moves[id][v] = Some(punish_move(arena, punishers, me, p, v));
                        }
                    }
                }
            }
            MealyMachine::new(arena, me, 0, names.clone(), update.clone(), moves)
                .expect("template machines are well-formed")
        })
        .collect();
    StrategyProfile::new(machines).expect("one machine per player")
}

fn monitored_set(game: &Game, satisfied: &BTreeSet<PlayerId>) -> BTreeSet<PlayerId> {
    let losing: BTreeSet<PlayerId> = game.players().filter(|p| !satisfied.contains(p)).collect();
    if losing.is_empty() {
        [1].into_iter().collect()
    } else {
        losing
    }
}

fn expect_class(simplified: &SimplifiedOutcome, expected: ObjectiveKind) -> Result<(), SynthError> {
    if simplified.class_tag != expected {
        return Err(SynthError::ClassMismatch {
            expected,
            got: simplified.class_tag,
        });
    }
    Ok(())
}

fn expect_decomposition(simplified: &SimplifiedOutcome) -> &Decomposition {
    match &simplified.shape {
        OutcomeShape::Decomposed(d) => d,
        _ => panic!("simplified outcome does not carry a finite decomposition"),
    }
}

// ---------------------------------------------------------------------------
// Per-class synthesis
// ---------------------------------------------------------------------------

/// Reachability synthesis: monitor the losing players, freeze the memory
/// outside the current segment and punish with safety strategies of the
/// coalition games while the play stays outside.
pub fn synth_reach(
    game: &Game,
    simplified: &SimplifiedOutcome,
) -> Result<StrategyProfile, SynthError> {
    expect_class(simplified, ObjectiveKind::Reach)?;
    let arena = &game.arena;
    let decomposition = expect_decomposition(simplified);
    let monitored = monitored_set(game, &simplified.satisfied);
    let template = build_template(arena, decomposition, &monitored)?;
    let punishers: BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>> = monitored
        .iter()
        .map(|&p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_qualitative(&view, ObjectiveKind::Reach, arena.target_set(p))
                .expect("reach is qualitative");
            (p, sol.strat2)
        })
        .collect();
    let profile = template_profile(arena, &template, &punishers, OffSegment::Freeze);
    debug_assert_eq!(
        outcome_of_profile(arena, &profile, simplified.lasso.first()),
        simplified.lasso
    );
    Ok(profile)
}

/// Shortest-path synthesis: monitor every player and commit to punishing
/// whoever leaves the current segment, with the coalition punishers of the
/// shortest-path games.
pub fn synth_spath(
    game: &Game,
    simplified: &SimplifiedOutcome,
) -> Result<StrategyProfile, SynthError> {
    expect_class(simplified, ObjectiveKind::ShortestPath)?;
    if game.has_player_weights() {
        return Err(SynthError::PerPlayerWeights);
    }
    let arena = &game.arena;
    let decomposition = expect_decomposition(simplified);
    let monitored: BTreeSet<PlayerId> = game.players().collect();
    let template = build_template(arena, decomposition, &monitored)?;
    let weight = |a, b| arena.weight(a, b);
    let punishers: BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>> = monitored
        .iter()
        .map(|&p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_spath(&view, arena.target_set(p), weight).expect("consistent values");
            (p, sol.punisher)
        })
        .collect();
    let profile = template_profile(arena, &template, &punishers, OffSegment::Commit);
    debug_assert_eq!(
        outcome_of_profile(arena, &profile, simplified.lasso.first()),
        simplified.lasso
    );
    Ok(profile)
}

/// Safety synthesis: the shortest-path construction, monitoring only the
/// losing players and punishing with the coalition's attractor strategies.
pub fn synth_safety(
    game: &Game,
    simplified: &SimplifiedOutcome,
) -> Result<StrategyProfile, SynthError> {
    expect_class(simplified, ObjectiveKind::Safe)?;
    let arena = &game.arena;
    let decomposition = expect_decomposition(simplified);
    let monitored = monitored_set(game, &simplified.satisfied);
    let template = build_template(arena, decomposition, &monitored)?;
    let punishers: BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>> = monitored
        .iter()
        .map(|&p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_qualitative(&view, ObjectiveKind::Safe, arena.target_set(p))
                .expect("safety is qualitative");
            (p, sol.strat2)
        })
        .collect();
    let profile = template_profile(arena, &template, &punishers, OffSegment::Commit);
    debug_assert_eq!(
        outcome_of_profile(arena, &profile, simplified.lasso.first()),
        simplified.lasso
    );
    Ok(profile)
}

// ---------------------------------------------------------------------------
// Two-phase constructions for Büchi and co-Büchi
// ---------------------------------------------------------------------------

/// Elements of the second phase of the two-phase constructions.
struct Phase2 {
    elements: Vec<Element>,
}

impl Phase2 {
    fn locate(&self, v: Vertex) -> Option<usize> {
        self.elements.iter().position(|e| e.contains(v))
    }

    /// Successor of `v` when following element `j` (0-based), wrapping to
    /// the next element at the junction.
    fn next_vertex(&self, j: usize, v: Vertex) -> Option<Vertex> {
        let element = &self.elements[j];
        if !element.contains(v) {
            return None;
        }
        if element.last() == Some(v) && element.first() != v {
            let next = (j + 1) % self.elements.len();
            return Some(self.elements[next].second());
        }
        element.next_within(v)
    }

    /// Element following `j` after reading `v`.
    fn advance(&self, j: usize, v: Vertex) -> usize {
        let element = &self.elements[j];
        if element.last() == Some(v) && element.first() != v {
            (j + 1) % self.elements.len()
        } else {
            j
        }
    }

    /// Element index the play is in right after the phase-1/phase-2
    /// junction vertex has been read.
    fn advance_from_entry(&self, junction: Vertex) -> usize {
        self.advance(
            self.locate(junction).expect("junction lies in phase 2"),
            junction,
        )
    }
}

/// Two-phase machine assembly: enforce `prefix` vertex by vertex, then
/// follow the cyclic second phase; any detected deviation by a monitored
/// player moves to that player's absorbing punishment state.
fn two_phase_profile(
    arena: &Arena,
    prefix: &[Vertex],
    phase2: &Phase2,
    monitored: &[PlayerId],
    punishers: &BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>>,
) -> StrategyProfile {
    let nv = arena.num_vertices();
    let plen = prefix.len();
    let groups = phase2.elements.len();
    // state layout: prefix positions, then (player, element) pairs, then
    // punishment states
    let num_states = plen + monitored.len() * groups + monitored.len();
    let pair_state = |p: PlayerId, j: usize| -> StateId {
        plen + monitored.iter().position(|&q| q == p).expect("monitored") * groups + j
    };
    let pun_state = |p: PlayerId| -> StateId {
        plen + monitored.len() * groups + monitored.iter().position(|&q| q == p).expect("monitored")
    };
    let mut names: Vec<String> = (0..plen).map(|pos| format!("sg0@{pos}")).collect();
    for &p in monitored {
        for j in 0..groups {
            names.push(format!("(P{},{})", p, j + 1));
        }
    }
    for &p in monitored {
        names.push(format!("pun(P{p})"));
    }
    // the player component entering phase 2
    let into_phase2 = |v: Vertex, fallback: PlayerId| -> PlayerId {
        if monitored.contains(&arena.owner(v)) {
            arena.owner(v)
        } else {
            fallback
        }
    };
    let mut update = vec![vec![0usize; nv]; num_states];
    for pos in 0..plen {
        for v in 0..nv {
            update[pos][v] = if v == prefix[pos] {
                if pos + 1 < plen {
                    pos + 1
                } else {
                    let p = into_phase2(v, monitored[0]);
                    pair_state(p, phase2.advance_from_entry(v))
                }
            } else if pos >= 1 && monitored.contains(&arena.owner(prefix[pos - 1])) {
                pun_state(arena.owner(prefix[pos - 1]))
            } else {
                pos // arbitrary: keep the state
            };
        }
    }
    for &p in monitored {
        for j in 0..groups {
            let id = pair_state(p, j);
            for v in 0..nv {
                update[id][v] = if phase2.elements[j].contains(v) {
                    let q = into_phase2(v, p);
                    pair_state(q, phase2.advance(j, v))
                } else {
                    pun_state(p)
                };
            }
        }
        let id = pun_state(p);
        for v in 0..nv {
            update[id][v] = id;
        }
    }
    let machines = (1..=arena.num_players())
        .map(|me| {
            let mut moves = vec![vec![None; nv]; num_states];
            for pos in 0..plen {
                for v in 0..nv {
                    if arena.owner(v) != me {
                        continue;
                    }
                    moves[pos][v] = Some(if v == prefix[pos] {
                        if pos + 1 < plen {
                            prefix[pos + 1]
                        } else {
                            let j = phase2.locate(v).expect("prefix ends in phase 2");
                            phase2.next_vertex(j, v).expect("junction has a successor")
                        }
                    } else if pos >= 1 && monitored.contains(&arena.owner(prefix[pos - 1])) {
                        punish_move(arena, punishers, me, arena.owner(prefix[pos - 1]), v)
                    } else {
                        lowest_successor(arena, v)
                    });
                }
            }
            for &p in monitored {
                for j in 0..groups {
                    let id = pair_state(p, j);
                    for v in 0..nv {
                        if arena.owner(v) != me {
                            continue;
                        }
                        moves[id][v] = Some(match phase2.next_vertex(j, v) {
                            Some(next) => next,
                            None => punish_move(arena, punishers, me, p, v),
                        });
                    }
                }
                let id = pun_state(p);
                for v in 0..nv {
                    if arena.owner(v) == me {
                        moves[id][v] = Some(punish_move(arena, punishers, me, p, v));
                    }
                }
            }
            MealyMachine::new(arena, me, 0, names.clone(), update.clone(), moves)
                .expect("two-phase machines are well-formed")
        })
        .collect();
    StrategyProfile::new(machines).expect("one machine per player")
}

/// Büchi synthesis: enforce the simple history leading to the first
/// representative target, then follow the periodic chain of segments;
/// punish with the coalition's co-Büchi strategies.
pub fn synth_buchi(
    game: &Game,
    simplified: &SimplifiedOutcome,
) -> Result<StrategyProfile, SynthError> {
    expect_class(simplified, ObjectiveKind::Buchi)?;
    let arena = &game.arena;
    let OutcomeShape::PeriodicChain { prefix, period } = &simplified.shape else {
        panic!("Büchi outcomes carry a periodic chain");
    };
    let monitored: Vec<PlayerId> = monitored_set(game, &simplified.satisfied)
        .into_iter()
        .collect();
    let punishers: BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>> = monitored
        .iter()
        .map(|&p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_qualitative(&view, ObjectiveKind::Buchi, arena.target_set(p))
                .expect("Büchi is qualitative");
            (p, sol.strat2)
        })
        .collect();
    let phase2 = Phase2 {
        elements: period
            .iter()
            .map(|seg| Element::History(seg.clone()))
            .collect(),
    };
    let profile = two_phase_profile(arena, prefix, &phase2, &monitored, &punishers);
    debug_assert_eq!(
        outcome_of_profile(arena, &profile, simplified.lasso.first()),
        simplified.lasso
    );
    Ok(profile)
}

/// Co-Büchi synthesis: enforce the prefix up to the phase switch, then
/// follow the trivially decomposed suffix; punish with the coalition's
/// Büchi strategies.
pub fn synth_cobuchi(
    game: &Game,
    simplified: &SimplifiedOutcome,
) -> Result<StrategyProfile, SynthError> {
    expect_class(simplified, ObjectiveKind::CoBuchi)?;
    let arena = &game.arena;
    let OutcomeShape::PrefixSuffix { prefix, suffix } = &simplified.shape else {
        panic!("co-Büchi outcomes carry a prefix/suffix split");
    };
    let monitored: Vec<PlayerId> = monitored_set(game, &simplified.satisfied)
        .into_iter()
        .collect();
    let punishers: BTreeMap<PlayerId, BTreeMap<Vertex, Vertex>> = monitored
        .iter()
        .map(|&p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_qualitative(&view, ObjectiveKind::CoBuchi, arena.target_set(p))
                .expect("co-Büchi is qualitative");
            (p, sol.strat2)
        })
        .collect();
    let phase2 = Phase2 {
        elements: vec![Element::Tail(suffix.clone())],
    };
    let profile = two_phase_profile(arena, prefix, &phase2, &monitored, &punishers);
    debug_assert_eq!(
        outcome_of_profile(arena, &profile, simplified.lasso.first()),
        simplified.lasso
    );
    Ok(profile)
}

/// An equilibrium outcome from scratch in a shortest-path game: every
/// player follows a memoryless uniformly optimal strategy of their own
/// coalition game; the resulting play is always accepted by the outcome
/// characterisation.
pub fn construct_spath_ne_outcome(game: &Game, v0: Vertex) -> Result<Lasso, SynthError> {
    for p in game.players() {
        let kind = game.objective(p);
        if kind != ObjectiveKind::ShortestPath {
            return Err(SynthError::ClassMismatch {
                expected: ObjectiveKind::ShortestPath,
                got: kind,
            });
        }
    }
    if game.has_player_weights() {
        return Err(SynthError::PerPlayerWeights);
    }
    let arena = &game.arena;
    let weight = |a, b| arena.weight(a, b);
    let machines = game
        .players()
        .map(|p| {
            let view = CoalitionView::new(arena, p);
            let sol = solve_spath(&view, arena.target_set(p), weight).expect("consistent values");
            MealyMachine::memoryless(arena, p, |v| {
                sol.optimal
                    .get(&v)
                    .copied()
                    .or_else(|| Some(lowest_successor(arena, v)))
            })
            .expect("optimal strategies respect edges")
        })
        .collect();
    let profile = StrategyProfile::new(machines).expect("one machine per player");
    let lasso = outcome_of_profile(arena, &profile, v0);
    assert!(
        check_spath_outcome(game, &lasso)
            .expect("shortest-path game")
            .is_ne_outcome,
        "composed optimal strategies always yield an equilibrium outcome"
    );
    Ok(lasso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplify::{
        simplify_buchi, simplify_cobuchi, simplify_reach, simplify_safety, simplify_spath,
    };

    #[test]
    fn template_update_tracks_segments_and_players() {
        let game = fixtures::fig3a_game();
        let simplified =
            simplify_reach(&game, &Lasso::new(vec![0, 2, 3, 4, 3, 2, 0], vec![1])).unwrap();
        let decomposition = expect_decomposition(&simplified);
        let monitored: BTreeSet<PlayerId> = [3, 4].into_iter().collect();
        let template = build_template(&game.arena, decomposition, &monitored).unwrap();
        assert_eq!(template.num_states(), 4);
        assert_eq!(
            template.initial_state(),
            TemplateState {
                player: 3,
                element: 1
            }
        );
        // after v0 v1: the last monitored mover is player 3 (owner of v1)
        let s = template.run(&game.arena, &[0, 2]).unwrap();
        assert_eq!(
            s,
            TemplateState {
                player: 3,
                element: 1
            }
        );
        // after v0 v1 v2 t1: player 4 moved last at v2, segment advanced
        let s = template.run(&game.arena, &[0, 2, 3, 4]).unwrap();
        assert_eq!(
            s,
            TemplateState {
                player: 4,
                element: 2
            }
        );
    }

    #[test]
    fn template_state_constant_outside_monitored_owners() {
        // a two-vertex cycle owned by player 1; monitor player 2
        let arena = crate::arena::Arena::new(
            2,
            vec![1, 1],
            vec![(0, 1, 0), (1, 0, 0)],
            vec![
                std::collections::BTreeSet::new(),
                std::collections::BTreeSet::new(),
            ],
        )
        .unwrap();
        let decomposition = Decomposition {
            segments: vec![],
            tail: Lasso::new(vec![], vec![0, 1]),
        };
        let monitored: BTreeSet<PlayerId> = [2].into_iter().collect();
        let template = build_template(&arena, &decomposition, &monitored).unwrap();
        let s = template.run(&arena, &[0, 1, 0, 1]).unwrap();
        assert_eq!(
            s,
            TemplateState {
                player: 2,
                element: 1
            }
        );
    }

    #[test]
    fn trivial_segment_rejected() {
        let arena = fixtures::fig1a_game().arena;
        let decomposition = Decomposition {
            segments: vec![vec![0]],
            tail: Lasso::new(vec![], vec![3]),
        };
        let err = build_template(&arena, &decomposition, &[1].into_iter().collect()).unwrap_err();
        assert_eq!(err, SynthError::TrivialSegment);
    }

    #[test]
    fn reach_profile_replays_outcome_with_four_states() {
        let game = fixtures::fig3a_game();
        let target = Lasso::new(vec![0, 2, 3, 4, 3, 2, 0], vec![1]);
        let simplified = simplify_reach(&game, &target).unwrap();
        let profile = synth_reach(&game, &simplified).unwrap();
        for p in game.players() {
            assert_eq!(profile.machine(p).num_states(), 4);
        }
        assert_eq!(outcome_of_profile(&game.arena, &profile, 0), target);
    }

    #[test]
    fn spath_profile_replays_outcome_within_nine_states() {
        let game = fixtures::fig4a_game();
        let target = Lasso::new(vec![0, 1, 3], vec![4]);
        let simplified = simplify_spath(&game, &target).unwrap();
        let profile = synth_spath(&game, &simplified).unwrap();
        for p in game.players() {
            assert!(profile.machine(p).num_states() <= 9);
        }
        assert_eq!(outcome_of_profile(&game.arena, &profile, 0), target);
        // the punishment is wired in: deviating at v0 to v2 drives the play
        // into the sink v4
        let m2 = profile.machine(2);
        let s0 = m2.initial_state();
        let after_v0 = m2.update(s0, 0);
        assert_eq!(
            m2.next_move(after_v0, 2),
            Some(3),
            "punisher sends v2 to v3"
        );
    }

    #[test]
    fn safety_profile_three_states() {
        let game = fixtures::fig5c().game;
        let simplified = simplify_safety(&game, &Lasso::new(vec![0, 1], vec![3])).unwrap();
        let profile = synth_safety(&game, &simplified).unwrap();
        for p in game.players() {
            assert_eq!(profile.machine(p).num_states(), 3);
        }
        assert_eq!(
            outcome_of_profile(&game.arena, &profile, 0),
            simplified.lasso
        );
    }

    #[test]
    fn buchi_profile_five_states() {
        let game = fixtures::buchi1_game();
        let simplified = simplify_buchi(&game, &Lasso::new(vec![0, 1], vec![2])).unwrap();
        let profile = synth_buchi(&game, &simplified).unwrap();
        for p in game.players() {
            assert_eq!(profile.machine(p).num_states(), 5);
        }
        assert_eq!(
            outcome_of_profile(&game.arena, &profile, 0),
            simplified.lasso
        );
    }

    #[test]
    fn cobuchi_profile_three_states_on_zero_split() {
        let game = fixtures::cobuchi2().game;
        let simplified = simplify_cobuchi(&game, &Lasso::new(vec![], vec![0, 1, 3])).unwrap();
        let profile = synth_cobuchi(&game, &simplified).unwrap();
        for p in game.players() {
            assert_eq!(profile.machine(p).num_states(), 3);
        }
        assert_eq!(
            outcome_of_profile(&game.arena, &profile, 0),
            simplified.lasso
        );
    }

    #[test]
    fn cobuchi_profile_five_states_on_late_split() {
        let game = fixtures::cobuchi1().game;
        let simplified = simplify_cobuchi(&game, &Lasso::new(vec![0, 1], vec![2])).unwrap();
        let profile = synth_cobuchi(&game, &simplified).unwrap();
        for p in game.players() {
            assert_eq!(profile.machine(p).num_states(), 5);
        }
        assert_eq!(
            outcome_of_profile(&game.arena, &profile, 0),
            simplified.lasso
        );
    }

    #[test]
    fn all_winners_reach_uses_at_most_one_state_per_segment() {
        // both players reach their target along 0 1 (2)^w; the monitored
        // set degenerates to one player and memory stays within n
        let arena = crate::arena::Arena::new(
            2,
            vec![1, 2, 1],
            vec![(0, 1, 0), (1, 0, 0), (1, 2, 0), (2, 2, 0)],
            vec![[1].into_iter().collect(), [2].into_iter().collect()],
        )
        .unwrap();
        let game = Game::new(arena, vec![ObjectiveKind::Reach, ObjectiveKind::Reach]).unwrap();
        let input = Lasso::new(vec![0, 1], vec![2]);
        let simplified = simplify_reach(&game, &input).unwrap();
        let profile = synth_reach(&game, &simplified).unwrap();
        for p in game.players() {
            assert!(profile.machine(p).num_states() <= game.arena.num_players());
        }
        assert_eq!(outcome_of_profile(&game.arena, &profile, 0), input);
    }

    #[test]
    fn machine_states_follow_template_coherence() {
        // along every coherent prefix of the outcome, the full machine sits
        // in the same element index as the partial template
        let game = fixtures::fig3a_game();
        let simplified =
            simplify_reach(&game, &Lasso::new(vec![0, 2, 3, 4, 3, 2, 0], vec![1])).unwrap();
        let decomposition = expect_decomposition(&simplified);
        let monitored: BTreeSet<PlayerId> = [3, 4].into_iter().collect();
        let template = build_template(&game.arena, decomposition, &monitored).unwrap();
        let profile = synth_reach(&game, &simplified).unwrap();
        let lasso = &simplified.lasso;
        let mut history = Vec::new();
        for pos in 0..lasso.positions().len() + 2 * lasso.cycle().len() {
            history.push(lasso.vertex_at(pos));
            let expected = template
                .run(&game.arena, &history)
                .expect("the outcome is coherent");
            for p in game.players() {
                let machine = profile.machine(p);
                let state = machine.run(history.iter().copied());
                assert_eq!(machine.state_name(state), template.state_name(expected));
            }
        }
    }

    #[test]
    fn existence_on_weighted_two_player_game() {
        let game = fixtures::fig1a_game();
        let lasso = construct_spath_ne_outcome(&game, 0).unwrap();
        use crate::arena::{Cost, CostValue};
        assert_eq!(game.eval(&lasso, 1), CostValue::Cost(Cost::Finite(3)));
        assert_eq!(game.eval(&lasso, 2), CostValue::Cost(Cost::Finite(3)));
    }

    #[test]
    fn existence_on_self_loop() {
        let arena =
            crate::arena::Arena::new(1, vec![1], vec![(0, 0, 0)], vec![[0].into_iter().collect()])
                .unwrap();
        let game = Game::new(arena, vec![ObjectiveKind::ShortestPath]).unwrap();
        let lasso = construct_spath_ne_outcome(&game, 0).unwrap();
        assert_eq!(lasso, Lasso::new(vec![], vec![0]));
    }

    #[test]
    fn existence_on_truncated_ladder() {
        let game = fixtures::fig2_truncated(3);
        // from v3 (id 4) the play walks down the ladder to t with cost 3
        let lasso = construct_spath_ne_outcome(&game, 4).unwrap();
        use crate::arena::{Cost, CostValue};
        assert_eq!(game.eval(&lasso, 1), CostValue::Cost(Cost::Finite(3)));
    }
}
