//! Deciding whether a lasso play is the outcome of some Nash equilibrium.
//!
//! Each check compares the play against the relevant zero-sum coalition
//! games: a losing player must never visit their own winning region, and in
//! shortest-path games a winning player's remaining cost must never exceed
//! the coalition-game value of the current vertex.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arena::{Cost, Game, ObjectiveKind, PlayerId};
use crate::lasso::Lasso;
use crate::zerosum::{attractor, solve_qualitative, spath_values, CoalitionView, Side};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterizeError {
    #[error("objective of player {player} is {kind}, expected one of reach, buchi, cobuchi")]
    NotQualitativeMix {
        player: PlayerId,
        kind: ObjectiveKind,
    },
    #[error("objective of player {player} is {kind}, expected safe")]
    NotSafety {
        player: PlayerId,
        kind: ObjectiveKind,
    },
    #[error("objective of player {player} is {kind}, expected spath")]
    NotShortestPath {
        player: PlayerId,
        kind: ObjectiveKind,
    },
}

/// Why a play fails to be an equilibrium outcome at some position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationReason {
    /// A losing player passes through their coalition-game winning region.
    InWinningRegion,
    /// A winning player could beat the remaining cost of the play by
    /// playing optimally from here.
    ValueBeatsSuffixCost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub position: usize,
    pub player: PlayerId,
    pub reason: ViolationReason,
}

/// Result of an outcome check: accepted iff no violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterisationReport {
    pub is_ne_outcome: bool,
    pub violations: Vec<Violation>,
}

impl CharacterisationReport {
    fn from_violations(mut violations: Vec<Violation>) -> CharacterisationReport {
        violations.sort();
        CharacterisationReport {
            is_ne_outcome: violations.is_empty(),
            violations,
        }
    }
}

/// Outcome check for games whose objectives all lie in reach, Büchi and
/// co-Büchi (mixing these three kinds is allowed): the play is an
/// equilibrium outcome iff no losing player's coalition winning region
/// intersects the play.
pub fn check_qual_outcome(
    game: &Game,
    lasso: &Lasso,
) -> Result<CharacterisationReport, CharacterizeError> {
    for p in game.players() {
        let kind = game.objective(p);
        if !matches!(
            kind,
            ObjectiveKind::Reach | ObjectiveKind::Buchi | ObjectiveKind::CoBuchi
        ) {
            return Err(CharacterizeError::NotQualitativeMix { player: p, kind });
        }
    }
    let satisfied = game.satisfied_players(lasso);
    let positions = lasso.positions();
    let mut violations = Vec::new();
    for p in game.players() {
        if satisfied.contains(&p) {
            continue;
        }
        let view = CoalitionView::new(&game.arena, p);
        let sol = solve_qualitative(&view, game.objective(p), game.arena.target_set(p))
            .expect("objective kinds checked above");
        for (pos, v) in positions.iter().enumerate() {
            if sol.win1.contains(v) {
                violations.push(Violation {
                    position: pos,
                    player: p,
                    reason: ViolationReason::InWinningRegion,
                });
            }
        }
    }
    Ok(CharacterisationReport::from_violations(violations))
}

/// Outcome check for safety games. A losing player can only profit from
/// deviating before their target is first hit, so the region condition is
/// checked up to and including that position.
pub fn check_safety_outcome(
    game: &Game,
    lasso: &Lasso,
) -> Result<CharacterisationReport, CharacterizeError> {
    for p in game.players() {
        let kind = game.objective(p);
        if kind != ObjectiveKind::Safe {
            return Err(CharacterizeError::NotSafety { player: p, kind });
        }
    }
    let satisfied = game.satisfied_players(lasso);
    let positions = lasso.positions();
    let mut violations = Vec::new();
    for p in game.players() {
        if satisfied.contains(&p) {
            continue;
        }
        let first_hit = game
            .first_visit(lasso, p)
            .expect("losing in safety means the target is hit");
        let view = CoalitionView::new(&game.arena, p);
        let sol = solve_qualitative(&view, ObjectiveKind::Safe, game.arena.target_set(p))
            .expect("safety is qualitative");
        for (pos, v) in positions.iter().enumerate().take(first_hit + 1) {
            if sol.win1.contains(v) {
                violations.push(Violation {
                    position: pos,
                    player: p,
                    reason: ViolationReason::InWinningRegion,
                });
            }
        }
    }
    Ok(CharacterisationReport::from_violations(violations))
}

/// Outcome check for shortest-path games, allowing per-player weight
/// functions. Losing players must stay clear of their reachability winning
/// region; for each winning player, the cost of every play suffix up to
/// their first target visit must be bounded by the coalition-game value of
/// its first vertex.
pub fn check_spath_outcome(
    game: &Game,
    lasso: &Lasso,
) -> Result<CharacterisationReport, CharacterizeError> {
    for p in game.players() {
        let kind = game.objective(p);
        if kind != ObjectiveKind::ShortestPath {
            return Err(CharacterizeError::NotShortestPath { player: p, kind });
        }
    }
    let satisfied = game.satisfied_players(lasso);
    let positions = lasso.positions();
    let mut violations = Vec::new();
    for p in game.players() {
        let view = CoalitionView::new(&game.arena, p);
        let target = game.arena.target_set(p);
        if !satisfied.contains(&p) {
            let (reach_region, _) = attractor(&view, target, Side::One);
            for (pos, v) in positions.iter().enumerate() {
                if reach_region.contains(v) {
                    violations.push(Violation {
                        position: pos,
                        player: p,
                        reason: ViolationReason::InWinningRegion,
                    });
                }
            }
            continue;
        }
        let weight = |a, b| game.player_weight(p, a, b);
        let values = spath_values(&view, target, weight);
        let first_hit = game
            .first_visit(lasso, p)
            .expect("winning players visit their target");
        // cumulative weight of the play up to each position
        let mut prefix_cost = vec![0u64; first_hit + 1];
        for pos in 1..=first_hit {
            prefix_cost[pos] =
                prefix_cost[pos - 1].saturating_add(weight(positions[pos - 1], positions[pos]));
        }
        let total = prefix_cost[first_hit];
        for (pos, &v) in positions.iter().enumerate().take(first_hit + 1) {
            let suffix_cost = Cost::Finite(total - prefix_cost[pos]);
            if suffix_cost > values[v] {
                violations.push(Violation {
                    position: pos,
                    player: p,
                    reason: ViolationReason::ValueBeatsSuffixCost,
                });
            }
        }
    }
    Ok(CharacterisationReport::from_violations(violations))
}

/// Dispatches to the characterisation matching the game's objectives.
pub fn check_outcome(
    game: &Game,
    lasso: &Lasso,
) -> Result<CharacterisationReport, CharacterizeError> {
    let kinds: BTreeSet<ObjectiveKind> = game.objectives().iter().copied().collect();
    if kinds.contains(&ObjectiveKind::ShortestPath) {
        return check_spath_outcome(game, lasso);
    }
    if kinds.contains(&ObjectiveKind::Safe) {
        return check_safety_outcome(game, lasso);
    }
    check_qual_outcome(game, lasso)
}
