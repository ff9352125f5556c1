//! Arenas, games, objectives and cost evaluation.
//!
//! An [`Arena`] is a finite directed graph without deadlocks whose vertices
//! are partitioned among `n` players; the owner of the current vertex picks
//! the next edge. Edges carry non-negative integer weights and each player
//! has a target set. A [`Game`] pairs an arena with one objective kind per
//! player and, optionally, per-player weight functions (accepted only by the
//! outcome characterisation for shortest-path games).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lasso::Lasso;

/// Dense vertex identifier, `0..arena.num_vertices()`.
pub type Vertex = usize;

/// Player index, `1..=arena.num_players()`.
pub type PlayerId = usize;

/// Per-edge weight table, parallel to the successor lists of an [`Arena`].
pub type WeightTable = Vec<Vec<u64>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArenaError {
    #[error("vertex {0} has no outgoing edge")]
    DeadlockVertex(Vertex),
    #[error("vertex {vertex} has owner {owner} outside 1..={num_players}")]
    OwnerOutOfRange {
        vertex: Vertex,
        owner: PlayerId,
        num_players: usize,
    },
    #[error("edge ({0}, {1}) mentions an unknown vertex")]
    DanglingEdge(Vertex, Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("target {vertex} of player {player} is not a vertex")]
    TargetOutOfRange { player: PlayerId, vertex: Vertex },
    #[error("player count must be at least 1")]
    NoPlayers,
    #[error("owner map must cover every vertex")]
    OwnerNotTotal,
}

/// A finite multi-player turn-based weighted game graph with per-player
/// target sets. Immutable after construction; [`Arena::new`] enforces all
/// structural invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    num_players: usize,
    owners: Vec<PlayerId>,
    /// Successor lists, sorted ascending and duplicate-free.
    succs: Vec<Vec<Vertex>>,
    /// Edge weights, parallel to `succs`.
    weights: WeightTable,
    /// Per-player target sets, index 0 is player 1.
    targets: Vec<BTreeSet<Vertex>>,
}

impl Arena {
    /// Validates and builds an arena from raw parts. Edges are given as
    /// `(source, destination, weight)` triples and are stored sorted by
    /// destination id, which fixes the "lowest index first" tie-break used
    /// everywhere in the crate.
    pub fn new(
        num_players: usize,
        owners: Vec<PlayerId>,
        edges: Vec<(Vertex, Vertex, u64)>,
        targets: Vec<BTreeSet<Vertex>>,
    ) -> Result<Arena, ArenaError> {
        if num_players == 0 {
            return Err(ArenaError::NoPlayers);
        }
        let num_vertices = owners.len();
        if num_vertices == 0 {
            return Err(ArenaError::OwnerNotTotal);
        }
        for (v, &p) in owners.iter().enumerate() {
            if p == 0 || p > num_players {
                return Err(ArenaError::OwnerOutOfRange {
                    vertex: v,
                    owner: p,
                    num_players,
                });
            }
        }
        let mut adj: Vec<Vec<(Vertex, u64)>> = vec![Vec::new(); num_vertices];
        for (src, dst, w) in edges {
            if src >= num_vertices || dst >= num_vertices {
                return Err(ArenaError::DanglingEdge(src, dst));
            }
            if adj[src].iter().any(|&(d, _)| d == dst) {
                return Err(ArenaError::DuplicateEdge(src, dst));
            }
            adj[src].push((dst, w));
        }
        let mut succs = Vec::with_capacity(num_vertices);
        let mut weights = Vec::with_capacity(num_vertices);
        for (v, mut out) in adj.into_iter().enumerate() {
            if out.is_empty() {
                return Err(ArenaError::DeadlockVertex(v));
            }
            out.sort_by_key(|&(d, _)| d);
            succs.push(out.iter().map(|&(d, _)| d).collect());
            weights.push(out.iter().map(|&(_, w)| w).collect());
        }
        let mut target_sets = targets;
        target_sets.resize(num_players, BTreeSet::new());
        for (i, set) in target_sets.iter().enumerate() {
            if let Some(&v) = set.iter().find(|&&v| v >= num_vertices) {
                return Err(ArenaError::TargetOutOfRange {
                    player: i + 1,
                    vertex: v,
                });
            }
        }
        Ok(Arena {
            num_players,
            owners,
            succs,
            weights,
            targets: target_sets,
        })
    }

    pub fn num_players(&self) -> usize {
        self.num_players
    }

    pub fn num_vertices(&self) -> usize {
        self.owners.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.num_vertices()
    }

    pub fn owner(&self, v: Vertex) -> PlayerId {
        self.owners[v]
    }

    /// Successors of `v`, ascending by id.
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.succs[v]
    }

    pub fn has_edge(&self, src: Vertex, dst: Vertex) -> bool {
        self.succs[src].binary_search(&dst).is_ok()
    }

    /// Weight of the edge `(src, dst)`; panics if the edge does not exist.
    pub fn weight(&self, src: Vertex, dst: Vertex) -> u64 {
        let k = self.succs[src]
            .binary_search(&dst)
            .expect("edge must exist");
        self.weights[src][k]
    }

    pub fn target_set(&self, player: PlayerId) -> &BTreeSet<Vertex> {
        &self.targets[player - 1]
    }

    pub fn is_target(&self, player: PlayerId, v: Vertex) -> bool {
        self.targets[player - 1].contains(&v)
    }

    /// Predecessor lists (computed, not cached).
    pub fn predecessors(&self) -> Vec<Vec<Vertex>> {
        let mut preds = vec![Vec::new(); self.num_vertices()];
        for v in self.vertices() {
            for &s in self.successors(v) {
                preds[s].push(v);
            }
        }
        preds
    }

    /// Checks that consecutive vertices of the lasso, including the
    /// prefix-to-cycle junction and the cycle wrap-around, are arena edges.
    pub fn validate_lasso(&self, lasso: &Lasso) -> Result<(), ArenaError> {
        let positions = lasso.positions();
        for &v in &positions {
            if v >= self.num_vertices() {
                return Err(ArenaError::DanglingEdge(v, v));
            }
        }
        for w in positions.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(ArenaError::DanglingEdge(w[0], w[1]));
            }
        }
        let last = *positions.last().expect("cycle is nonempty");
        let back = lasso.cycle()[0];
        if !self.has_edge(last, back) {
            return Err(ArenaError::DanglingEdge(last, back));
        }
        Ok(())
    }
}

/// Value in the extended naturals `ℕ ∪ {∞}`; `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn saturating_add(self, w: u64) -> Cost {
        match self {
            Cost::Finite(c) => Cost::Finite(c.saturating_add(w)),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Infinite => write!(f, "inf"),
        }
    }
}

/// Objective kind of a single player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectiveKind {
    Reach,
    Safe,
    Buchi,
    CoBuchi,
    ShortestPath,
}

impl ObjectiveKind {
    pub fn is_qualitative(self) -> bool {
        !matches!(self, ObjectiveKind::ShortestPath)
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::Reach => "reach",
            ObjectiveKind::Safe => "safe",
            ObjectiveKind::Buchi => "buchi",
            ObjectiveKind::CoBuchi => "cobuchi",
            ObjectiveKind::ShortestPath => "spath",
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of evaluating one player's goal on one play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostValue {
    Win,
    Lose,
    Cost(Cost),
}

impl CostValue {
    /// Whether `self` is strictly better for the player than `other`.
    pub fn improves_on(self, other: CostValue) -> bool {
        match (self, other) {
            (CostValue::Win, CostValue::Lose) => true,
            (CostValue::Cost(a), CostValue::Cost(b)) => a < b,
            _ => false,
        }
    }
}

impl fmt::Display for CostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostValue::Win => write!(f, "win"),
            CostValue::Lose => write!(f, "lose"),
            CostValue::Cost(c) => write!(f, "{c}"),
        }
    }
}

/// Per-player evaluation of a play; finite shortest-path cost iff the
/// player's target is reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostProfile(pub Vec<CostValue>);

impl fmt::Display for CostProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("expected {expected} objectives, got {got}")]
    ObjectiveCount { expected: usize, got: usize },
    #[error("per-player weights are only meaningful for shortest-path objectives")]
    WeightsWithoutShortestPath,
    #[error("per-player weight table has the wrong shape")]
    MalformedWeights,
}

/// An arena together with one objective per player.
///
/// `player_weights`, when set, gives each player their own weight function;
/// only the shortest-path outcome characterisation accepts such games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub arena: Arena,
    objectives: Vec<ObjectiveKind>,
    player_weights: Option<Vec<WeightTable>>,
}

impl Game {
    pub fn new(arena: Arena, objectives: Vec<ObjectiveKind>) -> Result<Game, GameError> {
        if objectives.len() != arena.num_players() {
            return Err(GameError::ObjectiveCount {
                expected: arena.num_players(),
                got: objectives.len(),
            });
        }
        Ok(Game {
            arena,
            objectives,
            player_weights: None,
        })
    }

    /// Attaches per-player weight functions. Each table must be parallel to
    /// the arena's successor lists.
    pub fn with_player_weights(mut self, tables: Vec<WeightTable>) -> Result<Game, GameError> {
        if !self
            .objectives
            .iter()
            .all(|&k| k == ObjectiveKind::ShortestPath)
        {
            return Err(GameError::WeightsWithoutShortestPath);
        }
        if tables.len() != self.arena.num_players() {
            return Err(GameError::MalformedWeights);
        }
        for table in &tables {
            if table.len() != self.arena.num_vertices() {
                return Err(GameError::MalformedWeights);
            }
            for (v, row) in table.iter().enumerate() {
                if row.len() != self.arena.successors(v).len() {
                    return Err(GameError::MalformedWeights);
                }
            }
        }
        self.player_weights = Some(tables);
        Ok(self)
    }

    pub fn objective(&self, player: PlayerId) -> ObjectiveKind {
        self.objectives[player - 1]
    }

    pub fn objectives(&self) -> &[ObjectiveKind] {
        &self.objectives
    }

    /// The common objective kind, if all players share one.
    pub fn uniform_kind(&self) -> Option<ObjectiveKind> {
        let k = self.objectives[0];
        self.objectives.iter().all(|&o| o == k).then_some(k)
    }

    pub fn has_player_weights(&self) -> bool {
        self.player_weights.is_some()
    }

    pub fn player_weight_tables(&self) -> Option<&[WeightTable]> {
        self.player_weights.as_deref()
    }

    /// Weight of `(src, dst)` as seen by `player`.
    pub fn player_weight(&self, player: PlayerId, src: Vertex, dst: Vertex) -> u64 {
        match &self.player_weights {
            Some(tables) => {
                let k = self
                    .arena
                    .successors(src)
                    .binary_search(&dst)
                    .expect("edge must exist");
                tables[player - 1][src][k]
            }
            None => self.arena.weight(src, dst),
        }
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        1..=self.arena.num_players()
    }

    /// Evaluates `player`'s goal on `lasso`.
    pub fn eval(&self, lasso: &Lasso, player: PlayerId) -> CostValue {
        match self.objective(player) {
            ObjectiveKind::ShortestPath => CostValue::Cost(spath_cost_for(self, lasso, player)),
            kind => {
                if eval_qualitative(&self.arena, lasso, kind, player) {
                    CostValue::Win
                } else {
                    CostValue::Lose
                }
            }
        }
    }

    pub fn cost_profile(&self, lasso: &Lasso) -> CostProfile {
        CostProfile(self.players().map(|p| self.eval(lasso, p)).collect())
    }

    /// Players whose objective is satisfied by `lasso`. For shortest-path
    /// games these are the players whose target is visited.
    pub fn satisfied_players(&self, lasso: &Lasso) -> BTreeSet<PlayerId> {
        self.players()
            .filter(|&p| match self.objective(p) {
                ObjectiveKind::ShortestPath => first_visit(&self.arena, lasso, p).is_some(),
                kind => eval_qualitative(&self.arena, lasso, kind, p),
            })
            .collect()
    }

    /// Earliest position at which `player`'s target is visited, if any.
    pub fn first_visit(&self, lasso: &Lasso, player: PlayerId) -> Option<usize> {
        first_visit(&self.arena, lasso, player)
    }

    /// The set of earliest target-visit positions over all players whose
    /// target is visited. Meaningful for reach, safety and shortest-path
    /// games.
    pub fn visit_positions(&self, lasso: &Lasso) -> BTreeSet<usize> {
        self.players()
            .filter_map(|p| first_visit(&self.arena, lasso, p))
            .collect()
    }
}

/// Earliest play position whose vertex lies in `player`'s target set. Every
/// first visit happens within the prefix plus one cycle unrolling.
pub fn first_visit(arena: &Arena, lasso: &Lasso, player: PlayerId) -> Option<usize> {
    lasso
        .positions()
        .iter()
        .position(|&v| arena.is_target(player, v))
}

/// Evaluates a qualitative objective on a lasso. Reach: the target occurs
/// anywhere; Safe: it never occurs; Büchi: it intersects the cycle (the
/// vertices visited infinitely often); co-Büchi: it does not.
pub fn eval_qualitative(
    arena: &Arena,
    lasso: &Lasso,
    kind: ObjectiveKind,
    player: PlayerId,
) -> bool {
    match kind {
        ObjectiveKind::Reach => first_visit(arena, lasso, player).is_some(),
        ObjectiveKind::Safe => first_visit(arena, lasso, player).is_none(),
        ObjectiveKind::Buchi => lasso.cycle().iter().any(|&v| arena.is_target(player, v)),
        ObjectiveKind::CoBuchi => !lasso.cycle().iter().any(|&v| arena.is_target(player, v)),
        ObjectiveKind::ShortestPath => panic!("shortest-path is not a qualitative objective"),
    }
}

/// Shortest-path cost of a lasso for `player` under the arena's shared
/// weight function: summed weight up to the first target visit, infinite if
/// the target is never visited. A play starting in the target has cost 0.
pub fn eval_spath(arena: &Arena, lasso: &Lasso, player: PlayerId) -> Cost {
    spath_cost(arena, lasso, player, |src, dst| arena.weight(src, dst))
}

fn spath_cost_for(game: &Game, lasso: &Lasso, player: PlayerId) -> Cost {
    spath_cost(&game.arena, lasso, player, |src, dst| {
        game.player_weight(player, src, dst)
    })
}

fn spath_cost(
    arena: &Arena,
    lasso: &Lasso,
    player: PlayerId,
    weight: impl Fn(Vertex, Vertex) -> u64,
) -> Cost {
    let positions = lasso.positions();
    let mut acc: u64 = 0;
    for (i, &v) in positions.iter().enumerate() {
        if arena.is_target(player, v) {
            return Cost::Finite(acc);
        }
        let next = if i + 1 < positions.len() {
            positions[i + 1]
        } else {
            lasso.cycle()[0]
        };
        acc = acc.saturating_add(weight(v, next));
    }
    Cost::Infinite
}

/// Unified evaluation entry point: win/lose for qualitative kinds, a value
/// in `ℕ ∪ {∞}` for shortest-path.
pub fn eval_cost(arena: &Arena, lasso: &Lasso, kind: ObjectiveKind, player: PlayerId) -> CostValue {
    match kind {
        ObjectiveKind::ShortestPath => CostValue::Cost(eval_spath(arena, lasso, player)),
        _ => {
            if eval_qualitative(arena, lasso, kind, player) {
                CostValue::Win
            } else {
                CostValue::Lose
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn accepts_single_vertex_self_loop() {
        let arena = Arena::new(1, vec![1], vec![(0, 0, 0)], vec![set(&[0])]).unwrap();
        assert_eq!(arena.num_vertices(), 1);
        assert_eq!(arena.successors(0), &[0]);
    }

    #[test]
    fn accepts_two_player_weighted_arena() {
        // 5 vertices, 2 players, one weighted edge, all others weight 1.
        let arena = fixtures::fig1a_game().arena;
        assert_eq!(arena.num_vertices(), 5);
        assert_eq!(arena.num_players(), 2);
        assert_eq!(arena.weight(0, 1), 3);
    }

    #[test]
    fn rejects_deadlock() {
        // Same shape as the weighted two-player arena but with the self-loop
        // of the sink removed.
        let err = Arena::new(
            2,
            vec![1, 1, 2, 1, 1],
            vec![(0, 1, 3), (0, 2, 1), (1, 2, 1), (2, 4, 1), (4, 2, 1)],
            vec![set(&[1, 4]), set(&[1])],
        )
        .unwrap_err();
        assert_eq!(err, ArenaError::DeadlockVertex(3));
    }

    #[test]
    fn rejects_bad_owner_and_dangling_edge() {
        let err = Arena::new(1, vec![2], vec![(0, 0, 0)], vec![]).unwrap_err();
        assert!(matches!(
            err,
            ArenaError::OwnerOutOfRange {
                vertex: 0,
                owner: 2,
                ..
            }
        ));
        let err = Arena::new(1, vec![1], vec![(0, 3, 0)], vec![]).unwrap_err();
        assert_eq!(err, ArenaError::DanglingEdge(0, 3));
    }

    #[test]
    fn rejects_duplicate_successor() {
        let err =
            Arena::new(1, vec![1, 1], vec![(0, 1, 0), (0, 1, 2), (1, 0, 0)], vec![]).unwrap_err();
        assert_eq!(err, ArenaError::DuplicateEdge(0, 1));
    }

    #[test]
    fn spath_cost_of_weighted_lasso() {
        // First target visit at position 1 via the weight-3 edge.
        let game = fixtures::fig1a_game();
        let lasso = Lasso::new(vec![0, 1, 2], vec![3]);
        assert_eq!(eval_spath(&game.arena, &lasso, 1), Cost::Finite(3));
        assert_eq!(eval_spath(&game.arena, &lasso, 2), Cost::Finite(3));
    }

    #[test]
    fn spath_cost_zero_when_start_is_target() {
        let arena = Arena::new(1, vec![1], vec![(0, 0, 7)], vec![set(&[0])]).unwrap();
        let lasso = Lasso::new(vec![], vec![0]);
        assert_eq!(eval_spath(&arena, &lasso, 1), Cost::Finite(0));
    }

    #[test]
    fn safe_with_empty_target_wins() {
        let arena = Arena::new(1, vec![1], vec![(0, 0, 0)], vec![BTreeSet::new()]).unwrap();
        let lasso = Lasso::new(vec![], vec![0]);
        assert!(eval_qualitative(&arena, &lasso, ObjectiveKind::Safe, 1));
    }

    #[test]
    fn buchi_checks_cycle_only() {
        let game = fixtures::buchi1_game();
        let lasso = Lasso::new(vec![0, 1], vec![2]);
        assert!(eval_qualitative(
            &game.arena,
            &lasso,
            ObjectiveKind::Buchi,
            2
        ));
        assert!(!eval_qualitative(
            &game.arena,
            &lasso,
            ObjectiveKind::Buchi,
            1
        ));
    }

    #[test]
    fn qualitative_complementarity() {
        let game = fixtures::buchi1_game();
        for lasso in [
            Lasso::new(vec![0, 1], vec![2]),
            Lasso::new(vec![], vec![0, 1]),
            Lasso::new(vec![0], vec![3]),
        ] {
            for player in [1, 2] {
                let b = eval_qualitative(&game.arena, &lasso, ObjectiveKind::Buchi, player);
                let c = eval_qualitative(&game.arena, &lasso, ObjectiveKind::CoBuchi, player);
                assert_ne!(b, c);
                let r = eval_qualitative(&game.arena, &lasso, ObjectiveKind::Reach, player);
                let s = eval_qualitative(&game.arena, &lasso, ObjectiveKind::Safe, player);
                assert_ne!(r, s);
                // finite shortest-path cost iff reach wins
                let sp = eval_spath(&game.arena, &lasso, player);
                assert_eq!(sp.is_finite(), r);
            }
        }
    }
}
