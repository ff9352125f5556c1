//! Two-player zero-sum coalition games: attractors, winning regions and
//! memoryless strategies for the four qualitative objectives, and values,
//! uniformly optimal and punishing strategies for shortest-path games.
//!
//! A [`CoalitionView`] opposes one protagonist player to the coalition of
//! all others on the same arena. Side [`Side::One`] is the protagonist.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use thiserror::Error;

use crate::arena::{Arena, Cost, ObjectiveKind, PlayerId, Vertex};

/// Side of the two-player zero-sum view: `One` is the protagonist, `Two`
/// the coalition of the remaining players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

/// The two-player zero-sum view of a multi-player arena in which one player
/// opposes the coalition of all others.
#[derive(Debug, Clone, Copy)]
pub struct CoalitionView<'a> {
    arena: &'a Arena,
    protagonist: PlayerId,
}

impl<'a> CoalitionView<'a> {
    pub fn new(arena: &'a Arena, protagonist: PlayerId) -> CoalitionView<'a> {
        assert!(
            protagonist >= 1 && protagonist <= arena.num_players(),
            "player out of range"
        );
        CoalitionView { arena, protagonist }
    }

    pub fn arena(&self) -> &'a Arena {
        self.arena
    }

    pub fn protagonist(&self) -> PlayerId {
        self.protagonist
    }

    pub fn side_of(&self, v: Vertex) -> Side {
        if self.arena.owner(v) == self.protagonist {
            Side::One
        } else {
            Side::Two
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZeroSumError {
    #[error("no value-consistent edge at vertex {0}; value map is inconsistent")]
    NoValueConsistentEdge(Vertex),
    #[error("objective {0} is not qualitative")]
    NotQualitative(ObjectiveKind),
}

/// Winning regions and memoryless strategies of a qualitative zero-sum
/// game. The regions partition the vertex set; each strategy is defined on
/// the winner's own vertices inside their region (and closed on it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualSolution {
    pub win1: BTreeSet<Vertex>,
    pub win2: BTreeSet<Vertex>,
    pub strat1: BTreeMap<Vertex, Vertex>,
    pub strat2: BTreeMap<Vertex, Vertex>,
}

/// Values and strategies of a zero-sum shortest-path game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpathSolution {
    /// Value of every vertex in `ℕ ∪ {∞}`.
    pub values: Vec<Cost>,
    /// Uniformly optimal protagonist strategy, defined on protagonist
    /// vertices with finite value outside the target.
    pub optimal: BTreeMap<Vertex, Vertex>,
    /// Memoryless punishing strategy of the coalition, defined on all
    /// coalition vertices.
    pub punisher: BTreeMap<Vertex, Vertex>,
}

/// Least set from which `side` can force reaching `target`, together with a
/// memoryless strategy moving toward the target with strictly decreasing
/// attractor rank.
pub fn attractor(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    side: Side,
) -> (BTreeSet<Vertex>, BTreeMap<Vertex, Vertex>) {
    let arena = view.arena();
    let alive = vec![true; arena.num_vertices()];
    let (region, strategy, _) = attractor_in(arena, &alive, |v| view.side_of(v), target, side);
    (
        region
            .iter()
            .enumerate()
            .filter(|&(_, b)| *b)
            .map(|(v, _)| v)
            .collect(),
        strategy,
    )
}

/// Attractor restricted to the sub-arena induced by `alive`. Dead vertices
/// are ignored entirely. Returns membership flags, the strategy for `side`
/// and attractor ranks.
fn attractor_in(
    arena: &Arena,
    alive: &[bool],
    side_of: impl Fn(Vertex) -> Side,
    target: &BTreeSet<Vertex>,
    side: Side,
) -> (Vec<bool>, BTreeMap<Vertex, Vertex>, Vec<usize>) {
    let nv = arena.num_vertices();
    let preds = arena.predecessors();
    let mut in_region = vec![false; nv];
    let mut rank = vec![usize::MAX; nv];
    let mut strategy = BTreeMap::new();
    let mut remaining: Vec<usize> = (0..nv)
        .map(|v| arena.successors(v).iter().filter(|&&s| alive[s]).count())
        .collect();
    let mut queue = VecDeque::new();
    for &t in target {
        if alive[t] && !in_region[t] {
            in_region[t] = true;
            rank[t] = 0;
            queue.push_back(t);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &preds[v] {
            if !alive[u] || in_region[u] {
                continue;
            }
            if side_of(u) == side {
                in_region[u] = true;
                rank[u] = rank[v] + 1;
                strategy.insert(u, v);
                queue.push_back(u);
            } else {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    in_region[u] = true;
                    rank[u] = rank[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    (in_region, strategy, rank)
}

/// Solves the zero-sum game with the given qualitative objective for the
/// protagonist: exact winning regions and memoryless uniformly winning
/// strategies for both sides.
///
/// Reachability is solved by attractor, safety by complement plus a
/// region-staying strategy, Büchi by the classical repeated-attractor
/// fixpoint and co-Büchi by swapping sides on the Büchi solver.
pub fn solve_qualitative(
    view: &CoalitionView,
    kind: ObjectiveKind,
    target: &BTreeSet<Vertex>,
) -> Result<QualSolution, ZeroSumError> {
    let arena = view.arena();
    match kind {
        ObjectiveKind::Reach => {
            let (win1, strat1) = attractor(view, target, Side::One);
            let win2: BTreeSet<Vertex> = arena.vertices().filter(|v| !win1.contains(v)).collect();
            let strat2 = stay_in_region(view, &win2, Side::Two);
            Ok(QualSolution {
                win1,
                win2,
                strat1,
                strat2,
            })
        }
        ObjectiveKind::Safe => {
            let (win2, strat2) = attractor(view, target, Side::Two);
            let win1: BTreeSet<Vertex> = arena.vertices().filter(|v| !win2.contains(v)).collect();
            let strat1 = stay_in_region(view, &win1, Side::One);
            Ok(QualSolution {
                win1,
                win2,
                strat1,
                strat2,
            })
        }
        ObjectiveKind::Buchi => {
            let ((win1, strat1), (win2, strat2)) = buchi_engine(view, target, Side::One);
            Ok(QualSolution {
                win1,
                win2,
                strat1,
                strat2,
            })
        }
        ObjectiveKind::CoBuchi => {
            // duality: the protagonist wins co-Büchi exactly where the
            // Büchi player loses when sides are swapped
            let ((win2, strat2), (win1, strat1)) = buchi_engine(view, target, Side::Two);
            Ok(QualSolution {
                win1,
                win2,
                strat1,
                strat2,
            })
        }
        ObjectiveKind::ShortestPath => Err(ZeroSumError::NotQualitative(kind)),
    }
}

/// Lowest-id successor inside `region` for every `side`-owned vertex of the
/// region. The region must be closed for `side` (a trap for the opponent).
fn stay_in_region(
    view: &CoalitionView,
    region: &BTreeSet<Vertex>,
    side: Side,
) -> BTreeMap<Vertex, Vertex> {
    let arena = view.arena();
    let mut strat = BTreeMap::new();
    for &v in region {
        if view.side_of(v) == side {
            if let Some(&s) = arena.successors(v).iter().find(|s| region.contains(s)) {
                strat.insert(v, s);
            }
        }
    }
    strat
}

/// Region plus memoryless strategy of one side.
type RegionStrategy = (BTreeSet<Vertex>, BTreeMap<Vertex, Vertex>);

/// Repeated-attractor Büchi solver. Returns the Büchi player's region and
/// strategy followed by the co-Büchi opponent's region and strategy.
fn buchi_engine(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    buchi_side: Side,
) -> (RegionStrategy, RegionStrategy) {
    let arena = view.arena();
    let other = buchi_side.opponent();
    let nv = arena.num_vertices();
    let mut alive = vec![true; nv];
    let mut co_region = BTreeSet::new();
    let mut co_strat = BTreeMap::new();
    loop {
        let live_target: BTreeSet<Vertex> = target.iter().copied().filter(|&t| alive[t]).collect();
        let (attr, _, _) =
            attractor_in(arena, &alive, |v| view.side_of(v), &live_target, buchi_side);
        let escape: BTreeSet<Vertex> = (0..nv).filter(|&v| alive[v] && !attr[v]).collect();
        if escape.is_empty() {
            break;
        }
        // escape is a trap for the Büchi side within the live sub-arena:
        // the opponent stays inside it and avoids the live target forever
        let (removed, rem_strat, _) =
            attractor_in(arena, &alive, |v| view.side_of(v), &escape, other);
        for v in 0..nv {
            if !alive[v] || !removed[v] || view.side_of(v) != other {
                continue;
            }
            if escape.contains(&v) {
                let stay = arena
                    .successors(v)
                    .iter()
                    .copied()
                    .find(|&s| alive[s] && escape.contains(&s))
                    .expect("escape set is closed for the opponent");
                co_strat.insert(v, stay);
            } else if let Some(&s) = rem_strat.get(&v) {
                co_strat.insert(v, s);
            }
        }
        for v in 0..nv {
            if removed[v] {
                alive[v] = false;
                co_region.insert(v);
            }
        }
    }
    // strategy on the Büchi region: attract to the target, and from the
    // target re-enter the region
    let live_target: BTreeSet<Vertex> = target.iter().copied().filter(|&t| alive[t]).collect();
    let (_, astrat, _) = attractor_in(arena, &alive, |v| view.side_of(v), &live_target, buchi_side);
    let region: BTreeSet<Vertex> = (0..nv).filter(|&v| alive[v]).collect();
    let mut strat = BTreeMap::new();
    for &v in &region {
        if view.side_of(v) != buchi_side {
            continue;
        }
        if live_target.contains(&v) {
            let back = arena
                .successors(v)
                .iter()
                .copied()
                .find(|&s| alive[s])
                .expect("recurrence region is deadlock-free");
            strat.insert(v, back);
        } else if let Some(&s) = astrat.get(&v) {
            strat.insert(v, s);
        }
    }
    ((region, strat), (co_region, co_strat))
}

/// Values of the zero-sum shortest-path game: a Dijkstra-style relaxation
/// where protagonist vertices settle at the minimum of weight plus
/// successor value and coalition vertices settle only once all successors
/// have, at the maximum. Unsettled vertices have value `∞`.
pub fn spath_values(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    weight: impl Fn(Vertex, Vertex) -> u64,
) -> Vec<Cost> {
    let arena = view.arena();
    let nv = arena.num_vertices();
    let preds = arena.predecessors();
    let mut settled: Vec<Option<u64>> = vec![None; nv];
    let mut heap: BinaryHeap<Reverse<(u64, Vertex)>> = BinaryHeap::new();
    let mut remaining: Vec<usize> = (0..nv).map(|v| arena.successors(v).len()).collect();
    let mut best_max: Vec<u64> = vec![0; nv];
    for &t in target {
        heap.push(Reverse((0, t)));
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if settled[v].is_some() {
            continue;
        }
        settled[v] = Some(d);
        for &u in &preds[v] {
            if settled[u].is_some() || target.contains(&u) {
                continue;
            }
            let du = d.saturating_add(weight(u, v));
            match view.side_of(u) {
                Side::One => heap.push(Reverse((du, u))),
                Side::Two => {
                    remaining[u] -= 1;
                    best_max[u] = best_max[u].max(du);
                    if remaining[u] == 0 {
                        heap.push(Reverse((best_max[u], u)));
                    }
                }
            }
        }
    }
    (0..nv)
        .map(|v| settled[v].map_or(Cost::Infinite, Cost::Finite))
        .collect()
}

/// Uniformly optimal memoryless protagonist strategy: restrict the arena to
/// protagonist edges along which the value decreases by exactly the edge
/// weight, then take an attractor strategy of the restricted arena. Defined
/// on finite-value protagonist vertices outside the target.
pub fn spath_p1_optimal(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    weight: impl Fn(Vertex, Vertex) -> u64,
    values: &[Cost],
) -> Result<BTreeMap<Vertex, Vertex>, ZeroSumError> {
    let arena = view.arena();
    let nv = arena.num_vertices();
    let mut pruned: Vec<Vec<Vertex>> = Vec::with_capacity(nv);
    for v in arena.vertices() {
        let keep_all =
            view.side_of(v) == Side::Two || target.contains(&v) || !values[v].is_finite();
        if keep_all {
            pruned.push(arena.successors(v).to_vec());
            continue;
        }
        let kept: Vec<Vertex> = arena
            .successors(v)
            .iter()
            .copied()
            .filter(|&s| values[s].saturating_add(weight(v, s)) == values[v])
            .collect();
        if kept.is_empty() {
            return Err(ZeroSumError::NoValueConsistentEdge(v));
        }
        pruned.push(kept);
    }
    // attractor of the target over the pruned edge relation
    let mut pruned_preds: Vec<Vec<Vertex>> = vec![Vec::new(); nv];
    for v in 0..nv {
        for &s in &pruned[v] {
            pruned_preds[s].push(v);
        }
    }
    let mut in_region = vec![false; nv];
    let mut strategy = BTreeMap::new();
    let mut remaining: Vec<usize> = (0..nv).map(|v| pruned[v].len()).collect();
    let mut queue = VecDeque::new();
    for &t in target {
        in_region[t] = true;
        queue.push_back(t);
    }
    while let Some(v) = queue.pop_front() {
        for &u in &pruned_preds[v] {
            if in_region[u] {
                continue;
            }
            match view.side_of(u) {
                Side::One => {
                    in_region[u] = true;
                    strategy.insert(u, v);
                    queue.push_back(u);
                }
                Side::Two => {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        in_region[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    strategy.retain(|&v, _| values[v].is_finite() && !target.contains(&v));
    Ok(strategy)
}

/// Memoryless punishing strategy of the coalition. Inside the coalition's
/// safety region it stays there (highest-id region successor); elsewhere it
/// moves to a successor maximising weight plus value, ties to the lowest
/// id. The `alpha` threshold of the underlying strategy family only matters
/// on infinitely-branching arenas and is ignored here.
pub fn spath_punisher(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    weight: impl Fn(Vertex, Vertex) -> u64,
    values: &[Cost],
    _alpha: u64,
) -> BTreeMap<Vertex, Vertex> {
    let arena = view.arena();
    let (reach1, _) = attractor(view, target, Side::One);
    let mut strat = BTreeMap::new();
    for v in arena.vertices() {
        if view.side_of(v) != Side::Two {
            continue;
        }
        let safe2 = !reach1.contains(&v);
        let choice = if safe2 {
            arena
                .successors(v)
                .iter()
                .copied()
                .rfind(|s| !reach1.contains(s))
                .expect("coalition safety region is closed")
        } else {
            let mut best: Option<(Cost, Vertex)> = None;
            for &s in arena.successors(v) {
                let c = values[s].saturating_add(weight(v, s));
                let better = match best {
                    None => true,
                    Some((bc, _)) => c > bc,
                };
                if better {
                    best = Some((c, s));
                }
            }
            best.expect("no deadlocks").1
        };
        strat.insert(v, choice);
    }
    strat
}

/// Convenience bundle of the three shortest-path operations.
pub fn solve_spath(
    view: &CoalitionView,
    target: &BTreeSet<Vertex>,
    weight: impl Fn(Vertex, Vertex) -> u64 + Copy,
) -> Result<SpathSolution, ZeroSumError> {
    let values = spath_values(view, target, weight);
    let optimal = spath_p1_optimal(view, target, weight, &values)?;
    let punisher = spath_punisher(view, target, weight, &values, 0);
    Ok(SpathSolution {
        values,
        optimal,
        punisher,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Arena;
    use crate::fixtures;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn attractor_of_full_vertex_set_is_everything() {
        let game = fixtures::fig1a_game();
        let view = CoalitionView::new(&game.arena, 1);
        let all: BTreeSet<Vertex> = game.arena.vertices().collect();
        let (region, _) = attractor(&view, &all, Side::One);
        assert_eq!(region, all);
    }

    #[test]
    fn attractor_respects_coalition_escape() {
        // four players; the protagonist cannot force its target because the
        // vertex ahead of it belongs to the coalition, which escapes
        let game = fixtures::fig1b_game();
        let view = CoalitionView::new(&game.arena, 3);
        let (region, _) = attractor(&view, game.arena.target_set(3), Side::One);
        assert_eq!(region, set(&[6]));
    }

    #[test]
    fn attractor_on_chain_with_max_player_covers_all() {
        let game = fixtures::fig2_truncated(5);
        let view = CoalitionView::new(&game.arena, 1);
        let (region, _) = attractor(&view, game.arena.target_set(1), Side::One);
        let all: BTreeSet<Vertex> = game.arena.vertices().collect();
        assert_eq!(region, all);
    }

    #[test]
    fn qualitative_reach_partition() {
        let game = fixtures::fig1b_game();
        let view = CoalitionView::new(&game.arena, 3);
        let sol = solve_qualitative(&view, ObjectiveKind::Reach, game.arena.target_set(3)).unwrap();
        assert_eq!(sol.win1, set(&[6]));
        assert_eq!(sol.win2.len(), game.arena.num_vertices() - 1);
        assert!(sol.win2.contains(&0) && sol.win2.contains(&4));
    }

    #[test]
    fn safe_with_empty_target_wins_everywhere() {
        let game = fixtures::fig1a_game();
        let view = CoalitionView::new(&game.arena, 1);
        let sol = solve_qualitative(&view, ObjectiveKind::Safe, &BTreeSet::new()).unwrap();
        assert_eq!(sol.win1.len(), game.arena.num_vertices());
        assert!(sol.win2.is_empty());
    }

    #[test]
    fn buchi_region_on_small_arena() {
        // the protagonist owns a single vertex and the coalition can divert
        // the play into a sink, so recurrence cannot be forced anywhere
        let game = fixtures::buchi1_game();
        let view = CoalitionView::new(&game.arena, 1);
        let sol = solve_qualitative(&view, ObjectiveKind::Buchi, game.arena.target_set(1)).unwrap();
        assert!(sol.win1.is_empty());
        assert_eq!(sol.win2.len(), 4);
        // duality under side swap: the other player as protagonist, wanting
        // the complement objective, yields the exchanged regions
        let swapped = CoalitionView::new(&game.arena, 2);
        let co =
            solve_qualitative(&swapped, ObjectiveKind::CoBuchi, game.arena.target_set(1)).unwrap();
        assert_eq!(sol.win1, co.win2);
        assert_eq!(sol.win2, co.win1);
    }

    #[test]
    fn spath_values_on_truncated_chain() {
        let game = fixtures::fig2_truncated(3);
        let view = CoalitionView::new(&game.arena, 1);
        let w = |a: Vertex, b: Vertex| game.arena.weight(a, b);
        let values = spath_values(&view, game.arena.target_set(1), w);
        // vertex layout: v0, vinf, v1, v2, v3, t
        assert_eq!(values[5], Cost::Finite(0));
        assert_eq!(values[2], Cost::Finite(1));
        assert_eq!(values[3], Cost::Finite(2));
        assert_eq!(values[4], Cost::Finite(3));
        assert_eq!(values[1], Cost::Finite(4));
        assert_eq!(values[0], Cost::Finite(5));
    }

    #[test]
    fn optimal_strategy_moves_down_the_chain() {
        let game = fixtures::fig2_truncated(3);
        let view = CoalitionView::new(&game.arena, 1);
        let w = |a: Vertex, b: Vertex| game.arena.weight(a, b);
        let sol = solve_spath(&view, game.arena.target_set(1), w).unwrap();
        // v1 -> t, v2 -> v1, v3 -> v2, v0 -> vinf
        assert_eq!(sol.optimal.get(&2), Some(&5));
        assert_eq!(sol.optimal.get(&3), Some(&2));
        assert_eq!(sol.optimal.get(&4), Some(&3));
        assert_eq!(sol.optimal.get(&0), Some(&1));
        // punisher maximises weight plus value
        assert_eq!(sol.punisher.get(&1), Some(&4));
    }

    #[test]
    fn optimal_strategy_prefers_the_paying_edge() {
        let game = fixtures::fig1a_game();
        let view = CoalitionView::new(&game.arena, 1);
        let w = |a: Vertex, b: Vertex| game.arena.weight(a, b);
        let sol = solve_spath(&view, game.arena.target_set(1), w).unwrap();
        assert_eq!(sol.values[0], Cost::Finite(3));
        assert_eq!(sol.optimal.get(&0), Some(&1));
    }

    #[test]
    fn punisher_moves_on_weighted_three_player_arena() {
        let game = fixtures::fig4a_game();
        let view = CoalitionView::new(&game.arena, 1);
        let w = |a: Vertex, b: Vertex| game.arena.weight(a, b);
        let sol = solve_spath(&view, game.arena.target_set(1), w).unwrap();
        // vertex layout: v0, v1, v2, v3, t, v4, t12
        assert_eq!(sol.punisher.get(&2), Some(&3));
        assert_eq!(sol.punisher.get(&3), Some(&5));
    }

    #[test]
    fn punisher_empty_when_coalition_owns_nothing() {
        let arena = Arena::new(1, vec![1], vec![(0, 0, 0)], vec![set(&[0])]).unwrap();
        let view = CoalitionView::new(&arena, 1);
        let values = spath_values(&view, arena.target_set(1), |_, _| 0);
        let strat = spath_punisher(&view, arena.target_set(1), |_, _| 0, &values, 0);
        assert!(strat.is_empty());
    }
}
