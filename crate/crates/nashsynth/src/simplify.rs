//! Rewriting Nash-equilibrium outcomes into well-structured ones.
//!
//! Each simplifier consumes a lasso already accepted by the matching
//! characterisation and produces an outcome of the same game that is again
//! an equilibrium outcome, together with the structure the synthesiser
//! builds on: a finite simple decomposition (reachability, shortest-path,
//! safety), an ultimately periodic chain of simple segments (Büchi), or a
//! prefix plus trivially decomposed suffix (co-Büchi).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::arena::{Arena, Game, ObjectiveKind, PlayerId, Vertex};
use crate::characterize::{check_qual_outcome, check_safety_outcome, check_spath_outcome};
use crate::lasso::{Decomposition, Lasso};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplifyError {
    #[error("the play is not a Nash-equilibrium outcome")]
    NotAnNEOutcome,
    #[error("objective of player {player} is {kind}, expected {expected}")]
    WrongClass {
        player: PlayerId,
        kind: ObjectiveKind,
        expected: ObjectiveKind,
    },
    #[error("per-player weight functions are not supported by simplification")]
    PerPlayerWeights,
}

/// Class-specific structure of a simplified outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeShape {
    /// Finite simple decomposition. Shortest-path and safety keep the tail
    /// split off; reachability merges it into the last segment.
    Decomposed(Decomposition),
    /// A simple history leading into segments repeated forever; the last
    /// period segment ends where the first begins.
    PeriodicChain {
        prefix: Vec<Vertex>,
        period: Vec<Vec<Vertex>>,
    },
    /// A simple history enforced vertex by vertex, then a trivially
    /// decomposed suffix.
    PrefixSuffix { prefix: Vec<Vertex>, suffix: Lasso },
}

/// A well-structured equilibrium outcome plus bookkeeping about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedOutcome {
    pub lasso: Lasso,
    pub class_tag: ObjectiveKind,
    pub shape: OutcomeShape,
    /// Number of finite target-connecting segments.
    pub finite_segments: usize,
    /// Earliest target-visit positions of the simplified play.
    pub visit_positions: BTreeSet<usize>,
    /// Players satisfied by the simplified play.
    pub satisfied: BTreeSet<PlayerId>,
}

fn require_uniform(game: &Game, expected: ObjectiveKind) -> Result<(), SimplifyError> {
    for p in game.players() {
        let kind = game.objective(p);
        if kind != expected {
            return Err(SimplifyError::WrongClass {
                player: p,
                kind,
                expected,
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Graph helpers on induced subgraphs
// ---------------------------------------------------------------------------

/// Dijkstra distances from every allowed vertex TO `dst`, within the
/// subgraph induced by `allowed`.
fn dist_to(
    arena: &Arena,
    allowed: &BTreeSet<Vertex>,
    dst: Vertex,
    weight: impl Fn(Vertex, Vertex) -> u64,
) -> BTreeMap<Vertex, u64> {
    use std::cmp::Reverse;
    let mut dist: BTreeMap<Vertex, u64> = BTreeMap::new();
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(Reverse((0u64, dst)));
    let mut preds: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &v in allowed {
        for &s in arena.successors(v) {
            if allowed.contains(&s) {
                preds.entry(s).or_default().push(v);
            }
        }
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist.contains_key(&v) {
            continue;
        }
        dist.insert(v, d);
        if let Some(ps) = preds.get(&v) {
            for &u in ps {
                if !dist.contains_key(&u) {
                    heap.push(Reverse((d.saturating_add(weight(u, v)), u)));
                }
            }
        }
    }
    dist
}

/// Lexicographically least minimum-weight simple history from `src` to
/// `dst` within the subgraph induced by `allowed`. Greedy: at each step the
/// smallest next vertex is taken that still admits a simple completion of
/// minimal total weight through unvisited vertices.
fn min_weight_simple_history(
    arena: &Arena,
    allowed: &BTreeSet<Vertex>,
    src: Vertex,
    dst: Vertex,
    weight: impl Fn(Vertex, Vertex) -> u64 + Copy,
) -> Option<Vec<Vertex>> {
    assert_ne!(src, dst, "segments connect distinct endpoints");
    let full = dist_to(arena, allowed, dst, weight);
    let mut budget = *full.get(&src)?;
    let mut path = vec![src];
    let mut remaining: BTreeSet<Vertex> = allowed.clone();
    let mut current = src;
    while current != dst {
        remaining.remove(&current);
        let d = dist_to(arena, &remaining, dst, weight);
        let mut chosen = None;
        for &s in arena.successors(current) {
            if !remaining.contains(&s) {
                continue;
            }
            if let Some(&rest) = d.get(&s) {
                if weight(current, s).saturating_add(rest) <= budget {
                    chosen = Some(s);
                    break;
                }
            }
        }
        let s = chosen.expect("a minimum-weight simple completion exists");
        budget -= weight(current, s);
        path.push(s);
        current = s;
    }
    Some(path)
}

/// Shortest (then lexicographically least) simple history between two
/// distinct vertices of the induced subgraph, ignoring weights.
fn shortest_simple_history(
    arena: &Arena,
    allowed: &BTreeSet<Vertex>,
    src: Vertex,
    dst: Vertex,
) -> Option<Vec<Vertex>> {
    min_weight_simple_history(arena, allowed, src, dst, |_, _| 1)
}

/// Shortest (then lexicographically least) simple cycle through `at`
/// within the induced subgraph, returned with the closing vertex repeated:
/// `[at, ..., at]`.
fn shortest_simple_cycle(
    arena: &Arena,
    allowed: &BTreeSet<Vertex>,
    at: Vertex,
) -> Option<Vec<Vertex>> {
    assert!(allowed.contains(&at));
    if arena.has_edge(at, at) {
        return Some(vec![at, at]);
    }
    let back = dist_to(arena, allowed, at, |_, _| 1);
    let first = arena
        .successors(at)
        .iter()
        .copied()
        .filter(|s| allowed.contains(s))
        .filter_map(|s| back.get(&s).map(|&rest| (1 + rest, s)))
        .min()?
        .1;
    let mut cycle = vec![at];
    cycle.extend(shortest_simple_history(arena, allowed, first, at)?);
    Some(cycle)
}

/// Walks the play of `lasso` from position `from` and cuts at the first
/// repeated vertex, yielding a simple lasso over visited vertices.
fn first_repeat_cut(lasso: &Lasso, from: usize) -> Lasso {
    let mut seen: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut walk: Vec<Vertex> = Vec::new();
    let mut pos = from;
    loop {
        let v = lasso.vertex_at(pos);
        if let Some(&start) = seen.get(&v) {
            return Lasso::new(walk[..start].to_vec(), walk[start..].to_vec());
        }
        seen.insert(v, walk.len());
        walk.push(v);
        pos += 1;
    }
}

/// Removes cycles from a walk with the classical stack method, keeping the
/// first occurrence of every vertex; the result is a simple path with the
/// same endpoints.
fn remove_cycles(walk: &[Vertex]) -> Vec<Vertex> {
    let mut stack: Vec<Vertex> = Vec::new();
    for &v in walk {
        if let Some(idx) = stack.iter().position(|&u| u == v) {
            stack.truncate(idx + 1);
        } else {
            stack.push(v);
        }
    }
    stack
}

/// Whether the subgraph induced by `set` contains a cycle.
fn induced_has_cycle(arena: &Arena, set: &BTreeSet<Vertex>) -> bool {
    // iterative DFS with colors
    let mut color: BTreeMap<Vertex, u8> = set.iter().map(|&v| (v, 0)).collect();
    for &root in set {
        if color[&root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color.insert(root, 1);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let succs: Vec<Vertex> = arena
                .successors(v)
                .iter()
                .copied()
                .filter(|s| set.contains(s))
                .collect();
            if *next < succs.len() {
                let s = succs[*next];
                *next += 1;
                match color[&s] {
                    0 => {
                        color.insert(s, 1);
                        stack.push((s, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                color.insert(v, 2);
                stack.pop();
            }
        }
    }
    false
}

/// Largest subset of `allowed` in which every vertex keeps a successor;
/// greedy lowest-id walk from `start` inside it, cut into a simple lasso.
/// `None` when `start` cannot stay inside `allowed` forever.
fn greedy_lasso_within(arena: &Arena, allowed: &BTreeSet<Vertex>, start: Vertex) -> Option<Lasso> {
    let mut alive = allowed.clone();
    loop {
        let dead: Vec<Vertex> = alive
            .iter()
            .copied()
            .filter(|&v| !arena.successors(v).iter().any(|s| alive.contains(s)))
            .collect();
        if dead.is_empty() {
            break;
        }
        for v in dead {
            alive.remove(&v);
        }
    }
    if !alive.contains(&start) {
        return None;
    }
    let mut seen: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut walk = Vec::new();
    let mut v = start;
    loop {
        if let Some(&at) = seen.get(&v) {
            return Some(Lasso::new(walk[..at].to_vec(), walk[at..].to_vec()));
        }
        seen.insert(v, walk.len());
        walk.push(v);
        v = *arena
            .successors(v)
            .iter()
            .find(|s| alive.contains(s))
            .expect("alive vertices keep a successor");
    }
}

// ---------------------------------------------------------------------------
// Shared core for reachability and shortest-path simplification
// ---------------------------------------------------------------------------

/// Builds the infinite tail following `last_seg`: a play from the end of
/// `last_seg` whose combination with it is a simple lasso, using only
/// vertices of `suffix`. Preference order: stay clear of the segment
/// interior entirely; otherwise route through fresh vertices and close the
/// cycle back into the segment.
fn build_tail(arena: &Arena, last_seg: &[Vertex], suffix: &Lasso) -> Lasso {
    let end = *last_seg.last().expect("segments are nonempty");
    debug_assert_eq!(suffix.first(), end);
    let suffix_set = suffix.vertex_set();
    let interior: BTreeSet<Vertex> = last_seg[..last_seg.len() - 1].iter().copied().collect();
    let clear: BTreeSet<Vertex> = suffix_set
        .iter()
        .copied()
        .filter(|v| !interior.contains(v))
        .collect();
    if let Some(lasso) = greedy_lasso_within(arena, &clear, end) {
        return lasso;
    }
    // Re-entry: a simple path from `end` through fresh suffix vertices to
    // some segment vertex; the closing cycle runs through the segment back
    // to `end`. Breadth-first, so the path is shortest and deterministic.
    let seg_set: BTreeSet<Vertex> = last_seg.iter().copied().collect();
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(end);
    let mut closure: Option<(Vertex, Vertex)> = None;
    'bfs: while let Some(x) = queue.pop_front() {
        for &y in arena.successors(x) {
            if seg_set.contains(&y) {
                closure = Some((x, y));
                break 'bfs;
            }
            if suffix_set.contains(&y) && !parent.contains_key(&y) && y != end {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    let (via, rejoin) = closure.expect("an equilibrium outcome admits a simple tail");
    let mut fresh = Vec::new();
    let mut cur = via;
    while cur != end {
        fresh.push(cur);
        cur = parent[&cur];
    }
    fresh.reverse();
    let r = last_seg
        .iter()
        .position(|&w| w == rejoin)
        .expect("rejoin vertex is in the segment");
    let mut cycle = vec![end];
    cycle.extend(fresh);
    cycle.extend_from_slice(&last_seg[r..last_seg.len() - 1]);
    Lasso::new(Vec::new(), cycle)
}

/// Minimum-weight simple segments between consecutive first target visits,
/// plus a simple tail. Shared by shortest-path (real weights) and
/// reachability (zero weights).
fn decompose_core(
    game: &Game,
    input: &Lasso,
    weight: impl Fn(Vertex, Vertex) -> u64 + Copy,
) -> (Decomposition, usize) {
    let arena = &game.arena;
    let splits: Vec<usize> = game
        .visit_positions(input)
        .into_iter()
        .filter(|&pos| pos > 0)
        .collect();
    if splits.is_empty() {
        let tail = if input.is_simple() {
            input.clone()
        } else {
            first_repeat_cut(input, 0)
        };
        return (
            Decomposition {
                segments: Vec::new(),
                tail,
            },
            0,
        );
    }
    let positions = input.positions();
    let mut segments = Vec::new();
    let mut start = 0usize;
    for &split in &splits {
        let span: BTreeSet<Vertex> = positions[start..=split].iter().copied().collect();
        let seg =
            min_weight_simple_history(arena, &span, positions[start], positions[split], weight)
                .expect("the original segment witnesses reachability");
        segments.push(seg);
        start = split;
    }
    let suffix = input.suffix_from(start);
    let tail = build_tail(arena, segments.last().expect("nonempty"), &suffix);
    let k = segments.len();
    (Decomposition { segments, tail }, k)
}

fn merged_tail_is_simple(decomposition: &Decomposition) -> bool {
    match decomposition.segments.last() {
        None => decomposition.tail.is_simple(),
        Some(seg) => {
            let mut prefix = seg[..seg.len() - 1].to_vec();
            prefix.extend_from_slice(decomposition.tail.prefix());
            Lasso::new(prefix, decomposition.tail.cycle().to_vec()).is_simple()
        }
    }
}

// ---------------------------------------------------------------------------
// Simplifiers
// ---------------------------------------------------------------------------

/// Shortest-path simplification: one minimum-weight simple segment per
/// first target visit, then a simple lasso tail kept separate from the last
/// segment. Costs never increase.
pub fn simplify_spath(game: &Game, input: &Lasso) -> Result<SimplifiedOutcome, SimplifyError> {
    require_uniform(game, ObjectiveKind::ShortestPath)?;
    if game.has_player_weights() {
        return Err(SimplifyError::PerPlayerWeights);
    }
    let accepted = check_spath_outcome(game, input)
        .expect("kinds checked")
        .is_ne_outcome;
    if !accepted {
        return Err(SimplifyError::NotAnNEOutcome);
    }
    let weight = |a, b| game.arena.weight(a, b);
    let (decomposition, k) = decompose_core(game, input, weight);
    let lasso = decomposition.to_lasso();
    assert!(decomposition.check_well_formed());
    assert!(
        merged_tail_is_simple(&decomposition),
        "tail must merge simply into the last segment"
    );
    assert!(
        check_spath_outcome(game, &lasso)
            .expect("kinds checked")
            .is_ne_outcome
    );
    for p in game.players() {
        assert!(
            game.eval(&lasso, p).improves_on(game.eval(input, p))
                || game.eval(&lasso, p) == game.eval(input, p)
        );
    }
    let satisfied = game.satisfied_players(&lasso);
    let visit_positions = game.visit_positions(&lasso);
    assert_eq!(visit_positions.iter().filter(|&&pos| pos > 0).count(), k);
    Ok(SimplifiedOutcome {
        lasso,
        class_tag: ObjectiveKind::ShortestPath,
        shape: OutcomeShape::Decomposed(decomposition),
        finite_segments: k,
        visit_positions,
        satisfied,
    })
}

/// Reachability simplification: the shortest-path construction with zero
/// weights, after which the tail is merged into the last segment.
pub fn simplify_reach(game: &Game, input: &Lasso) -> Result<SimplifiedOutcome, SimplifyError> {
    require_uniform(game, ObjectiveKind::Reach)?;
    let accepted = check_qual_outcome(game, input)
        .expect("kinds checked")
        .is_ne_outcome;
    if !accepted {
        return Err(SimplifyError::NotAnNEOutcome);
    }
    let (mut decomposition, k) = decompose_core(game, input, |_, _| 0);
    if let Some(seg) = decomposition.segments.pop() {
        let mut prefix = seg[..seg.len() - 1].to_vec();
        prefix.extend_from_slice(decomposition.tail.prefix());
        decomposition.tail = Lasso::new(prefix, decomposition.tail.cycle().to_vec());
    }
    let lasso = decomposition.to_lasso();
    assert!(decomposition.check_well_formed());
    assert_eq!(decomposition.element_count(), k.max(1));
    assert!(
        check_qual_outcome(game, &lasso)
            .expect("kinds checked")
            .is_ne_outcome
    );
    let satisfied = game.satisfied_players(&lasso);
    assert_eq!(satisfied, game.satisfied_players(input));
    let visit_positions = game.visit_positions(&lasso);
    Ok(SimplifiedOutcome {
        lasso,
        class_tag: ObjectiveKind::Reach,
        shape: OutcomeShape::Decomposed(decomposition),
        finite_segments: k,
        visit_positions,
        satisfied,
    })
}

/// Safety simplification: close the play at the earliest backward edge into
/// a simple lasso, then split at first target visits. The set of satisfied
/// players can only grow.
pub fn simplify_safety(game: &Game, input: &Lasso) -> Result<SimplifiedOutcome, SimplifyError> {
    require_uniform(game, ObjectiveKind::Safe)?;
    let accepted = check_safety_outcome(game, input)
        .expect("kinds checked")
        .is_ne_outcome;
    if !accepted {
        return Err(SimplifyError::NotAnNEOutcome);
    }
    let arena = &game.arena;
    let positions = input.positions();
    let mut cut: Option<(usize, usize)> = None;
    'outer: for j in 0..positions.len() {
        for i in 0..=j {
            if arena.has_edge(positions[j], positions[i]) {
                cut = Some((j, i));
                break 'outer;
            }
        }
    }
    let (j_star, i_star) = cut.expect("a lasso always closes a backward edge");
    let lasso = Lasso::new(
        positions[..i_star].to_vec(),
        positions[i_star..=j_star].to_vec(),
    );
    assert!(lasso.is_simple());
    let splits: Vec<usize> = game
        .visit_positions(&lasso)
        .into_iter()
        .filter(|&pos| pos > 0)
        .collect();
    let new_positions = lasso.positions();
    let mut segments = Vec::new();
    let mut start = 0usize;
    for &split in &splits {
        segments.push(new_positions[start..=split].to_vec());
        start = split;
    }
    let tail = lasso.suffix_from(start);
    let decomposition = Decomposition { segments, tail };
    assert!(decomposition.check_well_formed());
    assert_eq!(decomposition.to_lasso(), lasso);
    // prefixes up to each split admit no cycle besides the endpoint
    for &split in &splits {
        let before: BTreeSet<Vertex> = new_positions[..split].iter().copied().collect();
        assert!(
            !induced_has_cycle(arena, &before),
            "earliest backward edge forbids earlier cycles"
        );
    }
    assert!(
        check_safety_outcome(game, &lasso)
            .expect("kinds checked")
            .is_ne_outcome
    );
    let satisfied = game.satisfied_players(&lasso);
    assert!(satisfied.is_superset(&game.satisfied_players(input)));
    let visit_positions = game.visit_positions(&lasso);
    Ok(SimplifiedOutcome {
        lasso,
        class_tag: ObjectiveKind::Safe,
        shape: OutcomeShape::Decomposed(decomposition),
        finite_segments: splits.len(),
        visit_positions,
        satisfied,
    })
}

/// Büchi simplification: a simple history to a representative target of
/// some satisfied player, then simple segments chaining the representative
/// targets of all satisfied players, repeated forever. The satisfied set is
/// preserved exactly.
pub fn simplify_buchi(game: &Game, input: &Lasso) -> Result<SimplifiedOutcome, SimplifyError> {
    require_uniform(game, ObjectiveKind::Buchi)?;
    let accepted = check_qual_outcome(game, input)
        .expect("kinds checked")
        .is_ne_outcome;
    if !accepted {
        return Err(SimplifyError::NotAnNEOutcome);
    }
    let arena = &game.arena;
    let satisfied = game.satisfied_players(input);
    let positions = input.positions();
    // earliest suffix containing no losing player's target
    let mut from = 0usize;
    for (pos, &v) in positions.iter().enumerate() {
        for p in game.players() {
            if !satisfied.contains(&p) && arena.is_target(p, v) {
                from = pos + 1;
            }
        }
    }
    assert!(
        from <= input.prefix().len(),
        "losing targets cannot lie on the cycle"
    );
    let suffix_set = input.suffix_from(from).vertex_set();
    // representative targets, ascending player order, duplicates collapsed
    let mut reps: Vec<Vertex> = Vec::new();
    for &p in &satisfied {
        let rep = *input
            .cycle()
            .iter()
            .filter(|&&v| arena.is_target(p, v))
            .min()
            .expect("satisfied Büchi players hit the cycle");
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    if reps.is_empty() {
        reps.push(input.cycle()[0]);
    }
    let k = reps.len();
    let start = input.first();
    let prefix = if start == reps[0] {
        vec![start]
    } else {
        shortest_simple_history(arena, &input.vertex_set(), start, reps[0])
            .expect("the play connects its start to the representative target")
    };
    let period: Vec<Vec<Vertex>> = if k == 1 {
        vec![shortest_simple_cycle(arena, &suffix_set, reps[0])
            .expect("the play cycles through the representative target")]
    } else {
        (0..k)
            .map(|j| {
                shortest_simple_history(arena, &suffix_set, reps[j], reps[(j + 1) % k])
                    .expect("representative targets are connected within the suffix")
            })
            .collect()
    };
    // assemble the lasso: prefix then the period repeated
    let mut cyc = Vec::new();
    for seg in &period {
        cyc.extend_from_slice(&seg[..seg.len() - 1]);
    }
    let lasso = Lasso::new(prefix[..prefix.len() - 1].to_vec(), cyc);
    for seg in &period {
        for &v in seg {
            for p in game.players() {
                if !satisfied.contains(&p) {
                    assert!(!arena.is_target(p, v), "period avoids losing targets");
                }
            }
        }
    }
    assert!(k <= satisfied.len().max(1));
    assert!(
        check_qual_outcome(game, &lasso)
            .expect("kinds checked")
            .is_ne_outcome
    );
    assert_eq!(
        game.satisfied_players(&lasso),
        satisfied,
        "Büchi simplification preserves winners"
    );
    let visit_positions = game.visit_positions(&lasso);
    Ok(SimplifiedOutcome {
        lasso,
        class_tag: ObjectiveKind::Buchi,
        shape: OutcomeShape::PeriodicChain { prefix, period },
        finite_segments: k,
        visit_positions,
        satisfied,
    })
}

/// Co-Büchi simplification: reduce to a simple lasso whose cycle lies past
/// the last visit to a satisfied player's target, then repeatedly enlarge
/// the satisfied set while a suffix-confined play satisfying one more
/// player exists. The returned play admits no such play.
pub fn simplify_cobuchi(game: &Game, input: &Lasso) -> Result<SimplifiedOutcome, SimplifyError> {
    require_uniform(game, ObjectiveKind::CoBuchi)?;
    let accepted = check_qual_outcome(game, input)
        .expect("kinds checked")
        .is_ne_outcome;
    if !accepted {
        return Err(SimplifyError::NotAnNEOutcome);
    }
    let mut rho = input.clone();
    loop {
        let lasso = cobuchi_reduce(game, &rho);
        let satisfied = game.satisfied_players(&lasso);
        let split = cobuchi_phase_split(game, &lasso, &satisfied);
        match cobuchi_witness(game, &lasso, split, &satisfied) {
            None => {
                assert!(lasso.is_simple());
                assert!(
                    check_qual_outcome(game, &lasso)
                        .expect("kinds checked")
                        .is_ne_outcome
                );
                assert!(satisfied.is_superset(&game.satisfied_players(input)));
                let visit_positions = game.visit_positions(&lasso);
                let prefix: Vec<Vertex> = (0..=split).map(|pos| lasso.vertex_at(pos)).collect();
                let suffix = lasso.suffix_from(split);
                return Ok(SimplifiedOutcome {
                    lasso,
                    class_tag: ObjectiveKind::CoBuchi,
                    shape: OutcomeShape::PrefixSuffix { prefix, suffix },
                    finite_segments: 0,
                    visit_positions,
                    satisfied,
                });
            }
            Some(witness) => {
                let grown = game.satisfied_players(&witness);
                assert!(
                    grown.len() > satisfied.len(),
                    "witness must enlarge the satisfied set"
                );
                rho = witness;
            }
        }
    }
}

/// Least position after which no satisfied player's target occurs.
fn cobuchi_phase_split(game: &Game, lasso: &Lasso, satisfied: &BTreeSet<PlayerId>) -> usize {
    let positions = lasso.positions();
    let mut split = 0usize;
    for (pos, &v) in positions.iter().enumerate() {
        if satisfied.iter().any(|&p| game.arena.is_target(p, v)) {
            split = pos + 1;
        }
    }
    assert!(
        split <= lasso.prefix().len(),
        "satisfied targets cannot lie on the cycle"
    );
    split
}

/// Turns an equilibrium outcome into a simple lasso whose infinite part
/// stays within the target-free suffix.
fn cobuchi_reduce(game: &Game, rho: &Lasso) -> Lasso {
    let satisfied = game.satisfied_players(rho);
    let from = cobuchi_phase_split(game, rho, &satisfied);
    let suffix_lasso = first_repeat_cut(rho, from);
    let suffix_vertices = suffix_lasso.vertex_set();
    // earliest entry of the play into the suffix lasso
    let mut entry = 0usize;
    while !suffix_vertices.contains(&rho.vertex_at(entry)) {
        entry += 1;
    }
    let walk: Vec<Vertex> = (0..=entry).map(|pos| rho.vertex_at(pos)).collect();
    let path = remove_cycles(&walk);
    let at = suffix_lasso
        .positions()
        .iter()
        .position(|&v| v == rho.vertex_at(entry))
        .expect("entry vertex is on the suffix lasso");
    let tail = suffix_lasso.suffix_from(at);
    let mut prefix = path[..path.len() - 1].to_vec();
    prefix.extend_from_slice(tail.prefix());
    Lasso::new(prefix, tail.cycle().to_vec())
}

/// Searches for a play confined to the suffix vertex set that satisfies
/// strictly more players: a reachable cycle avoiding the targets of all
/// satisfied players and of one extra player. Deterministic choice:
/// smallest extra player, then smallest cycle vertex, shortest paths.
fn cobuchi_witness(
    game: &Game,
    lasso: &Lasso,
    split: usize,
    satisfied: &BTreeSet<PlayerId>,
) -> Option<Lasso> {
    let arena = &game.arena;
    let suffix = lasso.suffix_from(split);
    let region = suffix.vertex_set();
    let start = lasso.vertex_at(split);
    for extra in game.players() {
        if satisfied.contains(&extra) {
            continue;
        }
        let avoiding: BTreeSet<Vertex> = region
            .iter()
            .copied()
            .filter(|&v| !arena.is_target(extra, v))
            .collect();
        // vertices of `avoiding` lying on a cycle of its induced subgraph
        let on_cycle: Vec<Vertex> = avoiding
            .iter()
            .copied()
            .filter(|&v| {
                let mut reach: BTreeSet<Vertex> = BTreeSet::new();
                let mut queue: VecDeque<Vertex> = arena
                    .successors(v)
                    .iter()
                    .copied()
                    .filter(|s| avoiding.contains(s))
                    .collect();
                while let Some(u) = queue.pop_front() {
                    if u == v {
                        return true;
                    }
                    if reach.insert(u) {
                        for &s in arena.successors(u) {
                            if avoiding.contains(&s) && !reach.contains(&s) {
                                queue.push_back(s);
                            }
                        }
                    }
                }
                false
            })
            .collect();
        // reachable from the phase-switch vertex within the full suffix set
        let mut reach: BTreeSet<Vertex> = BTreeSet::new();
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::new();
        reach.insert(start);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &s in arena.successors(u) {
                if region.contains(&s) && reach.insert(s) {
                    parent.insert(s, u);
                    queue.push_back(s);
                }
            }
        }
        let target = on_cycle.iter().copied().find(|v| reach.contains(v));
        let Some(x) = target else { continue };
        let mut path = vec![x];
        let mut cur = x;
        while cur != start {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        let cycle = shortest_simple_cycle(arena, &avoiding, x).expect("x lies on a cycle");
        let mut prefix: Vec<Vertex> = (0..split).map(|pos| lasso.vertex_at(pos)).collect();
        prefix.extend_from_slice(&path[..path.len() - 1]);
        prefix.push(x);
        let witness = Lasso::new(
            {
                let mut p = prefix;
                p.pop();
                p
            },
            cycle[..cycle.len() - 1].to_vec(),
        );
        return Some(witness);
    }
    None
}
