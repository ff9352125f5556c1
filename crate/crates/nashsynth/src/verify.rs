//! Independent equilibrium verification via exact best responses.
//!
//! To decide whether a profile is a Nash equilibrium, each player in turn
//! is freed while the remaining machines are fixed, the one-player product
//! of arena and fixed machines is built, and the free player's best
//! achievable value in the product is compared with their outcome value. A
//! strictly better value yields a deviation witness.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::arena::{Cost, CostValue, Game, ObjectiveKind, PlayerId, Vertex};
use crate::lasso::Lasso;
use crate::mealy::{outcome_of_profile, StateId, StrategyProfile};

/// Default cap on the number of product states explored per best-response
/// computation; override with the `NASHSYNTH_BUDGET` environment variable
/// in the command-line tool.
pub const DEFAULT_PRODUCT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("product exceeds the state budget of {0}")]
    ProductTooLarge(usize),
}

/// The one-player game of `free_player` against the fixed machines of the
/// other players: states are pairs of an arena vertex and the memory vector
/// of the fixed machines (the memory before reading the current vertex).
pub struct ProductGame {
    free_player: PlayerId,
    states: Vec<(Vertex, Vec<StateId>)>,
    succs: Vec<Vec<usize>>,
    is_target: Vec<bool>,
    weights: Vec<Vec<u64>>,
}

impl ProductGame {
    /// Builds the reachable product from `v0` under a state budget.
    pub fn build(
        game: &Game,
        profile: &StrategyProfile,
        free_player: PlayerId,
        v0: Vertex,
        budget: usize,
    ) -> Result<ProductGame, VerifyError> {
        let arena = &game.arena;
        let fixed: Vec<PlayerId> = game.players().filter(|&p| p != free_player).collect();
        let init: Vec<StateId> = fixed
            .iter()
            .map(|&p| profile.machine(p).initial_state())
            .collect();
        let mut index: HashMap<(Vertex, Vec<StateId>), usize> = HashMap::new();
        let mut states = vec![(v0, init.clone())];
        index.insert((v0, init), 0);
        let mut succs: Vec<Vec<usize>> = Vec::new();
        // states are discovered and processed in id order
        let mut id = 0usize;
        while id < states.len() {
            let (v, memories) = states[id].clone();
            let mut next_memories = memories.clone();
            for (j, &p) in fixed.iter().enumerate() {
                next_memories[j] = profile.machine(p).update(memories[j], v);
            }
            let moves: Vec<Vertex> = if arena.owner(v) == free_player {
                arena.successors(v).to_vec()
            } else {
                let p = arena.owner(v);
                let j = fixed.iter().position(|&q| q == p).expect("owner is fixed");
                vec![profile
                    .machine(p)
                    .next_move(memories[j], v)
                    .expect("next-move is total at owned vertices")]
            };
            let mut out = Vec::with_capacity(moves.len());
            for target in moves {
                let key = (target, next_memories.clone());
                let next_id = *index.entry(key.clone()).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
                if states.len() > budget {
                    return Err(VerifyError::ProductTooLarge(budget));
                }
                out.push(next_id);
            }
            succs.push(out);
            id += 1;
        }
        let is_target = states
            .iter()
            .map(|&(v, _)| arena.is_target(free_player, v))
            .collect();
        let weights = states
            .iter()
            .enumerate()
            .map(|(id, &(v, _))| {
                succs[id]
                    .iter()
                    .map(|&sid| game.player_weight(free_player, v, states[sid].0))
                    .collect()
            })
            .collect();
        Ok(ProductGame {
            free_player,
            states,
            succs,
            is_target,
            weights,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn free_player(&self) -> PlayerId {
        self.free_player
    }

    /// Projects a product-state path plus cycle onto an arena lasso.
    fn project(&self, prefix: &[usize], cycle: &[usize]) -> Lasso {
        Lasso::new(
            prefix.iter().map(|&id| self.states[id].0).collect(),
            cycle.iter().map(|&id| self.states[id].0).collect(),
        )
    }

    /// Deterministic default continuation from `from`, cut at the first
    /// repeated product state.
    fn default_lasso(&self, path_to: &[usize]) -> Lasso {
        let mut trace: Vec<usize> = path_to.to_vec();
        let mut seen: HashMap<usize, usize> =
            trace.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut cur = *trace.last().expect("nonempty path");
        loop {
            let next = self.succs[cur][0];
            if let Some(&at) = seen.get(&next) {
                return self.project(&trace[..at], &trace[at..]);
            }
            seen.insert(next, trace.len());
            trace.push(next);
            cur = next;
        }
    }

    /// Breadth-first tree from the initial state; `parent[id]` reconstructs
    /// the paths.
    fn bfs_parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.num_states()];
        let mut visited = vec![false; self.num_states()];
        visited[0] = true;
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(id) = queue.pop_front() {
            for &next in &self.succs[id] {
                if !visited[next] {
                    visited[next] = true;
                    parent[next] = Some(id);
                    queue.push_back(next);
                }
            }
        }
        parent
    }

    fn path_from_root(&self, parent: &[Option<usize>], to: usize) -> Vec<usize> {
        let mut path = vec![to];
        let mut cur = to;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Strongly connected components by Tarjan's algorithm, restricted to
    /// states satisfying `keep`. Returns the component index per state and
    /// whether the component contains a cycle.
    fn sccs(&self, keep: impl Fn(usize) -> bool) -> (Vec<Option<usize>>, Vec<bool>) {
        let n = self.num_states();
        let mut comp: Vec<Option<usize>> = vec![None; n];
        let mut cyclic: Vec<bool> = Vec::new();
        let mut order: Vec<Option<usize>> = vec![None; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut counter = 0usize;
        for root in 0..n {
            if !keep(root) || order[root].is_some() {
                continue;
            }
            // iterative Tarjan
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            order[root] = Some(counter);
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut idx)) = call.last_mut() {
                let nexts: Vec<usize> =
                    self.succs[v].iter().copied().filter(|&s| keep(s)).collect();
                if *idx < nexts.len() {
                    let s = nexts[*idx];
                    *idx += 1;
                    if order[s].is_none() {
                        order[s] = Some(counter);
                        low[s] = counter;
                        counter += 1;
                        stack.push(s);
                        on_stack[s] = true;
                        call.push((s, 0));
                    } else if on_stack[s] {
                        low[v] = low[v].min(order[s].expect("visited"));
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == order[v].expect("visited") {
                        let mut members = Vec::new();
                        loop {
                            let w = stack.pop().expect("scc member");
                            on_stack[w] = false;
                            comp[w] = Some(cyclic.len());
                            members.push(w);
                            if w == v {
                                break;
                            }
                        }
                        let has_cycle =
                            members.len() > 1 || self.succs[members[0]].contains(&members[0]);
                        cyclic.push(has_cycle);
                    }
                }
            }
        }
        (comp, cyclic)
    }
}

/// The free player's best achievable value against the fixed machines,
/// together with a play realising it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub value: CostValue,
    pub witness: Lasso,
    pub product_states: usize,
}

/// Computes the optimum the free player can secure from `v0` against the
/// fixed machines of everyone else. The product must stay within `budget`
/// states.
pub fn best_response(
    game: &Game,
    profile: &StrategyProfile,
    free_player: PlayerId,
    v0: Vertex,
    budget: usize,
) -> Result<BestResponse, VerifyError> {
    let product = ProductGame::build(game, profile, free_player, v0, budget)?;
    let n = product.num_states();
    let kind = game.objective(free_player);
    let parents = product.bfs_parents();
    let reach_witness = |target_of: &dyn Fn(usize) -> bool| -> Option<Vec<usize>> {
        (0..n)
            .filter(|&id| target_of(id) && (id == 0 || parents[id].is_some()))
            .map(|id| product.path_from_root(&parents, id))
            .min_by_key(|path| path.len())
    };
    let response = match kind {
        ObjectiveKind::Reach => match reach_witness(&|id| product.is_target[id]) {
            Some(path) => BestResponse {
                value: CostValue::Win,
                witness: product.default_lasso(&path),
                product_states: n,
            },
            None => BestResponse {
                value: CostValue::Lose,
                witness: product.default_lasso(&[0]),
                product_states: n,
            },
        },
        ObjectiveKind::ShortestPath => {
            // Dijkstra over the product; heap entries carry the settling
            // predecessor
            use std::cmp::Reverse;
            let mut dist: Vec<Option<u64>> = vec![None; n];
            let mut prev: Vec<Option<usize>> = vec![None; n];
            let mut heap = std::collections::BinaryHeap::new();
            heap.push(Reverse((0u64, 0usize, usize::MAX)));
            while let Some(Reverse((d, id, from))) = heap.pop() {
                if dist[id].is_some() {
                    continue;
                }
                dist[id] = Some(d);
                prev[id] = (from != usize::MAX).then_some(from);
                if product.is_target[id] {
                    continue;
                }
                for (k, &next) in product.succs[id].iter().enumerate() {
                    if dist[next].is_none() {
                        heap.push(Reverse((d + product.weights[id][k], next, id)));
                    }
                }
            }
            let best = (0..n)
                .filter(|&id| product.is_target[id])
                .filter_map(|id| dist[id].map(|d| (d, id)))
                .min();
            match best {
                Some((d, goal)) => {
                    let mut path = vec![goal];
                    let mut cur = goal;
                    while let Some(p) = prev[cur] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    BestResponse {
                        value: CostValue::Cost(Cost::Finite(d)),
                        witness: product.default_lasso(&path),
                        product_states: n,
                    }
                }
                None => BestResponse {
                    value: CostValue::Cost(Cost::Infinite),
                    witness: product.default_lasso(&[0]),
                    product_states: n,
                },
            }
        }
        ObjectiveKind::Safe => {
            // prune target states and states that cannot avoid them forever
            let mut alive: Vec<bool> = (0..n).map(|id| !product.is_target[id]).collect();
            loop {
                let mut changed = false;
                for id in 0..n {
                    if alive[id] && !product.succs[id].iter().any(|&s| alive[s]) {
                        alive[id] = false;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            if alive[0] {
                // greedy walk inside the safe region
                let mut trace = vec![0usize];
                let mut seen: HashMap<usize, usize> = HashMap::new();
                seen.insert(0, 0);
                let mut cur = 0usize;
                loop {
                    let next = *product.succs[cur]
                        .iter()
                        .find(|&&s| alive[s])
                        .expect("alive states keep a successor");
                    if let Some(&at) = seen.get(&next) {
                        let witness = product.project(&trace[..at], &trace[at..]);
                        break BestResponse {
                            value: CostValue::Win,
                            witness,
                            product_states: n,
                        };
                    }
                    seen.insert(next, trace.len());
                    trace.push(next);
                    cur = next;
                }
            } else {
                BestResponse {
                    value: CostValue::Lose,
                    witness: product.default_lasso(&[0]),
                    product_states: n,
                }
            }
        }
        ObjectiveKind::Buchi => {
            // a cycle through a target state, reachable from the initial state
            let (comp, cyclic) = product.sccs(|_| true);
            let goal = (0..n).find(|&id| {
                product.is_target[id]
                    && comp[id].map(|c| cyclic[c]).unwrap_or(false)
                    && (id == 0 || parents[id].is_some())
            });
            match goal {
                Some(goal) => {
                    let path = product.path_from_root(&parents, goal);
                    let cycle = cycle_within(&product, goal, |id| comp[id] == comp[goal]);
                    let mut prefix = path;
                    prefix.pop();
                    let witness = product.project(&prefix, &cycle);
                    BestResponse {
                        value: CostValue::Win,
                        witness,
                        product_states: n,
                    }
                }
                None => BestResponse {
                    value: CostValue::Lose,
                    witness: product.default_lasso(&[0]),
                    product_states: n,
                },
            }
        }
        ObjectiveKind::CoBuchi => {
            // a reachable cycle avoiding the target states
            let (comp, cyclic) = product.sccs(|id| !product.is_target[id]);
            let goal = (0..n).find(|&id| {
                comp[id].map(|c| cyclic[c]).unwrap_or(false) && (id == 0 || parents[id].is_some())
            });
            match goal {
                Some(goal) => {
                    let path = product.path_from_root(&parents, goal);
                    let cycle = cycle_within(&product, goal, |id| {
                        !product.is_target[id] && comp[id] == comp[goal]
                    });
                    let mut prefix = path;
                    prefix.pop();
                    let witness = product.project(&prefix, &cycle);
                    BestResponse {
                        value: CostValue::Win,
                        witness,
                        product_states: n,
                    }
                }
                None => BestResponse {
                    value: CostValue::Lose,
                    witness: product.default_lasso(&[0]),
                    product_states: n,
                },
            }
        }
    };
    Ok(response)
}

/// Shortest cycle from `at` back to itself through states satisfying
/// `keep`; `at` must lie on such a cycle.
fn cycle_within(product: &ProductGame, at: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in &product.succs[at] {
        if keep(s) && !parent.contains_key(&s) {
            parent.insert(s, at);
            queue.push_back(s);
        }
    }
    if product.succs[at].contains(&at) {
        return vec![at];
    }
    while let Some(id) = queue.pop_front() {
        if id == at {
            break;
        }
        for &s in &product.succs[id] {
            if keep(s) && !parent.contains_key(&s) {
                parent.insert(s, id);
                queue.push_back(s);
            }
        }
    }
    let mut cycle = Vec::new();
    let mut cur = at;
    loop {
        cur = parent[&cur];
        if cur == at {
            break;
        }
        cycle.push(cur);
    }
    cycle.push(at);
    cycle.reverse();
    cycle
}

/// Per-player verdict of an equilibrium check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerAssessment {
    pub player: PlayerId,
    pub outcome_value: CostValue,
    pub best_response_value: CostValue,
    /// A profitable deviation play, when one exists.
    pub deviation: Option<Lasso>,
}

/// Equilibrium decision: no player's best response beats their outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NEReport {
    pub is_nash: bool,
    pub outcome: Lasso,
    pub players: Vec<PlayerAssessment>,
}

/// Runs a best-response computation for every player and aggregates.
pub fn is_nash(
    game: &Game,
    profile: &StrategyProfile,
    v0: Vertex,
    budget: usize,
) -> Result<NEReport, VerifyError> {
    let outcome = outcome_of_profile(&game.arena, profile, v0);
    let mut players = Vec::new();
    for p in game.players() {
        let outcome_value = game.eval(&outcome, p);
        let response = best_response(game, profile, p, v0, budget)?;
        let improves = response.value.improves_on(outcome_value);
        players.push(PlayerAssessment {
            player: p,
            outcome_value,
            best_response_value: response.value,
            deviation: improves.then_some(response.witness),
        });
    }
    let is_nash = players.iter().all(|a| a.deviation.is_none());
    Ok(NEReport {
        is_nash,
        outcome,
        players,
    })
}

/// Memory bounds for one game class: the coarse arena-level bound and the
/// refined bound in terms of the original outcome's parameters `k` (number
/// of target-connecting segments) and `satpl` (number of satisfied
/// players).
pub fn memory_bounds(
    class: ObjectiveKind,
    num_players: usize,
    num_vertices: usize,
    k: usize,
    satpl: usize,
) -> (usize, usize) {
    let n = num_players;
    let nv = num_vertices;
    let losing = n.saturating_sub(satpl).max(1);
    match class {
        ObjectiveKind::Reach => (n * n, losing * k.max(1)),
        ObjectiveKind::ShortestPath => (n * n + 2 * n, n * (k + 2)),
        ObjectiveKind::Safe => (n * n + 2 * n, losing * (k + 2)),
        ObjectiveKind::Buchi => (nv + n * n + n, nv + losing * (satpl.max(1) + 1)),
        ObjectiveKind::CoBuchi => (nv + 2 * n, nv + 2 * losing),
    }
}

/// One line of a memory-bound audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryAudit {
    pub player: PlayerId,
    pub states: usize,
    pub coarse_bound: usize,
    pub refined_bound: usize,
    pub pass: bool,
}

/// Compares each machine's state count against the class bounds.
pub fn check_memory_bounds(
    profile: &StrategyProfile,
    class: ObjectiveKind,
    num_players: usize,
    num_vertices: usize,
    k: usize,
    satpl: usize,
) -> Vec<MemoryAudit> {
    let (coarse, refined) = memory_bounds(class, num_players, num_vertices, k, satpl);
    profile
        .machines()
        .iter()
        .map(|m| {
            let states = m.num_states();
            MemoryAudit {
                player: m.owner_player(),
                states,
                coarse_bound: coarse,
                refined_bound: refined,
                pass: states <= coarse && states <= refined,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mealy::MealyMachine;
    use crate::simplify::{simplify_reach, simplify_spath};
    use crate::synth::{synth_reach, synth_spath};

    const BUDGET: usize = DEFAULT_PRODUCT_BUDGET;

    #[test]
    fn synthesised_spath_profile_is_nash_with_tight_best_responses() {
        let game = fixtures::fig4a_game();
        let simplified = simplify_spath(&game, &Lasso::new(vec![0, 1, 3], vec![4])).unwrap();
        let profile = synth_spath(&game, &simplified).unwrap();
        let report = is_nash(&game, &profile, 0, BUDGET).unwrap();
        assert!(report.is_nash, "{:?}", report.players);
        for a in &report.players {
            assert_eq!(a.best_response_value, CostValue::Cost(Cost::Finite(5)));
            assert_eq!(a.outcome_value, CostValue::Cost(Cost::Finite(5)));
        }
    }

    #[test]
    fn synthesised_reach_profile_is_nash() {
        let game = fixtures::fig3a_game();
        let simplified =
            simplify_reach(&game, &Lasso::new(vec![0, 2, 3, 4, 3, 2, 0], vec![1])).unwrap();
        let profile = synth_reach(&game, &simplified).unwrap();
        let report = is_nash(&game, &profile, 0, BUDGET).unwrap();
        assert!(report.is_nash, "{:?}", report.players);
    }

    #[test]
    fn memoryless_punisher_leaks_a_deviation() {
        // all memoryless, and the punishing vertex v3 always goes to t3:
        // player 3 then wins by moving v1 -> v3
        let game = fixtures::fig1b_game();
        let arena = &game.arena;
        // ids: v0=0 t2=1 v1=2 v2=3 t1=4 v3=5 t3=6 t4=7
        let m1 = MealyMachine::memoryless(arena, 1, |v| match v {
            0 => Some(2),
            4 => Some(3),
            5 => Some(6),
            _ => arena.successors(v).first().copied(),
        })
        .unwrap();
        let m2 =
            MealyMachine::memoryless(arena, 2, |v| arena.successors(v).first().copied()).unwrap();
        let m3 = MealyMachine::memoryless(arena, 3, |v| {
            if v == 2 {
                Some(3)
            } else {
                arena.successors(v).first().copied()
            }
        })
        .unwrap();
        let m4 = MealyMachine::memoryless(arena, 4, |v| {
            if v == 3 {
                Some(4)
            } else {
                arena.successors(v).first().copied()
            }
        })
        .unwrap();
        let profile = StrategyProfile::new(vec![m1, m2, m3, m4]).unwrap();
        let response = best_response(&game, &profile, 3, 0, BUDGET).unwrap();
        assert_eq!(response.value, CostValue::Win);
        let report = is_nash(&game, &profile, 0, BUDGET).unwrap();
        assert!(!report.is_nash);
        let a3 = &report.players[2];
        assert!(a3.deviation.is_some());
    }

    #[test]
    fn single_player_self_loop_is_nash() {
        let arena =
            crate::arena::Arena::new(1, vec![1], vec![(0, 0, 0)], vec![[0].into_iter().collect()])
                .unwrap();
        let game = Game::new(arena.clone(), vec![ObjectiveKind::Reach]).unwrap();
        let m = MealyMachine::memoryless(&arena, 1, |_| Some(0)).unwrap();
        let profile = StrategyProfile::new(vec![m]).unwrap();
        let report = is_nash(&game, &profile, 0, BUDGET).unwrap();
        assert!(report.is_nash);
    }

    #[test]
    fn best_response_cost_zero_stays_zero() {
        // free player's target is the initial vertex: outcome and best
        // response are both 0
        let game = fixtures::fig1a_game();
        let simplified = simplify_spath(&game, &Lasso::new(vec![0, 1, 2], vec![3])).unwrap();
        let profile = synth_spath(&game, &simplified).unwrap();
        let response = best_response(&game, &profile, 1, 1, BUDGET).unwrap();
        assert_eq!(response.value, CostValue::Cost(Cost::Finite(0)));
    }

    #[test]
    fn witness_is_consistent_with_fixed_machines() {
        let game = fixtures::fig1b_game();
        let arena = &game.arena;
        let m1 = MealyMachine::memoryless(arena, 1, |v| match v {
            0 => Some(2),
            4 => Some(3),
            5 => Some(6),
            _ => arena.successors(v).first().copied(),
        })
        .unwrap();
        let m2 =
            MealyMachine::memoryless(arena, 2, |v| arena.successors(v).first().copied()).unwrap();
        let m3 = MealyMachine::memoryless(arena, 3, |v| {
            if v == 2 {
                Some(3)
            } else {
                arena.successors(v).first().copied()
            }
        })
        .unwrap();
        let m4 = MealyMachine::memoryless(arena, 4, |v| {
            if v == 3 {
                Some(4)
            } else {
                arena.successors(v).first().copied()
            }
        })
        .unwrap();
        let profile = StrategyProfile::new(vec![m1, m2, m3, m4]).unwrap();
        let response = best_response(&game, &profile, 3, 0, BUDGET).unwrap();
        // replay: at every vertex not owned by the free player, the move
        // matches the fixed machine
        let lasso = &response.witness;
        let mut memories: Vec<usize> = profile
            .machines()
            .iter()
            .map(|m| m.initial_state())
            .collect();
        for pos in 0..lasso.positions().len() + lasso.cycle().len() {
            let v = lasso.vertex_at(pos);
            let next = lasso.vertex_at(pos + 1);
            let owner = arena.owner(v);
            if owner != 3 {
                assert_eq!(
                    profile.machine(owner).next_move(memories[owner - 1], v),
                    Some(next)
                );
            }
            for (j, m) in profile.machines().iter().enumerate() {
                memories[j] = m.update(memories[j], v);
            }
        }
        // the witness achieves the reported value
        assert_eq!(game.eval(lasso, 3), response.value);
    }

    #[test]
    fn budget_is_enforced() {
        let game = fixtures::fig3a_game();
        let simplified =
            simplify_reach(&game, &Lasso::new(vec![0, 2, 3, 4, 3, 2, 0], vec![1])).unwrap();
        let profile = synth_reach(&game, &simplified).unwrap();
        let err = best_response(&game, &profile, 1, 0, 3).unwrap_err();
        assert_eq!(err, VerifyError::ProductTooLarge(3));
    }

    #[test]
    fn bound_tables() {
        assert_eq!(memory_bounds(ObjectiveKind::Reach, 4, 10, 2, 2), (16, 4));
        assert_eq!(
            memory_bounds(ObjectiveKind::ShortestPath, 3, 7, 1, 3),
            (15, 9)
        );
        assert_eq!(memory_bounds(ObjectiveKind::CoBuchi, 2, 5, 0, 1), (9, 7));
        // a one-state machine always passes
        let arena =
            crate::arena::Arena::new(1, vec![1], vec![(0, 0, 0)], vec![[0].into_iter().collect()])
                .unwrap();
        let m = MealyMachine::memoryless(&arena, 1, |_| Some(0)).unwrap();
        let profile = StrategyProfile::new(vec![m]).unwrap();
        let audit = check_memory_bounds(&profile, ObjectiveKind::Reach, 1, 1, 0, 0);
        assert!(audit[0].pass);
    }
}
