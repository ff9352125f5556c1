//! Bundled example games, embedded at compile time. These are the inputs of
//! the CLI `selftest` command and double as shared test fixtures.

use std::collections::BTreeSet;

use crate::arena::{Arena, Game, ObjectiveKind};
use crate::format::{parse_game, GameFile};

pub const FIG1A: &str = include_str!("../games/fig1a.game");
pub const FIG1B: &str = include_str!("../games/fig1b.game");
pub const FIG2N5: &str = include_str!("../games/fig2n5.game");
pub const FIG3A: &str = include_str!("../games/fig3a.game");
pub const FIG4A: &str = include_str!("../games/fig4a.game");
pub const FIG5A: &str = include_str!("../games/fig5a.game");
pub const FIG5C: &str = include_str!("../games/fig5c.game");
pub const BUCHI1: &str = include_str!("../games/buchi1.game");
pub const COBUCHI1: &str = include_str!("../games/cobuchi1.game");
pub const COBUCHI2: &str = include_str!("../games/cobuchi2.game");
pub const BUCHIP3: &str = include_str!("../games/buchip3.game");

/// All bundled games, by file name.
pub fn all() -> Vec<(&'static str, &'static str)> {
    vec![
        ("fig1a.game", FIG1A),
        ("fig1b.game", FIG1B),
        ("fig2n5.game", FIG2N5),
        ("fig3a.game", FIG3A),
        ("fig4a.game", FIG4A),
        ("fig5a.game", FIG5A),
        ("fig5c.game", FIG5C),
        ("buchi1.game", BUCHI1),
        ("cobuchi1.game", COBUCHI1),
        ("cobuchi2.game", COBUCHI2),
        ("buchip3.game", BUCHIP3),
    ]
}

fn parsed(text: &str) -> GameFile {
    parse_game(text).expect("bundled game is well-formed")
}

pub fn fig1a() -> GameFile {
    parsed(FIG1A)
}

pub fn fig1a_game() -> Game {
    fig1a().game
}

pub fn fig1b() -> GameFile {
    parsed(FIG1B)
}

pub fn fig1b_game() -> Game {
    fig1b().game
}

pub fn fig3a() -> GameFile {
    parsed(FIG3A)
}

pub fn fig3a_game() -> Game {
    fig3a().game
}

pub fn fig4a() -> GameFile {
    parsed(FIG4A)
}

pub fn fig4a_game() -> Game {
    fig4a().game
}

pub fn fig5a() -> GameFile {
    parsed(FIG5A)
}

pub fn fig5c() -> GameFile {
    parsed(FIG5C)
}

pub fn buchi1() -> GameFile {
    parsed(BUCHI1)
}

pub fn buchi1_game() -> Game {
    buchi1().game
}

pub fn cobuchi1() -> GameFile {
    parsed(COBUCHI1)
}

pub fn cobuchi2() -> GameFile {
    parsed(COBUCHI2)
}

pub fn buchip3() -> GameFile {
    parsed(BUCHIP3)
}

pub fn fig2n5() -> GameFile {
    parsed(FIG2N5)
}

/// Ladder arena truncated at `n` rungs, as a two-player shortest-path game:
/// vertices `v0, vinf, v1..vn, t` with the maximiser owning `vinf`. The
/// value of rung `k` is exactly `k` and the value of `vinf` is `n + 1`.
pub fn fig2_truncated(n: usize) -> Game {
    assert!(n >= 1);
    // ids: v0 = 0, vinf = 1, v_k = 1 + k (k in 1..=n), t = n + 2
    let t = n + 2;
    let mut owners = vec![1; n + 3];
    owners[1] = 2;
    let mut edges = vec![(0, 0, 1), (0, 1, 1), (t, t, 1)];
    for k in 1..=n {
        let vk = 1 + k;
        edges.push((1, vk, 1));
        edges.push((vk, 1, 1));
        edges.push((vk, if k == 1 { t } else { vk - 1 }, 1));
    }
    let targets: Vec<BTreeSet<usize>> = vec![[t].into_iter().collect(), BTreeSet::new()];
    let arena = Arena::new(2, owners, edges, targets).expect("ladder is well-formed");
    Game::new(
        arena,
        vec![ObjectiveKind::ShortestPath, ObjectiveKind::ShortestPath],
    )
    .expect("two objectives")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_games_parse() {
        for (name, text) in all() {
            let file = parse_game(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(file.game.arena.num_vertices() > 0);
        }
    }

    #[test]
    fn truncated_ladder_matches_bundled_file() {
        let bundled = fig2n5();
        let built = fig2_truncated(5);
        assert_eq!(bundled.game.arena, built.arena);
    }
}
