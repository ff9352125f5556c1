//! Text formats for games and Mealy machines.
//!
//! A game file is line based; `#` starts a comment. The grammar:
//!
//! ```text
//! game      := players-line line*
//! players   := "players" INT
//! line      := vertex | edge | objective | pweight
//! vertex    := "vertex" NAME INT                 owner in 1..=players
//! edge      := "edge" NAME NAME INT?             weight, default 0
//! objective := "objective" INT KIND NAME*        targets, possibly empty
//! pweight   := "pweight" INT NAME NAME INT       per-player weight override
//! KIND      := "reach" | "safe" | "buchi" | "cobuchi" | "spath"
//! ```
//!
//! Vertex declaration order defines dense ids. Serialisation is canonical:
//! vertices ascending by id, edges sorted by `(src, dst)`, zero weights
//! omitted; parsing the canonical form and serialising again is
//! byte-identical.
//!
//! A machine file describes one Mealy machine:
//!
//! ```text
//! machine := "player" INT state+ "initial" INT update* move*
//! state   := "state" INT NAME
//! update  := "update" INT NAME INT               total over states × vertices
//! move    := "move" INT NAME NAME                at owned vertices only
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::arena::{
    Arena, ArenaError, Game, GameError, ObjectiveKind, PlayerId, Vertex, WeightTable,
};
use crate::lasso::Lasso;
use crate::mealy::{MealyError, MealyMachine};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("invalid arena: {0}")]
    Arena(#[from] ArenaError),
    #[error("invalid game: {0}")]
    Game(#[from] GameError),
    #[error("invalid machine: {0}")]
    Machine(#[from] MealyError),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// A parsed game together with its symbolic vertex names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFile {
    pub game: Game,
    pub names: Vec<String>,
}

impl GameFile {
    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }
}

struct Tokens<'a> {
    line_no: usize,
    line: &'a str,
    toks: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Tokens<'a> {
    fn of(line_no: usize, line: &'a str) -> Tokens<'a> {
        let body = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut toks = Vec::new();
        let mut col = 0;
        for part in body.split_inclusive(char::is_whitespace) {
            let trimmed = part.trim_end_matches(char::is_whitespace);
            if !trimmed.is_empty() {
                toks.push((col + 1, trimmed));
            }
            col += part.chars().count();
        }
        Tokens {
            line_no,
            line,
            toks,
            next: 0,
        }
    }

    fn take(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        if self.next < self.toks.len() {
            let t = self.toks[self.next];
            self.next += 1;
            Ok(t)
        } else {
            Err(syntax(
                self.line_no,
                self.line.chars().count() + 1,
                format!("expected {what}"),
            ))
        }
    }

    fn take_usize(&mut self, what: &str) -> Result<usize, FormatError> {
        let (col, tok) = self.take(what)?;
        tok.parse::<usize>()
            .map_err(|_| syntax(self.line_no, col, format!("expected {what}, got `{tok}`")))
    }

    fn take_weight(&mut self) -> Result<Option<u64>, FormatError> {
        if self.next >= self.toks.len() {
            return Ok(None);
        }
        let (col, tok) = self.toks[self.next];
        self.next += 1;
        if tok.starts_with('-') {
            return Err(syntax(self.line_no, col, "negative weight"));
        }
        tok.parse::<u64>()
            .map(Some)
            .map_err(|_| syntax(self.line_no, col, format!("expected weight, got `{tok}`")))
    }

    fn expect_end(&self) -> Result<(), FormatError> {
        if self.next < self.toks.len() {
            let (col, tok) = self.toks[self.next];
            return Err(syntax(
                self.line_no,
                col,
                format!("unexpected token `{tok}`"),
            ));
        }
        Ok(())
    }

    fn rest(&mut self) -> Vec<(usize, &'a str)> {
        let rest = self.toks[self.next..].to_vec();
        self.next = self.toks.len();
        rest
    }
}

fn kind_of(tok: &str) -> Option<ObjectiveKind> {
    match tok {
        "reach" => Some(ObjectiveKind::Reach),
        "safe" => Some(ObjectiveKind::Safe),
        "buchi" => Some(ObjectiveKind::Buchi),
        "cobuchi" => Some(ObjectiveKind::CoBuchi),
        "spath" => Some(ObjectiveKind::ShortestPath),
        _ => None,
    }
}

/// Parses a game file. Validation errors of the underlying arena are
/// surfaced as-is.
pub fn parse_game(text: &str) -> Result<GameFile, FormatError> {
    let mut players: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut name_ids: BTreeMap<String, Vertex> = BTreeMap::new();
    let mut owners: Vec<PlayerId> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex, u64)> = Vec::new();
    let mut objectives: Vec<Option<ObjectiveKind>> = Vec::new();
    let mut targets: Vec<BTreeSet<Vertex>> = Vec::new();
    let mut pweights: Vec<(PlayerId, Vertex, Vertex, u64)> = Vec::new();

    let mut saw_any = false;
    for (idx, raw) in text.lines().enumerate() {
        let mut toks = Tokens::of(idx + 1, raw);
        if toks.toks.is_empty() {
            continue;
        }
        saw_any = true;
        let (kcol, keyword) = toks.take("keyword")?;
        match keyword {
            "players" => {
                if players.is_some() {
                    return Err(syntax(idx + 1, kcol, "duplicate players line"));
                }
                let n = toks.take_usize("player count")?;
                if n == 0 {
                    return Err(syntax(idx + 1, kcol, "player count must be positive"));
                }
                players = Some(n);
                objectives = vec![None; n];
                targets = vec![BTreeSet::new(); n];
                toks.expect_end()?;
            }
            "vertex" => {
                let n =
                    players.ok_or_else(|| syntax(idx + 1, kcol, "players line must come first"))?;
                let (ncol, name) = toks.take("vertex name")?;
                if name_ids.contains_key(name) {
                    return Err(syntax(idx + 1, ncol, format!("duplicate vertex `{name}`")));
                }
                let _ = n;
                let owner = toks.take_usize("owner")?;
                owners.push(owner); // range checked by arena validation
                name_ids.insert(name.to_string(), names.len());
                names.push(name.to_string());
                toks.expect_end()?;
            }
            "edge" => {
                let src = lookup(&mut toks, &name_ids)?;
                let dst = lookup(&mut toks, &name_ids)?;
                let w = toks.take_weight()?.unwrap_or(0);
                edges.push((src, dst, w));
                toks.expect_end()?;
            }
            "objective" => {
                let n =
                    players.ok_or_else(|| syntax(idx + 1, kcol, "players line must come first"))?;
                let (pcol, ptok) = toks.take("player index")?;
                let player: usize = ptok.parse().map_err(|_| {
                    syntax(
                        idx + 1,
                        pcol,
                        format!("expected player index, got `{ptok}`"),
                    )
                })?;
                if player == 0 || player > n {
                    return Err(syntax(
                        idx + 1,
                        pcol,
                        format!("player {player} out of range 1..={n}"),
                    ));
                }
                let (ocol, otok) = toks.take("objective kind")?;
                let kind = kind_of(otok)
                    .ok_or_else(|| syntax(idx + 1, ocol, format!("unknown objective `{otok}`")))?;
                if objectives[player - 1].is_some() {
                    return Err(syntax(
                        idx + 1,
                        pcol,
                        format!("duplicate objective for player {player}"),
                    ));
                }
                objectives[player - 1] = Some(kind);
                for (tcol, tname) in toks.rest() {
                    let v = *name_ids.get(tname).ok_or_else(|| {
                        syntax(idx + 1, tcol, format!("unknown vertex `{tname}`"))
                    })?;
                    targets[player - 1].insert(v);
                }
            }
            "pweight" => {
                let n =
                    players.ok_or_else(|| syntax(idx + 1, kcol, "players line must come first"))?;
                let player = toks.take_usize("player index")?;
                if player == 0 || player > n {
                    return Err(syntax(
                        idx + 1,
                        kcol,
                        format!("player {player} out of range 1..={n}"),
                    ));
                }
                let src = lookup(&mut toks, &name_ids)?;
                let dst = lookup(&mut toks, &name_ids)?;
                let (wcol, wtok) = toks.take("weight")?;
                if wtok.starts_with('-') {
                    return Err(syntax(idx + 1, wcol, "negative weight"));
                }
                let w: u64 = wtok
                    .parse()
                    .map_err(|_| syntax(idx + 1, wcol, format!("expected weight, got `{wtok}`")))?;
                pweights.push((player, src, dst, w));
                toks.expect_end()?;
            }
            other => return Err(syntax(idx + 1, kcol, format!("unknown keyword `{other}`"))),
        }
    }
    if !saw_any || players.is_none() {
        return Err(syntax(1, 1, "expected `players N`"));
    }
    let n = players.expect("checked above");
    let objectives: Vec<ObjectiveKind> = objectives
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| syntax(1, 1, format!("missing objective for player {}", i + 1)))
        })
        .collect::<Result<_, _>>()?;
    let arena = Arena::new(n, owners, edges, targets)?;
    let mut game = Game::new(arena, objectives)?;
    if !pweights.is_empty() {
        let base: WeightTable = game
            .arena
            .vertices()
            .map(|v| {
                game.arena
                    .successors(v)
                    .iter()
                    .map(|&s| game.arena.weight(v, s))
                    .collect()
            })
            .collect();
        let mut tables: Vec<WeightTable> = vec![base; n];
        for (player, src, dst, w) in pweights {
            let k = game
                .arena
                .successors(src)
                .binary_search(&dst)
                .map_err(|_| FormatError::Arena(ArenaError::DanglingEdge(src, dst)))?;
            tables[player - 1][src][k] = w;
        }
        game = game.with_player_weights(tables)?;
    }
    Ok(GameFile { game, names })
}

fn lookup(toks: &mut Tokens, name_ids: &BTreeMap<String, Vertex>) -> Result<Vertex, FormatError> {
    let line = toks.line_no;
    let (col, name) = toks.take("vertex name")?;
    name_ids
        .get(name)
        .copied()
        .ok_or_else(|| syntax(line, col, format!("unknown vertex `{name}`")))
}

/// Canonical serialisation; see the module docs.
pub fn serialize_game(file: &GameFile) -> String {
    let game = &file.game;
    let arena = &game.arena;
    let mut out = String::new();
    let _ = writeln!(out, "players {}", arena.num_players());
    for v in arena.vertices() {
        let _ = writeln!(out, "vertex {} {}", file.names[v], arena.owner(v));
    }
    for v in arena.vertices() {
        for &s in arena.successors(v) {
            let w = arena.weight(v, s);
            if w == 0 {
                let _ = writeln!(out, "edge {} {}", file.names[v], file.names[s]);
            } else {
                let _ = writeln!(out, "edge {} {} {}", file.names[v], file.names[s], w);
            }
        }
    }
    for p in game.players() {
        let mut line = format!("objective {} {}", p, game.objective(p));
        for &t in arena.target_set(p) {
            line.push(' ');
            line.push_str(&file.names[t]);
        }
        let _ = writeln!(out, "{line}");
    }
    if let Some(tables) = game.player_weight_tables() {
        for (p, table) in tables.iter().enumerate() {
            for v in arena.vertices() {
                for (k, &s) in arena.successors(v).iter().enumerate() {
                    if table[v][k] != arena.weight(v, s) {
                        let _ = writeln!(
                            out,
                            "pweight {} {} {} {}",
                            p + 1,
                            file.names[v],
                            file.names[s],
                            table[v][k]
                        );
                    }
                }
            }
        }
    }
    out
}

/// Parses a lasso written as `prefix|cycle`, both comma-separated vertex
/// name lists; the prefix may be empty.
pub fn parse_lasso(text: &str, file: &GameFile) -> Result<Lasso, FormatError> {
    let (ptext, ctext) = text
        .split_once('|')
        .ok_or_else(|| syntax(1, 1, "lasso must be `prefix|cycle`"))?;
    let parse_list = |s: &str| -> Result<Vec<Vertex>, FormatError> {
        let mut out = Vec::new();
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            let v = file
                .vertex_by_name(name)
                .ok_or_else(|| syntax(1, 1, format!("unknown vertex `{name}`")))?;
            out.push(v);
        }
        Ok(out)
    };
    let prefix = parse_list(ptext)?;
    let cycle = parse_list(ctext)?;
    if cycle.is_empty() {
        return Err(syntax(1, 1, "lasso cycle must be nonempty"));
    }
    let lasso = Lasso::new(prefix, cycle);
    file.game.arena.validate_lasso(&lasso)?;
    Ok(lasso)
}

pub fn render_lasso(lasso: &Lasso, file: &GameFile) -> String {
    let join = |vs: &[Vertex]| {
        vs.iter()
            .map(|&v| file.names[v].clone())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{}|{}", join(lasso.prefix()), join(lasso.cycle()))
}

/// Parses a machine file against the vertex names of `file`.
pub fn parse_machine(text: &str, file: &GameFile) -> Result<MealyMachine, FormatError> {
    let arena = &file.game.arena;
    let mut player: Option<PlayerId> = None;
    let mut state_names: Vec<String> = Vec::new();
    let mut initial: Option<usize> = None;
    let mut updates: Vec<(usize, Vertex, usize)> = Vec::new();
    let mut moves: Vec<(usize, Vertex, Vertex)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut toks = Tokens::of(idx + 1, raw);
        if toks.toks.is_empty() {
            continue;
        }
        let (kcol, keyword) = toks.take("keyword")?;
        match keyword {
            "player" => {
                player = Some(toks.take_usize("player index")?);
                toks.expect_end()?;
            }
            "state" => {
                let id = toks.take_usize("state id")?;
                let (_, name) = toks.take("state name")?;
                if id != state_names.len() {
                    return Err(syntax(
                        idx + 1,
                        kcol,
                        format!("state ids must be dense, expected {}", state_names.len()),
                    ));
                }
                state_names.push(name.to_string());
                toks.expect_end()?;
            }
            "initial" => {
                initial = Some(toks.take_usize("state id")?);
                toks.expect_end()?;
            }
            "update" => {
                let m = toks.take_usize("state id")?;
                let v = lookup_in(&mut toks, file)?;
                let m2 = toks.take_usize("state id")?;
                updates.push((m, v, m2));
                toks.expect_end()?;
            }
            "move" => {
                let m = toks.take_usize("state id")?;
                let v = lookup_in(&mut toks, file)?;
                let t = lookup_in(&mut toks, file)?;
                moves.push((m, v, t));
                toks.expect_end()?;
            }
            other => return Err(syntax(idx + 1, kcol, format!("unknown keyword `{other}`"))),
        }
    }
    let player = player.ok_or_else(|| syntax(1, 1, "expected `player N`"))?;
    let initial = initial.ok_or_else(|| syntax(1, 1, "expected `initial N`"))?;
    let num_states = state_names.len();
    let mut update = vec![vec![usize::MAX; arena.num_vertices()]; num_states];
    for (m, v, m2) in updates {
        if m >= num_states {
            return Err(FormatError::Machine(MealyError::BadInitialState(m)));
        }
        update[m][v] = m2;
    }
    for (m, row) in update.iter().enumerate() {
        for (v, &m2) in row.iter().enumerate() {
            if m2 == usize::MAX {
                return Err(FormatError::Machine(MealyError::PartialUpdate {
                    state: m,
                    vertex: v,
                }));
            }
        }
    }
    let mut next_move = vec![vec![None; arena.num_vertices()]; num_states];
    for (m, v, t) in moves {
        if m >= num_states {
            return Err(FormatError::Machine(MealyError::BadInitialState(m)));
        }
        next_move[m][v] = Some(t);
    }
    Ok(MealyMachine::new(
        arena,
        player,
        initial,
        state_names,
        update,
        next_move,
    )?)
}

fn lookup_in(toks: &mut Tokens, file: &GameFile) -> Result<Vertex, FormatError> {
    let line = toks.line_no;
    let (col, name) = toks.take("vertex name")?;
    file.vertex_by_name(name)
        .ok_or_else(|| syntax(line, col, format!("unknown vertex `{name}`")))
}

pub fn serialize_machine(machine: &MealyMachine, file: &GameFile) -> String {
    let arena = &file.game.arena;
    let mut out = String::new();
    let _ = writeln!(out, "player {}", machine.owner_player());
    for m in 0..machine.num_states() {
        let _ = writeln!(out, "state {} {}", m, machine.state_name(m));
    }
    let _ = writeln!(out, "initial {}", machine.initial_state());
    for m in 0..machine.num_states() {
        for v in arena.vertices() {
            let _ = writeln!(
                out,
                "update {} {} {}",
                m,
                file.names[v],
                machine.update(m, v)
            );
        }
    }
    for m in 0..machine.num_states() {
        for v in arena.vertices() {
            if let Some(t) = machine.next_move(m, v) {
                let _ = writeln!(out, "move {} {} {}", m, file.names[v], file.names[t]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_file_is_a_syntax_error_at_origin() {
        let err = parse_game("").unwrap_err();
        assert_eq!(err, syntax(1, 1, "expected `players N`"));
    }

    #[test]
    fn owner_out_of_range_is_an_arena_error() {
        let text = "players 2\nvertex a 3\nedge a a\nobjective 1 reach\nobjective 2 reach\n";
        let err = parse_game(text).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Arena(ArenaError::OwnerOutOfRange { vertex: 0, .. })
        ));
    }

    #[test]
    fn negative_weight_rejected_at_parse() {
        let text = "players 1\nvertex a 1\nedge a a -1\nobjective 1 reach\n";
        let err = parse_game(text).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }));
    }

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        for (_, text) in fixtures::all() {
            let file = parse_game(text).unwrap();
            let canonical = serialize_game(&file);
            let reparsed = parse_game(&canonical).unwrap();
            assert_eq!(reparsed, file);
            assert_eq!(serialize_game(&reparsed), canonical);
        }
    }

    #[test]
    fn lasso_round_trip() {
        let file = fixtures::fig1a();
        let lasso = parse_lasso("v0,t12,v1|v2", &file).unwrap();
        assert_eq!(render_lasso(&lasso, &file), "v0,t12,v1|v2");
        assert!(parse_lasso("v0|t1", &file).is_err()); // not an edge
    }

    #[test]
    fn machine_round_trip() {
        let file = fixtures::fig1a();
        let machine = MealyMachine::memoryless(&file.game.arena, 2, |v| {
            file.game.arena.successors(v).first().copied()
        })
        .unwrap();
        let text = serialize_machine(&machine, &file);
        let parsed = parse_machine(&text, &file).unwrap();
        assert_eq!(parsed, machine);
    }

    #[test]
    fn per_player_weights_parse_and_serialize() {
        let text = "players 2\nvertex a 1\nvertex b 2\nedge a b 1\nedge b a 1\n\
                    objective 1 spath b\nobjective 2 spath a\npweight 2 a b 7\n";
        let file = parse_game(text).unwrap();
        assert!(file.game.has_player_weights());
        assert_eq!(file.game.player_weight(2, 0, 1), 7);
        assert_eq!(file.game.player_weight(1, 0, 1), 1);
        let canonical = serialize_game(&file);
        assert!(canonical.contains("pweight 2 a b 7"));
        assert_eq!(parse_game(&canonical).unwrap(), file);
    }
}
