//! Command-line front end.
//!
//! Subcommands: `solve`, `check`, `simplify`, `synth`, `verify`,
//! `existence`, `export`, `selftest`. Reports are machine-readable
//! `key value` lines by default; `--human` switches to a labelled
//! rendering. Exit codes: 0 on success, 1 when a checked property fails
//! (a rejected play, a refuted equilibrium, a failed selftest), 2 on input
//! errors.
//!
//! The product-state budget of the verifier defaults to
//! [`crate::verify::DEFAULT_PRODUCT_BUDGET`] and can be overridden with the
//! `NASHSYNTH_BUDGET` environment variable.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arena::{Cost, CostValue, Game, ObjectiveKind, PlayerId, Vertex};
use crate::characterize::{check_outcome, ViolationReason};
use crate::dot::{arena_to_dot, machine_to_dot};
use crate::fixtures;
use crate::format::{
    parse_game, parse_lasso, parse_machine, render_lasso, serialize_game, serialize_machine,
    GameFile,
};
use crate::lasso::Lasso;
use crate::mealy::{outcome_of_profile, MealyMachine, StrategyProfile};
use crate::simplify::{
    simplify_buchi, simplify_cobuchi, simplify_reach, simplify_safety, simplify_spath,
    OutcomeShape, SimplifiedOutcome,
};
use crate::synth::{
    construct_spath_ne_outcome, synth_buchi, synth_cobuchi, synth_reach, synth_safety, synth_spath,
};
use crate::verify::{best_response, check_memory_bounds, is_nash, DEFAULT_PRODUCT_BUDGET};
use crate::zerosum::{solve_qualitative, solve_spath, CoalitionView};

#[derive(Parser)]
#[command(
    name = "nashsynth",
    version,
    about = "Nash equilibria in turn-based games on graphs"
)]
struct Cli {
    /// Render reports for people instead of machines.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve each player's zero-sum coalition game.
    Solve {
        #[command(flatten)]
        game: GameArg,
        /// Restrict to one player's coalition game.
        #[arg(long)]
        player: Option<PlayerId>,
    },
    /// Decide whether a lasso is a Nash-equilibrium outcome.
    Check {
        #[command(flatten)]
        game: GameArg,
        #[command(flatten)]
        lasso: LassoArg,
    },
    /// Rewrite an equilibrium outcome into a well-structured one.
    Simplify {
        #[command(flatten)]
        game: GameArg,
        #[command(flatten)]
        lasso: LassoArg,
    },
    /// Synthesise a finite-memory equilibrium realising a lasso.
    Synth {
        #[command(flatten)]
        game: GameArg,
        #[command(flatten)]
        lasso: LassoArg,
        /// Directory to write one machine file per player into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a strategy profile with exact best responses.
    Verify {
        #[command(flatten)]
        game: GameArg,
        /// Initial vertex.
        #[arg(long)]
        from: String,
        /// One machine file per player, in player order.
        machines: Vec<PathBuf>,
    },
    /// Construct an equilibrium outcome of a shortest-path game.
    Existence {
        #[command(flatten)]
        game: GameArg,
        /// Initial vertex; defaults to the first declared vertex.
        #[arg(long)]
        from: Option<String>,
    },
    /// Emit DOT for the arena, or for a machine file.
    Export {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        machine: Option<PathBuf>,
    },
    /// Run all bundled games against their expected results.
    Selftest,
}

#[derive(Args)]
struct GameArg {
    /// Game file; bundled fixture names such as `fig1a.game` also work.
    game: String,
}

#[derive(Args)]
struct LassoArg {
    /// The play, written `prefix|cycle` with comma-separated vertex names.
    #[arg(long)]
    lasso: String,
}

/// A report is a list of key/value lines plus raw blocks (machine files,
/// DOT output).
#[derive(Default)]
struct Report {
    lines: Vec<(String, String)>,
    raw: String,
}

impl Report {
    fn put(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    fn raw(&mut self, text: &str) {
        self.raw.push_str(text);
    }

    fn render(&self, human: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            if human {
                let _ = writeln!(out, "{k}: {v}");
            } else {
                let _ = writeln!(out, "{k} {v}");
            }
        }
        out.push_str(&self.raw);
        out
    }
}

enum CmdError {
    Input(String),
    Violation,
}

impl<E: std::fmt::Display> From<E> for CmdError {
    fn from(e: E) -> CmdError {
        CmdError::Input(e.to_string())
    }
}

/// Runs the command line, returning the exit code and the full report; the
/// caller decides where to print it.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help and version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string());
        }
    };
    let mut report = Report::default();
    let code = match dispatch(&cli.command, &mut report) {
        Ok(()) => 0,
        Err(CmdError::Violation) => 1,
        Err(CmdError::Input(message)) => {
            report.put("error", message);
            2
        }
    };
    (code, report.render(cli.human))
}

/// Entry point for the binary.
pub fn main_with_args() -> i32 {
    let (code, report) = run_command(std::env::args_os());
    print!("{report}");
    code
}

fn budget() -> usize {
    std::env::var("NASHSYNTH_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_PRODUCT_BUDGET)
}

fn load_game(arg: &GameArg) -> Result<GameFile, CmdError> {
    let text = match fixtures::all().iter().find(|(name, _)| *name == arg.game) {
        Some((_, text)) => (*text).to_string(),
        None => std::fs::read_to_string(&arg.game)
            .map_err(|e| CmdError::Input(format!("cannot read `{}`: {e}", arg.game)))?,
    };
    Ok(parse_game(&text)?)
}

fn resolve_vertex(file: &GameFile, name: &str) -> Result<Vertex, CmdError> {
    file.vertex_by_name(name)
        .ok_or_else(|| CmdError::Input(format!("unknown vertex `{name}`")))
}

fn dispatch(command: &Command, report: &mut Report) -> Result<(), CmdError> {
    match command {
        Command::Solve { game, player } => cmd_solve(game, *player, report),
        Command::Check { game, lasso } => cmd_check(game, lasso, report),
        Command::Simplify { game, lasso } => cmd_simplify(game, lasso, report).map(|_| ()),
        Command::Synth { game, lasso, out } => cmd_synth(game, lasso, out.as_deref(), report),
        Command::Verify {
            game,
            from,
            machines,
        } => cmd_verify(game, from, machines, report),
        Command::Existence { game, from } => cmd_existence(game, from.as_deref(), report),
        Command::Export { game, machine } => cmd_export(game, machine.as_deref(), report),
        Command::Selftest => selftest(report),
    }
}

fn names(file: &GameFile, set: impl IntoIterator<Item = Vertex>) -> String {
    let parts: Vec<&str> = set.into_iter().map(|v| file.name(v)).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

fn moves(file: &GameFile, strat: &std::collections::BTreeMap<Vertex, Vertex>) -> String {
    if strat.is_empty() {
        return "-".to_string();
    }
    strat
        .iter()
        .map(|(&v, &t)| format!("{}->{}", file.name(v), file.name(t)))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_solve(game: &GameArg, only: Option<PlayerId>, report: &mut Report) -> Result<(), CmdError> {
    let file = load_game(game)?;
    let g = &file.game;
    for p in g.players() {
        if only.is_some_and(|q| q != p) {
            continue;
        }
        let view = CoalitionView::new(&g.arena, p);
        let kind = g.objective(p);
        report.put(format!("solve.player.{p}.objective"), kind.name());
        match kind {
            ObjectiveKind::ShortestPath => {
                let weight = |a, b| g.player_weight(p, a, b);
                let values = crate::zerosum::spath_values(&view, g.arena.target_set(p), weight);
                let sol = if g.has_player_weights() {
                    None
                } else {
                    Some(solve_spath(&view, g.arena.target_set(p), |a, b| {
                        g.arena.weight(a, b)
                    })?)
                };
                for v in g.arena.vertices() {
                    report.put(
                        format!("solve.player.{p}.value.{}", file.name(v)),
                        values[v].to_string(),
                    );
                }
                if let Some(sol) = sol {
                    report.put(
                        format!("solve.player.{p}.optimal"),
                        moves(&file, &sol.optimal),
                    );
                    report.put(
                        format!("solve.player.{p}.punisher"),
                        moves(&file, &sol.punisher),
                    );
                }
            }
            kind => {
                let sol = solve_qualitative(&view, kind, g.arena.target_set(p))?;
                report.put(
                    format!("solve.player.{p}.win1"),
                    names(&file, sol.win1.iter().copied()),
                );
                report.put(
                    format!("solve.player.{p}.win2"),
                    names(&file, sol.win2.iter().copied()),
                );
                report.put(
                    format!("solve.player.{p}.strat1"),
                    moves(&file, &sol.strat1),
                );
                report.put(
                    format!("solve.player.{p}.strat2"),
                    moves(&file, &sol.strat2),
                );
            }
        }
    }
    Ok(())
}

fn violation_name(reason: ViolationReason) -> &'static str {
    match reason {
        ViolationReason::InWinningRegion => "in-winning-region",
        ViolationReason::ValueBeatsSuffixCost => "value-beats-suffix-cost",
    }
}

fn put_costs(report: &mut Report, prefix: &str, game: &Game, lasso: &Lasso) {
    for p in game.players() {
        report.put(
            format!("{prefix}.cost.{p}"),
            game.eval(lasso, p).to_string(),
        );
    }
}

fn cmd_check(game: &GameArg, lasso: &LassoArg, report: &mut Report) -> Result<(), CmdError> {
    let file = load_game(game)?;
    let lasso = parse_lasso(&lasso.lasso, &file)?;
    let result = check_outcome(&file.game, &lasso)?;
    report.put("check.lasso", render_lasso(&lasso, &file));
    report.put("check.is_ne_outcome", result.is_ne_outcome.to_string());
    put_costs(report, "check", &file.game, &lasso);
    for (i, v) in result.violations.iter().enumerate() {
        report.put(
            format!("check.violation.{}", i + 1),
            format!(
                "player={} position={} reason={}",
                v.player,
                v.position,
                violation_name(v.reason)
            ),
        );
    }
    if result.is_ne_outcome {
        Ok(())
    } else {
        Err(CmdError::Violation)
    }
}

fn simplify_for(game: &Game, lasso: &Lasso) -> Result<SimplifiedOutcome, CmdError> {
    let kind = game.uniform_kind().ok_or_else(|| {
        CmdError::Input("simplification needs a uniform objective kind".to_string())
    })?;
    let simplified = match kind {
        ObjectiveKind::Reach => simplify_reach(game, lasso),
        ObjectiveKind::Safe => simplify_safety(game, lasso),
        ObjectiveKind::Buchi => simplify_buchi(game, lasso),
        ObjectiveKind::CoBuchi => simplify_cobuchi(game, lasso),
        ObjectiveKind::ShortestPath => simplify_spath(game, lasso),
    };
    simplified.map_err(|e| match e {
        crate::simplify::SimplifyError::NotAnNEOutcome => CmdError::Violation,
        other => CmdError::Input(other.to_string()),
    })
}

fn put_simplified(report: &mut Report, file: &GameFile, simplified: &SimplifiedOutcome) {
    report.put("simplify.class", simplified.class_tag.name());
    report.put("simplify.lasso", render_lasso(&simplified.lasso, file));
    report.put("simplify.segments", simplified.finite_segments.to_string());
    report.put(
        "simplify.satisfied",
        if simplified.satisfied.is_empty() {
            "-".to_string()
        } else {
            simplified
                .satisfied
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        },
    );
    match &simplified.shape {
        OutcomeShape::Decomposed(d) => {
            for (i, seg) in d.segments.iter().enumerate() {
                report.put(
                    format!("simplify.segment.{}", i + 1),
                    names(file, seg.iter().copied()),
                );
            }
            report.put("simplify.tail", render_lasso(&d.tail, file));
        }
        OutcomeShape::PeriodicChain { prefix, period } => {
            report.put("simplify.prefix", names(file, prefix.iter().copied()));
            for (i, seg) in period.iter().enumerate() {
                report.put(
                    format!("simplify.period.{}", i + 1),
                    names(file, seg.iter().copied()),
                );
            }
        }
        OutcomeShape::PrefixSuffix { prefix, suffix } => {
            report.put("simplify.prefix", names(file, prefix.iter().copied()));
            report.put("simplify.suffix", render_lasso(suffix, file));
        }
    }
}

fn cmd_simplify(
    game: &GameArg,
    lasso: &LassoArg,
    report: &mut Report,
) -> Result<(GameFile, SimplifiedOutcome), CmdError> {
    let file = load_game(game)?;
    let lasso = parse_lasso(&lasso.lasso, &file)?;
    let simplified = simplify_for(&file.game, &lasso)?;
    put_simplified(report, &file, &simplified);
    put_costs(report, "simplify", &file.game, &simplified.lasso);
    Ok((file, simplified))
}

fn synth_for(game: &Game, simplified: &SimplifiedOutcome) -> Result<StrategyProfile, CmdError> {
    let profile = match simplified.class_tag {
        ObjectiveKind::Reach => synth_reach(game, simplified),
        ObjectiveKind::Safe => synth_safety(game, simplified),
        ObjectiveKind::Buchi => synth_buchi(game, simplified),
        ObjectiveKind::CoBuchi => synth_cobuchi(game, simplified),
        ObjectiveKind::ShortestPath => synth_spath(game, simplified),
    }?;
    Ok(profile)
}

fn cmd_synth(
    game: &GameArg,
    lasso_arg: &LassoArg,
    out: Option<&std::path::Path>,
    report: &mut Report,
) -> Result<(), CmdError> {
    let file = load_game(game)?;
    let input = parse_lasso(&lasso_arg.lasso, &file)?;
    let g = &file.game;
    let simplified = simplify_for(g, &input)?;
    put_simplified(report, &file, &simplified);
    let profile = synth_for(g, &simplified)?;
    let outcome = outcome_of_profile(&g.arena, &profile, input.first());
    report.put("synth.outcome", render_lasso(&outcome, &file));
    put_costs(report, "synth", g, &outcome);
    // bound audit against the original play's parameters
    let k = g
        .visit_positions(&input)
        .into_iter()
        .filter(|&pos| pos > 0)
        .count();
    let satpl = g.satisfied_players(&input).len();
    let audit = check_memory_bounds(
        &profile,
        simplified.class_tag,
        g.arena.num_players(),
        g.arena.num_vertices(),
        k,
        satpl,
    );
    let mut all_pass = true;
    for a in &audit {
        report.put(
            format!("synth.memory.{}", a.player),
            format!(
                "states={} coarse={} refined={} pass={}",
                a.states, a.coarse_bound, a.refined_bound, a.pass
            ),
        );
        all_pass &= a.pass;
    }
    for p in g.players() {
        let text = serialize_machine(profile.machine(p), &file);
        if let Some(dir) = out {
            std::fs::create_dir_all(dir)
                .map_err(|e| CmdError::Input(format!("cannot create `{}`: {e}", dir.display())))?;
            let path = dir.join(format!("player{p}.machine"));
            std::fs::write(&path, &text)
                .map_err(|e| CmdError::Input(format!("cannot write `{}`: {e}", path.display())))?;
            report.put(format!("synth.machine.{p}"), path.display().to_string());
        } else {
            report.raw(&format!("-- machine player {p} --\n{text}"));
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(CmdError::Violation)
    }
}

fn put_nereport(report: &mut Report, file: &GameFile, ne: &crate::verify::NEReport) {
    report.put("verify.outcome", render_lasso(&ne.outcome, file));
    report.put("verify.is_nash", ne.is_nash.to_string());
    for a in &ne.players {
        report.put(
            format!("verify.player.{}.outcome", a.player),
            a.outcome_value.to_string(),
        );
        report.put(
            format!("verify.player.{}.best_response", a.player),
            a.best_response_value.to_string(),
        );
        report.put(
            format!("verify.player.{}.deviation", a.player),
            a.deviation
                .as_ref()
                .map_or("-".to_string(), |l| render_lasso(l, file)),
        );
    }
}

fn cmd_verify(
    game: &GameArg,
    from: &str,
    machine_paths: &[PathBuf],
    report: &mut Report,
) -> Result<(), CmdError> {
    let file = load_game(game)?;
    let v0 = resolve_vertex(&file, from)?;
    if machine_paths.len() != file.game.arena.num_players() {
        return Err(CmdError::Input(format!(
            "expected {} machine files, got {}",
            file.game.arena.num_players(),
            machine_paths.len()
        )));
    }
    let mut machines = Vec::new();
    for path in machine_paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Input(format!("cannot read `{}`: {e}", path.display())))?;
        machines.push(parse_machine(&text, &file)?);
    }
    let profile = StrategyProfile::new(machines)?;
    let ne = is_nash(&file.game, &profile, v0, budget())?;
    put_nereport(report, &file, &ne);
    if ne.is_nash {
        Ok(())
    } else {
        Err(CmdError::Violation)
    }
}

fn cmd_existence(game: &GameArg, from: Option<&str>, report: &mut Report) -> Result<(), CmdError> {
    let file = load_game(game)?;
    let v0 = match from {
        Some(name) => resolve_vertex(&file, name)?,
        None => 0,
    };
    let lasso = construct_spath_ne_outcome(&file.game, v0)?;
    report.put("existence.from", file.name(v0));
    report.put("existence.lasso", render_lasso(&lasso, &file));
    put_costs(report, "existence", &file.game, &lasso);
    let result = check_outcome(&file.game, &lasso)?;
    report.put("existence.is_ne_outcome", result.is_ne_outcome.to_string());
    Ok(())
}

fn cmd_export(
    game: &GameArg,
    machine: Option<&std::path::Path>,
    report: &mut Report,
) -> Result<(), CmdError> {
    let file = load_game(game)?;
    match machine {
        None => report.raw(&arena_to_dot(&file)),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::Input(format!("cannot read `{}`: {e}", path.display())))?;
            let machine = parse_machine(&text, &file)?;
            report.raw(&machine_to_dot(&machine, &file));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Selftest over the bundled games
// ---------------------------------------------------------------------------

struct Selftest<'a> {
    report: &'a mut Report,
    failures: usize,
}

impl Selftest<'_> {
    fn check(&mut self, name: &str, ok: bool) {
        self.report
            .put(format!("selftest.{name}"), if ok { "pass" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn cost(c: u64) -> CostValue {
    CostValue::Cost(Cost::Finite(c))
}

fn selftest(report: &mut Report) -> Result<(), CmdError> {
    let budget = budget();
    let mut t = Selftest {
        report,
        failures: 0,
    };

    // every bundled game parses and serialisation round-trips byte for byte
    for (name, text) in fixtures::all() {
        let file = parse_game(text)?;
        let canonical = serialize_game(&file);
        let reparsed = parse_game(&canonical)?;
        t.check(
            &format!("roundtrip.{name}"),
            reparsed == file && serialize_game(&reparsed) == canonical,
        );
    }

    // weighted two-player game: both equilibrium payoffs
    {
        let file = fixtures::fig1a();
        let g = &file.game;
        let a = parse_lasso("v0,t12,v1|v2", &file)?;
        let ra = check_outcome(g, &a)?;
        t.check(
            "fig1a.first",
            ra.is_ne_outcome && g.eval(&a, 1) == cost(3) && g.eval(&a, 2) == cost(3),
        );
        let b = parse_lasso("v0|v1,t1", &file)?;
        let rb = check_outcome(g, &b)?;
        t.check(
            "fig1a.second",
            rb.is_ne_outcome
                && g.eval(&b, 1) == cost(2)
                && g.eval(&b, 2) == CostValue::Cost(Cost::Infinite),
        );
        let existence = construct_spath_ne_outcome(g, 0)?;
        t.check(
            "fig1a.existence",
            g.eval(&existence, 1) == cost(3) && g.eval(&existence, 2) == cost(3),
        );
    }

    // three-player pipeline: simplify, synthesise, audit, verify
    {
        let file = fixtures::fig4a();
        let g = &file.game;
        let input = parse_lasso("v0,v1,v3|t", &file)?;
        let simplified =
            simplify_for(g, &input).map_err(|_| CmdError::Input("fig4a pipeline".into()))?;
        let profile = synth_for(g, &simplified)?;
        let audit = check_memory_bounds(&profile, ObjectiveKind::ShortestPath, 3, 7, 1, 3);
        let ne = is_nash(g, &profile, 0, budget)?;
        t.check(
            "fig4a.pipeline",
            ne.is_nash
                && audit.iter().all(|a| a.pass && a.states <= 9)
                && ne.players.iter().all(|a| a.outcome_value == cost(5)),
        );
    }

    // four-player reachability pipeline with exactly four memory states
    {
        let file = fixtures::fig3a();
        let g = &file.game;
        let input = parse_lasso("v0,v1,v2,t1,v2,v1,v0|t2", &file)?;
        let simplified =
            simplify_for(g, &input).map_err(|_| CmdError::Input("fig3a pipeline".into()))?;
        let profile = synth_for(g, &simplified)?;
        let outcome = outcome_of_profile(&g.arena, &profile, 0);
        let visited: BTreeSet<Vertex> = outcome.vertex_set();
        let ne = is_nash(g, &profile, 0, budget)?;
        t.check(
            "fig3a.pipeline",
            ne.is_nash
                && g.players().all(|p| profile.machine(p).num_states() == 4)
                && visited.contains(&4)
                && visited.contains(&1),
        );
    }

    // ladder values: rung k has value k, the maximiser hub one more than
    // the top rung
    {
        let file = fixtures::fig2n5();
        let g = &file.game;
        let view = CoalitionView::new(&g.arena, 1);
        let values =
            crate::zerosum::spath_values(&view, g.arena.target_set(1), |a, b| g.arena.weight(a, b));
        let mut ok = values[7] == Cost::Finite(0) && values[1] == Cost::Finite(6);
        for k in 1..=5usize {
            ok &= values[1 + k] == Cost::Finite(k as u64);
        }
        t.check("fig2n5.values", ok);
    }

    // safety and the two-phase classes, end to end
    for (name, fixture, lasso_text) in [
        (
            "fig1b.pipeline",
            fixtures::fig1b(),
            "v0,v1,v2,t1,v2,v1,v0|t2",
        ),
        ("fig5c.pipeline", fixtures::fig5c(), "v0,v1|v3"),
        ("fig5a.pipeline", fixtures::fig5a(), "v0,v1,v2,v3|v4"),
        ("buchi1.pipeline", fixtures::buchi1(), "v0,v1|v2"),
        ("cobuchi1.pipeline", fixtures::cobuchi1(), "v0,v1|v2"),
        ("cobuchi2.pipeline", fixtures::cobuchi2(), "|v0,v1,v3"),
        (
            "buchip3.pipeline",
            fixtures::buchip3(),
            "v1,w1,v2,w2,v3,w3|v4",
        ),
    ] {
        let g = &fixture.game;
        let input = parse_lasso(lasso_text, &fixture)?;
        let accepted = check_outcome(g, &input)?.is_ne_outcome;
        let ok = accepted && {
            let simplified =
                simplify_for(g, &input).map_err(|_| CmdError::Input(format!("{name} simplify")))?;
            let profile = synth_for(g, &simplified)?;
            let kind = g.uniform_kind().expect("bundled games are uniform");
            let k = g
                .visit_positions(&input)
                .into_iter()
                .filter(|&pos| pos > 0)
                .count();
            let satpl = g.satisfied_players(&input).len();
            let audit = check_memory_bounds(
                &profile,
                kind,
                g.arena.num_players(),
                g.arena.num_vertices(),
                k,
                satpl,
            );
            let ne = is_nash(g, &profile, input.first(), budget)?;
            ne.is_nash && audit.iter().all(|a| a.pass)
        };
        t.check(name, ok);
    }

    // memory lower bound at ladder size one: no equilibrium gives the
    // second player a win while they play memoryless, and the two-state
    // machine is an equilibrium
    {
        let file = fixtures::buchi1();
        let g = &file.game;
        let arena = &g.arena;
        // both memoryless choices of player 2 at v0
        let mut ok = true;
        for target in [1usize, 3] {
            let m2 = MealyMachine::memoryless(arena, 2, |v| match v {
                0 => Some(target),
                _ => arena.successors(v).first().copied(),
            })?;
            // a player-1 machine that makes player 2 win, if possible
            let m1 = MealyMachine::memoryless(arena, 1, |v| if v == 1 { Some(2) } else { None })?;
            let profile = StrategyProfile::new(vec![m1, m2])?;
            let outcome = outcome_of_profile(arena, &profile, 0);
            let p2_wins = g.eval(&outcome, 2) == CostValue::Win;
            if p2_wins {
                // then player 1 must have a winning deviation
                let response = best_response(g, &profile, 1, 0, budget)?;
                ok &= response.value == CostValue::Win;
                ok &= !is_nash(g, &profile, 0, budget)?.is_nash;
            } else {
                // v0 -> v3 kills the target either way
                ok &= target == 3;
            }
        }
        t.check("buchi1.memoryless_p2_fails", ok);

        // the two-state machine: advance on reading v0, punish repeats
        let m2 = MealyMachine::new(
            arena,
            2,
            0,
            vec!["q1".into(), "q2".into()],
            vec![vec![1, 0, 0, 0], vec![1, 1, 1, 1]],
            vec![
                vec![Some(1), None, Some(2), Some(3)],
                vec![Some(3), None, Some(2), Some(3)],
            ],
        )?;
        let m1 = MealyMachine::memoryless(arena, 1, |v| if v == 1 { Some(2) } else { None })?;
        let profile = StrategyProfile::new(vec![m1, m2])?;
        let ne = is_nash(g, &profile, 0, budget)?;
        let outcome = outcome_of_profile(arena, &profile, 0);
        t.check(
            "buchi1.two_state_p2_wins",
            ne.is_nash && g.eval(&outcome, 2) == CostValue::Win,
        );
    }

    t.report.put(
        "selftest.result",
        if t.failures == 0 { "pass" } else { "FAIL" },
    );
    if t.failures == 0 {
        Ok(())
    } else {
        Err(CmdError::Violation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        run_command(std::iter::once("nashsynth").chain(args.iter().copied()))
    }

    #[test]
    fn check_accepts_bundled_equilibrium_outcome() {
        let (code, out) = run(&["check", "fig1a.game", "--lasso", "v0,t12,v1|v2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("check.is_ne_outcome true"));
        assert!(out.contains("check.cost.1 3"));
        assert!(out.contains("check.cost.2 3"));
    }

    #[test]
    fn check_rejects_with_exit_one() {
        let (code, out) = run(&["check", "fig1a.game", "--lasso", "v0|v1,v2"]);
        assert_eq!(code, 2, "{out}"); // v1,v2 is not a cycle: v2 has no edge back
        let (code, out) = run(&["check", "fig1a.game", "--lasso", "v0,v1|v2"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("check.is_ne_outcome false"));
        assert!(out.contains("reason=in-winning-region"));
    }

    #[test]
    fn unknown_subcommand_is_an_input_error() {
        let (code, _) = run(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn synth_emits_machines_and_audit() {
        let (code, out) = run(&["synth", "fig4a.game", "--lasso", "v0,v1,v3|t"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("synth.outcome v0,v1,v3|t"));
        assert!(out.contains("pass=true"));
        assert!(out.contains("-- machine player 3 --"));
        assert!(out.contains("state 0 (P1,1)"));
    }

    #[test]
    fn human_flag_changes_rendering() {
        let (_, plain) = run(&["check", "fig1a.game", "--lasso", "v0,t12,v1|v2"]);
        let (_, human) = run(&["check", "fig1a.game", "--lasso", "v0,t12,v1|v2", "--human"]);
        assert!(plain.contains("check.is_ne_outcome true"));
        assert!(human.contains("check.is_ne_outcome: true"));
    }

    #[test]
    fn existence_reports_equilibrium_outcome() {
        let (code, out) = run(&["existence", "fig1a.game", "--from", "v0"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("existence.is_ne_outcome true"));
        assert!(out.contains("existence.cost.1 3"));
    }

    #[test]
    fn export_emits_dot() {
        let (code, out) = run(&["export", "fig1a.game"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("digraph arena"));
    }

    #[test]
    fn selftest_passes_and_is_deterministic() {
        let (code_a, out_a) = run(&["selftest"]);
        let (code_b, out_b) = run(&["selftest"]);
        assert_eq!(code_a, 0, "{out_a}");
        assert_eq!(code_b, 0);
        assert_eq!(out_a, out_b);
        assert!(out_a.contains("selftest.result pass"));
    }
}
