//! Turn-based multiplayer games on finite graphs: zero-sum solving, Nash
//! equilibrium outcome checking, outcome simplification, finite-memory
//! equilibrium synthesis as Mealy machines, and independent best-response
//! verification.
//!
//! The crate is organised around a pipeline:
//!
//! 1. [`arena`]: the data model with weighted game graphs owned by players,
//!    lassos (finitely represented plays) and cost evaluation.
//! 2. [`zerosum`]: two-player coalition games with attractors, winning regions,
//!    shortest-path values, optimal and punishing strategies.
//! 3. [`characterize`]: decide whether a lasso is the outcome of some Nash
//!    equilibrium.
//! 4. [`simplify`]: rewrite an equilibrium outcome into a well-structured
//!    one with a simple segment decomposition.
//! 5. [`synth`]: build explicit Mealy-machine strategy profiles realising a
//!    simplified outcome as a Nash equilibrium, within proven memory bounds.
//! 6. [`verify`]: exact best-response computation against a fixed profile,
//!    equilibrium decision with deviation witnesses, memory-bound audits.
//!
//! The [`cli`] module exposes the same pipeline as a command-line tool; the
//! text formats it consumes live in [`format`].

pub mod arena;
pub mod characterize;
pub mod cli;
pub mod dot;

pub mod fixtures;
pub mod format;
pub mod lasso;
pub mod mealy;
pub mod simplify;
pub mod synth;
pub mod verify;

pub mod zerosum;

pub use arena::{
    Arena, ArenaError, Cost, CostProfile, CostValue, Game, ObjectiveKind, PlayerId, Vertex,
};
pub use lasso::{Decomposition, Lasso};
pub use mealy::{MealyMachine, StrategyProfile};
