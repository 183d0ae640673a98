//! Conditional term rewriting with level-indexed semantics.
//!
//! The crate covers oriented conditional rewrite systems (CTRSs): their
//! syntax and syntactic properties, a bounded evaluator for the level
//! relations `→_n` and extended parallel steps `⇻_n`, conditional overlap
//! analysis, and a checker that decides whether a system falls into the
//! class of almost orthogonal (modulo infeasibility), properly oriented,
//! right-stable 3-CTRSs, all of which are level-confluent.

pub mod analysis;
pub mod corpus;
pub mod ctrs;
pub mod engine;
pub mod mctxt;
pub mod parse;
pub mod report;
pub mod term;
pub mod unify;

#[cfg(test)]
mod testing;

pub use analysis::{check_level_confluence, conditional_overlaps, diamond_fuzz, Disposition, Overlap, Verdict};
pub use ctrs::{Condition, Ctrs, PropertyReport, Rule};
pub use engine::{Bounded, Bounds, Engine, EngineError, EparStep, HoleKind};
pub use mctxt::Mctxt;
pub use parse::{parse, ParseError, SourceSpec};
pub use term::{Position, Substitution, Symbol, Term, Var};
