//! Deterministic core of a two-stage soccer commentary system.
//!
//! Stage I resolves the anonymized `[PLAYER]`/`[TEAM]` slots of a commentary
//! line against the active lineups, using replayed match state, shot analysis
//! and frame-relevance guidance as prompt context for a pluggable reasoner.
//! Stage II enriches the aligned line with statistics served under a strict
//! as-of guard and with the match's own running context.

pub mod client;
pub mod config;
pub mod evalkit;
pub mod event;
pub mod grounding;
pub mod pipeline;
pub mod scene;
pub mod statbase;
pub mod time;
