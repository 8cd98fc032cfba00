//! Generalized spider solitaire as a planning domain.
//!
//! The crate has three layers:
//!
//! * [`engine`] — the rules: cards, tableaus, tasks, legal moves, mandatory
//!   run removal, canonical state keys, and the plain-text task/plan formats.
//! * [`solver`] — exact search: a breadth-first exhaustive oracle that
//!   returns shortest plans, a depth-capped DFS with a transposition table,
//!   and plan verification.
//! * [`sat2spider`] — a compiler from 3-CNF formulas to spider tasks such
//!   that the task is winnable exactly when the formula is satisfiable,
//!   together with layout validation, witness-plan extraction, and
//!   certificate generation.
//!
//! A game is parameterized by the suit length `n`: the full card multiset is
//! two copies of each (suit, value) pair for the four suits and values
//! `1..=n`, i.e. `8n` cards. Completed in-suit runs `n..1` at the top of a
//! slot are removed automatically; a task is won when every card has been
//! removed and the deck is empty.

pub mod engine;
pub mod sat2spider;
pub mod solver;
