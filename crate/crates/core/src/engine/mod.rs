//! The rules of generalized spider solitaire: cards and decks, tableau
//! states, move legality and application, canonical position keys, the
//! plain-text task and plan formats, and seeded random task generation.

pub mod card;
pub mod generate;
pub mod io;
pub mod key;
pub mod moves;
pub mod state;

pub use card::{full_deck, Card, Suit};
pub use generate::{random_task, shuffle, GenerateError};
pub use io::{
    format_plan, format_task, parse_plan, parse_task, parse_task_unchecked, ParseError,
    TaskFileError,
};
pub use key::{canonical_key, StateKey};
pub use moves::{
    apply, apply_in_place, auto_remove, block_at_top, has_any_move, legal_moves,
    liftable_run_lengths, matches, remove_complete_runs, replay, undo_in_place, Move, MoveError,
    Plan, ReplayError, Undo,
};
pub use state::{validate_task, Slot, State, Tableau, Task, ValidationReport, Violation};
