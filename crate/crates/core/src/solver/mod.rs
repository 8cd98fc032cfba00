//! Exact solvers for spider tasks.
//!
//! Two independent searches answer the same question:
//!
//! * [`solve_bfs`] — breadth-first enumeration of the reachable canonical
//!   state space. It finds a shortest plan, and its unsolvable verdicts
//!   are unconditional. Memory grows with the explored space, so it is
//!   the reference oracle for small tasks.
//! * [`solve_dfs`] — depth-first search with undo-based in-place state
//!   mutation, incrementally maintained canonical keys, a depth-indexed
//!   transposition table, and a configurable move ordering. Memory is
//!   bounded by the table and the current path.
//!
//! Both solvers report how many states they generated in their `nodes`
//! count: the start state plus one per applied move, counting repeats.
//! The metric is comparable across the two solvers and bounds runtime.

mod bfs;
mod dfs;
pub mod suite;

use thiserror::Error;

use crate::engine::{replay, Move, Plan, ReplayError, Task};

pub use bfs::solve_bfs;
pub use dfs::solve_dfs;

/// Upper bound on the transfers a shortest winning plan can need for suit
/// length `n`: `64n² − 72n + 8`. Deals are not transfers; a winning plan
/// additionally deals exactly `ceil(deck / w)` times.
pub fn move_bound(n: u16) -> u64 {
    let n = n as u64;
    (64 * n * n + 8).saturating_sub(72 * n)
}

/// The depth limit used when [`SearchConfig::max_depth`] is `None`: the
/// universal transfer bound plus the forced number of deals. Any solvable
/// task has a winning plan no longer than this, so a depth-first search
/// that exhausts this budget without a win has proven unsolvability.
pub fn default_depth(task: &Task) -> u64 {
    let deals = (task.deck.len() as u64).div_ceil(task.w.max(1) as u64);
    move_bound(task.n) + deals
}

/// The order in which the depth-first search tries moves at each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveOrdering {
    /// Plain legality order: ascending source slot, then run length, then
    /// destination slot; the deal last.
    Enumeration,
    /// Transfers that complete and remove a run first, then transfers onto
    /// non-empty slots, then transfers onto empty slots, then the deal.
    #[default]
    RemovalFirst,
}

/// Resource limits and the move ordering for a search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Longest plan considered by the depth-first search. `None` uses
    /// [`default_depth`], which cannot exclude a winning plan; an explicit
    /// limit can, so hitting it then downgrades the verdict to unknown.
    /// The breadth-first solver ignores this: it visits states in depth
    /// order anyway.
    pub max_depth: Option<u64>,
    /// Budget of generated states; exceeding it aborts with an unknown
    /// verdict.
    pub max_nodes: u64,
    /// Entry budget for the depth-first transposition table. When full,
    /// new states are searched but no longer recorded.
    pub transposition_capacity: usize,
    pub move_ordering: MoveOrdering,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_depth: None,
            max_nodes: 10_000_000,
            transposition_capacity: 1 << 22,
            move_ordering: MoveOrdering::default(),
        }
    }
}

/// Which limit stopped an inconclusive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Depth,
    Nodes,
}

/// A solver's answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A winning plan was found.
    Solvable { plan: Plan, nodes: u64 },
    /// No winning plan exists. `exhausted` is true when every reachable
    /// state was visited; false when the proof instead rests on the
    /// universal plan-length bound (the search ran to the default depth
    /// limit, which no winning plan can exceed).
    Unsolvable { exhausted: bool, nodes: u64 },
    /// A configured limit stopped the search before an answer.
    Unknown { limit: Cap, nodes: u64 },
}

impl Verdict {
    pub fn nodes(&self) -> u64 {
        match self {
            Verdict::Solvable { nodes, .. }
            | Verdict::Unsolvable { nodes, .. }
            | Verdict::Unknown { nodes, .. } => *nodes,
        }
    }

    pub fn plan(&self) -> Option<&[Move]> {
        match self {
            Verdict::Solvable { plan, .. } => Some(plan),
            _ => None,
        }
    }

    /// One-line report: `SOLVABLE <plan-length> <nodes>`,
    /// `UNSOLVABLE <nodes>`, or `UNKNOWN <depth|nodes> <nodes>`.
    pub fn summary(&self) -> String {
        match self {
            Verdict::Solvable { plan, nodes } => format!("SOLVABLE {} {nodes}", plan.len()),
            Verdict::Unsolvable { nodes, .. } => format!("UNSOLVABLE {nodes}"),
            Verdict::Unknown { limit, nodes } => {
                let what = match limit {
                    Cap::Depth => "depth",
                    Cap::Nodes => "nodes",
                };
                format!("UNKNOWN {what} {nodes}")
            }
        }
    }
}

/// Why a claimed plan failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanVerifyError {
    #[error("{0}")]
    Illegal(#[from] ReplayError),
    #[error("plan ends short of a win: {tableau_cards} cards on the tableau, {deck_cards} in the deck")]
    NotWon {
        tableau_cards: usize,
        deck_cards: usize,
    },
}

/// Confirms that `plan` wins `task`: every move must be legal in sequence
/// and the final state won.
pub fn verify_plan(task: &Task, plan: &[Move]) -> Result<(), PlanVerifyError> {
    let state = replay(task, plan)?;
    if state.is_won() {
        Ok(())
    } else {
        Err(PlanVerifyError::NotWon {
            tableau_cards: state.tableau().slots().iter().map(|s| s.len()).sum(),
            deck_cards: state.deck().len(),
        })
    }
}
