use std::fmt;

use thiserror::Error;

use crate::engine::card::{Card, Suit};
use crate::engine::state::{Slot, State, Tableau, Task};

/// A single action: transfer a lifted run between slots, or deal one row
/// from the deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Transfer {
        from: usize,
        run_length: usize,
        to: usize,
    },
    Deal,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Transfer {
                from,
                run_length,
                to,
            } => write!(f, "t {from} {run_length} {to}"),
            Move::Deal => write!(f, "deal"),
        }
    }
}

/// A move sequence, played from a task's start state.
pub type Plan = Vec<Move>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("slot {slot} out of range for width {w}")]
    SlotOutOfRange { slot: usize, w: usize },
    #[error("transfer from slot {slot} to itself")]
    SameSlot { slot: usize },
    #[error("slot {slot} is empty")]
    EmptySlot { slot: usize },
    #[error("top {run_length} cards of slot {from} are not one in-suit descending run")]
    BadRun { from: usize, run_length: usize },
    #[error("cannot drop {bottom} onto {top} in slot {to}")]
    NonMatch { bottom: Card, top: Card, to: usize },
    #[error("cannot deal from an empty deck")]
    EmptyDeal,
}

/// Drop test: `card` may land on `dest` iff `dest` is empty or its top
/// card's value is exactly one higher. Suits are ignored on drop.
pub fn matches(card: Card, dest: &Slot) -> bool {
    match dest.top() {
        None => true,
        Some(top) => top.value == card.value + 1,
    }
}

/// Longest lift available from a slot: the largest `m` such that the top
/// `m` cards are one in-suit descending sequence. Zero for an empty slot.
pub(crate) fn max_liftable(slot: &Slot) -> usize {
    let cards = slot.cards();
    if cards.is_empty() {
        return 0;
    }
    let mut len = 1;
    let mut i = cards.len() - 1;
    while i > 0 {
        let below = cards[i - 1];
        let here = cards[i];
        if below.suit == here.suit && below.value == here.value + 1 {
            len += 1;
            i -= 1;
        } else {
            break;
        }
    }
    len
}

/// Every run length liftable from a slot, ascending. Lifts are contiguous:
/// if a run of length `m` lifts, so does every shorter prefix of it.
pub fn liftable_run_lengths(slot: &Slot) -> Vec<usize> {
    (1..=max_liftable(slot)).collect()
}

/// If the top `n` cards form the complete in-suit run `n, n-1, …, 1`,
/// returns its suit.
pub fn block_at_top(cards: &[Card], n: u16) -> Option<Suit> {
    let depth = n as usize;
    if depth == 0 || cards.len() < depth {
        return None;
    }
    let run = &cards[cards.len() - depth..];
    let suit = run[0].suit;
    for (i, card) in run.iter().enumerate() {
        if card.suit != suit || card.value != n - i as u16 {
            return None;
        }
    }
    Some(suit)
}

/// Removes every complete in-suit run exposed at a slot top until none
/// remains (a removal can expose another run in the same slot). Returns
/// the removals as `(slot, suit)` in the order performed: ascending slot,
/// innermost run last.
pub fn remove_complete_runs(tableau: &mut Tableau, n: u16) -> Vec<(usize, Suit)> {
    let mut removals = Vec::new();
    for idx in 0..tableau.width() {
        let slot = tableau.slot_mut(idx);
        while let Some(suit) = block_at_top(slot.cards(), n) {
            let keep = slot.len() - n as usize;
            slot.truncate(keep);
            removals.push((idx, suit));
        }
    }
    removals
}

/// Applies the removal fixpoint to `state`, appending the removed suits to
/// its removed-run record. Returns the removals performed.
pub fn auto_remove(state: &mut State) -> Vec<(usize, Suit)> {
    let n = state.n();
    let removals = remove_complete_runs(&mut state.tableau, n);
    state.removed.extend(removals.iter().map(|&(_, suit)| suit));
    removals
}

/// Everything needed to reverse one applied move.
#[derive(Debug, Clone)]
pub struct Undo {
    pub mv: Move,
    /// Number of cards dealt (zero for transfers).
    pub dealt: usize,
    /// Removals the move triggered, in the order performed.
    pub removals: Vec<(usize, Suit)>,
}

fn check_transfer(
    state: &State,
    from: usize,
    run_length: usize,
    to: usize,
) -> Result<(), MoveError> {
    let w = state.width();
    if from >= w {
        return Err(MoveError::SlotOutOfRange { slot: from, w });
    }
    if to >= w {
        return Err(MoveError::SlotOutOfRange { slot: to, w });
    }
    if from == to {
        return Err(MoveError::SameSlot { slot: from });
    }
    let source = state.tableau().slot(from);
    if source.is_empty() {
        return Err(MoveError::EmptySlot { slot: from });
    }
    if run_length == 0 || run_length > max_liftable(source) {
        return Err(MoveError::BadRun { from, run_length });
    }
    let bottom = source.cards()[source.len() - run_length];
    if let Some(top) = state.tableau().slot(to).top() {
        if top.value != bottom.value + 1 {
            return Err(MoveError::NonMatch { bottom, top, to });
        }
    }
    Ok(())
}

/// Validates and applies `mv` to `state`, then runs the removal fixpoint.
/// On success returns the record [`undo_in_place`] needs to reverse it;
/// on error the state is untouched.
pub fn apply_in_place(state: &mut State, mv: Move) -> Result<Undo, MoveError> {
    let dealt = match mv {
        Move::Transfer {
            from,
            run_length,
            to,
        } => {
            check_transfer(state, from, run_length, to)?;
            state.tableau.transfer(from, run_length, to);
            0
        }
        Move::Deal => {
            if state.deck.is_empty() {
                return Err(MoveError::EmptyDeal);
            }
            let count = state.width().min(state.deck.len());
            for i in 0..count {
                let card = state.deck[i];
                state.tableau.slot_mut(i).push(card);
            }
            state.deck.drain(..count);
            count
        }
    };
    let n = state.n();
    let removals = remove_complete_runs(&mut state.tableau, n);
    state.removed.extend(removals.iter().map(|&(_, suit)| suit));
    Ok(Undo {
        mv,
        dealt,
        removals,
    })
}

/// Pure variant of [`apply_in_place`]: returns the successor state.
pub fn apply(state: &State, mv: Move) -> Result<State, MoveError> {
    let mut next = state.clone();
    apply_in_place(&mut next, mv)?;
    Ok(next)
}

/// Reverses a move applied by [`apply_in_place`]. Must be called with the
/// state exactly as that call left it.
pub fn undo_in_place(state: &mut State, undo: &Undo) {
    let n = state.n();
    for &(slot, suit) in undo.removals.iter().rev() {
        for value in (1..=n).rev() {
            state.tableau.slot_mut(slot).push(Card::new(suit, value));
        }
        state.removed.pop();
    }
    match undo.mv {
        Move::Transfer {
            from,
            run_length,
            to,
        } => {
            state.tableau.transfer(to, run_length, from);
        }
        Move::Deal => {
            let mut returned = Vec::with_capacity(undo.dealt);
            for i in 0..undo.dealt {
                let card = state
                    .tableau
                    .slot_mut(i)
                    .pop()
                    .expect("undo of a deal found a shorter slot");
                returned.push(card);
            }
            state.deck.splice(0..0, returned);
        }
    }
}

/// Every legal move, in a fixed order: transfers by ascending source slot,
/// then run length, then destination slot; one deal last while cards
/// remain (dealing onto empty slots is allowed).
pub fn legal_moves(state: &State) -> Vec<Move> {
    let mut moves = Vec::new();
    let w = state.width();
    for from in 0..w {
        let source = state.tableau().slot(from);
        for run_length in 1..=max_liftable(source) {
            let bottom = source.cards()[source.len() - run_length];
            for to in 0..w {
                if to != from && matches(bottom, state.tableau().slot(to)) {
                    moves.push(Move::Transfer {
                        from,
                        run_length,
                        to,
                    });
                }
            }
        }
    }
    if !state.deck().is_empty() {
        moves.push(Move::Deal);
    }
    moves
}

/// True iff at least one legal move exists. Cheaper than materializing
/// [`legal_moves`]; used to tell a depth cutoff from a dead position.
pub fn has_any_move(state: &State) -> bool {
    if !state.deck().is_empty() {
        return true;
    }
    let slots = state.tableau().slots();
    let any_empty = slots.iter().any(Slot::is_empty);
    let any_filled = slots.iter().any(|s| !s.is_empty());
    if any_empty && any_filled {
        return true;
    }
    for (from, source) in slots.iter().enumerate() {
        for run_length in 1..=max_liftable(source) {
            let bottom = source.cards()[source.len() - run_length];
            for (to, dest) in slots.iter().enumerate() {
                if to == from {
                    continue;
                }
                if let Some(top) = dest.top() {
                    if top.value == bottom.value + 1 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// A plan rejected at move `index` (counted from zero).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index}: {source}")]
pub struct ReplayError {
    pub index: usize,
    pub source: MoveError,
}

/// Plays `plan` from the task's start state, failing on the first illegal
/// move. Returns the final state, won or not.
pub fn replay(task: &Task, plan: &[Move]) -> Result<State, ReplayError> {
    let mut state = task.initial_state();
    for (index, &mv) in plan.iter().enumerate() {
        apply_in_place(&mut state, mv).map_err(|source| ReplayError { index, source })?;
    }
    Ok(state)
}
