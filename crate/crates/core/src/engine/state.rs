use std::fmt;

use crate::engine::card::{Card, Suit};
use crate::engine::moves::remove_complete_runs;

/// One tableau slot: a stack of cards, bottom first, top last.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Slot(Vec<Card>);

impl Slot {
    pub fn new(cards: Vec<Card>) -> Slot {
        Slot(cards)
    }

    pub fn empty() -> Slot {
        Slot(Vec::new())
    }

    pub fn cards(&self) -> &[Card] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<Card> {
        self.0.last().copied()
    }

    pub(crate) fn push(&mut self, card: Card) {
        self.0.push(card);
    }

    pub(crate) fn pop(&mut self) -> Option<Card> {
        self.0.pop()
    }

    /// Removes and returns the top `count` cards, preserving their order.
    pub(crate) fn split_off_top(&mut self, count: usize) -> Vec<Card> {
        let at = self.0.len() - count;
        self.0.split_off(at)
    }

    pub(crate) fn append(&mut self, cards: &mut Vec<Card>) {
        self.0.append(cards);
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }
}

/// A fixed row of slots. Slot indices are stable: emptied slots stay in
/// place and may be built on again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    slots: Vec<Slot>,
}

impl Tableau {
    pub fn new(slots: Vec<Slot>) -> Tableau {
        Tableau { slots }
    }

    pub fn empty(width: usize) -> Tableau {
        Tableau {
            slots: vec![Slot::empty(); width],
        }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, index: usize) -> &Slot {
        &self.slots[index]
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }

    pub fn is_cleared(&self) -> bool {
        self.slots.iter().all(Slot::is_empty)
    }

    pub(crate) fn slot_mut(&mut self, index: usize) -> &mut Slot {
        &mut self.slots[index]
    }

    /// Moves the top `count` cards from `from` onto `to`, preserving order.
    pub(crate) fn transfer(&mut self, from: usize, count: usize, to: usize) {
        let mut moved = self.slots[from].split_off_top(count);
        self.slots[to].append(&mut moved);
    }
}

/// A task: the suit length `n`, tableau width `w`, the initial layout, and
/// the deck still to be dealt. `deck[0]` is the next card dealt.
///
/// The deck height `d` of the four-tuple (n, w, d, T) is carried implicitly
/// as `deck.len()`; the deck is an explicit card sequence so that deals are
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub n: u16,
    pub w: usize,
    pub deck: Vec<Card>,
    pub initial: Tableau,
}

impl Task {
    pub fn new(n: u16, w: usize, deck: Vec<Card>, initial: Tableau) -> Task {
        Task {
            n,
            w,
            deck,
            initial,
        }
    }

    /// The start state: the initial tableau with the mandatory-removal
    /// fixpoint already applied (complete runs present at construction are
    /// removed before the first move).
    pub fn initial_state(&self) -> State {
        let mut state = State::new(self.n, self.initial.clone(), self.deck.clone());
        let removals = remove_complete_runs(&mut state.tableau, self.n);
        state
            .removed
            .extend(removals.into_iter().map(|(_, suit)| suit));
        state
    }

    pub fn validate(&self) -> ValidationReport {
        validate_task(self)
    }
}

/// A game position: the tableau, the remaining deck, and the multiset of
/// completed runs removed so far (one suit entry per removed run, in
/// removal order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    n: u16,
    pub(crate) tableau: Tableau,
    pub(crate) deck: Vec<Card>,
    pub(crate) removed: Vec<Suit>,
}

impl State {
    /// Builds a raw state without applying the removal fixpoint. Use
    /// [`Task::initial_state`] for game starts; this constructor exists so
    /// tests and tools can stage arbitrary positions.
    pub fn new(n: u16, tableau: Tableau, deck: Vec<Card>) -> State {
        State {
            n,
            tableau,
            deck,
            removed: Vec::new(),
        }
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn deck(&self) -> &[Card] {
        &self.deck
    }

    pub fn removed(&self) -> &[Suit] {
        &self.removed
    }

    pub fn width(&self) -> usize {
        self.tableau.width()
    }

    /// Won iff every slot is empty and no card remains to be dealt.
    pub fn is_won(&self) -> bool {
        self.deck.is_empty() && self.tableau.is_cleared()
    }
}

/// One validation failure found by [`validate_task`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A card value outside `1..=n`.
    ValueOutOfRange { card: Card, n: u16 },
    /// A (suit, value) pair whose copy count across tableau and deck is not
    /// exactly two.
    WrongCount { suit: Suit, value: u16, count: usize },
    /// The tableau does not have exactly `w` slots.
    SlotCountMismatch { slots: usize, w: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ValueOutOfRange { card, n } => {
                write!(f, "card {card} out of range 1..={n}")
            }
            Violation::WrongCount { suit, value, count } => {
                write!(f, "count={count} for {suit}{value} (expected 2)")
            }
            Violation::SlotCountMismatch { slots, w } => {
                write!(f, "{slots} slots for declared width {w}")
            }
        }
    }
}

/// The outcome of checking a task against the deck-composition rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that a task uses exactly the full `8n`-card multiset (two copies
/// of each (suit, value) pair, values `1..=n`) across tableau plus deck,
/// and that the tableau has exactly `w` slots.
pub fn validate_task(task: &Task) -> ValidationReport {
    let mut report = ValidationReport::default();
    if task.initial.width() != task.w {
        report.violations.push(Violation::SlotCountMismatch {
            slots: task.initial.width(),
            w: task.w,
        });
    }
    let mut counts = vec![[0usize; 4]; task.n as usize];
    let all_cards = task
        .initial
        .slots()
        .iter()
        .flat_map(|s| s.cards().iter())
        .chain(task.deck.iter());
    for &card in all_cards {
        if card.value < 1 || card.value > task.n {
            report
                .violations
                .push(Violation::ValueOutOfRange { card, n: task.n });
        } else {
            counts[card.value as usize - 1][card.suit.index()] += 1;
        }
    }
    for value in 1..=task.n {
        for suit in Suit::ALL {
            let count = counts[value as usize - 1][suit.index()];
            if count != 2 {
                report.violations.push(Violation::WrongCount { suit, value, count });
            }
        }
    }
    report
}
