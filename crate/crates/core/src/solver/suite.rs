//! A deterministic batch of tiny tasks for cross-checking the two solvers
//! against each other.
//!
//! The batch is frozen by construction: one seeded stream drives every
//! random choice, so the suite is identical on every run and platform and
//! regression fixtures can refer to tasks by index.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{full_deck, shuffle, Slot, Tableau, Task};

/// Number of tasks in the suite.
pub const SUITE_SIZE: usize = 250;
/// Suit length shared by every task in the suite.
pub const SUITE_N: u16 = 2;
/// Seed of the single stream that generates the whole suite.
pub const SUITE_SEED: u64 = 0x0DD_BA11;

/// Builds the suite. Task `t` uses width 2 when `t` is even and 3 when
/// odd. Per task, the 16-card multiset is shuffled, between zero and
/// eight cards are set aside as the deck, and each remaining card lands
/// on a uniformly drawn slot.
pub fn micro_suite() -> Vec<Task> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE)
        .map(|t| {
            let w = if t % 2 == 0 { 2 } else { 3 };
            let mut cards = full_deck(SUITE_N);
            shuffle(&mut rng, &mut cards);
            let deck_size = (rng.next_u64() % 9) as usize;
            let rest = cards.split_off(deck_size);
            let deck = cards;
            let mut piles = vec![Vec::new(); w];
            for card in rest {
                piles[(rng.next_u64() % w as u64) as usize].push(card);
            }
            Task::new(
                SUITE_N,
                w,
                deck,
                Tableau::new(piles.into_iter().map(Slot::new).collect()),
            )
        })
        .collect()
}
