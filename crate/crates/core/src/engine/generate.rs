use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::card::{full_deck, Card};
use crate::engine::state::{Slot, Tableau, Task};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("suit length must be at least 1")]
    ZeroN,
    #[error("width must be at least 1")]
    ZeroWidth,
    #[error("deck size {deck_size} exceeds the {total} cards of an n={n} game")]
    DeckTooLarge {
        deck_size: usize,
        total: usize,
        n: u16,
    },
}

/// Fisher-Yates shuffle driven by the generator's raw 64-bit stream
/// (`j = next_u64() mod (i + 1)`). The modulo bias is negligible at deck
/// sizes, and the explicit recipe keeps shuffles reproducible outside this
/// crate.
pub fn shuffle<R: RngCore>(rng: &mut R, cards: &mut [Card]) {
    for i in (1..cards.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        cards.swap(i, j);
    }
}

/// A seeded random task: the full `8n`-card multiset is shuffled once, the
/// first `deck_size` cards become the deck (front dealt first), and the
/// rest land round-robin across the `w` slots (card `i` onto slot `i % w`).
/// The same arguments always produce the same task.
pub fn random_task(n: u16, w: usize, deck_size: usize, seed: u64) -> Result<Task, GenerateError> {
    if n == 0 {
        return Err(GenerateError::ZeroN);
    }
    if w == 0 {
        return Err(GenerateError::ZeroWidth);
    }
    let total = 8 * n as usize;
    if deck_size > total {
        return Err(GenerateError::DeckTooLarge {
            deck_size,
            total,
            n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deck = full_deck(n);
    shuffle(&mut rng, &mut deck);
    let rest = deck.split_off(deck_size);
    let mut piles = vec![Vec::new(); w];
    for (i, card) in rest.into_iter().enumerate() {
        piles[i % w].push(card);
    }
    Ok(Task::new(
        n,
        w,
        deck,
        Tableau::new(piles.into_iter().map(Slot::new).collect()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_reproduces_the_same_task() {
        let a = random_task(3, 4, 10, 99).unwrap();
        let b = random_task(3, 4, 10, 99).unwrap();
        assert_eq!(a, b);
        let c = random_task(3, 4, 10, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_tasks_use_the_exact_multiset() {
        for seed in 0..8 {
            let task = random_task(2, 3, 5, seed).unwrap();
            assert!(task.validate().is_valid());
            assert_eq!(task.deck.len(), 5);
        }
    }

    #[test]
    fn cards_spread_round_robin_across_slots() {
        // 24 cards, no deck, 5 slots: 24 = 5 * 4 + 4, so the first four
        // slots get five cards and the last gets four.
        let task = random_task(3, 5, 0, 7).unwrap();
        let sizes: Vec<usize> = task.initial.slots().iter().map(Slot::len).collect();
        assert_eq!(sizes, vec![5, 5, 5, 5, 4]);
    }

    #[test]
    fn impossible_requests_are_rejected() {
        assert_eq!(random_task(0, 1, 0, 0).unwrap_err(), GenerateError::ZeroN);
        assert_eq!(random_task(1, 0, 0, 0).unwrap_err(), GenerateError::ZeroWidth);
        assert_eq!(
            random_task(1, 1, 9, 0).unwrap_err(),
            GenerateError::DeckTooLarge {
                deck_size: 9,
                total: 8,
                n: 1
            }
        );
    }
}
