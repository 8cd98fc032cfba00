use crate::engine::card::{Card, Suit};
use crate::engine::state::State;

/// A 128-bit canonical position digest.
///
/// Two states receive the same key exactly when they are the same position
/// for planning purposes. While cards remain in the deck, slot order is
/// significant (deals address slots by index); once the deck is empty the
/// slots are interchangeable, so the key becomes invariant under slot
/// permutation. The digest also folds in the suit length, width, deck
/// order, and removed-run counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(pub u128);

impl std::fmt::Display for StateKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:032x}", self.0)
    }
}

/// 128-bit FNV-1a offset basis; the empty card sequence hashes to this.
pub(crate) const POLY_OFFSET: u128 = 0x6c62272e07bb014262b821756295c58d;
/// 128-bit FNV prime.
pub(crate) const POLY_PRIME: u128 = 0x0000000001000000000000000000013B;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const SALT_SEED: u128 = 0x517c_c1b7_2722_0a95_0b4e_89a3_1d2f_66e7;

fn fmix64(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    x ^= x >> 33;
    x
}

/// Scrambles a 128-bit word so that every input bit influences both output
/// halves.
pub(crate) fn mix128(x: u128) -> u128 {
    let mut lo = x as u64;
    let mut hi = (x >> 64) as u64;
    lo = fmix64(lo.wrapping_add(GOLDEN).wrapping_add(hi));
    hi = fmix64(hi ^ lo);
    ((hi as u128) << 64) | lo as u128
}

/// A card as a small distinct integer.
pub(crate) fn card_code(card: Card) -> u128 {
    ((card.value as u128) << 2) | card.suit.index() as u128
}

/// One step of the order-sensitive card-sequence hash.
pub(crate) fn poly_push(h: u128, card: Card) -> u128 {
    (h ^ mix128(card_code(card))).wrapping_mul(POLY_PRIME)
}

/// Order-sensitive hash of a card sequence (a slot bottom-to-top, or the
/// deck front-to-back).
pub(crate) fn cards_poly(cards: &[Card]) -> u128 {
    cards.iter().copied().fold(POLY_OFFSET, poly_push)
}

pub(crate) fn slot_salt(index: usize) -> u128 {
    mix128(SALT_SEED ^ index as u128)
}

/// A slot's contribution to the commutative tableau accumulator. With the
/// deck empty the contribution ignores the slot index, making the sum
/// permutation-invariant; otherwise the index is salted in.
pub(crate) fn slot_term(slot_hash: u128, index: usize, deck_empty: bool) -> u128 {
    if deck_empty {
        mix128(slot_hash)
    } else {
        mix128(slot_hash ^ slot_salt(index))
    }
}

/// Removed-run counts per suit, packed one byte per suit.
pub(crate) fn removed_word(removed: &[Suit]) -> u128 {
    let mut counts = [0u8; 4];
    for suit in removed {
        counts[suit.index()] += 1;
    }
    u128::from_le_bytes([
        counts[0], counts[1], counts[2], counts[3],
        0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    ])
}

/// Folds the accumulators into the final digest.
pub(crate) fn finalize(
    n: u16,
    w: usize,
    slots_sum: u128,
    deck_poly: u128,
    removed: u128,
) -> StateKey {
    let mut k = mix128((n as u128) | ((w as u128) << 32));
    k = mix128(k ^ mix128(slots_sum));
    k = mix128(k ^ mix128(deck_poly));
    k = mix128(k ^ mix128(removed));
    StateKey(k)
}

/// Computes a state's canonical key from scratch.
pub fn canonical_key(state: &State) -> StateKey {
    let deck_empty = state.deck().is_empty();
    let mut slots_sum = 0u128;
    for (i, slot) in state.tableau().slots().iter().enumerate() {
        let h = cards_poly(slot.cards());
        slots_sum = slots_sum.wrapping_add(slot_term(h, i, deck_empty));
    }
    finalize(
        state.n(),
        state.width(),
        slots_sum,
        cards_poly(state.deck()),
        removed_word(state.removed()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::card::full_deck;
    use crate::engine::state::{Slot, Tableau};
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn c(suit: Suit, value: u16) -> Card {
        Card::new(suit, value)
    }

    fn state_of(n: u16, piles: Vec<Vec<Card>>, deck: Vec<Card>) -> State {
        State::new(n, Tableau::new(piles.into_iter().map(Slot::new).collect()), deck)
    }

    #[test]
    fn slot_order_is_ignored_once_the_deck_is_empty() {
        let a = vec![c(Suit::Spades, 2), c(Suit::Hearts, 1)];
        let b = vec![c(Suit::Clubs, 2)];
        let s1 = state_of(2, vec![a.clone(), b.clone()], Vec::new());
        let s2 = state_of(2, vec![b, a], Vec::new());
        assert_eq!(canonical_key(&s1), canonical_key(&s2));
    }

    #[test]
    fn slot_order_matters_while_cards_remain_in_the_deck() {
        let a = vec![c(Suit::Spades, 2), c(Suit::Hearts, 1)];
        let b = vec![c(Suit::Clubs, 2)];
        let deck = vec![c(Suit::Diamonds, 1)];
        let s1 = state_of(2, vec![a.clone(), b.clone()], deck.clone());
        let s2 = state_of(2, vec![b, a], deck);
        assert_ne!(canonical_key(&s1), canonical_key(&s2));
    }

    #[test]
    fn deck_order_and_slot_stacking_order_are_significant() {
        let s1 = state_of(
            2,
            vec![vec![c(Suit::Spades, 2), c(Suit::Hearts, 1)]],
            vec![c(Suit::Clubs, 1), c(Suit::Diamonds, 1)],
        );
        let s2 = state_of(
            2,
            vec![vec![c(Suit::Spades, 2), c(Suit::Hearts, 1)]],
            vec![c(Suit::Diamonds, 1), c(Suit::Clubs, 1)],
        );
        assert_ne!(canonical_key(&s1), canonical_key(&s2));
        let s3 = state_of(
            2,
            vec![vec![c(Suit::Hearts, 1), c(Suit::Spades, 2)]],
            vec![c(Suit::Clubs, 1), c(Suit::Diamonds, 1)],
        );
        assert_ne!(canonical_key(&s1), canonical_key(&s3));
    }

    /// The hash-consistency sweep: random small states must collide exactly
    /// when their normal forms (slot multiset once the deck is empty, slot
    /// sequence otherwise) coincide.
    #[test]
    fn random_states_collide_exactly_on_equal_normal_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut by_form: HashMap<Vec<Vec<Card>>, StateKey> = HashMap::new();
        let mut by_key: HashMap<StateKey, Vec<Vec<Card>>> = HashMap::new();
        for round in 0..4000 {
            let mut cards = full_deck(2);
            // Fisher-Yates with the raw stream keeps this reproducible.
            for i in (1..cards.len()).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                cards.swap(i, j);
            }
            let deck_len = if round % 2 == 0 { 0 } else { 1 + (rng.next_u64() % 4) as usize };
            let deck: Vec<Card> = cards.drain(..deck_len).collect();
            let mut piles = vec![Vec::new(); 3];
            for card in cards {
                piles[(rng.next_u64() % 3) as usize].push(card);
            }
            let state = state_of(2, piles.clone(), deck.clone());
            let key = canonical_key(&state);

            // Normal form: deck first, then slots (sorted if interchangeable).
            let mut form = vec![deck];
            let mut slots = piles;
            if form[0].is_empty() {
                slots.sort_by_key(|s| s.iter().map(|c| c.layout_key()).collect::<Vec<_>>());
            }
            form.extend(slots);

            if let Some(prev) = by_form.get(&form) {
                assert_eq!(*prev, key, "equal positions must share a key");
            } else {
                by_form.insert(form.clone(), key);
            }
            if let Some(prev) = by_key.get(&key) {
                assert_eq!(prev, &form, "distinct positions must not collide");
            } else {
                by_key.insert(key, form);
            }
        }
    }
}
