use std::fmt;

/// The four suits, in the fixed order used for every tie-break in the crate:
/// spades, hearts, diamonds, clubs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suit {
    Spades,
    Hearts,
    Diamonds,
    Clubs,
}

impl Suit {
    pub const ALL: [Suit; 4] = [Suit::Spades, Suit::Hearts, Suit::Diamonds, Suit::Clubs];

    /// The letter used by the task and plan file formats.
    pub fn letter(self) -> char {
        match self {
            Suit::Spades => 'S',
            Suit::Hearts => 'H',
            Suit::Diamonds => 'D',
            Suit::Clubs => 'C',
        }
    }

    pub fn from_letter(c: char) -> Option<Suit> {
        match c {
            'S' => Some(Suit::Spades),
            'H' => Some(Suit::Hearts),
            'D' => Some(Suit::Diamonds),
            'C' => Some(Suit::Clubs),
            _ => None,
        }
    }

    /// Position in [`Suit::ALL`]; doubles as the tie-break rank.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One card. An n-deck game uses values `1..=n`, two indistinguishable
/// copies of every (suit, value) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Card {
    pub suit: Suit,
    pub value: u16,
}

impl Card {
    pub fn new(suit: Suit, value: u16) -> Card {
        Card { suit, value }
    }

    /// Sort key for "ascending by value, ties by suit order" layouts.
    pub fn layout_key(self) -> (u16, usize) {
        (self.value, self.suit.index())
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.suit.letter(), self.value)
    }
}

/// The full `8n`-card multiset for suit length `n`, in a fixed order:
/// values ascending, suits in [`Suit::ALL`] order, two copies each.
pub fn full_deck(n: u16) -> Vec<Card> {
    let mut cards = Vec::with_capacity(8 * n as usize);
    for value in 1..=n {
        for suit in Suit::ALL {
            cards.push(Card::new(suit, value));
            cards.push(Card::new(suit, value));
        }
    }
    cards
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suit_letters_round_trip() {
        for suit in Suit::ALL {
            assert_eq!(Suit::from_letter(suit.letter()), Some(suit));
        }
        assert_eq!(Suit::from_letter('X'), None);
    }

    #[test]
    fn card_displays_as_token() {
        assert_eq!(Card::new(Suit::Spades, 11).to_string(), "S11");
        assert_eq!(Card::new(Suit::Clubs, 1).to_string(), "C1");
    }

    #[test]
    fn full_deck_has_two_copies_of_each_pair() {
        let deck = full_deck(3);
        assert_eq!(deck.len(), 24);
        for value in 1..=3 {
            for suit in Suit::ALL {
                let copies = deck
                    .iter()
                    .filter(|c| c.suit == suit && c.value == value)
                    .count();
                assert_eq!(copies, 2);
            }
        }
    }
}
