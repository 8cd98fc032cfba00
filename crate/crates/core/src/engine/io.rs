//! Plain-text task and plan files.
//!
//! Task files:
//!
//! ```text
//! spider 1
//! n 2
//! w 3
//! pile S2 H1
//! pile
//! pile C2
//! deck D1 D2
//! ```
//!
//! The header names the format and its version. Exactly `w` `pile` lines
//! follow (bottom card first; a bare `pile` is an empty slot), then one
//! mandatory `deck` line (`deck[0]` is dealt first; a bare `deck` means no
//! deals remain). Card tokens are a suit letter (S, H, D, C) followed by a
//! decimal value. Blank lines and lines starting with `#` are skipped.
//!
//! Plan files hold one move per line: `t <from> <run_length> <to>` or
//! `deal`, with the same comment rules.

use std::str::FromStr;

use thiserror::Error;

use crate::engine::card::{Card, Suit};
use crate::engine::moves::{Move, Plan};
use crate::engine::state::{Slot, Tableau, Task, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Why a task file was rejected: malformed text, or well-formed text whose
/// cards do not form the full two-copies-per-pair multiset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskFileError {
    #[error("{0}")]
    Syntax(#[from] ParseError),
    #[error("invalid task: {0}")]
    Invalid(ValidationReport),
}

/// Content lines with their 1-based line numbers; blanks and `#` comments
/// are dropped.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .collect()
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_num<T: FromStr>(
    line: usize,
    column: usize,
    token: &str,
    what: &str,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, column, format!("bad {what} '{token}'")))
}

fn parse_card_token(line: usize, column: usize, token: &str) -> Result<Card, ParseError> {
    let mut chars = token.chars();
    let letter = chars
        .next()
        .ok_or_else(|| ParseError::new(line, column, "empty card token"))?;
    let suit = Suit::from_letter(letter).ok_or_else(|| {
        ParseError::new(line, column, format!("unknown suit letter '{letter}'"))
    })?;
    let value: u16 = parse_num(line, column, chars.as_str(), "card value")?;
    if value == 0 {
        return Err(ParseError::new(line, column, "card value must be at least 1"));
    }
    Ok(Card::new(suit, value))
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    index: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            lines: significant_lines(text),
            index: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<(usize, &'a str)>), ParseError> {
        match self.lines.get(self.index) {
            Some(&(line, content)) => {
                self.index += 1;
                Ok((line, tokens(content)))
            }
            None => {
                let line = self.lines.last().map_or(1, |&(l, _)| l + 1);
                Err(ParseError::new(line, 1, format!("missing {what}")))
            }
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.lines.get(self.index) {
            None => Ok(()),
            Some(&(line, _)) => Err(ParseError::new(line, 1, "unexpected content after deck line")),
        }
    }
}

/// Parses a task file without checking the card multiset; the result may
/// fail [`Task::validate`].
pub fn parse_task_unchecked(text: &str) -> Result<Task, ParseError> {
    let mut cursor = Cursor::new(text);

    let (line, header) = cursor.next("header 'spider 1'")?;
    let words: Vec<&str> = header.iter().map(|&(_, t)| t).collect();
    if words != ["spider", "1"] {
        return Err(ParseError::new(line, 1, "expected header 'spider 1'"));
    }

    let (line, fields) = cursor.next("'n <value>' line")?;
    let n: u16 = match fields.as_slice() {
        [(_, "n"), (col, token)] => {
            let n = parse_num(line, *col, token, "suit length")?;
            if n == 0 {
                return Err(ParseError::new(line, *col, "suit length must be at least 1"));
            }
            n
        }
        _ => return Err(ParseError::new(line, 1, "expected 'n <value>'")),
    };

    let (line, fields) = cursor.next("'w <value>' line")?;
    let w: usize = match fields.as_slice() {
        [(_, "w"), (col, token)] => {
            let w = parse_num(line, *col, token, "width")?;
            if w == 0 {
                return Err(ParseError::new(line, *col, "width must be at least 1"));
            }
            w
        }
        _ => return Err(ParseError::new(line, 1, "expected 'w <value>'")),
    };

    let mut slots = Vec::with_capacity(w);
    for _ in 0..w {
        let (line, fields) = cursor.next("pile line")?;
        match fields.split_first() {
            Some(((_, "pile"), cards)) => {
                let mut pile = Vec::with_capacity(cards.len());
                for &(col, token) in cards {
                    pile.push(parse_card_token(line, col, token)?);
                }
                slots.push(Slot::new(pile));
            }
            _ => return Err(ParseError::new(line, 1, "expected a pile line")),
        }
    }

    let (line, fields) = cursor.next("deck line")?;
    let deck = match fields.split_first() {
        Some(((_, "deck"), cards)) => {
            let mut deck = Vec::with_capacity(cards.len());
            for &(col, token) in cards {
                deck.push(parse_card_token(line, col, token)?);
            }
            deck
        }
        _ => return Err(ParseError::new(line, 1, "expected a deck line")),
    };

    cursor.expect_end()?;
    Ok(Task::new(n, w, deck, Tableau::new(slots)))
}

/// Parses a task file and rejects tasks whose cards are not exactly the
/// full multiset for the declared suit length.
pub fn parse_task(text: &str) -> Result<Task, TaskFileError> {
    let task = parse_task_unchecked(text)?;
    let report = task.validate();
    if report.is_valid() {
        Ok(task)
    } else {
        Err(TaskFileError::Invalid(report))
    }
}

/// Renders a task in the exact byte form [`parse_task`] reads: single
/// spaces, no trailing whitespace, one trailing newline per line.
pub fn format_task(task: &Task) -> String {
    let mut out = String::new();
    out.push_str("spider 1\n");
    out.push_str(&format!("n {}\n", task.n));
    out.push_str(&format!("w {}\n", task.w));
    for slot in task.initial.slots() {
        out.push_str("pile");
        for card in slot.cards() {
            out.push_str(&format!(" {card}"));
        }
        out.push('\n');
    }
    out.push_str("deck");
    for card in &task.deck {
        out.push_str(&format!(" {card}"));
    }
    out.push('\n');
    out
}

/// Parses a plan file: `t <from> <run_length> <to>` and `deal` lines.
pub fn parse_plan(text: &str) -> Result<Plan, ParseError> {
    let mut plan = Vec::new();
    for (line, content) in significant_lines(text) {
        let fields = tokens(content);
        match fields.as_slice() {
            [(_, "deal")] => plan.push(Move::Deal),
            [(_, "t"), (c1, t1), (c2, t2), (c3, t3)] => {
                let from = parse_num(line, *c1, t1, "source slot")?;
                let run_length = parse_num(line, *c2, t2, "run length")?;
                if run_length == 0 {
                    return Err(ParseError::new(line, *c2, "run length must be at least 1"));
                }
                let to = parse_num(line, *c3, t3, "destination slot")?;
                plan.push(Move::Transfer {
                    from,
                    run_length,
                    to,
                });
            }
            [] => unreachable!("blank lines are filtered out"),
            [(col, _), ..] => {
                return Err(ParseError::new(
                    line,
                    *col,
                    "expected 't <from> <run_length> <to>' or 'deal'",
                ))
            }
        }
    }
    Ok(plan)
}

/// Renders a plan, one move per line.
pub fn format_plan(plan: &[Move]) -> String {
    let mut out = String::new();
    for mv in plan {
        out.push_str(&mv.to_string());
        out.push('\n');
    }
    out
}
