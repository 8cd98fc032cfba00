use std::collections::HashMap;

use crate::engine::key::{
    cards_poly, finalize, poly_push, removed_word, slot_term, StateKey, POLY_OFFSET,
};
use crate::engine::moves::max_liftable;
use crate::engine::{
    apply_in_place, block_at_top, has_any_move, matches, undo_in_place, Move, MoveError, Plan,
    State, Task, Undo,
};
use crate::solver::{default_depth, Cap, MoveOrdering, SearchConfig, Verdict};

/// A state plus incrementally maintained canonical-key accumulators, so
/// that the depth-first search can apply and undo moves in place while
/// keeping key computation proportional to the cards a move touched
/// rather than the whole tableau.
struct TrackedState {
    state: State,
    /// `prefixes[i][k]` is the sequence hash of the bottom `k` cards of
    /// slot `i`; entry 0 is the empty-sequence hash. Invariant: the vector
    /// holds exactly `slot.len() + 1` entries.
    prefixes: Vec<Vec<u128>>,
    /// Sum over slots of their (possibly index-salted) contribution.
    slots_sum: u128,
    deck_poly: u128,
    /// Whether `slots_sum` was computed in the empty-deck (permutation
    /// invariant) mode.
    deck_empty: bool,
}

impl TrackedState {
    fn new(state: State) -> TrackedState {
        let prefixes: Vec<Vec<u128>> = state
            .tableau()
            .slots()
            .iter()
            .map(|slot| {
                let mut p = Vec::with_capacity(slot.len() + 1);
                p.push(POLY_OFFSET);
                for &card in slot.cards() {
                    p.push(poly_push(*p.last().unwrap(), card));
                }
                p
            })
            .collect();
        let deck_empty = state.deck().is_empty();
        let mut slots_sum = 0u128;
        for (i, p) in prefixes.iter().enumerate() {
            slots_sum = slots_sum.wrapping_add(slot_term(*p.last().unwrap(), i, deck_empty));
        }
        let deck_poly = cards_poly(state.deck());
        TrackedState {
            state,
            prefixes,
            slots_sum,
            deck_poly,
            deck_empty,
        }
    }

    fn key(&self) -> StateKey {
        finalize(
            self.state.n(),
            self.state.width(),
            self.slots_sum,
            self.deck_poly,
            removed_word(self.state.removed()),
        )
    }

    fn apply(&mut self, mv: Move) -> Result<Undo, MoveError> {
        let undo = apply_in_place(&mut self.state, mv)?;
        self.resync(&undo);
        Ok(undo)
    }

    fn undo(&mut self, undo: &Undo) {
        undo_in_place(&mut self.state, undo);
        self.resync(undo);
    }

    /// Re-aligns the accumulators with the current state after the slots
    /// named by `undo` changed. Relies on the engine only ever changing a
    /// slot at its top: the cached prefix hashes and the live slot always
    /// agree on their common bottom portion, so each slot repair is a
    /// truncation or an extension of its prefix vector.
    fn resync(&mut self, undo: &Undo) {
        let mut affected: Vec<usize> = match undo.mv {
            Move::Transfer { from, to, .. } => vec![from, to],
            Move::Deal => (0..undo.dealt).collect(),
        };
        for &(slot, _) in &undo.removals {
            if !affected.contains(&slot) {
                affected.push(slot);
            }
        }
        let mode = self.deck_empty;
        for &i in &affected {
            let old_hash = *self.prefixes[i].last().unwrap();
            self.slots_sum = self.slots_sum.wrapping_sub(slot_term(old_hash, i, mode));
            let cards = self.state.tableau().slot(i).cards();
            let cached = self.prefixes[i].len() - 1;
            if cards.len() <= cached {
                self.prefixes[i].truncate(cards.len() + 1);
            } else {
                for &card in &cards[cached..] {
                    let h = poly_push(*self.prefixes[i].last().unwrap(), card);
                    self.prefixes[i].push(h);
                }
            }
            let new_hash = *self.prefixes[i].last().unwrap();
            self.slots_sum = self.slots_sum.wrapping_add(slot_term(new_hash, i, mode));
        }
        if matches!(undo.mv, Move::Deal) {
            self.deck_poly = cards_poly(self.state.deck());
        }
        let now_empty = self.state.deck().is_empty();
        if now_empty != self.deck_empty {
            // Mode flip: every slot's contribution changes shape.
            self.deck_empty = now_empty;
            self.slots_sum = 0;
            for (i, p) in self.prefixes.iter().enumerate() {
                self.slots_sum = self
                    .slots_sum
                    .wrapping_add(slot_term(*p.last().unwrap(), i, now_empty));
            }
        }
    }
}

/// Would this (already legal) transfer trigger at least one removal?
/// Checks both sides structurally: the lift can expose a finished run in
/// the source, and the drop can finish a run on the destination.
fn triggers_removal(state: &State, from: usize, run_length: usize, to: usize) -> bool {
    let n = state.n();
    let source = state.tableau().slot(from).cards();
    if block_at_top(&source[..source.len() - run_length], n).is_some() {
        return true;
    }
    let moved = &source[source.len() - run_length..];
    if moved[moved.len() - 1].value != 1 {
        return false;
    }
    // The moved run ends in 1; it finishes a run iff the destination tops
    // off the same suit up to n.
    let suit = moved[0].suit;
    let bottom = moved[0].value;
    let dest = state.tableau().slot(to).cards();
    let need = (n - bottom) as usize;
    if dest.len() < need {
        return false;
    }
    dest[dest.len() - need..]
        .iter()
        .enumerate()
        .all(|(i, card)| card.suit == suit && card.value == n - i as u16)
}

const STAGE_DONE: u8 = 4;

/// Lazy legal-move cursor. Yields each legal move exactly once; the order
/// depends on the configured [`MoveOrdering`]. The cursor assumes the
/// state is identical every time `next` is called — the depth-first search
/// guarantees that by undoing child moves before resuming a frame.
struct MoveGen {
    ordering: MoveOrdering,
    stage: u8,
    from: usize,
    run_length: usize,
    to: usize,
    /// Longest lift from the current `from`, cached while `from` is fixed.
    max_l: Option<usize>,
}

impl MoveGen {
    fn new(ordering: MoveOrdering) -> MoveGen {
        MoveGen {
            ordering,
            stage: 0,
            from: 0,
            run_length: 1,
            to: 0,
            max_l: None,
        }
    }

    fn rewind_transfers(&mut self) {
        self.from = 0;
        self.run_length = 1;
        self.to = 0;
        self.max_l = None;
    }

    /// The next transfer in enumeration order whose class matches the
    /// filter (None accepts all): 0 = triggers a removal, 1 = lands on a
    /// non-empty slot, 2 = lands on an empty slot.
    fn next_transfer(&mut self, state: &State, class_filter: Option<u8>) -> Option<Move> {
        let w = state.width();
        while self.from < w {
            let max_l = *self
                .max_l
                .get_or_insert_with(|| max_liftable(state.tableau().slot(self.from)));
            if self.run_length > max_l {
                self.from += 1;
                self.rewind_after_from();
                continue;
            }
            if self.to >= w {
                self.to = 0;
                self.run_length += 1;
                continue;
            }
            let to = self.to;
            self.to += 1;
            if to == self.from {
                continue;
            }
            let source = state.tableau().slot(self.from);
            let bottom = source.cards()[source.len() - self.run_length];
            if !matches(bottom, state.tableau().slot(to)) {
                continue;
            }
            if let Some(class) = class_filter {
                let actual = if triggers_removal(state, self.from, self.run_length, to) {
                    0
                } else if state.tableau().slot(to).is_empty() {
                    2
                } else {
                    1
                };
                if actual != class {
                    continue;
                }
            }
            return Some(Move::Transfer {
                from: self.from,
                run_length: self.run_length,
                to,
            });
        }
        None
    }

    fn rewind_after_from(&mut self) {
        self.run_length = 1;
        self.to = 0;
        self.max_l = None;
    }

    fn next(&mut self, state: &State) -> Option<Move> {
        match self.ordering {
            MoveOrdering::Enumeration => loop {
                match self.stage {
                    0 => {
                        if let Some(mv) = self.next_transfer(state, None) {
                            return Some(mv);
                        }
                        self.stage = 3;
                    }
                    3 => {
                        self.stage = STAGE_DONE;
                        if !state.deck().is_empty() {
                            return Some(Move::Deal);
                        }
                    }
                    _ => return None,
                }
            },
            MoveOrdering::RemovalFirst => loop {
                match self.stage {
                    0 | 1 | 2 => {
                        if let Some(mv) = self.next_transfer(state, Some(self.stage)) {
                            return Some(mv);
                        }
                        self.stage += 1;
                        self.rewind_transfers();
                    }
                    3 => {
                        self.stage = STAGE_DONE;
                        if !state.deck().is_empty() {
                            return Some(Move::Deal);
                        }
                    }
                    _ => return None,
                }
            },
        }
    }
}

/// Depth-first solver.
///
/// Walks the move tree in place, recording each visited state's canonical
/// key with the shallowest depth it was reached at; a state reached again
/// at the same or a greater depth is pruned, while a shallower revisit is
/// expanded again (it has more remaining budget). With the default depth
/// limit, exhausting the tree is an unsolvability proof even when depth
/// cutoffs occurred, because the limit is the universal plan-length bound;
/// with an explicit limit, cutoffs downgrade the verdict to unknown.
pub fn solve_dfs(task: &Task, config: &SearchConfig) -> Verdict {
    let depth_budget = config.max_depth.unwrap_or_else(|| default_depth(task));
    let explicit_depth = config.max_depth.is_some();

    let mut tracked = TrackedState::new(task.initial_state());
    let mut nodes: u64 = 1;
    if tracked.state.is_won() {
        return Verdict::Solvable {
            plan: Vec::new(),
            nodes,
        };
    }

    let inconclusive = |cut: bool, nodes: u64| {
        if !cut {
            Verdict::Unsolvable {
                exhausted: true,
                nodes,
            }
        } else if explicit_depth {
            Verdict::Unknown {
                limit: Cap::Depth,
                nodes,
            }
        } else {
            Verdict::Unsolvable {
                exhausted: false,
                nodes,
            }
        }
    };

    if depth_budget == 0 {
        return inconclusive(has_any_move(&tracked.state), nodes);
    }

    let mut table: HashMap<StateKey, u64> = HashMap::new();
    table.insert(tracked.key(), 0);
    let mut frames = vec![MoveGen::new(config.move_ordering)];
    let mut path: Vec<Undo> = Vec::new();
    let mut depth_cut = false;

    loop {
        let Some(frame) = frames.last_mut() else {
            return inconclusive(depth_cut, nodes);
        };
        let Some(mv) = frame.next(&tracked.state) else {
            frames.pop();
            if let Some(undo) = path.pop() {
                tracked.undo(&undo);
            }
            continue;
        };

        let child_depth = path.len() as u64 + 1;
        let undo = tracked.apply(mv).expect("generated moves are legal");
        nodes += 1;
        if tracked.state.is_won() {
            let mut plan: Plan = path.iter().map(|u| u.mv).collect();
            plan.push(mv);
            return Verdict::Solvable { plan, nodes };
        }
        if nodes > config.max_nodes {
            return Verdict::Unknown {
                limit: Cap::Nodes,
                nodes,
            };
        }

        let key = tracked.key();
        let mut expand = true;
        match table.get(&key) {
            Some(&seen) if seen <= child_depth => expand = false,
            Some(_) => {
                table.insert(key, child_depth);
            }
            None => {
                if table.len() < config.transposition_capacity {
                    table.insert(key, child_depth);
                }
            }
        }

        if expand && child_depth >= depth_budget {
            if has_any_move(&tracked.state) {
                depth_cut = true;
            }
            expand = false;
        }

        if expand {
            frames.push(MoveGen::new(config.move_ordering));
            path.push(undo);
        } else {
            tracked.undo(&undo);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{canonical_key, legal_moves, random_task, Card, Slot, Suit, Tableau};
    use crate::solver::{solve_bfs, verify_plan};
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn slot(cards: &[(Suit, u16)]) -> Slot {
        Slot::new(cards.iter().map(|&(s, v)| Card::new(s, v)).collect())
    }

    fn collect_moves(state: &State, ordering: MoveOrdering) -> Vec<Move> {
        let mut cursor = MoveGen::new(ordering);
        let mut out = Vec::new();
        while let Some(mv) = cursor.next(state) {
            out.push(mv);
        }
        out
    }

    #[test]
    fn enumeration_cursor_agrees_with_legal_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..200 {
            let task = random_task(2, 2 + (round % 3) as usize, (round % 7) as usize, round)
                .unwrap();
            let mut state = task.initial_state();
            // Take a few random steps to diversify the sampled states.
            for _ in 0..(rng.next_u64() % 4) {
                let moves = legal_moves(&state);
                if moves.is_empty() {
                    break;
                }
                let pick = moves[(rng.next_u64() % moves.len() as u64) as usize];
                state = crate::engine::apply(&state, pick).unwrap();
            }
            let reference = legal_moves(&state);
            assert_eq!(collect_moves(&state, MoveOrdering::Enumeration), reference);
            let mut reordered = collect_moves(&state, MoveOrdering::RemovalFirst);
            assert_eq!(reordered.len(), reference.len());
            reordered.sort_by_key(|mv| {
                reference
                    .iter()
                    .position(|r| r == mv)
                    .expect("reordered move must be legal")
            });
            assert_eq!(reordered, reference);
        }
    }

    #[test]
    fn removal_first_puts_the_completing_transfer_ahead() {
        let tableau = Tableau::new(vec![
            slot(&[(Suit::Clubs, 5)]),
            slot(&[(Suit::Hearts, 1)]),
            slot(&[(Suit::Hearts, 2)]),
            Slot::empty(),
        ]);
        let state = State::new(2, tableau, Vec::new());
        let completing = Move::Transfer {
            from: 1,
            run_length: 1,
            to: 2,
        };
        let enumerated = collect_moves(&state, MoveOrdering::Enumeration);
        assert_ne!(enumerated.first(), Some(&completing));
        let prioritized = collect_moves(&state, MoveOrdering::RemovalFirst);
        assert_eq!(prioritized.first(), Some(&completing));
    }

    #[test]
    fn tracked_state_key_matches_recomputation_through_random_walks() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACC0);
        for round in 0..60 {
            let task = random_task(2, 2 + (round % 2) as usize, (round % 9) as usize, round)
                .unwrap();
            let mut tracked = TrackedState::new(task.initial_state());
            let mut undos: Vec<Undo> = Vec::new();
            for _ in 0..40 {
                assert_eq!(tracked.key(), canonical_key(&tracked.state));
                let roll = rng.next_u64();
                if roll % 4 == 0 && !undos.is_empty() {
                    let undo = undos.pop().unwrap();
                    tracked.undo(&undo);
                    continue;
                }
                let moves = legal_moves(&tracked.state);
                if moves.is_empty() {
                    break;
                }
                let mv = moves[(roll % moves.len() as u64) as usize];
                undos.push(tracked.apply(mv).unwrap());
            }
            // Unwind fully; the accumulators must survive the whole trip.
            while let Some(undo) = undos.pop() {
                tracked.undo(&undo);
                assert_eq!(tracked.key(), canonical_key(&tracked.state));
            }
            assert_eq!(tracked.state, task.initial_state());
        }
    }

    #[test]
    fn finds_the_one_deal_win() {
        let task = Task::new(
            2,
            2,
            vec![Card::new(Suit::Spades, 1)],
            Tableau::new(vec![slot(&[(Suit::Spades, 2)]), Slot::empty()]),
        );
        let verdict = solve_dfs(&task, &SearchConfig::default());
        let plan = verdict.plan().expect("solvable").to_vec();
        verify_plan(&task, &plan).unwrap();
    }

    #[test]
    fn suit_one_tasks_solve_by_dealing_alone() {
        for seed in 0..5 {
            let task = random_task(1, 3, 6, seed).unwrap();
            let verdict = solve_dfs(&task, &SearchConfig::default());
            let plan = verdict.plan().expect("n=1 tasks always solve").to_vec();
            assert_eq!(plan, vec![Move::Deal, Move::Deal]);
            verify_plan(&task, &plan).unwrap();
        }
    }

    #[test]
    fn dead_start_is_unsolvable_and_exhausted() {
        let task = Task::new(
            4,
            2,
            Vec::new(),
            Tableau::new(vec![slot(&[(Suit::Spades, 2)]), slot(&[(Suit::Spades, 4)])]),
        );
        assert_eq!(
            solve_dfs(&task, &SearchConfig::default()),
            Verdict::Unsolvable {
                exhausted: true,
                nodes: 1
            }
        );
    }

    #[test]
    fn explicit_depth_cut_reports_unknown_but_default_budget_proves() {
        // Shortest win takes two moves: finish the club run by hand, then
        // deal H1 onto H2.
        let task = Task::new(
            2,
            2,
            vec![Card::new(Suit::Hearts, 1)],
            Tableau::new(vec![
                slot(&[(Suit::Hearts, 2), (Suit::Clubs, 2)]),
                slot(&[(Suit::Clubs, 1)]),
            ]),
        );
        let shallow = SearchConfig {
            max_depth: Some(1),
            ..SearchConfig::default()
        };
        assert!(matches!(
            solve_dfs(&task, &shallow),
            Verdict::Unknown {
                limit: Cap::Depth,
                ..
            }
        ));
        let verdict = solve_dfs(&task, &SearchConfig::default());
        let plan = verdict.plan().expect("two-move win").to_vec();
        verify_plan(&task, &plan).unwrap();
    }

    #[test]
    fn node_budget_stops_the_search() {
        // Sixteen cards cannot clear in two applies, so a budget of two
        // always trips on the third generated state.
        let task = random_task(2, 3, 4, 5).unwrap();
        let config = SearchConfig {
            max_nodes: 2,
            ..SearchConfig::default()
        };
        match solve_dfs(&task, &config) {
            Verdict::Unknown {
                limit: Cap::Nodes,
                nodes,
            } => assert_eq!(nodes, 3),
            other => panic!("expected a node-capped verdict, got {other:?}"),
        }
    }

    #[test]
    fn both_orderings_reach_the_same_verdict_kind() {
        for seed in 0..10 {
            let task = random_task(2, 3, 5, seed).unwrap();
            let removal_first = solve_dfs(&task, &SearchConfig::default());
            let plain = solve_dfs(
                &task,
                &SearchConfig {
                    move_ordering: MoveOrdering::Enumeration,
                    ..SearchConfig::default()
                },
            );
            let oracle = solve_bfs(&task, &SearchConfig::default());
            for verdict in [&removal_first, &plain] {
                match (&oracle, verdict) {
                    (Verdict::Solvable { .. }, Verdict::Solvable { plan, .. }) => {
                        verify_plan(&task, plan).unwrap()
                    }
                    (Verdict::Unsolvable { .. }, Verdict::Unsolvable { .. }) => {}
                    (a, b) => panic!("solver disagreement on seed {seed}: {a:?} vs {b:?}"),
                }
            }
        }
    }
}
