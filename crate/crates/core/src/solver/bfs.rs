use std::collections::{HashMap, VecDeque};

use crate::engine::{apply, canonical_key, legal_moves, Move, State, StateKey, Task};
use crate::solver::{Cap, SearchConfig, Verdict};

/// Breadth-first reference solver.
///
/// Explores the canonical state space level by level, so a solvable
/// verdict always carries a shortest plan, and exhausting the frontier is
/// an unconditional unsolvability proof. `config.max_nodes` is honored;
/// the depth limit and move ordering are not consulted (states are
/// expanded in enumeration order, which only picks among equally short
/// plans).
pub fn solve_bfs(task: &Task, config: &SearchConfig) -> Verdict {
    let root = task.initial_state();
    let mut nodes: u64 = 1;
    if root.is_won() {
        return Verdict::Solvable {
            plan: Vec::new(),
            nodes,
        };
    }

    let root_key = canonical_key(&root);
    // Each reached state remembers the edge that first produced it.
    let mut parents: HashMap<StateKey, Option<(StateKey, Move)>> = HashMap::new();
    parents.insert(root_key, None);
    let mut frontier: VecDeque<(StateKey, State)> = VecDeque::new();
    frontier.push_back((root_key, root));

    while let Some((key, state)) = frontier.pop_front() {
        for mv in legal_moves(&state) {
            let child = apply(&state, mv).expect("enumerated moves apply");
            nodes += 1;
            if nodes > config.max_nodes {
                return Verdict::Unknown {
                    limit: Cap::Nodes,
                    nodes,
                };
            }
            let child_key = canonical_key(&child);
            if parents.contains_key(&child_key) {
                continue;
            }
            parents.insert(child_key, Some((key, mv)));
            if child.is_won() {
                return Verdict::Solvable {
                    plan: unwind(&parents, key, mv),
                    nodes,
                };
            }
            frontier.push_back((child_key, child));
        }
    }

    Verdict::Unsolvable {
        exhausted: true,
        nodes,
    }
}

fn unwind(
    parents: &HashMap<StateKey, Option<(StateKey, Move)>>,
    mut at: StateKey,
    last: Move,
) -> Vec<Move> {
    let mut plan = vec![last];
    while let Some(Some((prev, mv))) = parents.get(&at) {
        plan.push(*mv);
        at = *prev;
    }
    plan.reverse();
    plan
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Card, Slot, Suit, Tableau};
    use crate::solver::verify_plan;

    fn slot(cards: &[(Suit, u16)]) -> Slot {
        Slot::new(cards.iter().map(|&(s, v)| Card::new(s, v)).collect())
    }

    #[test]
    fn finds_the_one_deal_win() {
        // Dealing drops S1 onto S2, completing the spade run.
        let task = Task::new(
            2,
            2,
            vec![Card::new(Suit::Spades, 1)],
            Tableau::new(vec![slot(&[(Suit::Spades, 2)]), Slot::empty()]),
        );
        let verdict = solve_bfs(&task, &SearchConfig::default());
        match &verdict {
            Verdict::Solvable { plan, .. } => {
                assert_eq!(plan, &vec![Move::Deal]);
                verify_plan(&task, plan).unwrap();
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn a_dead_start_is_proven_unsolvable_immediately() {
        let task = Task::new(
            4,
            2,
            Vec::new(),
            Tableau::new(vec![slot(&[(Suit::Spades, 2)]), slot(&[(Suit::Spades, 4)])]),
        );
        assert_eq!(
            solve_bfs(&task, &SearchConfig::default()),
            Verdict::Unsolvable {
                exhausted: true,
                nodes: 1
            }
        );
    }

    #[test]
    fn the_node_budget_stops_the_search() {
        let task = Task::new(
            2,
            2,
            vec![Card::new(Suit::Spades, 1)],
            Tableau::new(vec![slot(&[(Suit::Spades, 2)]), Slot::empty()]),
        );
        let config = SearchConfig {
            max_nodes: 1,
            ..SearchConfig::default()
        };
        assert!(matches!(
            solve_bfs(&task, &config),
            Verdict::Unknown {
                limit: Cap::Nodes,
                ..
            }
        ));
    }

    #[test]
    fn an_already_won_task_needs_no_moves() {
        let task = Task::new(1, 2, Vec::new(), Tableau::empty(2));
        assert_eq!(
            solve_bfs(&task, &SearchConfig::default()),
            Verdict::Solvable {
                plan: Vec::new(),
                nodes: 1
            }
        );
    }
}
