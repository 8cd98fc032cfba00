//! Three-literal CNF formulas: the DIMACS subset the compiler accepts,
//! truth-table satisfiability checking, and seeded random formulas for
//! stress tests.

use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A possibly negated propositional variable. Variables are numbered from
/// one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: u32) -> Literal {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn negative(var: u32) -> Literal {
        Literal { var, negated: true }
    }

    /// Dense 1-based index: variable `i` maps to `2i − 1` when positive
    /// and `2i` when negated.
    pub fn index(self) -> usize {
        let base = 2 * self.var as usize;
        if self.negated {
            base
        } else {
            base - 1
        }
    }

    /// Inverse of [`Literal::index`].
    pub fn from_index(index: usize) -> Literal {
        let var = ((index + 1) / 2) as u32;
        Literal {
            var,
            negated: index % 2 == 0,
        }
    }
}

impl fmt::Display for Literal {
    fmt_display_literal!();
}

/// A conjunction of three-literal clauses. Clauses may repeat a literal
/// (so forcing clauses like `(x ∨ x ∨ x)` are expressible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Number of distinct literal indices, `2 · num_vars`.
    pub fn num_literals(&self) -> usize {
        2 * self.num_vars as usize
    }
}

/// A total truth assignment; entry `i` is the value of variable `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn satisfies_literal(&self, lit: Literal) -> bool {
        self.value(lit.var) != lit.negated
    }

    pub fn satisfies(&self, formula: &CnfFormula) -> bool {
        formula
            .clauses
            .iter()
            .all(|clause| clause.iter().any(|&lit| self.satisfies_literal(lit)))
    }

    /// Bit string `v1 v2 …`, 1 for true.
    pub fn bits(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing 'p cnf <vars> <clauses>' header")]
    MissingHeader,
    #[error("header promised {expected} clauses but {found} were given")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("clause {clause} has {len} literals; exactly 3 are required")]
    NotThreeLiterals { clause: usize, len: usize },
    #[error("variable {var} out of range 1..={num_vars}")]
    VarOutOfRange { var: i64, num_vars: u32 },
}

/// Parses the DIMACS CNF subset with exactly three literals per clause.
/// `c` comment lines are skipped; clauses are zero-terminated and may not
/// span the terminator, but may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        if content.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::Malformed {
                    line,
                    message: "duplicate header".into(),
                });
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, count] => {
                    let num_vars: u32 = vars.parse().map_err(|_| DimacsError::Malformed {
                        line,
                        message: format!("bad variable count '{vars}'"),
                    })?;
                    let num_clauses: usize =
                        count.parse().map_err(|_| DimacsError::Malformed {
                            line,
                            message: format!("bad clause count '{count}'"),
                        })?;
                    header = Some((num_vars, num_clauses));
                }
                _ => {
                    return Err(DimacsError::Malformed {
                        line,
                        message: "expected 'p cnf <vars> <clauses>'".into(),
                    })
                }
            }
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in content.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::Malformed {
                line,
                message: format!("bad literal '{token}'"),
            })?;
            if value == 0 {
                let len = current.len();
                if len != 3 {
                    return Err(DimacsError::NotThreeLiterals {
                        clause: clauses.len() + 1,
                        len,
                    });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                let var = value.unsigned_abs();
                if var == 0 || var > num_vars as u64 {
                    return Err(DimacsError::VarOutOfRange {
                        var: value,
                        num_vars,
                    });
                }
                current.push(Literal {
                    var: var as u32,
                    negated: value < 0,
                });
            }
        }
    }

    let (num_vars, expected) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::NotThreeLiterals {
            clause: clauses.len() + 1,
            len: current.len(),
        });
    }
    if clauses.len() != expected {
        return Err(DimacsError::ClauseCountMismatch {
            expected,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula { num_vars, clauses })
}

/// Renders a formula in the same DIMACS subset [`parse_dimacs`] reads.
pub fn format_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!(
        "p cnf {} {}\n",
        formula.num_vars,
        formula.num_clauses()
    );
    for clause in &formula.clauses {
        for lit in clause {
            let signed = if lit.negated {
                -(lit.var as i64)
            } else {
                lit.var as i64
            };
            out.push_str(&format!("{signed} "));
        }
        out.push_str("0\n");
    }
    out
}

/// Variable budget above which [`brute_force_sat`] refuses to enumerate.
pub const BRUTE_FORCE_VAR_CAP: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{num_vars} variables exceed the brute-force cap of {cap}")]
pub struct TooManyVariables {
    pub num_vars: u32,
    pub cap: u32,
}

/// Finds the lexicographically first satisfying assignment, if any, by
/// exhaustive enumeration. Assignments are ordered with variable 1 as the
/// most significant position and false before true, so the all-false
/// assignment is tried first.
pub fn brute_force_sat(
    formula: &CnfFormula,
) -> Result<Option<Assignment>, TooManyVariables> {
    let v = formula.num_vars;
    if v > BRUTE_FORCE_VAR_CAP {
        return Err(TooManyVariables {
            num_vars: v,
            cap: BRUTE_FORCE_VAR_CAP,
        });
    }
    for mask in 0u64..(1u64 << v) {
        let assignment = Assignment(
            (1..=v)
                .map(|i| (mask >> (v - i)) & 1 == 1)
                .collect(),
        );
        if assignment.satisfies(formula) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// A seeded random formula: each of the `num_clauses` clauses draws three
/// independent uniform literals over the `num_vars` variables.
pub fn random_formula(num_vars: u32, num_clauses: usize, seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut lits = [Literal::positive(1); 3];
            for lit in &mut lits {
                let var = (rng.next_u64() % num_vars as u64) as u32 + 1;
                let negated = rng.next_u64() % 2 == 1;
                *lit = Literal { var, negated };
            }
            lits
        })
        .collect();
    CnfFormula { num_vars, clauses }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn reference_formula() -> CnfFormula {
        parse_dimacs("p cnf 3 3\n1 -1 2 0\n-1 2 3 0\n3 -2 -3 0\n").unwrap()
    }

    #[test]
    fn literal_indices_round_trip() {
        for var in 1..=5 {
            for negated in [false, true] {
                let lit = Literal { var, negated };
                assert_eq!(Literal::from_index(lit.index()), lit);
            }
        }
        assert_eq!(Literal::positive(1).index(), 1);
        assert_eq!(Literal::negative(1).index(), 2);
        assert_eq!(Literal::positive(3).index(), 5);
    }

    #[test]
    fn dimacs_round_trips() {
        let formula = reference_formula();
        assert_eq!(formula.num_vars, 3);
        assert_eq!(formula.num_clauses(), 3);
        assert_eq!(parse_dimacs(&format_dimacs(&formula)).unwrap(), formula);
    }

    #[test]
    fn dimacs_rejects_malformed_inputs() {
        assert!(matches!(
            parse_dimacs("1 2 3 0\n"),
            Err(DimacsError::MissingHeader)
        ));
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 0\n"),
            Err(DimacsError::NotThreeLiterals { clause: 1, len: 2 })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2 3 0\n"),
            Err(DimacsError::VarOutOfRange { var: 3, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 3 2\n1 2 3 0\n"),
            Err(DimacsError::ClauseCountMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn brute_force_finds_the_lexicographically_first_model() {
        let formula = reference_formula();
        let model = brute_force_sat(&formula).unwrap().unwrap();
        // All-false already satisfies every clause of the reference
        // formula, and it sorts first.
        assert_eq!(model, Assignment(vec![false, false, false]));
        assert!(model.satisfies(&formula));
        // The documented example model also satisfies it.
        assert!(Assignment(vec![false, false, true]).satisfies(&formula));
    }

    #[test]
    fn brute_force_recognizes_unsatisfiable_formulas() {
        let probe = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
        assert_eq!(brute_force_sat(&probe).unwrap(), None);
    }

    #[test]
    fn brute_force_refuses_oversized_formulas() {
        let formula = CnfFormula {
            num_vars: 25,
            clauses: vec![[Literal::positive(1); 3]],
        };
        assert!(brute_force_sat(&formula).is_err());
    }

    #[test]
    fn random_formulas_are_reproducible() {
        let a = random_formula(4, 4, 9);
        let b = random_formula(4, 4, 9);
        assert_eq!(a, b);
        assert_eq!(a.num_clauses(), 4);
        assert!(a
            .clauses
            .iter()
            .flatten()
            .all(|l| (1..=4).contains(&l.var)));
    }
}
