use serde::Serialize;

use super::{var_index, Assignment, IdentityAst};
use crate::table::{Element, LoopTable};

/// A failing assignment, with both sides evaluated under it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(char, Element)>,
    pub lhs: Element,
    pub rhs: Element,
}

impl Counterexample {
    pub fn to_assignment(&self) -> Assignment {
        self.assignment.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Number of assignments evaluated before stopping.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

/// Evaluates both sides under all `n^k` assignments in lexicographic order
/// (variables alphabetical) and stops at the first disagreement.
pub fn check_identity(table: &LoopTable, identity: &IdentityAst) -> Verdict {
    let n = table.order();
    let vars = identity.variables();
    let mut digits = vec![0usize; vars.len()];
    let mut dense = [0usize; 26];
    let mut checked = 0u64;
    loop {
        for (&v, &d) in vars.iter().zip(&digits) {
            dense[var_index(v)] = d;
        }
        checked += 1;
        let lhs = identity.lhs().evaluate_dense(table, &dense);
        let rhs = identity.rhs().evaluate_dense(table, &dense);
        if lhs != rhs {
            return Verdict {
                holds: false,
                checked,
                counterexample: Some(Counterexample {
                    assignment: vars.iter().copied().zip(digits.iter().copied()).collect(),
                    lhs,
                    rhs,
                }),
            };
        }
        // Odometer increment, last variable fastest.
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Verdict {
                    holds: true,
                    checked,
                    counterexample: None,
                };
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}
