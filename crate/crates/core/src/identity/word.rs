//! Identity sides read as composite translation operators.
//!
//! If a side contains the point variable `z` exactly once, the map
//! `z ↦ side(z)` is a composition of translations: every product node on the
//! path from the root to `z` contributes `L_c` (when `z` is to the right) or
//! `R_c` (when `z` is to the left), where `c` is the sibling subterm.

use std::fmt;

use serde::Serialize;

use super::{Assignment, IdentityError, Term};
use crate::perm::Permutation;
use crate::table::{Element, LoopTable, Side};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub side: Side,
    /// Point-free subterm naming the translating element.
    pub parameter: Term,
}

/// `[f1, f2, …, fk]` denotes `f1 ∘ f2 ∘ … ∘ fk`; `fk` acts on the point first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationWord {
    pub point: char,
    pub factors: Vec<Factor>,
}

impl TranslationWord {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// The translating element of every factor, outermost first.
    pub fn resolve(
        &self,
        table: &LoopTable,
        assignment: &Assignment,
    ) -> Result<Vec<(Side, Element)>, IdentityError> {
        self.factors
            .iter()
            .map(|f| Ok((f.side, f.parameter.evaluate(table, assignment)?)))
            .collect()
    }
}

impl fmt::Display for TranslationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("id");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∘ ")?;
            }
            let letter = match factor.side {
                Side::Left => 'L',
                Side::Right => 'R',
            };
            write!(f, "{letter}[{}]", factor.parameter)?;
        }
        Ok(())
    }
}

pub fn compile_translation_word(side: &Term, point: char) -> Result<TranslationWord, IdentityError> {
    let occurrences = side.occurrences(point);
    if occurrences != 1 {
        return Err(IdentityError::NonlinearPoint { point, occurrences });
    }
    let mut factors = Vec::new();
    let mut node = side;
    while let Term::Mul(l, r) = node {
        if r.occurrences(point) == 1 {
            factors.push(Factor {
                side: Side::Left,
                parameter: (**l).clone(),
            });
            node = r;
        } else {
            factors.push(Factor {
                side: Side::Right,
                parameter: (**r).clone(),
            });
            node = l;
        }
    }
    debug_assert_eq!(node, &Term::Var(point));
    Ok(TranslationWord { point, factors })
}

/// The permutation `z ↦ side(z)` for fixed values of the parameter variables.
pub fn evaluate_word(
    table: &LoopTable,
    word: &TranslationWord,
    assignment: &Assignment,
) -> Result<Permutation, IdentityError> {
    let mut acc = Permutation::identity(table.order());
    for (side, c) in word.resolve(table, assignment)? {
        acc = acc.compose(&table.translation_unchecked(side, c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::builtin_identity;

    fn q5() -> LoopTable {
        LoopTable::from_rows(
            &[
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 3, 4, 0, 1],
                [3, 4, 1, 2, 0],
                [4, 2, 0, 1, 3],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn compiles_kunen_sides() {
        let kunen = builtin_identity("kunen").unwrap();
        let lhs = compile_translation_word(kunen.lhs(), 'z').unwrap();
        assert_eq!(
            lhs.factors,
            vec![
                Factor {
                    side: Side::Right,
                    parameter: Term::var('y')
                },
                Factor {
                    side: Side::Left,
                    parameter: Term::product(Term::var('x'), Term::var('y'))
                },
            ]
        );
        let rhs = compile_translation_word(kunen.rhs(), 'z').unwrap();
        let sides: Vec<_> = rhs.factors.iter().map(|f| (f.side, f.parameter.to_string())).collect();
        assert_eq!(
            sides,
            vec![
                (Side::Left, "x".to_string()),
                (Side::Left, "y".to_string()),
                (Side::Right, "y".to_string())
            ]
        );
        assert_eq!(lhs.to_string(), "R[y] ∘ L[(x*y)]");
    }

    #[test]
    fn bare_point_is_empty_word() {
        let w = compile_translation_word(&Term::var('z'), 'z').unwrap();
        assert!(w.is_empty());
        let p = evaluate_word(&q5(), &w, &Assignment::new()).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn nonlinear_point_is_rejected() {
        let kunen = builtin_identity("kunen").unwrap();
        assert_eq!(
            compile_translation_word(kunen.lhs(), 'y'),
            Err(IdentityError::NonlinearPoint {
                point: 'y',
                occurrences: 2
            })
        );
        assert_eq!(
            compile_translation_word(kunen.lhs(), 'w'),
            Err(IdentityError::NonlinearPoint {
                point: 'w',
                occurrences: 0
            })
        );
    }

    #[test]
    fn kunen_lhs_on_q5() {
        let kunen = builtin_identity("kunen").unwrap();
        let w = compile_translation_word(kunen.lhs(), 'z').unwrap();
        let a: Assignment = [('x', 1), ('y', 1)].into_iter().collect();
        let p = evaluate_word(&q5(), &w, &a).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 4, 2]);
        assert_eq!(
            evaluate_word(&q5(), &w, &Assignment::new().with('x', 1)),
            Err(IdentityError::UnboundVariable('y'))
        );
    }
}
