//! Equational loop identities.
//!
//! Identities are written in a small fully-parenthesized language,
//! e.g. `((x*y)*z)*y = x*(y*(z*y))`. They can be checked against a table by
//! exhaustive assignment, and a side that mentions a chosen "point" variable
//! exactly once can be compiled into a word of left/right translations.

mod check;
mod parse;
mod word;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::table::{Element, LoopTable};

pub use check::{check_identity, Counterexample, Verdict};
pub use parse::parse_identity;
pub use word::{compile_translation_word, evaluate_word, Factor, TranslationWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0} side of the identity is empty")]
    EmptySide(&'static str),
    #[error("unknown builtin identity `{0}`")]
    UnknownBuiltin(String),
    #[error("variable `{point}` occurs {occurrences} times; a translation word needs exactly one")]
    NonlinearPoint { point: char, occurrences: usize },
    #[error("variable `{0}` is not bound")]
    UnboundVariable(char),
    #[error("element {element} bound to `{var}` is out of range for order {order}")]
    ElementOutOfRange {
        var: char,
        element: Element,
        order: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(char),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: char) -> Term {
        Term::Var(name)
    }

    pub fn product(left: Term, right: Term) -> Term {
        Term::Mul(Box::new(left), Box::new(right))
    }

    pub fn occurrences(&self, name: char) -> usize {
        match self {
            Term::Var(v) => usize::from(*v == name),
            Term::Mul(l, r) => l.occurrences(name) + r.occurrences(name),
        }
    }

    pub fn variables(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<char>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Mul(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    pub fn evaluate(&self, table: &LoopTable, assignment: &Assignment) -> Result<Element, IdentityError> {
        match self {
            Term::Var(v) => {
                let element = assignment.get(*v).ok_or(IdentityError::UnboundVariable(*v))?;
                if element >= table.order() {
                    return Err(IdentityError::ElementOutOfRange {
                        var: *v,
                        element,
                        order: table.order(),
                    });
                }
                Ok(element)
            }
            Term::Mul(l, r) => Ok(table.mul(l.evaluate(table, assignment)?, r.evaluate(table, assignment)?)),
        }
    }

    /// Evaluation against a dense binding indexed by `name - 'a'`; every variable must be bound.
    pub(crate) fn evaluate_dense(&self, table: &LoopTable, values: &[Element; 26]) -> Element {
        match self {
            Term::Var(v) => values[var_index(*v)],
            Term::Mul(l, r) => table.mul(l.evaluate_dense(table, values), r.evaluate_dense(table, values)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Mul(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[inline]
pub(crate) fn var_index(v: char) -> usize {
    debug_assert!(v.is_ascii_lowercase());
    (v as u8 - b'a') as usize
}

/// A parsed identity `lhs = rhs` with its variables in alphabetical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityAst {
    lhs: Term,
    rhs: Term,
    variables: Vec<char>,
}

impl IdentityAst {
    pub fn new(lhs: Term, rhs: Term) -> IdentityAst {
        let mut vars = lhs.variables();
        vars.extend(rhs.variables());
        IdentityAst {
            lhs,
            rhs,
            variables: vars.into_iter().collect(),
        }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn variables(&self) -> &[char] {
        &self.variables
    }

    /// Variables occurring exactly once on each side.
    pub fn linear_variables(&self) -> Vec<char> {
        self.variables
            .iter()
            .copied()
            .filter(|&v| self.lhs.occurrences(v) == 1 && self.rhs.occurrences(v) == 1)
            .collect()
    }

    /// The default point for word compilation: the last variable both sides are linear in.
    pub fn default_point(&self) -> Option<char> {
        self.linear_variables().last().copied()
    }
}

impl fmt::Display for IdentityAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl std::str::FromStr for IdentityAst {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

/// Names accepted by [`builtin_identity`].
pub const BUILTIN_IDENTITIES: &[&str] = &[
    "associativity",
    "kunen",
    "moufang-right",
    "moufang-left",
    "left-bol",
    "right-bol",
    "flexible",
];

pub fn builtin_identity(name: &str) -> Result<IdentityAst, IdentityError> {
    let text = match name {
        "associativity" => "(x*y)*z = x*(y*z)",
        // Both names denote the same equation.
        "kunen" | "moufang-right" => "((x*y)*z)*y = x*(y*(z*y))",
        "moufang-left" => "x*(y*(x*z)) = ((x*y)*x)*z",
        "left-bol" => "x*(y*(x*z)) = (x*(y*x))*z",
        "right-bol" => "((z*x)*y)*x = z*((x*y)*x)",
        "flexible" => "x*(y*x) = (x*y)*x",
        other => return Err(IdentityError::UnknownBuiltin(other.to_string())),
    };
    Ok(parse_identity(text).expect("builtin identities parse"))
}

/// A partial binding of the variables `a..=z` to loop elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: [Option<Element>; 26],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: char) -> Option<Element> {
        var.is_ascii_lowercase()
            .then(|| self.values[var_index(var)])
            .flatten()
    }

    /// # Panics
    /// Panics if `var` is not an ASCII lowercase letter.
    pub fn set(&mut self, var: char, element: Element) {
        assert!(var.is_ascii_lowercase(), "variables are single lowercase letters");
        self.values[var_index(var)] = Some(element);
    }

    pub fn with(mut self, var: char, element: Element) -> Self {
        self.set(var, element);
        self
    }

    pub fn bindings(&self) -> Vec<(char, Element)> {
        ('a'..='z')
            .filter_map(|v| self.get(v).map(|e| (v, e)))
            .collect()
    }
}

impl FromIterator<(char, Element)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (char, Element)>>(iter: I) -> Self {
        let mut a = Assignment::new();
        for (v, e) in iter {
            a.set(v, e);
        }
        a
    }
}
