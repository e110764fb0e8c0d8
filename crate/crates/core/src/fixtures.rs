//! Named loops used as fixtures.

use thiserror::Error;

use crate::table::{Element, LoopError, LoopTable};

pub const BUILTIN_LOOPS: &[&str] = &["cyclic:<n>", "q5_nonassoc", "octonion16"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown builtin loop `{0}` (expected cyclic:<n>, q5_nonassoc or octonion16)")]
    UnknownBuiltin(String),
    #[error("builtin `{name}` failed its own validation: {source}")]
    Construction { name: String, source: LoopError },
}

/// A smallest nonassociative loop of order 5.
const Q5: [[Element; 5]; 5] = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
];

pub fn builtin_loop(name: &str) -> Result<LoopTable, FixtureError> {
    let (order, cells) = if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = n
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| FixtureError::UnknownBuiltin(name.to_string()))?;
        (n, (0..n * n).map(|k| (k / n + k % n) % n).collect())
    } else {
        match name {
            "q5_nonassoc" => (5, Q5.concat()),
            "octonion16" => (16, octonion_cells()),
            _ => return Err(FixtureError::UnknownBuiltin(name.to_string())),
        }
    };
    LoopTable::from_cells(order, cells, Some(0)).map_err(|source| FixtureError::Construction {
        name: name.to_string(),
        source,
    })
}

pub fn cyclic(n: usize) -> LoopTable {
    builtin_loop(&format!("cyclic:{n}")).expect("cyclic tables are groups")
}

pub fn q5_nonassoc() -> LoopTable {
    builtin_loop("q5_nonassoc").expect("Q5 is a loop")
}

pub fn octonion16() -> LoopTable {
    builtin_loop("octonion16").expect("the octonion units form a loop")
}

/// `e_i e_j = sign · e_k` for octonion basis units `0..8`, `e_0 = 1`.
/// Returns `(negative, k)`.
fn basis_product(i: usize, j: usize) -> (bool, usize) {
    if i == 0 {
        return (false, j);
    }
    if j == 0 {
        return (false, i);
    }
    if i == j {
        return (true, 0);
    }
    let wrap = |v: usize| (v - 1) % 7 + 1;
    for t in 1..=7 {
        let line = [t, wrap(t + 1), wrap(t + 3)];
        for r in 0..3 {
            let (p, q, s) = (line[r], line[(r + 1) % 3], line[(r + 2) % 3]);
            if (p, q) == (i, j) {
                return (false, s);
            }
            if (q, p) == (i, j) {
                return (true, s);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies on exactly one line")
}

/// The 16 units `±e_0, …, ±e_7`; index `k` is `-e_{k-8}` for `k ≥ 8`, else `e_k`.
fn octonion_cells() -> Vec<Element> {
    let mut cells = Vec::with_capacity(256);
    for a in 0..16 {
        for b in 0..16 {
            let (neg, k) = basis_product(a % 8, b % 8);
            let negative = (a >= 8) ^ (b >= 8) ^ neg;
            cells.push(k + if negative { 8 } else { 0 });
        }
    }
    cells
}
