//! Finite loops stored as multiplication tables.
//!
//! A [`LoopTable`] is an order-`n` Latin square with a two-sided identity.
//! Elements are the indices `0..n`; the identity need not be `0`, but every
//! normalized output (canonical forms, enumeration) places it there.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;

/// Element of a finite loop, an index into `0..order`.
pub type Element = usize;

/// Largest order for which [`LoopTable::canonical_form`] runs its exhaustive relabeling search.
pub const MAX_CANONICAL_ORDER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" | "l" | "L" => Ok(Side::Left),
            "right" | "r" | "R" => Ok(Side::Right),
            other => Err(format!("expected `left` or `right`, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {column}) is outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        column: usize,
        value: i64,
        order: usize,
    },
    #[error("not a Latin square: {axis:?} {index} repeats value {value}")]
    NotLatin {
        axis: Axis,
        index: usize,
        value: usize,
    },
    #[error("no element acts as a two-sided identity")]
    NoIdentity,
    #[error("element {given} is not a two-sided identity")]
    NotIdentity { given: usize },
    #[error("element {index} out of range for loop of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("canonical form is only supported up to order {max}, got {order}")]
    Unsupported { order: usize, max: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Result of an exhaustive associativity scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AssociativityWitness {
    Associative,
    /// `(a·b)·c = left_grouped` differs from `a·(b·c) = right_grouped`.
    Violation {
        a: Element,
        b: Element,
        c: Element,
        left_grouped: Element,
        right_grouped: Element,
    },
}

impl AssociativityWitness {
    pub fn is_associative(&self) -> bool {
        matches!(self, AssociativityWitness::Associative)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LoopTable {
    order: usize,
    identity: Element,
    /// Row-major, `cells[a * order + b] = a·b`.
    cells: Vec<Element>,
}

impl LoopTable {
    /// Validates a raw square grid as a loop table.
    ///
    /// With `identity_hint = None` the two-sided identity is detected; a loop has at most one.
    pub fn from_rows<R: AsRef<[i64]>>(
        rows: &[R],
        identity_hint: Option<Element>,
    ) -> Result<Self, LoopError> {
        let order = rows.len();
        if order == 0 {
            return Err(LoopError::Empty);
        }
        let mut cells = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != order {
                return Err(LoopError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            for (column, &value) in r.iter().enumerate() {
                if value < 0 || value as u64 >= order as u64 {
                    return Err(LoopError::EntryOutOfRange {
                        row,
                        column,
                        value,
                        order,
                    });
                }
                cells.push(value as usize);
            }
        }
        Self::from_cells(order, cells, identity_hint)
    }

    /// Like [`LoopTable::from_rows`], for an already in-range row-major cell buffer.
    pub fn from_cells(
        order: usize,
        cells: Vec<Element>,
        identity_hint: Option<Element>,
    ) -> Result<Self, LoopError> {
        if order == 0 {
            return Err(LoopError::Empty);
        }
        if cells.len() != order * order {
            return Err(LoopError::NotSquare {
                row: cells.len() / order,
                len: cells.len() % order,
                order,
            });
        }
        if let Some(pos) = cells.iter().position(|&v| v >= order) {
            return Err(LoopError::EntryOutOfRange {
                row: pos / order,
                column: pos % order,
                value: cells[pos] as i64,
                order,
            });
        }
        check_latin(order, &cells)?;

        let is_identity = |e: usize| {
            (0..order).all(|x| cells[e * order + x] == x && cells[x * order + e] == x)
        };
        let identity = match identity_hint {
            Some(e) if e >= order => return Err(LoopError::IndexOutOfRange { index: e, order }),
            Some(e) if is_identity(e) => e,
            Some(e) => return Err(LoopError::NotIdentity { given: e }),
            None => (0..order).find(|&e| is_identity(e)).ok_or(LoopError::NoIdentity)?,
        };
        Ok(LoopTable {
            order,
            identity,
            cells,
        })
    }

    /// Internal constructor for tables known to satisfy every invariant.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<Element>, identity: Element) -> Self {
        debug_assert!(Self::from_cells(order, cells.clone(), Some(identity)).is_ok());
        LoopTable {
            order,
            identity,
            cells,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.cells.chunks(self.order)
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    fn check(&self, index: Element) -> Result<(), LoopError> {
        if index < self.order {
            Ok(())
        } else {
            Err(LoopError::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// `a·b` without bounds reporting.
    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.cells[a * self.order + b]
    }

    pub fn multiply(&self, a: Element, b: Element) -> Result<Element, LoopError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Left division solves `a·x = b`; right division solves `y·a = b`.
    pub fn divide(&self, side: Side, a: Element, b: Element) -> Result<Element, LoopError> {
        self.check(a)?;
        self.check(b)?;
        let found = match side {
            Side::Left => (0..self.order).find(|&x| self.mul(a, x) == b),
            Side::Right => (0..self.order).find(|&y| self.mul(y, a) == b),
        };
        Ok(found.expect("Latin property guarantees a unique solution"))
    }

    /// `L_a` (row `a`) or `R_a` (column `a`).
    pub fn translation(&self, side: Side, a: Element) -> Result<Permutation, LoopError> {
        self.check(a)?;
        Ok(self.translation_unchecked(side, a))
    }

    pub(crate) fn translation_unchecked(&self, side: Side, a: Element) -> Permutation {
        let images = match side {
            Side::Left => self.cells[a * self.order..(a + 1) * self.order].to_vec(),
            Side::Right => (0..self.order).map(|x| self.mul(x, a)).collect(),
        };
        Permutation::from_images_unchecked(images)
    }

    pub fn translations(&self, side: Side) -> Vec<Permutation> {
        self.elements()
            .map(|a| self.translation_unchecked(side, a))
            .collect()
    }

    /// The associativity deviation `Φ_{a,b} = L_a ∘ L_b ∘ L_{ab}⁻¹`.
    ///
    /// Uses only the inverse permutation of `L_{ab}`, never an inverse element of the loop.
    pub fn deviation(&self, a: Element, b: Element) -> Result<Permutation, LoopError> {
        self.check(a)?;
        self.check(b)?;
        let la = self.translation_unchecked(Side::Left, a);
        let lb = self.translation_unchecked(Side::Left, b);
        let lab = self.translation_unchecked(Side::Left, self.mul(a, b));
        Ok(la.compose(&lb).compose(&lab.inverse()))
    }

    /// Every `Φ_{a,b}`, indexed `[a * order + b]`.
    pub fn deviation_family(&self) -> DeviationFamily {
        let n = self.order;
        let left = self.translations(Side::Left);
        let left_inv: Vec<_> = left.iter().map(Permutation::inverse).collect();
        let mut maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                maps.push(left[a].compose(&left[b]).compose(&left_inv[ab]));
            }
        }
        DeviationFamily { order: n, maps }
    }

    /// Lexicographically first `(a, b, c)` with `(ab)c ≠ a(bc)`, if any.
    pub fn associativity_witness(&self) -> AssociativityWitness {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    let left_grouped = self.mul(ab, c);
                    let right_grouped = self.mul(a, self.mul(b, c));
                    if left_grouped != right_grouped {
                        return AssociativityWitness::Violation {
                            a,
                            b,
                            c,
                            left_grouped,
                            right_grouped,
                        };
                    }
                }
            }
        }
        AssociativityWitness::Associative
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_associative()
    }

    /// Relabels by `new_of_old`: the new table satisfies `new(σa, σb) = σ(a·b)`.
    pub fn relabel(&self, new_of_old: &Permutation) -> LoopTable {
        assert_eq!(new_of_old.len(), self.order, "relabeling has wrong size");
        let n = self.order;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[new_of_old.apply(a) * n + new_of_old.apply(b)] =
                    new_of_old.apply(self.mul(a, b));
            }
        }
        LoopTable {
            order: n,
            identity: new_of_old.apply(self.identity),
            cells,
        }
    }

    /// The lexicographically least table (rows concatenated) over all relabelings
    /// that send the identity to `0`. Isomorphic loops share a canonical form.
    pub fn canonical_form(&self) -> Result<LoopTable, LoopError> {
        let n = self.order;
        if n > MAX_CANONICAL_ORDER {
            return Err(LoopError::Unsupported {
                order: n,
                max: MAX_CANONICAL_ORDER,
            });
        }
        // old_of_new[0] is pinned to the identity; the tail runs through every ordering.
        let mut old_of_new: Vec<Element> = std::iter::once(self.identity)
            .chain(self.elements().filter(|&x| x != self.identity))
            .collect();
        let mut new_of_old = vec![0; n];
        let mut best: Vec<Element> = Vec::new();
        let mut candidate = vec![0; n * n];

        loop {
            for (new, &old) in old_of_new.iter().enumerate() {
                new_of_old[old] = new;
            }
            if best.is_empty() {
                fill_relabeled(self, &old_of_new, &new_of_old, &mut candidate);
                best.clone_from(&candidate);
            } else if let Some(start) = first_smaller(self, &old_of_new, &new_of_old, &best) {
                fill_relabeled(self, &old_of_new, &new_of_old, &mut candidate);
                debug_assert!(candidate[..start] == best[..start]);
                best.clone_from(&candidate);
            }
            if !next_permutation(&mut old_of_new[1..]) {
                break;
            }
        }
        Ok(LoopTable {
            order: n,
            identity: 0,
            cells: best,
        })
    }

    pub fn is_isomorphic(&self, other: &LoopTable) -> Result<bool, LoopError> {
        if self.order != other.order {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Parses the loop text format: a header `n [identity]` followed by `n` rows.
    /// Anything after `#` on a line is a comment; blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<LoopTable, LoopError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(LoopError::Format {
            line: 1,
            message: "missing header line `n [identity]`".into(),
        })?;
        let header_err = |message: String| LoopError::Format {
            line: header_line,
            message,
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.is_empty() || fields.len() > 2 {
            return Err(header_err(format!("expected `n [identity]`, found `{header}`")));
        }
        let order: usize = fields[0]
            .parse()
            .map_err(|_| header_err(format!("invalid order `{}`", fields[0])))?;
        let identity = fields
            .get(1)
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| header_err(format!("invalid identity `{s}`")))
            })
            .transpose()?;

        let mut rows = Vec::with_capacity(order);
        for (line, content) in lines {
            let row = content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| LoopError::Format {
                        line,
                        message: format!("invalid entry `{tok}`"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if rows.len() == order {
                return Err(LoopError::Format {
                    line,
                    message: format!("more than {order} rows"),
                });
            }
            if row.len() != order {
                return Err(LoopError::Format {
                    line,
                    message: format!("expected {order} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != order {
            return Err(LoopError::Format {
                line: text.lines().count().max(1),
                message: format!("expected {order} rows, found {}", rows.len()),
            });
        }
        LoopTable::from_rows(&rows, identity)
    }

    /// Writes the loop text format, always with an explicit identity.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.order, self.identity);
        for row in self.rows() {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl FromStr for LoopTable {
    type Err = LoopError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LoopTable::parse_text(s)
    }
}

/// The full grid of deviation maps of a loop.
#[derive(Debug, Clone)]
pub struct DeviationFamily {
    order: usize,
    maps: Vec<Permutation>,
}

impl DeviationFamily {
    pub fn get(&self, a: Element, b: Element) -> &Permutation {
        &self.maps[a * self.order + b]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Pairs `(a, b)` with `Φ_{a,b} = id`, in lexicographic order.
    pub fn trivial_pairs(&self) -> Vec<(Element, Element)> {
        (0..self.order)
            .flat_map(|a| (0..self.order).map(move |b| (a, b)))
            .filter(|&(a, b)| self.get(a, b).is_identity())
            .collect()
    }
}

fn check_latin(order: usize, cells: &[Element]) -> Result<(), LoopError> {
    let mut seen = vec![false; order];
    for row in 0..order {
        seen.fill(false);
        for col in 0..order {
            let v = cells[row * order + col];
            if std::mem::replace(&mut seen[v], true) {
                return Err(LoopError::NotLatin {
                    axis: Axis::Row,
                    index: row,
                    value: v,
                });
            }
        }
    }
    for col in 0..order {
        seen.fill(false);
        for row in 0..order {
            let v = cells[row * order + col];
            if std::mem::replace(&mut seen[v], true) {
                return Err(LoopError::NotLatin {
                    axis: Axis::Column,
                    index: col,
                    value: v,
                });
            }
        }
    }
    Ok(())
}

#[inline]
fn relabeled_cell(
    table: &LoopTable,
    old_of_new: &[Element],
    new_of_old: &[Element],
    i: usize,
    j: usize,
) -> Element {
    new_of_old[table.mul(old_of_new[i], old_of_new[j])]
}

fn fill_relabeled(
    table: &LoopTable,
    old_of_new: &[Element],
    new_of_old: &[Element],
    out: &mut [Element],
) {
    let n = table.order;
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = relabeled_cell(table, old_of_new, new_of_old, i, j);
        }
    }
}

/// Index of the first cell where the relabeled table undercuts `best`, or `None`
/// if it is not strictly smaller.
fn first_smaller(
    table: &LoopTable,
    old_of_new: &[Element],
    new_of_old: &[Element],
    best: &[Element],
) -> Option<usize> {
    let n = table.order;
    for i in 0..n {
        for j in 0..n {
            let v = relabeled_cell(table, old_of_new, new_of_old, i, j);
            let b = best[i * n + j];
            if v != b {
                return (v < b).then_some(i * n + j);
            }
        }
    }
    None
}

/// Advances to the next lexicographic permutation; `false` once the last one is passed.
fn next_permutation(xs: &mut [Element]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
