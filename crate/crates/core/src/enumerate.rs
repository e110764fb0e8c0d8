//! Exhaustive enumeration of small loops.
//!
//! Normalized loops are reduced Latin squares: identity `0`, with row `0` and
//! column `0` in natural order. The remaining `(n-1)²` cells are filled in
//! row-major order with ascending candidates, using per-row and per-column
//! bitmasks of used values. Up to isomorphism, every normalized loop is
//! canonicalized and the distinct canonical forms are emitted in
//! lexicographic order.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::table::{Element, LoopTable, MAX_CANONICAL_ORDER};

/// Bitmasks are `u32`.
pub const MAX_ENUMERATION_ORDER: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Normalized,
    UpToIsomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub order: usize,
    pub mode: EnumerationMode,
    pub limit: Option<usize>,
    /// Values of the leading free cells, in search order: row 1 from column 1, then row 2, …
    pub prefix: Vec<Element>,
}

impl EnumerationConfig {
    pub fn new(order: usize, mode: EnumerationMode) -> Self {
        EnumerationConfig {
            order,
            mode,
            limit: None,
            prefix: Vec::new(),
        }
    }

    pub fn normalized(order: usize) -> Self {
        Self::new(order, EnumerationMode::Normalized)
    }

    pub fn up_to_isomorphism(order: usize) -> Self {
        Self::new(order, EnumerationMode::UpToIsomorphism)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_prefix(mut self, prefix: Vec<Element>) -> Self {
        self.prefix = prefix;
        self
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if self.order == 0 || self.order > MAX_ENUMERATION_ORDER {
            return Err(EnumerationError::UnsupportedOrder {
                order: self.order,
                max: MAX_ENUMERATION_ORDER,
            });
        }
        if self.mode == EnumerationMode::UpToIsomorphism && self.order > MAX_CANONICAL_ORDER {
            return Err(EnumerationError::UnsupportedOrder {
                order: self.order,
                max: MAX_CANONICAL_ORDER,
            });
        }
        if self.limit == Some(0) {
            return Err(EnumerationError::InvalidLimit);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order {order} is not supported in this mode (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
    #[error("limit must be at least 1")]
    InvalidLimit,
}

/// Backtracking state for reduced Latin squares.
struct Search {
    n: usize,
    full: u32,
    cells: Vec<Element>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
}

enum Flow {
    Continue,
    Stop,
}

impl Search {
    fn new(n: usize) -> Self {
        let mut s = Search {
            n,
            full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
            cells: vec![0; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
        };
        for i in 0..n {
            s.place(0, i, i);
            if i > 0 {
                s.place(i, 0, i);
            }
        }
        s
    }

    fn free_cells(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    #[inline]
    fn cell_of(&self, k: usize) -> (usize, usize) {
        (1 + k / (self.n - 1), 1 + k % (self.n - 1))
    }

    #[inline]
    fn place(&mut self, r: usize, c: usize, v: Element) {
        self.cells[r * self.n + c] = v;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
    }

    #[inline]
    fn unplace(&mut self, r: usize, c: usize, v: Element) {
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
    }

    fn apply_prefix(&mut self, prefix: &[Element]) -> Result<(), EnumerationError> {
        if prefix.len() > self.free_cells() {
            return Err(EnumerationError::InvalidPrefix(format!(
                "{} values given but only {} free cells",
                prefix.len(),
                self.free_cells()
            )));
        }
        for (k, &v) in prefix.iter().enumerate() {
            let (r, c) = self.cell_of(k);
            if v >= self.n {
                return Err(EnumerationError::InvalidPrefix(format!(
                    "value {v} out of range for order {}",
                    self.n
                )));
            }
            if (self.row_used[r] | self.col_used[c]) & (1 << v) != 0 {
                return Err(EnumerationError::InvalidPrefix(format!(
                    "value {v} at ({r}, {c}) repeats in its row or column"
                )));
            }
            self.place(r, c, v);
        }
        Ok(())
    }

    /// Fills cells `k..stop`, calling `visit` at depth `stop`.
    fn run(&mut self, k: usize, stop: usize, visit: &mut dyn FnMut(&Search) -> Flow) -> Flow {
        if k == stop {
            return visit(self);
        }
        let (r, c) = self.cell_of(k);
        let mut candidates = self.full & !(self.row_used[r] | self.col_used[c]);
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.place(r, c, v);
            let flow = self.run(k + 1, stop, visit);
            self.unplace(r, c, v);
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    fn prefix_values(&self, len: usize) -> Vec<Element> {
        (0..len)
            .map(|k| {
                let (r, c) = self.cell_of(k);
                self.cells[r * self.n + c]
            })
            .collect()
    }
}

/// Visits every completed normalized table under `prefix`; `visit` returns `false` to stop.
fn for_each_normalized(
    order: usize,
    prefix: &[Element],
    mut visit: impl FnMut(&[Element]) -> bool,
) -> Result<(), EnumerationError> {
    let mut search = Search::new(order);
    search.apply_prefix(prefix)?;
    let stop = search.free_cells();
    search.run(prefix.len(), stop, &mut |s| {
        if visit(&s.cells) {
            Flow::Continue
        } else {
            Flow::Stop
        }
    });
    Ok(())
}

fn table_of(order: usize, cells: &[Element]) -> LoopTable {
    LoopTable::from_cells_unchecked(order, cells.to_vec(), 0)
}

fn canonical_cells(order: usize, cells: &[Element]) -> Vec<Element> {
    table_of(order, cells)
        .canonical_form()
        .expect("order already validated")
        .cells()
        .to_vec()
}

/// Emits every loop described by `cfg` to `sink` in deterministic order and returns how many.
pub fn enumerate_loops(
    cfg: &EnumerationConfig,
    mut sink: impl FnMut(&LoopTable),
) -> Result<u64, EnumerationError> {
    cfg.validate()?;
    let limit = cfg.limit.unwrap_or(usize::MAX);
    let n = cfg.order;
    let mut emitted = 0usize;
    match cfg.mode {
        EnumerationMode::Normalized => {
            for_each_normalized(n, &cfg.prefix, |cells| {
                sink(&table_of(n, cells));
                emitted += 1;
                emitted < limit
            })?;
        }
        EnumerationMode::UpToIsomorphism => {
            let mut keys = BTreeSet::new();
            for_each_normalized(n, &cfg.prefix, |cells| {
                keys.insert(canonical_cells(n, cells));
                true
            })?;
            for key in keys.into_iter().take(limit) {
                sink(&LoopTable::from_cells_unchecked(n, key, 0));
                emitted += 1;
            }
        }
    }
    Ok(emitted as u64)
}

pub fn count_loops(cfg: &EnumerationConfig) -> Result<u64, EnumerationError> {
    match cfg.mode {
        EnumerationMode::Normalized => {
            cfg.validate()?;
            let limit = cfg.limit.unwrap_or(usize::MAX) as u64;
            let mut count = 0u64;
            for_each_normalized(cfg.order, &cfg.prefix, |_| {
                count += 1;
                count < limit
            })?;
            Ok(count)
        }
        EnumerationMode::UpToIsomorphism => enumerate_loops(cfg, |_| {}),
    }
}

/// All valid extensions of `prefix` by `extra` more cells, in search order.
pub fn partition_prefixes(
    order: usize,
    prefix: &[Element],
    extra: usize,
) -> Result<Vec<Vec<Element>>, EnumerationError> {
    let mut search = Search::new(order);
    search.apply_prefix(prefix)?;
    let stop = (prefix.len() + extra).min(search.free_cells());
    let mut out = Vec::new();
    search.run(prefix.len(), stop, &mut |s| {
        out.push(s.prefix_values(stop));
        Flow::Continue
    });
    Ok(out)
}

/// Depth of the work split used by the parallel drivers.
const SPLIT_DEPTH: usize = 3;

/// Same output as [`enumerate_loops`], computed across the rayon pool.
pub fn enumerate_loops_parallel(cfg: &EnumerationConfig) -> Result<Vec<LoopTable>, EnumerationError> {
    cfg.validate()?;
    let n = cfg.order;
    let limit = cfg.limit.unwrap_or(usize::MAX);
    let parts = partition_prefixes(n, &cfg.prefix, SPLIT_DEPTH)?;
    match cfg.mode {
        EnumerationMode::Normalized => {
            let chunks: Vec<Vec<LoopTable>> = parts
                .par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    for_each_normalized(n, p, |cells| {
                        out.push(table_of(n, cells));
                        out.len() < limit
                    })
                    .expect("partition prefixes are valid");
                    out
                })
                .collect();
            Ok(chunks.into_iter().flatten().take(limit).collect())
        }
        EnumerationMode::UpToIsomorphism => {
            let keys = parts
                .par_iter()
                .map(|p| {
                    let mut keys = BTreeSet::new();
                    for_each_normalized(n, p, |cells| {
                        keys.insert(canonical_cells(n, cells));
                        true
                    })
                    .expect("partition prefixes are valid");
                    keys
                })
                .reduce(BTreeSet::new, |mut a, mut b| {
                    a.append(&mut b);
                    a
                });
            Ok(keys
                .into_iter()
                .take(limit)
                .map(|k| LoopTable::from_cells_unchecked(n, k, 0))
                .collect())
        }
    }
}

pub fn count_loops_parallel(cfg: &EnumerationConfig) -> Result<u64, EnumerationError> {
    cfg.validate()?;
    match cfg.mode {
        EnumerationMode::Normalized => {
            let parts = partition_prefixes(cfg.order, &cfg.prefix, SPLIT_DEPTH)?;
            let total: u64 = parts
                .par_iter()
                .map(|p| {
                    let mut count = 0u64;
                    for_each_normalized(cfg.order, p, |_| {
                        count += 1;
                        true
                    })
                    .expect("partition prefixes are valid");
                    count
                })
                .sum();
            Ok(cfg.limit.map_or(total, |l| total.min(l as u64)))
        }
        EnumerationMode::UpToIsomorphism => Ok(enumerate_loops_parallel(cfg)?.len() as u64),
    }
}
