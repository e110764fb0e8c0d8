//! Shared inputs for the benchmarks.

use loopmod::{LoopTable, Measure};

/// Weights `1, 2, …, n`: non-uniform, so every cocycle is nontrivial.
pub fn ramp_measure(order: usize) -> Measure {
    let weights: Vec<i64> = (1..=order as i64).collect();
    Measure::from_integers(&weights).expect("positive weights")
}

/// Every normalized loop of the given order.
pub fn all_loops(order: usize) -> Vec<LoopTable> {
    let mut out = Vec::new();
    loopmod::enumerate::enumerate_loops(&loopmod::EnumerationConfig::normalized(order), |t| {
        out.push(t.clone())
    })
    .expect("supported order");
    out
}
