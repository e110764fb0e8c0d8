//! Orbits of translation groups and the measures they leave invariant.

use std::collections::{HashSet, VecDeque};
use std::str::FromStr;

use serde::Serialize;

use super::{check_sizes, Measure, MeasureError};
use crate::perm::Permutation;
use crate::table::{Element, LoopTable, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslationSet {
    Left,
    Right,
    Both,
}

impl FromStr for TranslationSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(TranslationSet::Left),
            "right" => Ok(TranslationSet::Right),
            "both" => Ok(TranslationSet::Both),
            other => Err(format!("expected left, right or both, got `{other}`")),
        }
    }
}

/// All `(side, a)` in the chosen family, left before right.
pub fn translation_generators(table: &LoopTable, set: TranslationSet) -> Vec<(Side, Element)> {
    let sides: &[Side] = match set {
        TranslationSet::Left => &[Side::Left],
        TranslationSet::Right => &[Side::Right],
        TranslationSet::Both => &[Side::Left, Side::Right],
    };
    sides
        .iter()
        .flat_map(|&s| table.elements().map(move |a| (s, a)))
        .collect()
}

/// Orbits of the group generated by some translations. A measure is invariant
/// under every generator iff it is constant on each orbit, so each orbit is one
/// basis direction of the invariant measures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Sorted orbits, ordered by smallest element.
    pub orbits: Vec<Vec<Element>>,
}

impl OrbitPartition {
    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }

    pub fn dimension(&self) -> usize {
        self.orbits.len()
    }

    pub fn admits(&self, mu: &Measure) -> bool {
        self.orbits
            .iter()
            .all(|orbit| orbit.iter().all(|&x| mu.weight(x) == mu.weight(orbit[0])))
    }
}

pub fn invariant_measure_basis(
    table: &LoopTable,
    generators: &[(Side, Element)],
) -> Result<OrbitPartition, MeasureError> {
    if generators.is_empty() {
        return Err(MeasureError::EmptyGeneratorSet);
    }
    let n = table.order();
    let perms = generators
        .iter()
        .map(|&(side, a)| table.translation(side, a))
        .collect::<Result<Vec<_>, _>>()?;

    // Union-find over the edges {x, g(x)}; inverses give the same edges.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &perms {
        for x in 0..n {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut orbits: Vec<Vec<Element>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let root = find(&mut parent, x);
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[root]].push(x);
    }
    Ok(OrbitPartition { orbits })
}

/// Order of the group generated by the chosen translations, by breadth-first closure.
pub fn mult_group_size(table: &LoopTable, set: TranslationSet, cap: usize) -> Result<usize, MeasureError> {
    if cap == 0 {
        return Err(MeasureError::InvalidCap);
    }
    let generators: Vec<Permutation> = translation_generators(table, set)
        .into_iter()
        .map(|(side, a)| table.translation_unchecked(side, a))
        .filter(|p| !p.is_identity())
        .collect();
    let identity = Permutation::identity(table.order());
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = s.compose(&g);
            if !seen.contains(&h) {
                if seen.len() == cap {
                    return Err(MeasureError::CapExceeded(cap));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(seen.len())
}

/// Checks `f_*μ = μ` directly for each generator `f`.
pub fn is_invariant_under(
    table: &LoopTable,
    mu: &Measure,
    generators: &[(Side, Element)],
) -> Result<bool, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    for &(side, a) in generators {
        if &mu.pushforward(&table.translation(side, a)?)? != mu {
            return Ok(false);
        }
    }
    Ok(true)
}
