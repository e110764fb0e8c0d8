use num_traits::One;
use serde::Serialize;

use super::rational::{self, Rational};
use super::{check_sizes, rn_with_inverse, DensityVector, Measure, MeasureError};
use crate::table::{Element, LoopTable, Side};

/// `entries[a][x]` is `λ(a, x)` (left) or `ρ(a, x)` (right): the density of the
/// pushforward of `μ` under `L_a` or `R_a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleTable {
    kind: Side,
    #[serde(serialize_with = "rational::ser_rational_grid")]
    entries: Vec<Vec<Rational>>,
}

impl CocycleTable {
    pub fn kind(&self) -> Side {
        self.kind
    }

    #[inline]
    pub fn get(&self, a: Element, x: Element) -> &Rational {
        &self.entries[a][x]
    }

    pub fn row(&self, a: Element) -> &[Rational] {
        &self.entries[a]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().flatten().all(One::is_one)
    }
}

pub fn cocycle_table(table: &LoopTable, mu: &Measure, kind: Side) -> Result<CocycleTable, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    let entries = table
        .translations(kind)
        .iter()
        .map(|t| rn_with_inverse(&t.inverse(), mu).into_values())
        .collect();
    Ok(CocycleTable { kind, entries })
}

/// `J_Φ(a, b; ·)`, the density of the pushforward of `μ` under `Φ_{a,b}`.
pub fn deviation_jacobian(
    table: &LoopTable,
    mu: &Measure,
    a: Element,
    b: Element,
) -> Result<DensityVector, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    let phi = table.deviation(a, b)?;
    Ok(rn_with_inverse(&phi.inverse(), mu))
}

/// A spatially constant cocycle, `Δ(a) = λ(a, x)` for every `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularFunction {
    pub kind: Side,
    #[serde(serialize_with = "rational::ser_rationals")]
    pub values: Vec<Rational>,
    /// `Some(ok)` when the loop is associative and `Δ(ab) = Δ(a)Δ(b)` was checked.
    pub multiplicative: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ModularOutcome {
    Constant(ModularFunction),
    /// `cocycle(a, x1) ≠ cocycle(a, x2)`.
    SpatiallyVarying {
        a: Element,
        x1: Element,
        x2: Element,
        #[serde(serialize_with = "rational::ser_rational")]
        value1: Rational,
        #[serde(serialize_with = "rational::ser_rational")]
        value2: Rational,
    },
}

pub fn modular_function(table: &LoopTable, mu: &Measure, kind: Side) -> Result<ModularOutcome, MeasureError> {
    let cocycle = cocycle_table(table, mu, kind)?;
    for a in table.elements() {
        let row = cocycle.row(a);
        if let Some(x2) = row.iter().position(|v| v != &row[0]) {
            return Ok(ModularOutcome::SpatiallyVarying {
                a,
                x1: 0,
                x2,
                value1: row[0].clone(),
                value2: row[x2].clone(),
            });
        }
    }
    let values: Vec<Rational> = table.elements().map(|a| cocycle.get(a, 0).clone()).collect();
    let multiplicative = table.is_associative().then(|| {
        table.elements().all(|a| {
            table
                .elements()
                .all(|b| values[table.mul(a, b)] == &values[a] * &values[b])
        })
    });
    Ok(ModularOutcome::Constant(ModularFunction {
        kind,
        values,
        multiplicative,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unimodularity {
    pub unimodular: bool,
    /// First `(kind, a, x)` with a cocycle value other than one; left table scanned first.
    pub witness: Option<(Side, Element, Element)>,
}

pub fn unimodularity_check(table: &LoopTable, mu: &Measure) -> Result<Unimodularity, MeasureError> {
    for kind in [Side::Left, Side::Right] {
        let cocycle = cocycle_table(table, mu, kind)?;
        for a in table.elements() {
            if let Some(x) = cocycle.row(a).iter().position(|v| !v.is_one()) {
                return Ok(Unimodularity {
                    unimodular: false,
                    witness: Some((kind, a, x)),
                });
            }
        }
    }
    Ok(Unimodularity {
        unimodular: true,
        witness: None,
    })
}
