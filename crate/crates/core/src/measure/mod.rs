//! Exact-rational measure data on finite loops.
//!
//! A [`Measure`] assigns a strictly positive rational weight to every point.
//! For a bijection `f` the Radon–Nikodym derivative of the pushforward is the
//! pointwise ratio `μ(f⁻¹x) / μ(x)`. Everything here is exact; there are no
//! tolerances anywhere.

mod cocycle;
mod orbits;
pub mod rational;
mod verify;

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::identity::{Counterexample, IdentityError};
use crate::perm::Permutation;
use crate::table::LoopError;

pub use cocycle::{
    cocycle_table, deviation_jacobian, modular_function, unimodularity_check, CocycleTable,
    ModularFunction, ModularOutcome, Unimodularity,
};
pub use orbits::{
    invariant_measure_basis, is_invariant_under, mult_group_size, translation_generators, OrbitPartition,
    TranslationSet,
};
pub use rational::Rational;
pub use verify::{
    identity_compatibility, rigidity_report, verify_chain_rule, verify_cocycle_relation,
    verify_translation_chain_rules, verify_untwisted_relation, Failure, RigidityReport,
    VerificationReport, MAX_STORED_FAILURES,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("weight at index {0} is not strictly positive")]
    NonpositiveWeight(usize),
    #[error("expected {expected} weights, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("size mismatch: {left} points vs {right} points")]
    SizeMismatch { left: usize, right: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("cap must be at least 1")]
    InvalidCap,
    #[error("identity fails on this loop: {0:?}")]
    IdentityFails(Counterexample),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// Strictly positive weights, one per point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Measure {
    #[serde(serialize_with = "rational::ser_rationals")]
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(weights: Vec<Rational>, order: usize) -> Result<Measure, MeasureError> {
        if weights.len() != order {
            return Err(MeasureError::LengthMismatch {
                expected: order,
                found: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(MeasureError::NonpositiveWeight(i));
        }
        Ok(Measure { weights })
    }

    /// Counting measure: every point has weight one.
    pub fn counting(order: usize) -> Measure {
        Measure {
            weights: vec![Rational::one(); order],
        }
    }

    pub fn from_integers(weights: &[i64]) -> Result<Measure, MeasureError> {
        Measure::new(
            weights.iter().map(|&w| rational::integer(w)).collect(),
            weights.len(),
        )
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> &Rational {
        &self.weights[x]
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    /// The weights of `f_*μ`: `(f_*μ)({x}) = μ({f⁻¹x})`.
    pub fn pushforward(&self, f: &Permutation) -> Result<Measure, MeasureError> {
        check_sizes(f.len(), self.len())?;
        let inv = f.inverse();
        Ok(Measure {
            weights: (0..self.len())
                .map(|x| self.weights[inv.apply(x)].clone())
                .collect(),
        })
    }

    /// Reads the measure text format: one `p` or `p/q` per line, `#` comments.
    pub fn parse_text(text: &str, order: usize) -> Result<Measure, MeasureError> {
        let mut weights = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let w = rational::parse_rational(content).map_err(|message| MeasureError::Format {
                line: i + 1,
                message,
            })?;
            weights.push(w);
        }
        Measure::new(weights, order)
    }

    pub fn to_text(&self) -> String {
        self.weights
            .iter()
            .map(|w| format!("{}\n", rational::format_rational(w)))
            .collect()
    }
}

/// `values[x] = d f_*μ / dμ (x)` for some bijection `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityVector {
    #[serde(serialize_with = "rational::ser_rationals")]
    values: Vec<Rational>,
}

impl DensityVector {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(One::is_one)
    }
}

pub(crate) fn check_sizes(left: usize, right: usize) -> Result<(), MeasureError> {
    if left == right {
        Ok(())
    } else {
        Err(MeasureError::SizeMismatch { left, right })
    }
}

/// Radon–Nikodym derivative of `f_*μ` with respect to `μ`: `μ(f⁻¹x) / μ(x)`.
pub fn rn_derivative(f: &Permutation, mu: &Measure) -> Result<DensityVector, MeasureError> {
    check_sizes(f.len(), mu.len())?;
    Ok(rn_with_inverse(&f.inverse(), mu))
}

pub(crate) fn rn_with_inverse(f_inv: &Permutation, mu: &Measure) -> DensityVector {
    DensityVector {
        values: (0..mu.len())
            .map(|x| &mu.weights[f_inv.apply(x)] / &mu.weights[x])
            .collect(),
    }
}
