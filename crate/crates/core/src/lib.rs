//! Haar-type measure data on finite loops.
//!
//! `loopmod` works with finite loops (Latin squares with a two-sided
//! identity) and strictly positive rational measures on them. It computes
//! left/right translations, the associativity deviation maps
//! `Φ_{a,b} = L_a ∘ L_b ∘ L_{ab}⁻¹`, the exact Radon–Nikodym cocycles of a
//! measure, and verifies the relations those objects satisfy: the chain
//! rule, the deviation-corrected cocycle relation, its untwisted form on
//! pairs with trivial deviation, and the compatibility that a loop identity
//! such as `((xy)z)y = x(y(zy))` forces between the cocycles of its two
//! translation factorizations.
//!
//! ```
//! use loopmod::{fixtures, measure, Measure};
//!
//! let q5 = fixtures::q5_nonassoc();
//! let mu = Measure::from_integers(&[1, 2, 3, 4, 5]).unwrap();
//! let report = measure::verify_cocycle_relation(&q5, &mu).unwrap();
//! assert!(report.pass);
//! assert_eq!(report.cases, 2 * 125);
//! ```

pub mod enumerate;
pub mod fixtures;
pub mod identity;
pub mod measure;
pub mod perm;
pub mod table;

pub use enumerate::{EnumerationConfig, EnumerationError, EnumerationMode};
pub use fixtures::{builtin_loop, FixtureError};
pub use identity::{
    builtin_identity, check_identity, compile_translation_word, evaluate_word, parse_identity,
    Assignment, IdentityAst, IdentityError, Term, TranslationWord, Verdict,
};
pub use measure::{
    rn_derivative, CocycleTable, DensityVector, Measure, MeasureError, Rational,
    VerificationReport,
};
pub use perm::{PermError, Permutation};
pub use table::{AssociativityWitness, Element, LoopError, LoopTable, Side};
