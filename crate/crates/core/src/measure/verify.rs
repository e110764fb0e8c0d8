//! Exact verifiers for the cocycle relations.
//!
//! Every verifier evaluates two independently computed sides of a relation
//! for each case and records disagreements. Reports from disjoint case ranges
//! merge associatively, so rows of the case space are checked in parallel and
//! merged in case order.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::rational::{self, Rational};
use super::{check_sizes, cocycle_table, rn_with_inverse, CocycleTable, Measure, MeasureError};
use crate::identity::{check_identity, compile_translation_word, IdentityAst, TranslationWord};
use crate::perm::Permutation;
use crate::table::{DeviationFamily, Element, LoopTable, Side};

/// Reports keep at most this many failures; counts stay exact.
pub const MAX_STORED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Case coordinates, e.g. `[a, b, x]`.
    pub case: Vec<usize>,
    pub relation: String,
    #[serde(serialize_with = "rational::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "rational::ser_rational")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub statement: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(statement: impl Into<String>) -> Self {
        VerificationReport {
            statement: statement.into(),
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            pass: true,
        }
    }

    pub fn check(&mut self, case: &[usize], relation: &str, lhs: Rational, rhs: Rational) -> bool {
        self.cases += 1;
        if lhs == rhs {
            return true;
        }
        self.failure_count += 1;
        self.pass = false;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(Failure {
                case: case.to_vec(),
                relation: relation.to_string(),
                lhs,
                rhs,
            });
        }
        false
    }

    /// Appends `other`, whose cases must come after this report's.
    pub fn merge(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        self.pass &= other.pass;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    fn merged(statement: &str, parts: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut out = VerificationReport::new(statement);
        for part in parts {
            out.merge(part);
        }
        out
    }
}

/// Translations, their inverses and cocycles, computed once per verifier call.
struct LoopData {
    mu: Measure,
    left: Vec<Permutation>,
    left_inv: Vec<Permutation>,
    right: Vec<Permutation>,
    right_inv: Vec<Permutation>,
    deviations: DeviationFamily,
    deviation_inv: Vec<Permutation>,
    lambda: CocycleTable,
    rho: CocycleTable,
    /// `jacobian[a * n + b][x] = J_Φ(a, b; x)`.
    jacobian: Vec<Vec<Rational>>,
}

impl LoopData {
    fn new(table: &LoopTable, mu: &Measure) -> Result<Self, MeasureError> {
        check_sizes(table.order(), mu.len())?;
        let n = table.order();
        let left = table.translations(Side::Left);
        let right = table.translations(Side::Right);
        let deviations = table.deviation_family();
        let deviation_inv: Vec<Permutation> = (0..n * n)
            .map(|k| deviations.get(k / n, k % n).inverse())
            .collect();
        let jacobian = deviation_inv
            .iter()
            .map(|inv| rn_with_inverse(inv, mu).into_values())
            .collect();
        Ok(LoopData {
            mu: mu.clone(),
            left_inv: left.iter().map(Permutation::inverse).collect(),
            right_inv: right.iter().map(Permutation::inverse).collect(),
            left,
            right,
            deviations,
            deviation_inv,
            lambda: cocycle_table(table, mu, Side::Left)?,
            rho: cocycle_table(table, mu, Side::Right)?,
            jacobian,
        })
    }

    fn n(&self) -> usize {
        self.left.len()
    }

    fn jacobian(&self, a: Element, b: Element, x: Element) -> &Rational {
        &self.jacobian[a * self.n() + b][x]
    }
}

/// Checks `rn(f∘g)(x) = rn(f)(x) · rn(g)(f⁻¹x)` at every point.
pub fn verify_chain_rule(
    f: &Permutation,
    g: &Permutation,
    mu: &Measure,
) -> Result<VerificationReport, MeasureError> {
    check_sizes(f.len(), mu.len())?;
    check_sizes(g.len(), mu.len())?;
    let mut report = VerificationReport::new("chain rule");
    chain_rule_into(&mut report, &[], f, g, mu);
    Ok(report)
}

fn chain_rule_into(
    report: &mut VerificationReport,
    prefix: &[usize],
    f: &Permutation,
    g: &Permutation,
    mu: &Measure,
) {
    let f_inv = f.inverse();
    let composite = rn_with_inverse(&f.compose(g).inverse(), mu);
    let outer = rn_with_inverse(&f_inv, mu);
    let inner = rn_with_inverse(&g.inverse(), mu);
    let mut case = prefix.to_vec();
    case.push(0);
    for x in 0..mu.len() {
        *case.last_mut().unwrap() = x;
        report.check(
            &case,
            "chain rule",
            composite.get(x).clone(),
            outer.get(x) * inner.get(f_inv.apply(x)),
        );
    }
}

/// The chain rule on every pair of translations `(T, T')` with
/// `T, T' ∈ {L_a, R_a}`, plus every factorization pair `(Φ_{a,b}, L_{ab})`.
///
/// Translation cases are `[i, j, x]` with `i = side·n + a` (left = 0, right = 1);
/// deviation cases are `[a, b, x]`.
pub fn verify_translation_chain_rules(
    table: &LoopTable,
    mu: &Measure,
) -> Result<VerificationReport, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    let n = table.order();
    let translations: Vec<Permutation> = table
        .translations(Side::Left)
        .into_iter()
        .chain(table.translations(Side::Right))
        .collect();
    let deviations = table.deviation_family();
    let pairs: Vec<VerificationReport> = (0..2 * n)
        .into_par_iter()
        .map(|i| {
            let mut r = VerificationReport::new("");
            for (j, g) in translations.iter().enumerate() {
                chain_rule_into(&mut r, &[i, j], &translations[i], g, mu);
            }
            r
        })
        .collect();
    let devs: Vec<VerificationReport> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut r = VerificationReport::new("");
            for b in 0..n {
                let lab = &translations[table.mul(a, b)];
                chain_rule_into(&mut r, &[a, b], deviations.get(a, b), lab, mu);
            }
            r
        })
        .collect();
    Ok(VerificationReport::merged(
        "chain rule on translations and deviation factorizations",
        pairs.into_iter().chain(devs),
    ))
}

/// For all `(a, b, x)`:
/// `λ(a,x) λ(b, L_a⁻¹x) = J_Φ(a,b;x) λ(ab, Φ_{a,b}⁻¹x)` and the same relation
/// with `x` replaced by `Φ_{a,b}(x)`.
pub fn verify_cocycle_relation(
    table: &LoopTable,
    mu: &Measure,
) -> Result<VerificationReport, MeasureError> {
    let data = LoopData::new(table, mu)?;
    let n = data.n();
    let rows: Vec<VerificationReport> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut r = VerificationReport::new("");
            let lam = &data.lambda;
            for b in 0..n {
                let ab = table.mul(a, b);
                let phi = data.deviations.get(a, b);
                let phi_inv = &data.deviation_inv[a * n + b];
                for x in 0..n {
                    let case = [a, b, x];
                    r.check(
                        &case,
                        "deviation-corrected",
                        lam.get(a, x) * lam.get(b, data.left_inv[a].apply(x)),
                        data.jacobian(a, b, x) * lam.get(ab, phi_inv.apply(x)),
                    );
                    let y = phi.apply(x);
                    r.check(
                        &case,
                        "deviation-corrected at Φ(x)",
                        lam.get(a, y) * lam.get(b, data.left_inv[a].apply(y)),
                        data.jacobian(a, b, y) * lam.get(ab, x),
                    );
                }
            }
            r
        })
        .collect();
    Ok(VerificationReport::merged("deviation-corrected cocycle relation", rows))
}

/// Checks the untwisted relation `λ(a,x) λ(b, L_a⁻¹x) = λ(ab, x)` on the given pairs.
pub fn verify_untwisted_relation(
    table: &LoopTable,
    mu: &Measure,
    pairs: &[(Element, Element)],
) -> Result<VerificationReport, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    for &(a, b) in pairs {
        table.multiply(a, b)?;
    }
    let lam = cocycle_table(table, mu, Side::Left)?;
    let left_inv: Vec<Permutation> = table
        .translations(Side::Left)
        .iter()
        .map(Permutation::inverse)
        .collect();
    let mut report = VerificationReport::new("untwisted cocycle relation");
    for &(a, b) in pairs {
        let ab = table.mul(a, b);
        for x in table.elements() {
            report.check(
                &[a, b, x],
                "untwisted",
                lam.get(a, x) * lam.get(b, left_inv[a].apply(x)),
                lam.get(ab, x).clone(),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    /// Pairs with `Φ_{a,b} = id`.
    pub pairs: Vec<(Element, Element)>,
    pub report: VerificationReport,
}

pub fn rigidity_report(table: &LoopTable, mu: &Measure) -> Result<RigidityReport, MeasureError> {
    let pairs = table.deviation_family().trivial_pairs();
    let mut report = verify_untwisted_relation(table, mu, &pairs)?;
    report.statement = "rigidity: untwisted relation on trivial-deviation pairs".into();
    Ok(RigidityReport { pairs, report })
}

/// One factor of a chain-rule expansion.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Translation(Side, Element),
    Deviation(Element, Element),
}

impl LoopData {
    fn density(&self, piece: Piece, x: Element) -> &Rational {
        match piece {
            Piece::Translation(Side::Left, c) => self.lambda.get(c, x),
            Piece::Translation(Side::Right, c) => self.rho.get(c, x),
            Piece::Deviation(a, b) => self.jacobian(a, b, x),
        }
    }

    fn inverse(&self, piece: Piece) -> &Permutation {
        match piece {
            Piece::Translation(Side::Left, c) => &self.left_inv[c],
            Piece::Translation(Side::Right, c) => &self.right_inv[c],
            Piece::Deviation(a, b) => &self.deviation_inv[a * self.n() + b],
        }
    }

    fn forward(&self, piece: Piece) -> &Permutation {
        match piece {
            Piece::Translation(Side::Left, c) => &self.left[c],
            Piece::Translation(Side::Right, c) => &self.right[c],
            Piece::Deviation(a, b) => self.deviations.get(a, b),
        }
    }

    fn compose(&self, pieces: &[Piece]) -> Permutation {
        pieces
            .iter()
            .fold(Permutation::identity(self.n()), |acc, &p| acc.compose(self.forward(p)))
    }

    /// Iterated chain rule for `p1 ∘ … ∘ pk` at `x`:
    /// `Π_i rn(p_i)((p1 ∘ … ∘ p_{i-1})⁻¹ x)`.
    fn expand(&self, pieces: &[Piece], x: Element) -> Rational {
        let mut acc = Rational::one();
        let mut pre = x;
        for &p in pieces {
            acc *= self.density(p, pre);
            pre = self.inverse(p).apply(pre);
        }
        acc
    }
}

/// Rewrites each adjacent `L_a ∘ L_b` as `Φ_{a,b} ∘ L_{ab}`, scanning outermost first.
fn fold_deviations(table: &LoopTable, pieces: &[Piece]) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len() * 2);
    for &p in pieces {
        match (out.last().copied(), p) {
            (Some(Piece::Translation(Side::Left, a)), Piece::Translation(Side::Left, b)) => {
                out.pop();
                out.push(Piece::Deviation(a, b));
                out.push(Piece::Translation(Side::Left, table.mul(a, b)));
            }
            _ => out.push(p),
        }
    }
    out
}

/// Compatibility of the two translation factorizations an identity induces.
///
/// For every assignment of the non-point variables both sides are compiled to
/// translation words and checked for
/// * equality as permutations of the point (`factorization`),
/// * equal direct densities of the two composites (`density`),
/// * each word's λ/ρ chain-rule expansion reproducing its direct density,
/// * equality of the two expansions after rewriting adjacent left
///   translations through deviation maps, i.e. the λ/ρ/J compatibility relation.
///
/// Cases are the parameter values (alphabetical, point excluded) followed by the point value.
pub fn identity_compatibility(
    table: &LoopTable,
    mu: &Measure,
    identity: &IdentityAst,
    point: char,
) -> Result<VerificationReport, MeasureError> {
    check_sizes(table.order(), mu.len())?;
    let lhs_word = compile_translation_word(identity.lhs(), point)?;
    let rhs_word = compile_translation_word(identity.rhs(), point)?;
    let verdict = check_identity(table, identity);
    if let Some(cx) = verdict.counterexample {
        return Err(MeasureError::IdentityFails(cx));
    }

    let data = LoopData::new(table, mu)?;
    let n = table.order();
    let params: Vec<char> = identity
        .variables()
        .iter()
        .copied()
        .filter(|&v| v != point)
        .collect();
    let total = n.pow(params.len() as u32);

    let parts: Vec<VerificationReport> = (0..total)
        .into_par_iter()
        .map(|index| {
            let mut digits = vec![0; params.len()];
            let mut rest = index;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            compatibility_case(table, &data, &lhs_word, &rhs_word, &params, &digits)
        })
        .collect();
    Ok(VerificationReport::merged(
        &format!("translation compatibility of `{identity}` at point {point}"),
        parts,
    ))
}

fn compatibility_case(
    table: &LoopTable,
    data: &LoopData,
    lhs_word: &TranslationWord,
    rhs_word: &TranslationWord,
    params: &[char],
    digits: &[Element],
) -> VerificationReport {
    let assignment = params.iter().copied().zip(digits.iter().copied()).collect();
    let resolve = |w: &TranslationWord| -> Vec<Piece> {
        w.resolve(table, &assignment)
            .expect("every parameter variable is bound")
            .into_iter()
            .map(|(side, c)| Piece::Translation(side, c))
            .collect()
    };
    let lhs = resolve(lhs_word);
    let rhs = resolve(rhs_word);
    let lhs_folded = fold_deviations(table, &lhs);
    let rhs_folded = fold_deviations(table, &rhs);
    let t1 = data.compose(&lhs);
    let t2 = data.compose(&rhs);
    let rn1 = rn_with_inverse(&t1.inverse(), &data.mu);
    let rn2 = rn_with_inverse(&t2.inverse(), &data.mu);

    let mut r = VerificationReport::new("");
    let mut case = digits.to_vec();
    case.push(0);
    for x in table.elements() {
        *case.last_mut().unwrap() = x;
        r.check(
            &case,
            "factorization",
            rational::integer(t1.apply(x) as i64),
            rational::integer(t2.apply(x) as i64),
        );
        r.check(&case, "density", rn1.get(x).clone(), rn2.get(x).clone());
        r.check(&case, "lhs chain-rule expansion", data.expand(&lhs, x), rn1.get(x).clone());
        r.check(&case, "rhs chain-rule expansion", data.expand(&rhs, x), rn2.get(x).clone());
        r.check(
            &case,
            "deviation-corrected compatibility",
            data.expand(&lhs_folded, x),
            data.expand(&rhs_folded, x),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic, octonion16, q5_nonassoc};
    use crate::identity::{builtin_identity, IdentityError};
    use crate::measure::rational::rational;
    use crate::measure::{deviation_jacobian, rn_derivative};

    fn mu12345() -> Measure {
        Measure::from_integers(&[1, 2, 3, 4, 5]).unwrap()
    }

    #[test]
    fn chain_rule_on_q5_translations() {
        let q = q5_nonassoc();
        let l1 = q.translation(Side::Left, 1).unwrap();
        let l2 = q.translation(Side::Left, 2).unwrap();
        let report = verify_chain_rule(&l1, &l2, &mu12345()).unwrap();
        assert!(report.pass);
        assert_eq!(report.cases, 5);
        let id = Permutation::identity(5);
        assert!(verify_chain_rule(&id, &id, &mu12345()).unwrap().pass);
        assert!(verify_chain_rule(&id, &Permutation::identity(4), &mu12345()).is_err());
    }

    #[test]
    fn cocycle_relation_hand_case() {
        let q = q5_nonassoc();
        let mu = mu12345();
        let lam = cocycle_table(&q, &mu, Side::Left).unwrap();
        let j = deviation_jacobian(&q, &mu, 1, 1).unwrap();
        // L_1⁻¹(2) = 4 and Φ_{1,1}⁻¹(2) = 3; 1·1 = 0.
        let lhs = lam.get(1, 2) * lam.get(1, 4);
        let rhs = j.get(2) * lam.get(0, 3);
        assert_eq!(lhs, rational(4, 3));
        assert_eq!(rhs, rational(4, 3));

        let report = verify_cocycle_relation(&q, &mu).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        assert_eq!(report.cases, 250);
    }

    #[test]
    fn counting_measure_is_tautological() {
        let q = q5_nonassoc();
        let report = verify_cocycle_relation(&q, &Measure::counting(5)).unwrap();
        assert!(report.pass);
        assert_eq!(report.cases, 250);
    }

    #[test]
    fn associative_case_untwisted() {
        let c = cyclic(4);
        let mu = Measure::from_integers(&[3, 1, 4, 1]).unwrap();
        let rigid = rigidity_report(&c, &mu).unwrap();
        assert_eq!(rigid.pairs.len(), 16);
        assert!(rigid.report.pass);
        assert!(verify_cocycle_relation(&c, &mu).unwrap().pass);
    }

    #[test]
    fn rigidity_on_q5() {
        let q = q5_nonassoc();
        let rigid = rigidity_report(&q, &mu12345()).unwrap();
        assert!(rigid.report.pass);
        for a in 0..5 {
            assert!(rigid.pairs.contains(&(0, a)) && rigid.pairs.contains(&(a, 0)));
        }
        assert!(!rigid.pairs.contains(&(1, 1)));
        let outside = verify_untwisted_relation(&q, &mu12345(), &[(1, 1)]).unwrap();
        assert!(!outside.pass);
        // x = 0 and x = 1 balance out; x = 2 is the first failure.
        assert_eq!(outside.failures[0].case, vec![1, 1, 2]);
    }

    #[test]
    fn failure_storage_is_capped() {
        let mut r = VerificationReport::new("t");
        for i in 0..150 {
            r.check(&[i], "x", rational(1, 1), rational(2, 1));
        }
        assert_eq!((r.cases, r.failure_count, r.failures.len()), (150, 150, 100));
        let mut merged = VerificationReport::new("m");
        merged.merge(r.clone());
        merged.merge(r);
        assert_eq!((merged.cases, merged.failure_count, merged.failures.len()), (300, 300, 100));
        assert!(!merged.pass);
    }

    #[test]
    fn translation_chain_rules_pass() {
        let q = q5_nonassoc();
        let report = verify_translation_chain_rules(&q, &mu12345()).unwrap();
        assert!(report.pass);
        assert_eq!(report.cases, (100 + 25) * 5);
    }

    #[test]
    fn fold_rewrites_left_runs() {
        let q = q5_nonassoc();
        let folded = fold_deviations(
            &q,
            &[
                Piece::Translation(Side::Left, 1),
                Piece::Translation(Side::Left, 2),
                Piece::Translation(Side::Right, 2),
            ],
        );
        assert!(matches!(
            folded.as_slice(),
            [
                Piece::Deviation(1, 2),
                Piece::Translation(Side::Left, 3),
                Piece::Translation(Side::Right, 2)
            ]
        ));
    }

    #[test]
    fn compatibility_examples() {
        let o = octonion16();
        let kunen = builtin_identity("kunen").unwrap();
        let report = identity_compatibility(&o, &Measure::counting(16), &kunen, 'z').unwrap();
        assert!(report.pass);
        assert_eq!(report.cases, 256 * 16 * 5);

        let weights: Vec<i64> = (1..=16).map(|i| (i * 7) % 11 + 1).collect();
        let mu = Measure::from_integers(&weights).unwrap();
        assert!(identity_compatibility(&o, &mu, &kunen, 'z').unwrap().pass);

        let assoc = builtin_identity("associativity").unwrap();
        let mu = Measure::from_integers(&[5, 2, 9, 4]).unwrap();
        assert!(identity_compatibility(&cyclic(4), &mu, &assoc, 'z').unwrap().pass);
    }

    #[test]
    fn compatibility_errors() {
        let q = q5_nonassoc();
        let assoc = builtin_identity("associativity").unwrap();
        match identity_compatibility(&q, &Measure::counting(5), &assoc, 'z') {
            Err(MeasureError::IdentityFails(cx)) => {
                assert_eq!(cx.assignment, vec![('x', 1), ('y', 1), ('z', 2)]);
            }
            other => panic!("{other:?}"),
        }
        let kunen = builtin_identity("kunen").unwrap();
        assert!(matches!(
            identity_compatibility(&octonion16(), &Measure::counting(16), &kunen, 'y'),
            Err(MeasureError::Identity(IdentityError::NonlinearPoint { point: 'y', .. }))
        ));
    }

    #[test]
    fn direct_density_matches_expansion_for_kunen_words() {
        let o = octonion16();
        let mu = Measure::from_integers(&(1..=16).collect::<Vec<_>>()).unwrap();
        let kunen = builtin_identity("kunen").unwrap();
        let w = compile_translation_word(kunen.rhs(), 'z').unwrap();
        let a = [('x', 3), ('y', 5)].into_iter().collect();
        let t = crate::identity::evaluate_word(&o, &w, &a).unwrap();
        let direct = rn_derivative(&t, &mu).unwrap();
        let data = LoopData::new(&o, &mu).unwrap();
        let pieces: Vec<Piece> = w
            .resolve(&o, &a)
            .unwrap()
            .into_iter()
            .map(|(s, c)| Piece::Translation(s, c))
            .collect();
        for x in 0..16 {
            assert_eq!(&data.expand(&pieces, x), direct.get(x));
        }
    }
}
