//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use loopmod::enumerate::{count_loops, enumerate_loops_parallel};
use loopmod::fixtures::{cyclic, octonion16, q5_nonassoc};
use loopmod::measure::rational::one;
use loopmod::measure::{
    cocycle_table, deviation_jacobian, invariant_measure_basis, modular_function, rigidity_report,
    translation_generators, unimodularity_check, verify_chain_rule, verify_cocycle_relation,
    verify_untwisted_relation, ModularOutcome, TranslationSet,
};
use loopmod::{
    builtin_identity, check_identity, compile_translation_word, evaluate_word, rn_derivative,
    Assignment, EnumerationConfig, LoopTable, Measure, Side,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_cocycles_trivial(t: &LoopTable, mu: &Measure) -> bool {
    let tables_trivial = [Side::Left, Side::Right]
        .iter()
        .all(|&k| cocycle_table(t, mu, k).unwrap().is_trivial());
    tables_trivial
        && t.elements().all(|a| {
            t.elements()
                .all(|b| deviation_jacobian(t, mu, a, b).unwrap().is_trivial())
        })
}

fn counting_measure_tautology() -> Outcome {
    let mut loops = 0;
    for t in common::loops_up_to(6) {
        let n = t.order();
        let mu = Measure::counting(n);
        ensure(all_cocycles_trivial(&t, &mu), || format!("nontrivial cocycle on\n{}", t.to_text()))?;
        let report = verify_cocycle_relation(&t, &mu).unwrap();
        ensure(report.pass && report.cases == 2 * (n as u64).pow(3), || {
            format!("cocycle relation failed on\n{}", t.to_text())
        })?;
        loops += 1;
    }
    Ok(format!("{loops} loops of order 1-6"))
}

fn deviation_corrected_relation() -> Outcome {
    let mut rng = common::rng(0x5eed_0002);
    let mut cases = 0;
    for t in common::loops_up_to(5) {
        for _ in 0..5 {
            let mu = common::random_measure(&mut rng, t.order());
            let report = verify_cocycle_relation(&t, &mu).unwrap();
            ensure(report.pass, || format!("{:?} on\n{}", report.failures.first(), t.to_text()))?;
            cases += report.cases;
        }
    }
    Ok(format!("{cases} cases, both forms"))
}

fn chain_rule() -> Outcome {
    let mut rng = common::rng(0x5eed_0003);
    for i in 0..1000 {
        let n = 3 + i % 6;
        let f = common::random_permutation(&mut rng, n);
        let g = common::random_permutation(&mut rng, n);
        let mu = common::random_measure(&mut rng, n);
        ensure(verify_chain_rule(&f, &g, &mu).unwrap().pass, || format!("f={f} g={g}"))?;
    }
    Ok("1000 triples, n in 3..=8".into())
}

fn associative_limit() -> Outcome {
    let mut rng = common::rng(0x5eed_0004);
    for n in 1..=8 {
        let g = cyclic(n);
        let devs = g.deviation_family();
        ensure(devs.trivial_pairs().len() == n * n, || format!("Z/{n}: nontrivial deviation"))?;
        let pairs = devs.trivial_pairs();
        for _ in 0..5 {
            let mu = common::random_measure(&mut rng, n);
            for a in 0..n {
                for b in 0..n {
                    ensure(deviation_jacobian(&g, &mu, a, b).unwrap().is_trivial(), || {
                        format!("Z/{n}: J({a},{b}) ≠ 1")
                    })?;
                }
            }
            ensure(verify_untwisted_relation(&g, &mu, &pairs).unwrap().pass, || {
                format!("Z/{n}: untwisted relation")
            })?;
        }
        for kind in [Side::Left, Side::Right] {
            match modular_function(&g, &Measure::counting(n), kind).unwrap() {
                ModularOutcome::Constant(m)
                    if m.values.iter().all(|v| *v == one()) && m.multiplicative == Some(true) => {}
                other => return Err(format!("Z/{n}: modular function {other:?}")),
            }
        }
    }
    Ok("cyclic groups of order 1-8".into())
}

fn rigidity() -> Outcome {
    let mut rng = common::rng(0x5eed_0005);
    let mut pairs = 0;
    for t in common::loops_up_to(5) {
        let mu = common::random_measure(&mut rng, t.order());
        for mu in [Measure::counting(t.order()), mu] {
            let r = rigidity_report(&t, &mu).unwrap();
            ensure(r.report.pass, || format!("{:?} on\n{}", r.report.failures.first(), t.to_text()))?;
            pairs += r.pairs.len();
        }
    }
    let q5 = q5_nonassoc();
    let mu = Measure::from_integers(&[1, 2, 3, 4, 5]).unwrap();
    let outside: Vec<(usize, usize)> = q5
        .elements()
        .flat_map(|a| q5.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| !q5.deviation(a, b).unwrap().is_identity())
        .collect();
    let report = verify_untwisted_relation(&q5, &mu, &outside).unwrap();
    ensure(!report.pass, || "Q5: untwisted relation held outside P".into())?;
    let first = &report.failures[0].case;
    Ok(format!(
        "{pairs} trivial-deviation pairs; Q5 fails outside P at (a,b,x)=({},{},{})",
        first[0], first[1], first[2]
    ))
}

fn kunen_compatibility() -> Outcome {
    let o = octonion16();
    let kunen = builtin_identity("kunen").unwrap();
    let verdict = check_identity(&o, &kunen);
    ensure(verdict.holds && verdict.checked == 4096, || format!("{verdict:?}"))?;
    let lw = compile_translation_word(kunen.lhs(), 'z').unwrap();
    let rw = compile_translation_word(kunen.rhs(), 'z').unwrap();
    ensure(lw.to_string() == "R[y] ∘ L[(x*y)]", || format!("lhs word {lw}"))?;
    ensure(rw.to_string() == "L[x] ∘ L[y] ∘ R[y]", || format!("rhs word {rw}"))?;
    let mut rng = common::rng(0x5eed_0006);
    for _ in 0..20 {
        let mu = common::random_measure(&mut rng, 16);
        for x in 0..16 {
            for y in 0..16 {
                let a: Assignment = [('x', x), ('y', y)].into_iter().collect();
                let lp = evaluate_word(&o, &lw, &a).unwrap();
                let rp = evaluate_word(&o, &rw, &a).unwrap();
                ensure(lp == rp, || format!("words differ at x={x}, y={y}"))?;
                ensure(
                    rn_derivative(&lp, &mu).unwrap() == rn_derivative(&rp, &mu).unwrap(),
                    || format!("densities differ at x={x}, y={y}"),
                )?;
            }
        }
    }
    Ok("4096 assignments hold; 20 measures x 256 assignments agree".into())
}

fn enumeration_counts() -> Outcome {
    const NORMALIZED: [u64; 6] = [1, 1, 1, 4, 56, 9408];
    const CLASSES: [u64; 6] = [1, 1, 1, 2, 6, 109];
    for n in 1..=6 {
        let normalized = count_loops(&EnumerationConfig::normalized(n)).unwrap();
        ensure(normalized == NORMALIZED[n - 1], || format!("order {n}: {normalized} normalized"))?;
        let classes = if n == 6 {
            enumerate_loops_parallel(&EnumerationConfig::up_to_isomorphism(n)).unwrap().len() as u64
        } else {
            count_loops(&EnumerationConfig::up_to_isomorphism(n)).unwrap()
        };
        ensure(classes == CLASSES[n - 1], || format!("order {n}: {classes} classes"))?;
        if n <= 4 {
            let slow = common::slow_normalized_loops(n).len() as u64;
            let slow_classes = common::slow_isomorphism_classes(n) as u64;
            ensure(slow == normalized && slow_classes == classes, || {
                format!("order {n}: brute force gives {slow}/{slow_classes}")
            })?;
        }
    }
    Ok("1 1 1 4 56 9408 / 1 1 1 2 6 109".into())
}

fn unimodularity() -> Outcome {
    let mut rng = common::rng(0x5eed_0008);
    let mut loops = 0;
    for t in common::loops_up_to(5) {
        let n = t.order();
        let left = translation_generators(&t, TranslationSet::Left);
        ensure(invariant_measure_basis(&t, &left).unwrap().is_transitive(), || {
            format!("left orbits not transitive on\n{}", t.to_text())
        })?;
        ensure(unimodularity_check(&t, &Measure::counting(n)).unwrap().unimodular, || {
            format!("uniform rejected on\n{}", t.to_text())
        })?;
        if n >= 2 {
            for _ in 0..20 {
                let mu = common::random_nonuniform_measure(&mut rng, n);
                ensure(!unimodularity_check(&t, &mu).unwrap().unimodular, || {
                    format!("non-uniform {} accepted on\n{}", mu.to_text(), t.to_text())
                })?;
            }
        }
        loops += 1;
    }
    Ok(format!("{loops} loops"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("counting-measure tautology", counting_measure_tautology),
        ("deviation-corrected cocycle relation", deviation_corrected_relation),
        ("chain rule", chain_rule),
        ("associative limit", associative_limit),
        ("rigidity", rigidity),
        ("kunen compatibility on octonion16", kunen_compatibility),
        ("enumeration counts", enumeration_counts),
        ("unimodularity iff uniform", unimodularity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
