mod common;

use loopmod::fixtures::{cyclic, octonion16, q5_nonassoc};
use loopmod::identity::BUILTIN_IDENTITIES;
use loopmod::{
    builtin_identity, check_identity, compile_translation_word, evaluate_word, parse_identity,
    Assignment, IdentityAst, LoopTable,
};

fn fixture_identities() -> Vec<IdentityAst> {
    let mut ids: Vec<IdentityAst> = BUILTIN_IDENTITIES
        .iter()
        .map(|n| builtin_identity(n).unwrap())
        .collect();
    ids.push(parse_identity("x = x").unwrap());
    ids.push(parse_identity("x*y = y*x").unwrap());
    ids.push(parse_identity("(x*(y*z))*w = x*((y*z)*w)").unwrap());
    ids
}

/// Calls `f` with every assignment of `vars` over `0..n`.
fn for_each_assignment(vars: &[char], n: usize, mut f: impl FnMut(&Assignment)) {
    let total = n.pow(vars.len() as u32);
    for mut index in 0..total {
        let mut a = Assignment::new();
        for &v in vars.iter().rev() {
            a.set(v, index % n);
            index /= n;
        }
        f(&a);
    }
}

#[test]
fn printed_identities_reparse() {
    for id in fixture_identities() {
        assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
    }
}

#[test]
fn compiled_words_agree_with_direct_evaluation() {
    for t in common::loops_up_to(5) {
        let n = t.order();
        for id in fixture_identities() {
            for side in [id.lhs(), id.rhs()] {
                for point in side.variables() {
                    let Ok(word) = compile_translation_word(side, point) else {
                        assert_ne!(side.occurrences(point), 1);
                        continue;
                    };
                    let params: Vec<char> =
                        side.variables().into_iter().filter(|&v| v != point).collect();
                    for_each_assignment(&params, n, |a| {
                        let perm = evaluate_word(&t, &word, a).unwrap();
                        for z in 0..n {
                            let direct = side.evaluate(&t, &a.clone().with(point, z)).unwrap();
                            assert_eq!(perm.apply(z), direct, "{side} at {point}={z}");
                        }
                    });
                }
            }
        }
    }
}

#[test]
fn identity_holds_iff_compiled_words_coincide() {
    let mut loops = common::loops_up_to(5);
    loops.push(q5_nonassoc());
    for t in &loops {
        for id in fixture_identities() {
            let Some(point) = id.default_point() else { continue };
            let lw = compile_translation_word(id.lhs(), point).unwrap();
            let rw = compile_translation_word(id.rhs(), point).unwrap();
            let params: Vec<char> = id.variables().iter().copied().filter(|&v| v != point).collect();
            let mut words_agree = true;
            for_each_assignment(&params, t.order(), |a| {
                words_agree &= evaluate_word(t, &lw, a).unwrap() == evaluate_word(t, &rw, a).unwrap();
            });
            assert_eq!(check_identity(t, &id).holds, words_agree, "{id}");
        }
    }
}

#[test]
fn groups_satisfy_every_builtin() {
    for n in 2..=8 {
        let g = cyclic(n);
        for name in BUILTIN_IDENTITIES {
            assert!(check_identity(&g, &builtin_identity(name).unwrap()).holds, "{name} on Z/{n}");
        }
    }
}

#[test]
fn octonion_units_are_moufang() {
    let o = octonion16();
    let kunen = check_identity(&o, &builtin_identity("kunen").unwrap());
    assert!(kunen.holds);
    assert_eq!(kunen.checked, 16 * 16 * 16);
    for name in ["moufang-left", "left-bol", "right-bol", "flexible"] {
        assert!(check_identity(&o, &builtin_identity(name).unwrap()).holds, "{name}");
    }
    let assoc = check_identity(&o, &builtin_identity("associativity").unwrap());
    assert!(!assoc.holds);
    // The stored counterexample re-evaluates to the stored sides.
    let cx = assoc.counterexample.unwrap();
    let id = builtin_identity("associativity").unwrap();
    assert_eq!(id.lhs().evaluate(&o, &cx.to_assignment()).unwrap(), cx.lhs);
    assert_eq!(id.rhs().evaluate(&o, &cx.to_assignment()).unwrap(), cx.rhs);
}

#[test]
fn kunen_words_coincide_on_octonions() {
    let o = octonion16();
    let kunen = builtin_identity("kunen").unwrap();
    let lw = compile_translation_word(kunen.lhs(), 'z').unwrap();
    let rw = compile_translation_word(kunen.rhs(), 'z').unwrap();
    for_each_assignment(&['x', 'y'], 16, |a| {
        assert_eq!(evaluate_word(&o, &lw, a).unwrap(), evaluate_word(&o, &rw, a).unwrap());
    });
}

#[test]
fn q5_fails_kunen_somewhere() {
    // Q5 is not Moufang; the checker must find a counterexample and it must re-evaluate.
    let q: LoopTable = q5_nonassoc();
    let v = check_identity(&q, &builtin_identity("kunen").unwrap());
    assert!(!v.holds);
    let cx = v.counterexample.unwrap();
    assert_ne!(cx.lhs, cx.rhs);
}
