use std::fmt::Write;

use anyhow::{bail, Context, Result};
use loopmod::enumerate::{count_loops_parallel, enumerate_loops_parallel};
use loopmod::identity::BUILTIN_IDENTITIES;
use loopmod::measure::rational::format_rational;
use loopmod::measure::{
    cocycle_table, identity_compatibility, invariant_measure_basis, modular_function, mult_group_size,
    rigidity_report, translation_generators, unimodularity_check, verify_cocycle_relation,
    verify_translation_chain_rules, ModularOutcome, TranslationSet,
};
use loopmod::{
    builtin_identity, check_identity, compile_translation_word, AssociativityWitness, EnumerationConfig,
    IdentityAst, LoopTable, Measure, MeasureError, Side, VerificationReport,
};
use serde_json::{json, Value};

use crate::cli::*;
use crate::input::{load_identity, load_loop, load_measure, resolve_point};

/// Largest multiplication group the reports try to close.
const GROUP_CAP: usize = 100_000;

pub struct Output {
    pub text: String,
    pub json: Value,
    /// False when a verification failed or a counterexample was found.
    pub success: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, success: true }
    }
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Validate(a) => validate(&load_loop(&a.loop_file)?),
        Command::Enumerate(a) => enumerate(a),
        Command::Check(a) => check(a),
        Command::CompileIdentity(a) => compile(a),
        Command::Cocycle(a) => {
            let table = load_loop(&a.loop_file)?;
            let mu = load_measure(&a.measure.measure, table.order())?;
            cocycle(&table, &mu, a.side)
        }
        Command::Deviation(a) => deviation(&load_loop(&a.loop_file)?),
        Command::Verify(a) => verify(a),
        Command::InvariantMeasures(a) => invariant_measures(&load_loop(&a.loop_file)?, &a.generators),
        Command::Report(a) => report(a),
    }
}

fn witness_text(w: &AssociativityWitness) -> String {
    match w {
        AssociativityWitness::Associative => "associative".into(),
        AssociativityWitness::Violation { a, b, c, left_grouped, right_grouped } => format!(
            "not associative: ({a}*{b})*{c} = {left_grouped} but {a}*({b}*{c}) = {right_grouped}"
        ),
    }
}

fn validate(table: &LoopTable) -> Result<Output> {
    let witness = table.associativity_witness();
    let text = format!(
        "order: {}\nidentity: {}\n{}\n",
        table.order(),
        table.identity(),
        witness_text(&witness)
    );
    let json = json!({
        "order": table.order(),
        "identity": table.identity(),
        "associative": witness.is_associative(),
        "witness": witness,
    });
    Ok(Output::ok(text, json))
}

fn rows_json(table: &LoopTable) -> Value {
    json!(table.rows().collect::<Vec<_>>())
}

fn enumerate(a: &EnumerateArgs) -> Result<Output> {
    let mut cfg = if a.iso {
        EnumerationConfig::up_to_isomorphism(a.order)
    } else {
        EnumerationConfig::normalized(a.order)
    };
    cfg = cfg.with_prefix(a.prefix.clone());
    if let Some(limit) = a.limit {
        cfg = cfg.with_limit(limit);
    }
    let mode = if a.iso { "isomorphism classes" } else { "normalized" };
    if a.count_only {
        let count = count_loops_parallel(&cfg)?;
        return Ok(Output::ok(
            format!("{count}\n"),
            json!({ "order": a.order, "mode": mode, "count": count }),
        ));
    }
    let loops = enumerate_loops_parallel(&cfg)?;
    let text = loops.iter().map(LoopTable::to_text).collect::<Vec<_>>().join("\n");
    let json = json!({
        "order": a.order,
        "mode": mode,
        "count": loops.len(),
        "loops": loops.iter().map(rows_json).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, json))
}

fn check(a: &CheckArgs) -> Result<Output> {
    let identity = load_identity(a.source.identity.as_deref(), a.source.builtin.as_deref())?;
    let table = load_loop(&a.loop_file)?;
    let verdict = check_identity(&table, &identity);
    let text = match &verdict.counterexample {
        None => format!("{identity}: holds ({} assignments checked)\n", verdict.checked),
        Some(cx) => {
            let vars: Vec<String> = cx.assignment.iter().map(|(v, _)| v.to_string()).collect();
            let vals: Vec<String> = cx.assignment.iter().map(|(_, e)| e.to_string()).collect();
            format!(
                "{identity}: fails\ncounterexample: ({}) = ({})\nlhs = {}, rhs = {}\n",
                vars.join(","),
                vals.join(","),
                cx.lhs,
                cx.rhs
            )
        }
    };
    let json = json!({ "identity": identity.to_string(), "verdict": verdict });
    Ok(Output {
        text,
        json,
        success: verdict.holds,
    })
}

fn compile(a: &CompileArgs) -> Result<Output> {
    let identity = load_identity(a.source.identity.as_deref(), a.source.builtin.as_deref())?;
    let point = resolve_point(&identity, a.point)?;
    let lhs = compile_translation_word(identity.lhs(), point)?;
    let rhs = compile_translation_word(identity.rhs(), point)?;
    let text = format!("identity: {identity}\npoint: {point}\nlhs: {lhs}\nrhs: {rhs}\n");
    let json = json!({
        "identity": identity.to_string(),
        "point": point.to_string(),
        "lhs": { "word": lhs.to_string(), "factors": lhs.factors },
        "rhs": { "word": rhs.to_string(), "factors": rhs.factors },
    });
    Ok(Output::ok(text, json))
}

fn sides(choice: SideChoice) -> Vec<Side> {
    match choice {
        SideChoice::Left => vec![Side::Left],
        SideChoice::Right => vec![Side::Right],
        SideChoice::Both => vec![Side::Left, Side::Right],
    }
}

fn cocycle_symbol(side: Side) -> &'static str {
    match side {
        Side::Left => "λ",
        Side::Right => "ρ",
    }
}

fn join_rationals<'a>(values: impl IntoIterator<Item = &'a loopmod::Rational>) -> String {
    values.into_iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn cocycle(table: &LoopTable, mu: &Measure, choice: SideChoice) -> Result<Output> {
    let mut text = String::new();
    let mut tables = serde_json::Map::new();
    let mut modular = serde_json::Map::new();
    for side in sides(choice) {
        let sym = cocycle_symbol(side);
        let c = cocycle_table(table, mu, side)?;
        writeln!(text, "{sym}(a, x), {} cocycle, one row per a:", side.as_str()).unwrap();
        for a in table.elements() {
            writeln!(text, "  {a}: {}", join_rationals(c.row(a))).unwrap();
        }
        let outcome = modular_function(table, mu, side)?;
        match &outcome {
            ModularOutcome::Constant(m) => {
                write!(text, "Δ {}: {}", side.as_str(), join_rationals(&m.values)).unwrap();
                if let Some(mult) = m.multiplicative {
                    write!(text, " (multiplicative: {})", if mult { "yes" } else { "no" }).unwrap();
                }
                text.push('\n');
            }
            ModularOutcome::SpatiallyVarying { a, x1, x2, value1, value2 } => writeln!(
                text,
                "Δ {}: undefined, {sym}({a},{x1}) = {} but {sym}({a},{x2}) = {}",
                side.as_str(),
                format_rational(value1),
                format_rational(value2)
            )
            .unwrap(),
        }
        tables.insert(side.as_str().into(), json!(c));
        modular.insert(side.as_str().into(), json!(outcome));
    }
    let uni = unimodularity_check(table, mu)?;
    match uni.witness {
        None => text.push_str("unimodular: yes\n"),
        Some((side, a, x)) => {
            let value = cocycle_table(table, mu, side)?.get(a, x).clone();
            writeln!(
                text,
                "unimodular: no, {}({a},{x}) = {}",
                cocycle_symbol(side),
                format_rational(&value)
            )
            .unwrap();
        }
    }
    let json = json!({
        "measure": mu,
        "cocycles": tables,
        "modular_function": modular,
        "unimodularity": uni,
    });
    Ok(Output::ok(text, json))
}

fn deviation(table: &LoopTable) -> Result<Output> {
    let devs = table.deviation_family();
    let pairs = devs.trivial_pairs();
    let mut text = String::new();
    let mut nontrivial = Vec::new();
    for a in table.elements() {
        for b in table.elements() {
            let phi = devs.get(a, b);
            if !phi.is_identity() {
                writeln!(text, "Φ({a},{b}) = {phi}").unwrap();
                nontrivial.push(json!({ "a": a, "b": b, "cycles": phi.to_string(), "images": phi.images() }));
            }
        }
    }
    let n = table.order();
    let listed: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    writeln!(text, "trivial deviation pairs: {} of {}", pairs.len(), n * n).unwrap();
    writeln!(text, "P = {{{}}}", listed.join(", ")).unwrap();
    let json = json!({
        "order": n,
        "associative": nontrivial.is_empty(),
        "trivial_pairs": pairs,
        "nontrivial": nontrivial,
    });
    Ok(Output::ok(text, json))
}

fn report_text(r: &VerificationReport) -> String {
    if r.pass {
        return format!("{}: PASS ({} cases)\n", r.statement, r.cases);
    }
    let mut out = format!("{}: FAIL ({} of {} cases)\n", r.statement, r.failure_count, r.cases);
    if let Some(f) = r.failures.first() {
        let case: Vec<String> = f.case.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "  first failure at [{}] ({}): {} ≠ {}",
            case.join(","),
            f.relation,
            format_rational(&f.lhs),
            format_rational(&f.rhs)
        )
        .unwrap();
    }
    out
}

/// True when λ, ρ and every deviation Jacobian are identically one.
fn densities_trivial(table: &LoopTable, mu: &Measure) -> Result<bool, MeasureError> {
    if !unimodularity_check(table, mu)?.unimodular {
        return Ok(false);
    }
    for a in table.elements() {
        for b in table.elements() {
            if !loopmod::measure::deviation_jacobian(table, mu, a, b)?.is_trivial() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Verifiers {
    chain_rule: bool,
    cocycle_relation: bool,
    rigidity: bool,
    compat: Option<(IdentityAst, char)>,
}

fn run_verifiers(table: &LoopTable, mu: &Measure, which: &Verifiers) -> Result<Output> {
    let mut reports: Vec<(&str, VerificationReport)> = Vec::new();
    let mut text = String::new();
    if which.chain_rule {
        reports.push(("chain_rule", verify_translation_chain_rules(table, mu)?));
    }
    if which.cocycle_relation {
        reports.push(("cocycle_relation", verify_cocycle_relation(table, mu)?));
    }
    let mut rigidity_pairs = None;
    if which.rigidity {
        let r = rigidity_report(table, mu)?;
        rigidity_pairs = Some(r.pairs);
        reports.push(("rigidity", r.report));
    }
    let mut compat_meta = Value::Null;
    if let Some((identity, point)) = &which.compat {
        let verdict = check_identity(table, identity);
        if let Some(cx) = verdict.counterexample {
            let vals: Vec<String> = cx.assignment.iter().map(|(v, e)| format!("{v}={e}")).collect();
            bail!("`{identity}` does not hold in this loop ({})", vals.join(", "));
        }
        compat_meta = json!({ "identity": identity.to_string(), "point": point.to_string() });
        reports.push(("compatibility", identity_compatibility(table, mu, identity, *point)?));
    }
    let mut success = true;
    let mut results = serde_json::Map::new();
    for (key, r) in &reports {
        success &= r.pass;
        text.push_str(&report_text(r));
        results.insert((*key).into(), json!(r));
    }
    if let Some(pairs) = &rigidity_pairs {
        writeln!(text, "trivial deviation pairs: {}", pairs.len()).unwrap();
    }
    let trivial = densities_trivial(table, mu)?;
    if trivial {
        text.push_str("all densities equal 1\n");
    }
    text.push_str(if success { "verdict: PASS\n" } else { "verdict: FAIL\n" });
    let json = json!({
        "reports": results,
        "compatibility_identity": compat_meta,
        "densities_trivial": trivial,
        "pass": success,
    });
    Ok(Output { text, json, success })
}

fn verify(a: &VerifyArgs) -> Result<Output> {
    let table = load_loop(&a.loop_file)?;
    let mu = load_measure(&a.measure.measure, table.order())?;
    let identity_given = a.identity.identity.is_some() || a.identity.builtin.is_some();
    let any = a.chain_rule || a.cocycle_relation || a.rigidity || a.compat;
    let all = a.all || !any;
    let compat = if a.compat || (all && identity_given) {
        let identity = load_identity(a.identity.identity.as_deref(), a.identity.builtin.as_deref())?;
        let point = resolve_point(&identity, a.point)?;
        Some((identity, point))
    } else {
        None
    };
    let which = Verifiers {
        chain_rule: all || a.chain_rule,
        cocycle_relation: all || a.cocycle_relation,
        rigidity: all || a.rigidity,
        compat,
    };
    run_verifiers(&table, &mu, &which)
}

type Generators = Vec<(Side, usize)>;

fn parse_generators(table: &LoopTable, list: &str) -> Result<(Generators, Option<TranslationSet>)> {
    if let Ok(set) = list.parse::<TranslationSet>() {
        return Ok((translation_generators(table, set), Some(set)));
    }
    let mut gens = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (side, rest) = match item.split_at(1) {
            ("L" | "l", rest) => (Side::Left, rest),
            ("R" | "r", rest) => (Side::Right, rest),
            _ => bail!("generator `{item}` must look like L3 or R0"),
        };
        let a: usize = rest
            .parse()
            .with_context(|| format!("generator `{item}` has no element index"))?;
        if a >= table.order() {
            bail!("generator `{item}` is out of range for order {}", table.order());
        }
        gens.push((side, a));
    }
    Ok((gens, None))
}

fn invariant_measures(table: &LoopTable, list: &str) -> Result<Output> {
    let (gens, set) = parse_generators(table, list)?;
    let partition = invariant_measure_basis(table, &gens)?;
    let mut text = format!("orbits: {}\n", partition.dimension());
    for orbit in &partition.orbits {
        let items: Vec<String> = orbit.iter().map(usize::to_string).collect();
        writeln!(text, "  {{{}}}", items.join(", ")).unwrap();
    }
    if partition.is_transitive() {
        text.push_str("invariant measures: multiples of the uniform measure\n");
    } else {
        writeln!(
            text,
            "invariant measures: constant on each orbit ({} free weights)",
            partition.dimension()
        )
        .unwrap();
    }
    let group = match set {
        Some(set) => match mult_group_size(table, set, GROUP_CAP) {
            Ok(size) => {
                writeln!(text, "generated group order: {size}").unwrap();
                json!(size)
            }
            Err(MeasureError::CapExceeded(cap)) => {
                writeln!(text, "generated group order: more than {cap}").unwrap();
                json!(null)
            }
            Err(e) => return Err(e.into()),
        },
        None => Value::Null,
    };
    let json = json!({
        "generators": gens.iter().map(|(s, a)| json!({ "side": s, "element": a })).collect::<Vec<_>>(),
        "orbits": partition.orbits,
        "dimension": partition.dimension(),
        "transitive": partition.is_transitive(),
        "group_order": group,
    });
    Ok(Output::ok(text, json))
}

fn report(a: &ReportArgs) -> Result<Output> {
    let table = load_loop(&a.loop_file)?;
    let mu = load_measure(&a.measure.measure, table.order())?;
    let validated = validate(&table)?;
    let devs = deviation(&table)?;
    let cocycles = cocycle(&table, &mu, SideChoice::Both)?;
    let orbits = invariant_measures(&table, "left")?;

    let mut identities = serde_json::Map::new();
    let mut id_text = String::new();
    let mut compat = None;
    for name in BUILTIN_IDENTITIES {
        let identity = builtin_identity(name)?;
        let verdict = check_identity(&table, &identity);
        writeln!(id_text, "{name}: {}", if verdict.holds { "holds" } else { "fails" }).unwrap();
        if verdict.holds && compat.is_none() && *name != "associativity" {
            let point = resolve_point(&identity, None)?;
            compat = Some((identity, point));
        }
        identities.insert((*name).into(), json!(verdict.holds));
    }
    let verified = run_verifiers(
        &table,
        &mu,
        &Verifiers {
            chain_rule: true,
            cocycle_relation: true,
            rigidity: true,
            compat,
        },
    )?;
    let text = [
        ("loop", validated.text),
        ("identities", id_text),
        ("deviation", devs.text),
        ("cocycles", cocycles.text),
        ("invariant measures", orbits.text),
        ("verification", verified.text),
    ]
    .iter()
    .map(|(title, body)| format!("== {title} ==\n{body}"))
    .collect::<Vec<_>>()
    .join("\n");
    let json = json!({
        "loop": validated.json,
        "identities": identities,
        "deviation": devs.json,
        "cocycles": cocycles.json,
        "invariant_measures": orbits.json,
        "verification": verified.json,
    });
    Ok(Output {
        text,
        json,
        success: verified.success,
    })
}
