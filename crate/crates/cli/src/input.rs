use std::fs;
use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use loopmod::{builtin_identity, builtin_loop, parse_identity, IdentityAst, LoopTable, Measure};

fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(source).with_context(|| format!("reading `{source}`"))
    }
}

pub fn load_loop(source: &str) -> Result<LoopTable> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(builtin_loop(name)?);
    }
    let text = read_source(source)?;
    LoopTable::parse_text(&text).with_context(|| format!("invalid loop table in `{source}`"))
}

pub fn load_measure(source: &str, order: usize) -> Result<Measure> {
    if source == "uniform" {
        return Ok(Measure::counting(order));
    }
    let text = read_source(source)?;
    Measure::parse_text(&text, order).with_context(|| format!("invalid measure in `{source}`"))
}

pub fn load_identity(identity: Option<&str>, builtin: Option<&str>) -> Result<IdentityAst> {
    match (identity, builtin) {
        (Some(text), None) => Ok(parse_identity(text)?),
        (None, Some(name)) => Ok(builtin_identity(name)?),
        _ => Err(anyhow!("give exactly one of --identity or --builtin")),
    }
}

pub fn resolve_point(identity: &IdentityAst, point: Option<char>) -> Result<char> {
    match point {
        Some(p) => Ok(p),
        None => match identity.default_point() {
            Some(p) => Ok(p),
            None => bail!("`{identity}` has no variable occurring exactly once on each side; pass --point"),
        },
    }
}
