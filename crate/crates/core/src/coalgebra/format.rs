//! Line-based text format for symbolic coalgebras.
//!
//! ```text
//! # comment
//! orbit var arity=1 stab=trivial
//! orbit pair arity=2 stab=trivial
//! orbit upair arity=2 stab=(1 2)
//! step var = var 1
//! step pair = app var(1) var(2)
//! step lam = abs fresh body(fresh,1)
//! step loop = bot
//! ```
//!
//! Slots are 1-based. A stabilizer is a `;`-separated list of permutations in
//! cycle notation; the identity is always included.

use std::fmt::Write as _;

use super::{SlotRef, StepView, SymbolicCoalgebra, Target};
use crate::error::CoalgebraError;
use crate::nominal::Atom;
use crate::orbit::{OrbitElement, OrbitSchema, OrbitSet, SlotPerm};

fn err(line: usize, msg: impl Into<String>) -> CoalgebraError {
    CoalgebraError::Format {
        line,
        msg: msg.into(),
    }
}

pub fn parse_coalgebra(text: &str) -> Result<SymbolicCoalgebra, CoalgebraError> {
    let mut schemas = Vec::new();
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "orbit" => schemas.push(parse_orbit(line_no, rest.trim())?),
            "step" => {
                let (id, view) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line_no, "expected `step <id> = ...`"))?;
                steps.push((id.trim().to_string(), parse_view(line_no, view.trim())?));
            }
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let carrier = OrbitSet::new(schemas)?;
    SymbolicCoalgebra::new(carrier, steps)
}

fn parse_orbit(line: usize, rest: &str) -> Result<OrbitSchema, CoalgebraError> {
    let mut words = rest.splitn(2, char::is_whitespace);
    let id = words
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| err(line, "missing orbit id"))?;
    let rest = words.next().unwrap_or("").trim();
    let rest = rest
        .strip_prefix("arity=")
        .ok_or_else(|| err(line, "expected `arity=<k>`"))?;
    let (k, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let arity: usize = k
        .parse()
        .map_err(|_| err(line, format!("bad arity `{k}`")))?;
    let rest = rest.trim();
    let stab = if rest.is_empty() {
        "trivial"
    } else {
        rest.strip_prefix("stab=")
            .ok_or_else(|| err(line, "expected `stab=...`"))?
            .trim()
    };
    let mut stabilizer = vec![SlotPerm::identity(arity)];
    if stab != "trivial" {
        for perm in stab.split(';') {
            stabilizer.push(parse_cycles(line, arity, perm.trim())?);
        }
    }
    let schema = OrbitSchema {
        id: id.to_string(),
        arity,
        stabilizer,
    };
    Ok(schema.validate()?)
}

fn parse_cycles(line: usize, arity: usize, text: &str) -> Result<SlotPerm, CoalgebraError> {
    if text == "()" || text == "id" {
        return Ok(SlotPerm::identity(arity));
    }
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let inner_end = rest.find(')').ok_or_else(|| err(line, "unclosed cycle"))?;
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| err(line, format!("bad permutation `{text}`")))?;
        let body = &inner[..inner_end - 1];
        let cycle = body
            .split_whitespace()
            .map(|s| match s.parse::<usize>() {
                Ok(n) if (1..=arity).contains(&n) => Ok(n - 1),
                _ => Err(err(line, format!("bad slot `{s}` in `{text}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
        rest = rest[inner_end + 1..].trim_start();
    }
    SlotPerm::from_cycles(arity, &cycles)
        .ok_or_else(|| err(line, format!("`{text}` is not a permutation")))
}

fn parse_slot(line: usize, s: &str) -> Result<SlotRef, CoalgebraError> {
    if s == "fresh" {
        return Ok(SlotRef::Fresh);
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(SlotRef::Slot(n - 1)),
        _ => Err(err(line, format!("bad slot `{s}`"))),
    }
}

fn parse_target(line: usize, s: &str) -> Result<Target, CoalgebraError> {
    let (id, args) = s
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(|| err(line, format!("expected `<id>(<slots>)`, found `{s}`")))?;
    let args = args
        .split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(|a| parse_slot(line, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Target::new(id.trim(), args))
}

fn parse_view(line: usize, s: &str) -> Result<StepView, CoalgebraError> {
    let (kw, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let words: Vec<&str> = rest.split_whitespace().collect();
    match (kw, words.as_slice()) {
        ("bot", []) => Ok(StepView::Bottom),
        ("var", [slot]) => match parse_slot(line, slot)? {
            SlotRef::Slot(i) => Ok(StepView::Var(i)),
            SlotRef::Fresh => Err(err(line, "a variable step needs a slot")),
        },
        ("app", [l, r]) => Ok(StepView::App(
            parse_target(line, l)?,
            parse_target(line, r)?,
        )),
        ("abs", [b, t]) => Ok(StepView::Abs {
            binder: parse_slot(line, b)?,
            target: parse_target(line, t)?,
        }),
        _ => Err(err(line, format!("cannot parse step `{s}`"))),
    }
}

/// Parses an element such as `pair(v0,v1)` of the given carrier.
pub fn parse_element(text: &str, carrier: &OrbitSet) -> Result<OrbitElement, CoalgebraError> {
    let text = text.trim();
    let bad = || err(0, format!("expected `<id>(v<i>,...)`, found `{text}`"));
    let (id, args) = text
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(bad)?;
    let atoms = args
        .split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(|a| {
            a.strip_prefix('v')
                .and_then(|n| n.parse().ok())
                .map(Atom)
                .ok_or_else(bad)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(carrier.element(id.trim(), atoms)?)
}

fn show_slot(r: &SlotRef) -> String {
    match r {
        SlotRef::Slot(i) => (i + 1).to_string(),
        SlotRef::Fresh => "fresh".into(),
    }
}

fn show_target(t: &Target) -> String {
    let args: Vec<String> = t.args.iter().map(show_slot).collect();
    format!("{}({})", t.schema, args.join(","))
}

pub fn print_coalgebra(c: &SymbolicCoalgebra) -> String {
    let mut out = String::new();
    for (schema, _) in c.steps() {
        let nontrivial: Vec<String> = schema
            .stabilizer
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.to_string())
            .collect();
        let stab = if nontrivial.is_empty() {
            "trivial".to_string()
        } else {
            nontrivial.join(";")
        };
        writeln!(
            out,
            "orbit {} arity={} stab={}",
            schema.id, schema.arity, stab
        )
        .unwrap();
    }
    for (schema, view) in c.steps() {
        let rhs = match view {
            StepView::Var(i) => format!("var {}", i + 1),
            StepView::Bottom => "bot".into(),
            StepView::App(l, r) => format!("app {} {}", show_target(l), show_target(r)),
            StepView::Abs { binder, target } => {
                format!("abs {} {}", show_slot(binder), show_target(target))
            }
        };
        writeln!(out, "step {} = {}", schema.id, rhs).unwrap();
    }
    out
}
