use std::fmt::Write as _;

use crate::engine::{FactBase, KnowledgeBase, UncertainRule, World};
use crate::fuzzy::{Degree, FuzzySubset};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Nonzero members; degree 1 is written bare.
fn members(set: &FuzzySubset) -> String {
    let items: Vec<String> = set
        .domain()
        .elements()
        .iter()
        .zip(set.degrees())
        .filter(|(_, d)| !d.is_zero())
        .map(|(e, d)| if d.is_one() { e.clone() } else { format!("{e}:{d}") })
        .collect();
    items.join(", ")
}

fn write_rule(out: &mut String, r: &UncertainRule, id: &str, otherwise: Degree, exception: Degree, with_phrasing: bool) {
    let _ = writeln!(out, "RULE {id}");
    let _ = writeln!(out, "  IF {}", r.condition);
    let _ = writeln!(out, "  THEN {}", r.conclusion);
    if !exception.is_zero() {
        let _ = writeln!(out, "  EXCEPTION {exception}");
    }
    if !otherwise.is_one() {
        let _ = writeln!(out, "  OTHERWISE {otherwise}");
    }
    if with_phrasing {
        if let Some(s) = &r.phrasing.holds {
            let _ = writeln!(out, "  SAY {}", quote(s));
        }
        if let Some(s) = &r.phrasing.fails {
            let _ = writeln!(out, "  SAY NOT {}", quote(s));
        }
    }
    out.push_str("END\n");
}

/// Writes a knowledge base back as text. A folded pair is written as its
/// two source rules, the second carrying the first's `otherwise` as its
/// exception.
pub fn write_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for d in &kb.domains {
        let _ = writeln!(out, "DOMAIN {} = {}", d.name(), d.elements().join(", "));
    }
    for a in &kb.attributes {
        let world = match a.world {
            World::Open => "",
            World::Closed => " CLOSED",
        };
        let _ = writeln!(out, "ATTRIBUTE {} OF {}{}", a.name, a.declared.name(), world);
    }
    for t in &kb.terms {
        let _ = writeln!(out, "TERM {} {} = {}", t.attribute, t.name, members(&t.set));
    }
    for r in &kb.rules {
        out.push('\n');
        match &r.paired_with {
            None => write_rule(&mut out, r, &r.id, r.otherwise, r.exception, true),
            Some(other) => {
                write_rule(&mut out, r, &r.id, Degree::ONE, r.exception, true);
                out.push('\n');
                let mut twin = r.clone();
                twin.condition = r.condition.clone().negate();
                twin.conclusion = r.conclusion.clone().negate();
                write_rule(&mut out, &twin, other, Degree::ONE, r.otherwise, false);
            }
        }
    }
    out
}

/// Writes facts and beliefs back as text.
pub fn write_facts(facts: &FactBase) -> String {
    let mut out = String::new();
    for (attr, d) in &facts.facts {
        if d.is_ignorance() {
            let _ = writeln!(out, "FACT {attr} UNKNOWN");
            continue;
        }
        let items: Vec<String> = d
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(e, p)| format!("{e}:{p}"))
            .collect();
        if items.is_empty() {
            let _ = writeln!(out, "FACT {attr} = {}:0", d.domain().label(0));
        } else {
            let _ = writeln!(out, "FACT {attr} = {}", items.join(", "));
        }
    }
    for (attr, b) in &facts.beliefs {
        let _ = writeln!(out, "BELIEF {attr} = {}", members(b));
    }
    out
}
