use std::fmt::Write as _;

use serde::Serialize;

use super::blame::{blame_atom, render_contributor, Contributor, Side};
use crate::engine::{induce, Consultation, ConditionSide};
use crate::error::Result;
use crate::fuzzy::{Cardinality, Degree};
use crate::matching::MatchPair;

/// Two rules whose conclusions clash the most.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub rules: (String, String),
    /// Height of the min-combination of the two rules' induced distributions.
    pub height: Degree,
}

/// Why a conclusion is imprecise or uncertain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnosis {
    pub attribute: String,
    pub cardinality: Cardinality,
    pub subnormality: Degree,
    /// Facts whose uncertainty keeps some atom possible: the binding input is
    /// strictly inside `(0, 1)` and above the rule's own uncertainty.
    pub uncertain_inputs: Vec<Contributor>,
    /// Rules whose condition matched as totally unknown, `(1, 1)`.
    pub vacuous_rules: Vec<String>,
    /// Present when the result is subnormal.
    pub conflict: Option<Conflict>,
}

const LIMITATION: &str = "the rules may also be too weak to combine into a sharper conclusion \
(for instance `p or q` with separate rules for `p` and `q`); this is not checked";

pub fn diagnose_imprecision(c: &Consultation, attribute: &str) -> Result<Diagnosis> {
    let g = c.derived_group(attribute)?;
    let mut uncertain_inputs: Vec<Contributor> = Vec::new();
    for atom in 0..g.atoms.len() {
        for k in blame_atom(Some(c), g, atom).contributors {
            let inside = !k.input.is_zero() && !k.input.is_one();
            if k.side == Side::Fact && inside && k.input > k.entry && !uncertain_inputs.iter().any(|u| u.column == k.column) {
                uncertain_inputs.push(k);
            }
        }
    }
    uncertain_inputs.sort_by_key(|k| k.column.index());
    let vacuous_rules = g
        .rules
        .iter()
        .zip(&g.matches)
        .filter(|(_, m)| m.pair == MatchPair::UNKNOWN)
        .map(|(r, _)| r.id.clone())
        .collect();
    let subnormality = g.distribution.subnormality();
    let conflict = if subnormality.is_zero() {
        None
    } else {
        let induced: Vec<_> = g
            .rules
            .iter()
            .zip(&g.conclusions)
            .map(|(r, cp)| induce(&r.conclusion.set, *cp))
            .collect();
        let mut best: Option<Conflict> = None;
        for i in 0..induced.len() {
            for j in i + 1..induced.len() {
                let h = induced[i].min_combine(&induced[j])?.height();
                if best.as_ref().is_none_or(|b| h < b.height) {
                    best = Some(Conflict {
                        rules: (g.rules[i].id.clone(), g.rules[j].id.clone()),
                        height: h,
                    });
                }
            }
        }
        best.or_else(|| {
            g.rules.first().map(|r| Conflict {
                rules: (r.id.clone(), r.id.clone()),
                height: g.distribution.height(),
            })
        })
    };
    Ok(Diagnosis {
        attribute: attribute.to_string(),
        cardinality: g.distribution.cardinality(),
        subnormality,
        uncertain_inputs,
        vacuous_rules,
        conflict,
    })
}

impl Diagnosis {
    pub fn render(&self, c: &Consultation) -> String {
        let g = c.group(&self.attribute).expect("diagnosis built from this consultation");
        let mut out = format!(
            "{}: fuzzy cardinality {}, height {}\n",
            self.attribute,
            self.cardinality,
            self.subnormality.complement()
        );
        out.push_str("(i) uncertain or imprecise facts:\n");
        if self.uncertain_inputs.is_empty() && self.vacuous_rules.is_empty() {
            out.push_str("  none\n");
        }
        for k in &self.uncertain_inputs {
            let rule = &g.rules[k.column.rule];
            let stmt = match k.column.side {
                ConditionSide::Holds => super::phrase::holds(rule),
                ConditionSide::Fails => super::phrase::fails(rule),
            };
            let _ = writeln!(out, "  - it remains possible at the degree {} that {}", k.input, stmt);
            let _ = writeln!(out, "    {}", render_contributor(g, k));
        }
        for r in &self.vacuous_rules {
            let _ = writeln!(out, "  - nothing is known about the condition of {r}");
        }
        out.push_str("(ii) conflicting rules:\n");
        match &self.conflict {
            None => out.push_str("  none: the result is normalized\n"),
            Some(k) => {
                let _ = writeln!(
                    out,
                    "  the result is subnormal by {}; {} and {} agree at most at the degree {}",
                    self.subnormality, k.rules.0, k.rules.1, k.height
                );
            }
        }
        let _ = writeln!(out, "(iii) {LIMITATION}");
        out
    }
}
