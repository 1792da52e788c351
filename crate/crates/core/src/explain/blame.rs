use std::fmt::Write as _;

use serde::Serialize;

use super::phrase;
use crate::engine::{ColumnRef, Consultation, GroupTrace};
use crate::error::{Error, Result};
use crate::fuzzy::{consistency, min_all, Degree, FuzzySubset, PossibilityDistribution};

/// Whether a binding term comes from the input or from the rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The match degree of a rule condition.
    Fact,
    /// The rule's own uncertainty (`otherwise` or `exception`).
    Rule,
}

/// One attainer of a row's min-max value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contributor {
    pub rule: String,
    pub column: ColumnRef,
    pub side: Side,
    /// The degree that attains the row value.
    pub value: Degree,
    pub entry: Degree,
    pub input: Degree,
    /// Derived attributes read by the rule's condition, for drilling down.
    pub upstream: Vec<String>,
}

/// Exact attainer set of one atom's degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlameSet {
    pub attribute: String,
    pub element: Option<String>,
    pub atom: usize,
    pub members: Vec<String>,
    pub value: Degree,
    /// True when the value is 1: no term binds.
    pub unconstrained: bool,
    pub contributors: Vec<Contributor>,
}

pub(crate) fn locate<'a>(c: &'a Consultation, attribute: &str, element: &str) -> Result<(&'a GroupTrace, usize)> {
    let g = c.derived_group(attribute)?;
    Ok((g, g.atom_of(element)?))
}

fn upstream(c: Option<&Consultation>, g: &GroupTrace, rule: usize) -> Vec<String> {
    let Some(c) = c else { return Vec::new() };
    let mut out: Vec<String> = Vec::new();
    for a in g.rules[rule].condition.attributes() {
        if c.group(a).is_some() && !out.iter().any(|x| x == a) {
            out.push(a.to_string());
        }
    }
    out
}

/// Blame set of atom `atom` in `g`; `c` supplies upstream links.
pub fn blame_atom(c: Option<&Consultation>, g: &GroupTrace, atom: usize) -> BlameSet {
    let m = &g.matrix.matrix;
    let v = &g.input.0;
    let terms: Vec<Degree> = (0..m.cols()).map(|j| m.get(atom, j).max(v[j])).collect();
    let value = min_all(terms.iter().copied());
    let mut contributors = Vec::new();
    if !value.is_one() {
        for (j, t) in terms.iter().enumerate() {
            if *t != value {
                continue;
            }
            let column = ColumnRef::of(j);
            let entry = m.get(atom, j);
            let input = v[j];
            let mut push = |side: Side, value: Degree| {
                contributors.push(Contributor {
                    rule: g.rules[column.rule].id.clone(),
                    column,
                    side,
                    value,
                    entry,
                    input,
                    upstream: upstream(c, g, column.rule),
                })
            };
            if input >= entry {
                push(Side::Fact, input);
            }
            if entry >= input {
                push(Side::Rule, entry);
            }
        }
    }
    BlameSet {
        attribute: g.attribute.clone(),
        element: None,
        atom,
        members: g.atoms[atom].members.clone(),
        value,
        unconstrained: value.is_one(),
        contributors,
    }
}

/// Main facts (and rules) behind the degree of `element`.
pub fn explain_mainly(c: &Consultation, attribute: &str, element: &str) -> Result<BlameSet> {
    let (g, atom) = locate(c, attribute, element)?;
    let mut b = blame_atom(Some(c), g, atom);
    b.element = Some(element.to_string());
    Ok(b)
}

impl BlameSet {
    pub fn fact_contributors(&self) -> impl Iterator<Item = &Contributor> {
        self.contributors.iter().filter(|c| c.side == Side::Fact)
    }

    /// Human rendering. Rule-uncertainty attainers are shown only with
    /// `include_rules`.
    pub fn render(&self, c: &Consultation, include_rules: bool) -> String {
        let g = c.group(&self.attribute).expect("blame built from this consultation");
        let subject = match &self.element {
            Some(e) => format!("{} = {}", self.attribute, e),
            None => format!("{} in {{{}}}", self.attribute, self.members.join(", ")),
        };
        let mut out = format!("{} has possibility {}", subject, self.value);
        if self.members.len() > 1 {
            let _ = write!(out, " (shared by {{{}}})", self.members.join(", "));
        }
        out.push('\n');
        if self.unconstrained {
            out.push_str("  no constraint binds: every term of its expression is 1\n");
            return out;
        }
        let shown: Vec<&Contributor> = self
            .contributors
            .iter()
            .filter(|k| include_rules || k.side == Side::Fact)
            .collect();
        if shown.is_empty() {
            out.push_str("  only the uncertainty of the rules binds (use --rules to see it)\n");
            return out;
        }
        out.push_str("mainly due to:\n");
        for k in shown {
            let _ = writeln!(out, "  - {}", render_contributor(g, k));
            if !k.upstream.is_empty() {
                let _ = writeln!(out, "    (derived from: {})", k.upstream.join(", "));
            }
        }
        out
    }
}

pub(crate) fn render_contributor(g: &GroupTrace, k: &Contributor) -> String {
    let rule = &g.rules[k.column.rule];
    match k.side {
        Side::Fact => {
            let sure = k.value.complement();
            format!(
                "the fact that it is {} (at the degree 1 - {} = {}) that {} [{}, {} = {}]",
                phrase::certainty_words(sure),
                phrase::symbol(k.column),
                sure,
                phrase::opposite(rule, k.column.side),
                rule.id,
                phrase::symbol(k.column),
                k.value
            )
        }
        Side::Rule => match k.column.side {
            crate::engine::ConditionSide::Holds => format!(
                "rule {} allows its conclusion only at the degree {} when its condition fails",
                rule.id, k.value
            ),
            crate::engine::ConditionSide::Fails => format!(
                "rule {} has exceptions only at the degree {}",
                rule.id, k.value
            ),
        },
    }
}

/// `1 - consistency(belief, conclusion)`: 0 when the belief is fully
/// compatible with the conclusion, 1 when they do not overlap.
pub fn surprise_degree(conclusion: &PossibilityDistribution, belief: &FuzzySubset) -> Result<Degree> {
    Ok(consistency(belief, conclusion)?.complement())
}

/// Surprise against the belief recorded in the consultation.
pub fn surprise(c: &Consultation, attribute: &str) -> Result<Degree> {
    let d = c.distribution(attribute)?;
    let b = c
        .belief(attribute)
        .ok_or_else(|| Error::UnknownInput(format!("belief for `{attribute}`")))?;
    surprise_degree(d, b)
}
