use std::fmt::Write as _;

use serde::Serialize;

use super::blame::locate;
use super::phrase;
use crate::engine::{ColumnRef, Consultation, GroupTrace};
use crate::error::Result;
use crate::fuzzy::Degree;
use crate::solver::{require_at_least, require_at_most, Bound, ThresholdConstraint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Met whatever the facts.
    AlwaysMet,
    /// Met exactly when one of the alternatives holds.
    Conditions,
    /// Cannot be met by any facts.
    Infeasible,
}

/// Answer to "what would make it at least / at most `target`".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhyAnswer {
    pub attribute: String,
    pub element: String,
    pub members: Vec<String>,
    pub current: Degree,
    pub bound: Bound,
    pub target: Degree,
    pub verdict: Verdict,
    pub constraint: ThresholdConstraint,
    /// Column labels (`R2.holds`) per alternative, for machine use.
    pub alternatives: Vec<Vec<String>>,
}

fn answer(
    c: &Consultation,
    attribute: &str,
    element: &str,
    target: Degree,
    bound: Bound,
) -> Result<WhyAnswer> {
    let (g, atom) = locate(c, attribute, element)?;
    let mut constraint = match bound {
        Bound::AtLeast => require_at_least(&g.matrix.matrix, atom, target)?,
        Bound::AtMost => require_at_most(&g.matrix.matrix, atom, target)?,
    };
    constraint.apply_coupling(&g.matrix.coupling());
    let verdict = if constraint.is_infeasible() {
        Verdict::Infeasible
    } else if constraint.is_trivial() {
        Verdict::AlwaysMet
    } else {
        Verdict::Conditions
    };
    let alternatives = constraint
        .alternatives
        .iter()
        .map(|conj| {
            conj.iter()
                .map(|a| {
                    let col = g.matrix.column_label(ColumnRef::of(a.column));
                    format!("{} {} {}", col, a.bound.symbol(), a.threshold)
                })
                .collect()
        })
        .collect();
    Ok(WhyAnswer {
        attribute: attribute.to_string(),
        element: element.to_string(),
        members: g.atoms[atom].members.clone(),
        current: g.output.0[atom],
        bound,
        target,
        verdict,
        constraint,
        alternatives,
    })
}

/// Conditions on the facts for `element` to be possible at least at `target`.
pub fn explain_positive(c: &Consultation, attribute: &str, element: &str, target: Degree) -> Result<WhyAnswer> {
    answer(c, attribute, element, target, Bound::AtLeast)
}

/// Conditions on the facts for `element` to be possible at most at `target`.
pub fn explain_negative(c: &Consultation, attribute: &str, element: &str, target: Degree) -> Result<WhyAnswer> {
    answer(c, attribute, element, target, Bound::AtMost)
}

impl WhyAnswer {
    fn group<'a>(&self, c: &'a Consultation) -> &'a GroupTrace {
        c.group(&self.attribute).expect("answer built from this consultation")
    }

    /// Human rendering; `fact_language` uses the rules' phrasings, otherwise
    /// the symbolic `λ_i` / `ρ_i` form.
    pub fn render(&self, c: &Consultation, fact_language: bool) -> String {
        let g = self.group(c);
        let words = match self.bound {
            Bound::AtLeast => "at least",
            Bound::AtMost => "at most",
        };
        let mut out = format!(
            "{} = {} is possible at the degree {}; for it to be possible {} at the degree {}:\n",
            self.attribute, self.element, self.current, words, self.target
        );
        match self.verdict {
            Verdict::Infeasible => {
                let _ = writeln!(
                    out,
                    "  impossible: the possibility cannot go below {} in any case",
                    self.constraint.floor
                );
            }
            Verdict::AlwaysMet => match self.bound {
                Bound::AtLeast => out.push_str("  nothing is needed: the rules never push it below that degree\n"),
                Bound::AtMost => out.push_str("  nothing is needed: every possibility is at most 1\n"),
            },
            Verdict::Conditions => {
                let alts: Vec<String> = self
                    .constraint
                    .alternatives
                    .iter()
                    .map(|conj| {
                        conj.iter()
                            .map(|a| phrase::atomic(g, a, fact_language))
                            .collect::<Vec<_>>()
                            .join("\n    and ")
                    })
                    .collect();
                if alts.len() == 1 {
                    let _ = writeln!(out, "  {}", alts[0]);
                } else {
                    for (i, a) in alts.iter().enumerate() {
                        let lead = if i == 0 { "either" } else { "or" };
                        let _ = writeln!(out, "  {lead} {a}");
                    }
                }
            }
        }
        out
    }
}
