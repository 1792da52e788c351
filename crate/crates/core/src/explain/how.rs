use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{combine_group, ConclusionPair, Consultation, GroupTrace, UncertainRule};
use crate::error::{Error, Result};
use crate::fuzzy::{Degree, PossibilityDistribution};
use crate::matching::{ElementaryMatch, MatchPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartNode {
    pub attribute: String,
    pub term: String,
    pub negated: bool,
    pub weight: Degree,
    pub fact: PossibilityDistribution,
    pub assumed_unknown: bool,
    pub result: ElementaryMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleNode {
    pub rule: UncertainRule,
    pub parts: Vec<PartNode>,
    pub pair: MatchPair,
    pub conclusion: ConclusionPair,
    /// `1 - min(pos, neg)`: how much the rule can exclude.
    pub influence: Degree,
    /// Hidden from the rendering by the display threshold.
    pub pruned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomRow {
    pub members: Vec<String>,
    pub entries: Vec<Degree>,
    pub degree: Degree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupNode {
    pub attribute: String,
    pub layer: usize,
    /// Trees of the derived attributes this group reads.
    pub upstream: Vec<How>,
    pub rules: Vec<RuleNode>,
    pub columns: Vec<String>,
    pub atoms: Vec<AtomRow>,
    pub input: Vec<Degree>,
    pub distribution: PossibilityDistribution,
}

/// Derivation tree of one attribute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum How {
    Fact {
        attribute: String,
        distribution: PossibilityDistribution,
        given: bool,
    },
    Group(Box<GroupNode>),
}

fn group_node(c: &Consultation, g: &GroupTrace, threshold: Degree) -> GroupNode {
    let mut upstream_names: Vec<&str> = Vec::new();
    for r in &g.rules {
        for a in r.condition.attributes() {
            if c.group(a).is_some() && !upstream_names.contains(&a) {
                upstream_names.push(a);
            }
        }
    }
    let upstream = upstream_names
        .into_iter()
        .map(|a| How::Group(Box::new(group_node(c, c.group(a).expect("checked"), threshold))))
        .collect();
    let rules = g
        .rules
        .iter()
        .zip(&g.matches)
        .zip(&g.conclusions)
        .map(|((rule, m), cp)| {
            let parts = rule
                .condition
                .parts
                .iter()
                .zip(&m.parts)
                .map(|(p, pm)| PartNode {
                    attribute: p.attribute.clone(),
                    term: p.term.clone(),
                    negated: p.negated,
                    weight: p.weight,
                    fact: pm.fact.clone(),
                    assumed_unknown: pm.assumed_unknown,
                    result: pm.result.clone(),
                })
                .collect();
            let influence = cp.pos.min(cp.neg).complement();
            RuleNode {
                rule: rule.clone(),
                parts,
                pair: m.pair,
                conclusion: *cp,
                influence,
                pruned: influence < threshold,
            }
        })
        .collect();
    let atoms = g
        .atoms
        .iter()
        .enumerate()
        .map(|(k, a)| AtomRow {
            members: a.members.clone(),
            entries: g.matrix.matrix.row(k).to_vec(),
            degree: g.output.0[k],
        })
        .collect();
    GroupNode {
        attribute: g.attribute.clone(),
        layer: g.layer,
        upstream,
        rules,
        columns: g.matrix.columns().map(|col| g.matrix.column_label(col)).collect(),
        atoms,
        input: g.input.0.clone(),
        distribution: g.distribution.clone(),
    }
}

/// Full derivation of `attribute`. Rules whose influence is below
/// `threshold` are kept but marked pruned.
pub fn trace_how(c: &Consultation, attribute: &str, threshold: Degree) -> Result<How> {
    if let Some(g) = c.group(attribute) {
        return Ok(How::Group(Box::new(group_node(c, g, threshold))));
    }
    let f = c.fact(attribute).ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
    Ok(How::Fact {
        attribute: f.attribute.clone(),
        distribution: f.distribution.clone(),
        given: f.given,
    })
}

/// Recomputes the tree's distribution from the facts recorded in it.
pub fn replay_how(h: &How) -> Result<PossibilityDistribution> {
    match h {
        How::Fact { distribution, .. } => Ok(distribution.clone()),
        How::Group(g) => {
            for up in &g.upstream {
                let d = replay_how(up)?;
                let used = g
                    .rules
                    .iter()
                    .flat_map(|r| &r.parts)
                    .find(|p| matches!(up, How::Group(u) if u.attribute == p.attribute));
                if let Some(p) = used {
                    if p.fact != d {
                        return Err(Error::Dimension(format!("upstream `{}` does not replay", p.attribute)));
                    }
                }
            }
            let rules: Vec<UncertainRule> = g.rules.iter().map(|r| r.rule.clone()).collect();
            let mut pairs = Vec::with_capacity(rules.len());
            for r in &g.rules {
                let lookup = |a: &str| r.parts.iter().find(|p| p.attribute == a).map(|p| &p.fact);
                pairs.push(r.rule.condition.evaluate(lookup)?.pair);
            }
            Ok(combine_group(&rules, &pairs)?.distribution)
        }
    }
}

impl How {
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_into(self, 0, &mut out);
        out
    }
}

fn dist(d: &PossibilityDistribution) -> String {
    let items: Vec<String> = d.iter().map(|(e, p)| format!("{e}: {p}")).collect();
    items.join(", ")
}

fn render_into(h: &How, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match h {
        How::Fact {
            attribute,
            distribution,
            given,
        } => {
            let note = if *given { "" } else { " (unknown)" };
            let _ = writeln!(out, "{pad}fact {attribute}{note}: {}", dist(distribution));
        }
        How::Group(g) => {
            let _ = writeln!(out, "{pad}{} (layer {}): {}", g.attribute, g.layer, dist(&g.distribution));
            for up in &g.upstream {
                render_into(up, depth + 1, out);
            }
            let mut hidden = 0;
            for r in &g.rules {
                if r.pruned {
                    hidden += 1;
                    continue;
                }
                let paired = r
                    .rule
                    .paired_with
                    .as_ref()
                    .map(|p| format!(" (with {p})"))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{pad}  rule {}{}: IF {} THEN {}",
                    r.rule.id, paired, r.rule.condition, r.rule.conclusion
                );
                for p in &r.parts {
                    let note = if p.assumed_unknown { " (unknown)" } else { "" };
                    let _ = writeln!(
                        out,
                        "{pad}    {}{}: {} -> match {}",
                        p.attribute,
                        note,
                        dist(&p.fact),
                        p.result.pair
                    );
                }
                let _ = writeln!(
                    out,
                    "{pad}    condition {} -> conclusion {} (otherwise {}, exception {})",
                    r.pair, r.conclusion, r.rule.otherwise, r.rule.exception
                );
            }
            if hidden > 0 {
                let _ = writeln!(out, "{pad}  ({hidden} rule(s) below the display threshold)");
            }
            let _ = writeln!(out, "{pad}  atoms over [{}]:", g.columns.join(", "));
            for a in &g.atoms {
                let entries: Vec<String> = a.entries.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "{pad}    {{{}}} [{}] -> {}",
                    a.members.join(", "),
                    entries.join(" "),
                    a.degree
                );
            }
        }
    }
}
