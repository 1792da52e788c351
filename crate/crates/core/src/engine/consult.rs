//! Layered evaluation of a knowledge base against facts, with a full trace.

use serde::{Deserialize, Serialize};

use super::kb::KnowledgeBase;
use super::matrix::{build_rule_matrix, InputVector, RuleMatrix};
use super::partition::{combine_group, reindex, Atom, OutputVector};
use super::rule::{decompose_fuzzy_conclusion, ConclusionPair, UncertainRule};
use crate::error::{Error, Result};
use crate::fuzzy::{same_domain, FuzzySubset, PossibilityDistribution};
use crate::matching::{ConditionMatch, MatchPair};

/// Facts and belief model for one consultation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactBase {
    pub facts: Vec<(String, PossibilityDistribution)>,
    pub beliefs: Vec<(String, FuzzySubset)>,
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn with(mut self, attribute: &str, fact: PossibilityDistribution) -> Self {
        self.set(attribute, fact);
        self
    }

    pub fn set(&mut self, attribute: &str, fact: PossibilityDistribution) {
        match self.facts.iter_mut().find(|(a, _)| a == attribute) {
            Some(slot) => slot.1 = fact,
            None => self.facts.push((attribute.to_string(), fact)),
        }
    }

    pub fn get(&self, attribute: &str) -> Option<&PossibilityDistribution> {
        self.facts.iter().find(|(a, _)| a == attribute).map(|(_, d)| d)
    }

    pub fn belief(&self, attribute: &str) -> Option<&FuzzySubset> {
        self.beliefs.iter().find(|(a, _)| a == attribute).map(|(_, b)| b)
    }
}

/// An input attribute as seen by the consultation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactEntry {
    pub attribute: String,
    pub distribution: PossibilityDistribution,
    /// False when the attribute was absent from the facts and total
    /// ignorance was assumed.
    pub given: bool,
}

/// Everything computed for one derived attribute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTrace {
    pub attribute: String,
    /// 1 for groups reading only facts, n + 1 for groups reading layer n.
    pub layer: usize,
    /// Crisp rules actually combined (fuzzy conclusions already decomposed).
    pub rules: Vec<UncertainRule>,
    pub matches: Vec<ConditionMatch>,
    pub conclusions: Vec<ConclusionPair>,
    pub atoms: Vec<Atom>,
    pub matrix: RuleMatrix,
    pub input: InputVector,
    pub output: OutputVector,
    pub distribution: PossibilityDistribution,
}

impl GroupTrace {
    pub fn atom_of(&self, element: &str) -> Result<usize> {
        self.atoms.iter().position(|a| a.contains(element)).ok_or_else(|| Error::UnknownElement {
            domain: self.distribution.domain().name().to_string(),
            element: element.to_string(),
        })
    }

    pub fn rule_index(&self, id: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.id == id)
    }
}

/// Result of [`run_layers`]: facts, beliefs and one trace per derived
/// attribute in evaluation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consultation {
    pub facts: Vec<FactEntry>,
    pub beliefs: Vec<(String, FuzzySubset)>,
    pub groups: Vec<GroupTrace>,
}

impl Consultation {
    pub fn group(&self, attribute: &str) -> Option<&GroupTrace> {
        self.groups.iter().find(|g| g.attribute == attribute)
    }

    pub fn derived_group(&self, attribute: &str) -> Result<&GroupTrace> {
        self.group(attribute).ok_or_else(|| {
            if self.fact(attribute).is_some() {
                Error::NotDerived(attribute.to_string())
            } else {
                Error::UnknownAttribute(attribute.to_string())
            }
        })
    }

    pub fn fact(&self, attribute: &str) -> Option<&FactEntry> {
        self.facts.iter().find(|f| f.attribute == attribute)
    }

    pub fn belief(&self, attribute: &str) -> Option<&FuzzySubset> {
        self.beliefs.iter().find(|(a, _)| a == attribute).map(|(_, b)| b)
    }

    /// Distribution of any attribute, input or derived.
    pub fn distribution(&self, attribute: &str) -> Result<&PossibilityDistribution> {
        if let Some(g) = self.group(attribute) {
            return Ok(&g.distribution);
        }
        self.fact(attribute)
            .map(|f| &f.distribution)
            .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))
    }

    /// Re-evaluates every group from the recorded facts and rules.
    /// Returns the recomputed distributions in group order.
    pub fn replay(&self) -> Result<Vec<PossibilityDistribution>> {
        let mut known: Vec<(String, PossibilityDistribution)> = self
            .facts
            .iter()
            .map(|f| (f.attribute.clone(), f.distribution.clone()))
            .collect();
        let mut out = Vec::with_capacity(self.groups.len());
        for g in &self.groups {
            let (_, _, outcome) = evaluate_group(&g.rules, &known)?;
            known.push((g.attribute.clone(), outcome.distribution.clone()));
            out.push(outcome.distribution);
        }
        Ok(out)
    }

    /// True when [`replay`](Self::replay) reproduces every recorded distribution.
    pub fn replays_exactly(&self) -> bool {
        match self.replay() {
            Ok(ds) => ds.iter().zip(&self.groups).all(|(d, g)| *d == g.distribution),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let mut c: Consultation = serde_json::from_str(text).map_err(|e| e.to_string())?;
        for g in &mut c.groups {
            let domain = g.distribution.domain().clone();
            reindex(&mut g.atoms, &domain).map_err(|e| e.to_string())?;
        }
        Ok(c)
    }
}

fn evaluate_group(
    rules: &[UncertainRule],
    known: &[(String, PossibilityDistribution)],
) -> Result<(Vec<ConditionMatch>, Vec<MatchPair>, super::partition::GroupOutcome)> {
    let lookup = |a: &str| known.iter().find(|(k, _)| k == a).map(|(_, d)| d);
    let matches: Vec<ConditionMatch> = rules
        .iter()
        .map(|r| r.condition.evaluate(lookup))
        .collect::<Result<_>>()?;
    let pairs: Vec<MatchPair> = matches.iter().map(|m| m.pair).collect();
    let outcome = combine_group(rules, &pairs)?;
    Ok((matches, pairs, outcome))
}

/// Evaluates every rule group in dependency order. Each group's result is
/// available as a fact to later groups. Attributes with no fact are
/// totally unknown.
pub fn run_layers(kb: &KnowledgeBase, facts: &FactBase) -> Result<Consultation> {
    for (attr, dist) in &facts.facts {
        let a = kb.attribute(attr)?;
        if a.derived {
            return Err(Error::DerivedFact(attr.clone()));
        }
        if !same_domain(&a.domain, dist.domain()) {
            return Err(Error::DomainMismatch {
                left: a.domain.to_string(),
                right: dist.domain().to_string(),
            });
        }
    }
    let mut beliefs = Vec::new();
    for (attr, b) in &facts.beliefs {
        let a = kb.attribute(attr)?;
        if !same_domain(&a.domain, b.domain()) {
            return Err(Error::DomainMismatch {
                left: a.domain.to_string(),
                right: b.domain().to_string(),
            });
        }
        beliefs.push((attr.clone(), b.clone()));
    }

    let entries: Vec<FactEntry> = kb
        .attributes
        .iter()
        .filter(|a| !a.derived)
        .map(|a| match facts.get(&a.name) {
            Some(d) => FactEntry {
                attribute: a.name.clone(),
                distribution: d.clone(),
                given: true,
            },
            None => FactEntry {
                attribute: a.name.clone(),
                distribution: PossibilityDistribution::ignorance(a.domain.clone()),
                given: false,
            },
        })
        .collect();

    let mut known: Vec<(String, PossibilityDistribution)> = entries
        .iter()
        .map(|f| (f.attribute.clone(), f.distribution.clone()))
        .collect();
    let mut groups = Vec::new();
    for (attribute, layer) in kb.layering()?.order {
        let mut rules = Vec::new();
        for r in kb.group(&attribute) {
            if r.has_crisp_conclusion() {
                rules.push(r.clone());
            } else {
                rules.extend(decompose_fuzzy_conclusion(r, r.exception)?);
            }
        }
        let (matches, pairs, outcome) = evaluate_group(&rules, &known)?;
        let matrix = build_rule_matrix(&rules, &outcome.atoms)?;
        known.push((attribute.clone(), outcome.distribution.clone()));
        groups.push(GroupTrace {
            attribute,
            layer,
            rules,
            matches,
            conclusions: outcome.conclusions,
            atoms: outcome.atoms,
            matrix,
            input: InputVector::from_pairs(&pairs),
            output: outcome.output,
            distribution: outcome.distribution,
        });
    }
    Ok(Consultation {
        facts: entries,
        beliefs,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::kb::{RuleSpec, World};
    use crate::fuzzy::{deg, Degree};

    fn kb() -> KnowledgeBase {
        KnowledgeBase::builder()
            .domain("yes_no", &["yes", "no"])
            .domain("jobs", &["a", "b"])
            .domain("lvl", &["lo", "hi"])
            .attribute("likes", "yes_no", None)
            .attribute("job", "jobs", Some(World::Closed))
            .attribute("pay", "lvl", Some(World::Closed))
            .term("likes", "yes", &[("yes", Degree::ONE)])
            .term("job", "a", &[("a", Degree::ONE)])
            .term("pay", "hi", &[("hi", Degree::ONE)])
            .rule(RuleSpec::new("R1", "job", "a").when("likes", "yes").uncertainty(Degree::ONE, deg(0.2)))
            .rule(RuleSpec::new("R2", "pay", "hi").when("job", "a"))
            .build()
            .unwrap()
    }

    #[test]
    fn empty_rule_base_leaves_facts_alone() {
        let kb = KnowledgeBase::builder()
            .domain("yes_no", &["yes", "no"])
            .attribute("likes", "yes_no", None)
            .build()
            .unwrap();
        let yn = kb.attribute("likes").unwrap().domain.clone();
        let fact = PossibilityDistribution::certain(yn, "yes").unwrap();
        let c = run_layers(&kb, &FactBase::new().with("likes", fact.clone())).unwrap();
        assert!(c.groups.is_empty());
        assert_eq!(c.distribution("likes").unwrap(), &fact);
    }

    #[test]
    fn ignorance_propagates_through_layers() {
        let c = run_layers(&kb(), &FactBase::new()).unwrap();
        let job = c.group("job").unwrap();
        assert_eq!(job.layer, 1);
        assert!(job.distribution.is_ignorance());
        let pay = c.group("pay").unwrap();
        assert_eq!(pay.layer, 2);
        assert_eq!(pay.matches[0].pair, MatchPair::UNKNOWN);
    }

    #[test]
    fn chained_layers_use_upstream_result() {
        let kb = kb();
        let yn = kb.attribute("likes").unwrap().domain.clone();
        let fact = PossibilityDistribution::certain(yn, "yes").unwrap();
        let c = run_layers(&kb, &FactBase::new().with("likes", fact)).unwrap();
        // job = (1, 0.2), so pay matches with (1, 0.2) and yields hi = 1, lo = 0.2.
        assert_eq!(c.group("pay").unwrap().matches[0].pair, MatchPair::new(Degree::ONE, deg(0.2)));
        assert_eq!(c.distribution("pay").unwrap().degrees(), &[deg(0.2), Degree::ONE]);
        assert!(c.replays_exactly());
    }

    #[test]
    fn derived_fact_rejected() {
        let kb = kb();
        let jobs = kb.attribute("job").unwrap().domain.clone();
        let f = FactBase::new().with("job", PossibilityDistribution::ignorance(jobs));
        assert!(matches!(run_layers(&kb, &f), Err(Error::DerivedFact(_))));
    }

    #[test]
    fn json_round_trip_keeps_trace() {
        let c = run_layers(&kb(), &FactBase::new()).unwrap();
        let back = Consultation::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(back.replays_exactly());
    }
}
