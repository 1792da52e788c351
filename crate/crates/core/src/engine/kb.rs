//! Knowledge base: domains, attributes, named terms and rules, resolved and
//! validated in one step by [`KbBuilder::build`].

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::rule::{fold_paired, Conclusion, Phrasing, UncertainRule};
use crate::error::{Error, Result};
use crate::fuzzy::{Degree, Domain, FuzzySubset, CATCH_ALL};
use crate::matching::{check_weights, ConditionPart, Connective, WeightedCondition};

/// Whether a derived attribute gains the catch-all element.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum World {
    #[default]
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    /// Domain as declared.
    pub declared: Arc<Domain>,
    /// Domain values are expressed over; includes the catch-all for open
    /// derived attributes.
    pub domain: Arc<Domain>,
    pub world: World,
    /// True when some rule concludes on this attribute.
    pub derived: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub attribute: String,
    pub name: String,
    pub set: FuzzySubset,
}

/// A validated knowledge base. Paired complementary-context rules are
/// already folded, so `rules` holds one entry per two-context rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub domains: Vec<Arc<Domain>>,
    pub attributes: Vec<Attribute>,
    pub terms: Vec<Term>,
    pub rules: Vec<UncertainRule>,
}

/// Derived attributes in evaluation order with their depth (1 = depends
/// only on facts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub order: Vec<(String, usize)>,
}

impl KnowledgeBase {
    pub fn builder() -> KbBuilder {
        KbBuilder::default()
    }

    pub fn attribute(&self, name: &str) -> Result<&Attribute> {
        self.attributes
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn term(&self, attribute: &str, name: &str) -> Result<&Term> {
        self.terms
            .iter()
            .find(|t| t.attribute == attribute && t.name == name)
            .ok_or_else(|| Error::UnknownTerm {
                attribute: attribute.to_string(),
                term: name.to_string(),
            })
    }

    pub fn rule(&self, id: &str) -> Option<&UncertainRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Rules concluding on `attribute`, in declaration order.
    pub fn group(&self, attribute: &str) -> Vec<&UncertainRule> {
        self.rules.iter().filter(|r| r.conclusion.attribute == attribute).collect()
    }

    /// Number of rules as written, counting both halves of a folded pair.
    pub fn source_rule_count(&self) -> usize {
        self.rules.iter().map(|r| 1 + usize::from(r.paired_with.is_some())).sum()
    }

    /// Topological order of derived attributes.
    pub fn layering(&self) -> Result<Layering> {
        layering(&self.attributes, &self.rules)
    }
}

fn layering(attributes: &[Attribute], rules: &[UncertainRule]) -> Result<Layering> {
    let derived: Vec<&str> = attributes.iter().filter(|a| a.derived).map(|a| a.name.as_str()).collect();
    let deps = |attr: &str| -> BTreeSet<&str> {
        rules
            .iter()
            .filter(|r| r.conclusion.attribute == attr)
            .flat_map(|r| r.condition.attributes())
            .filter(|a| derived.contains(a))
            .collect()
    };
    let mut depth: Vec<Option<usize>> = vec![None; derived.len()];
    let mut order = Vec::new();
    while order.len() < derived.len() {
        let mut progressed = false;
        for (i, name) in derived.iter().enumerate() {
            if depth[i].is_some() {
                continue;
            }
            let mut d = 1;
            let mut ready = true;
            for dep in deps(name) {
                let k = derived.iter().position(|x| *x == dep).expect("derived");
                match depth[k] {
                    Some(dk) => d = d.max(dk + 1),
                    None => ready = false,
                }
            }
            if ready {
                depth[i] = Some(d);
                order.push((name.to_string(), d));
                progressed = true;
            }
        }
        if !progressed {
            let stuck: Vec<&str> = derived
                .iter()
                .zip(&depth)
                .filter(|(_, d)| d.is_none())
                .map(|(n, _)| *n)
                .collect();
            return Err(Error::Cycle(stuck.join(", ")));
        }
    }
    order.sort_by_key(|(_, d)| *d);
    Ok(Layering { order })
}

/// Reference to a condition part by names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartSpec {
    pub attribute: String,
    pub term: String,
    pub negated: bool,
    pub weight: Degree,
}

impl PartSpec {
    pub fn new(attribute: impl Into<String>, term: impl Into<String>) -> Self {
        PartSpec {
            attribute: attribute.into(),
            term: term.into(),
            negated: false,
            weight: Degree::ONE,
        }
    }
}

/// Unresolved rule, as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    pub id: String,
    pub parts: Vec<PartSpec>,
    pub connective: Connective,
    pub negated: bool,
    pub conclusion_attribute: String,
    pub conclusion_term: String,
    pub conclusion_negated: bool,
    pub otherwise: Degree,
    pub exception: Degree,
    pub phrasing: Phrasing,
}

impl RuleSpec {
    pub fn new(id: impl Into<String>, conclusion_attribute: impl Into<String>, conclusion_term: impl Into<String>) -> Self {
        RuleSpec {
            id: id.into(),
            parts: Vec::new(),
            connective: Connective::And,
            negated: false,
            conclusion_attribute: conclusion_attribute.into(),
            conclusion_term: conclusion_term.into(),
            conclusion_negated: false,
            otherwise: Degree::ONE,
            exception: Degree::ZERO,
            phrasing: Phrasing::default(),
        }
    }

    #[must_use]
    pub fn when(mut self, attribute: &str, term: &str) -> Self {
        self.parts.push(PartSpec::new(attribute, term));
        self
    }

    #[must_use]
    pub fn uncertainty(mut self, otherwise: Degree, exception: Degree) -> Self {
        self.otherwise = otherwise;
        self.exception = exception;
        self
    }

    #[must_use]
    pub fn say(mut self, holds: &str, fails: &str) -> Self {
        self.phrasing = Phrasing {
            holds: Some(holds.to_string()),
            fails: Some(fails.to_string()),
        };
        self
    }
}

/// Which declaration an error belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Domain(usize),
    Attribute(usize),
    Term(usize),
    Rule(usize),
}

/// Collects declarations by name and resolves them together.
#[derive(Debug, Clone, Default)]
pub struct KbBuilder {
    pub domains: Vec<(String, Vec<String>)>,
    pub attributes: Vec<(String, String, Option<World>)>,
    pub terms: Vec<(String, String, Vec<(String, Degree)>)>,
    pub rules: Vec<RuleSpec>,
}

impl KbBuilder {
    #[must_use]
    pub fn domain(mut self, name: &str, elements: &[&str]) -> Self {
        self.domains
            .push((name.to_string(), elements.iter().map(|e| e.to_string()).collect()));
        self
    }

    #[must_use]
    pub fn attribute(mut self, name: &str, domain: &str, world: Option<World>) -> Self {
        self.attributes.push((name.to_string(), domain.to_string(), world));
        self
    }

    #[must_use]
    pub fn term(mut self, attribute: &str, name: &str, pairs: &[(&str, Degree)]) -> Self {
        self.terms.push((
            attribute.to_string(),
            name.to_string(),
            pairs.iter().map(|(e, d)| (e.to_string(), *d)).collect(),
        ));
        self
    }

    #[must_use]
    pub fn rule(mut self, rule: RuleSpec) -> Self {
        self.rules.push(rule);
        self
    }

    /// Resolves everything, stopping at the first error.
    pub fn build(&self) -> Result<KnowledgeBase> {
        self.build_all().map_err(|mut errs| errs.remove(0).1)
    }

    /// Resolves everything, reporting each failing declaration.
    pub fn build_all(&self) -> Result<KnowledgeBase, Vec<(Origin, Error)>> {
        let mut errs: Vec<(Origin, Error)> = Vec::new();

        let mut domains: Vec<Arc<Domain>> = Vec::new();
        for (i, (name, elements)) in self.domains.iter().enumerate() {
            if domains.iter().any(|d| d.name() == name) {
                errs.push((Origin::Domain(i), Error::Duplicate(format!("domain `{name}`"))));
                continue;
            }
            if elements.iter().any(|e| e == CATCH_ALL) {
                errs.push((Origin::Domain(i), Error::Reserved(CATCH_ALL.to_string())));
                continue;
            }
            match Domain::new(name.as_str(), elements.iter().cloned()) {
                Ok(d) => domains.push(d),
                Err(e) => errs.push((Origin::Domain(i), e)),
            }
        }

        let derived: BTreeSet<&str> = self.rules.iter().map(|r| r.conclusion_attribute.as_str()).collect();
        let mut attributes: Vec<Attribute> = Vec::new();
        for (i, (name, domain, world)) in self.attributes.iter().enumerate() {
            if attributes.iter().any(|a| &a.name == name) {
                errs.push((Origin::Attribute(i), Error::Duplicate(format!("attribute `{name}`"))));
                continue;
            }
            let Some(declared) = domains.iter().find(|d| d.name() == domain) else {
                errs.push((Origin::Attribute(i), Error::UnknownDomain(domain.clone())));
                continue;
            };
            let world = world.unwrap_or_default();
            let is_derived = derived.contains(name.as_str());
            let effective = if is_derived && world == World::Open {
                declared.with_catch_all()
            } else {
                declared.clone()
            };
            attributes.push(Attribute {
                name: name.clone(),
                declared: declared.clone(),
                domain: effective,
                world,
                derived: is_derived,
            });
        }

        let mut terms: Vec<Term> = Vec::new();
        for (i, (attribute, name, pairs)) in self.terms.iter().enumerate() {
            let Some(attr) = attributes.iter().find(|a| &a.name == attribute) else {
                errs.push((Origin::Term(i), Error::UnknownAttribute(attribute.clone())));
                continue;
            };
            if terms.iter().any(|t| &t.attribute == attribute && &t.name == name) {
                errs.push((Origin::Term(i), Error::Duplicate(format!("term `{name}` of `{attribute}`"))));
                continue;
            }
            let refs: Vec<(&str, Degree)> = pairs.iter().map(|(e, d)| (e.as_str(), *d)).collect();
            match FuzzySubset::from_pairs(attr.domain.clone(), &refs) {
                Ok(set) => terms.push(Term {
                    attribute: attribute.clone(),
                    name: name.clone(),
                    set,
                }),
                Err(e) => errs.push((Origin::Term(i), e)),
            }
        }

        let lookup_term = |attribute: &str, term: &str| -> Result<FuzzySubset> {
            if !attributes.iter().any(|a| a.name == attribute) {
                return Err(Error::UnknownAttribute(attribute.to_string()));
            }
            terms
                .iter()
                .find(|t| t.attribute == attribute && t.name == term)
                .map(|t| t.set.clone())
                .ok_or_else(|| Error::UnknownTerm {
                    attribute: attribute.to_string(),
                    term: term.to_string(),
                })
        };

        let mut rules: Vec<UncertainRule> = Vec::new();
        let mut ids: Vec<&str> = Vec::new();
        let mut rule_origin: Vec<usize> = Vec::new();
        for (i, spec) in self.rules.iter().enumerate() {
            if ids.contains(&spec.id.as_str()) {
                errs.push((Origin::Rule(i), Error::Duplicate(format!("rule `{}`", spec.id))));
                continue;
            }
            ids.push(&spec.id);
            match resolve_rule(spec, &lookup_term) {
                Ok(r) => {
                    rules.push(r);
                    rule_origin.push(i);
                }
                Err(e) => errs.push((Origin::Rule(i), e)),
            }
        }

        if !errs.is_empty() {
            return Err(errs);
        }

        let rules = fold_pairs(rules);
        if let Err(e) = layering(&attributes, &rules) {
            let first = match &e {
                Error::Cycle(names) => self
                    .rules
                    .iter()
                    .position(|r| names.split(", ").any(|n| n == r.conclusion_attribute))
                    .unwrap_or(0),
                _ => 0,
            };
            return Err(vec![(Origin::Rule(first), e)]);
        }

        Ok(KnowledgeBase {
            domains,
            attributes,
            terms,
            rules,
        })
    }
}

fn resolve_rule(spec: &RuleSpec, lookup: &dyn Fn(&str, &str) -> Result<FuzzySubset>) -> Result<UncertainRule> {
    if spec.parts.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let mut parts = Vec::with_capacity(spec.parts.len());
    for p in &spec.parts {
        let mut part = ConditionPart::new(&p.attribute, &p.term, lookup(&p.attribute, &p.term)?).weighted(p.weight);
        if p.negated {
            part = part.negate();
        }
        parts.push(part);
    }
    let mut condition = match spec.connective {
        Connective::And => WeightedCondition::all(parts),
        Connective::Or => WeightedCondition::any(parts),
    };
    check_weights(&condition.weights())?;
    if spec.negated {
        condition = condition.negate();
    }
    let set = lookup(&spec.conclusion_attribute, &spec.conclusion_term)?;
    let mut conclusion = Conclusion::new(&spec.conclusion_attribute, &spec.conclusion_term, set);
    if spec.conclusion_negated {
        conclusion = conclusion.negate();
    }
    if !conclusion.set.is_normalized() {
        return Err(Error::NotNormalized(format!(
            "conclusion `{}` of rule `{}`",
            conclusion, spec.id
        )));
    }
    let mut rule = UncertainRule::new(&spec.id, condition, conclusion).with_uncertainty(spec.otherwise, spec.exception);
    rule.phrasing = spec.phrasing.clone();
    Ok(rule)
}

/// Folds each complementary-context pair into its earlier member.
fn fold_pairs(rules: Vec<UncertainRule>) -> Vec<UncertainRule> {
    let mut slots: Vec<Option<UncertainRule>> = rules.into_iter().map(Some).collect();
    for i in 0..slots.len() {
        for j in i + 1..slots.len() {
            let (Some(a), Some(b)) = (&slots[i], &slots[j]) else {
                continue;
            };
            if let Some(folded) = fold_paired(a, b) {
                slots[i] = Some(folded);
                slots[j] = None;
                break;
            }
        }
    }
    slots.into_iter().flatten().collect()
}
