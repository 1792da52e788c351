use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{Degree, FuzzySubset, PossibilityDistribution};
use crate::matching::{MatchPair, WeightedCondition};

/// `attribute IS [NOT] term` on the conclusion side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub attribute: String,
    pub term: String,
    pub negated: bool,
    /// Resolved set, already complemented when `negated`.
    pub set: FuzzySubset,
}

impl Conclusion {
    pub fn new(attribute: impl Into<String>, term: impl Into<String>, set: FuzzySubset) -> Self {
        Conclusion {
            attribute: attribute.into(),
            term: term.into(),
            negated: false,
            set,
        }
    }

    #[must_use]
    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self.set = self.set.complement();
        self
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let not = if self.negated { "NOT " } else { "" };
        write!(f, "{} IS {}{}", self.attribute, not, self.term)
    }
}

/// Author-written wording of a rule's condition and of its negation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phrasing {
    pub holds: Option<String>,
    pub fails: Option<String>,
}

/// `if condition then conclusion` with uncertainty pair `(otherwise, exception)`.
///
/// The rule's 2x2 possibility matrix is `[[1, otherwise], [exception, 1]]`:
/// `exception` is the possibility that the conclusion fails although the
/// condition holds, `otherwise` the possibility that the conclusion holds
/// although the condition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncertainRule {
    pub id: String,
    pub condition: WeightedCondition,
    pub conclusion: Conclusion,
    pub otherwise: Degree,
    pub exception: Degree,
    pub phrasing: Phrasing,
    /// Id of the complementary-context rule folded into this one.
    pub paired_with: Option<String>,
    /// Id of the fuzzy-conclusion rule this crisp rule was decomposed from.
    pub decomposed_from: Option<String>,
}

impl UncertainRule {
    pub fn new(id: impl Into<String>, condition: WeightedCondition, conclusion: Conclusion) -> Self {
        UncertainRule {
            id: id.into(),
            condition,
            conclusion,
            otherwise: Degree::ONE,
            exception: Degree::ZERO,
            phrasing: Phrasing::default(),
            paired_with: None,
            decomposed_from: None,
        }
    }

    #[must_use]
    pub fn with_uncertainty(mut self, otherwise: Degree, exception: Degree) -> Self {
        self.otherwise = otherwise;
        self.exception = exception;
        self
    }

    #[must_use]
    pub fn with_phrasing(mut self, holds: impl Into<String>, fails: impl Into<String>) -> Self {
        self.phrasing = Phrasing {
            holds: Some(holds.into()),
            fails: Some(fails.into()),
        };
        self
    }

    pub fn has_crisp_conclusion(&self) -> bool {
        self.conclusion.set.is_crisp()
    }

    /// The rule matrix `[[1, otherwise], [exception, 1]]`.
    pub fn matrix(&self) -> [[Degree; 2]; 2] {
        [[Degree::ONE, self.otherwise], [self.exception, Degree::ONE]]
    }
}

/// Possibility that the conclusion holds (`pos`) and fails (`neg`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConclusionPair {
    pub pos: Degree,
    pub neg: Degree,
}

impl ConclusionPair {
    pub fn is_normalized(self) -> bool {
        self.pos.max(self.neg).is_one()
    }
}

impl fmt::Display for ConclusionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.neg)
    }
}

/// Max-min product of the rule matrix with the condition's match pair:
/// `pos = max(min(1, m.pos), min(otherwise, m.neg))`,
/// `neg = max(min(exception, m.pos), min(1, m.neg))`.
pub fn propagate(rule: &UncertainRule, m: MatchPair) -> ConclusionPair {
    ConclusionPair {
        pos: m.pos.max(rule.otherwise.min(m.neg)),
        neg: rule.exception.min(m.pos).max(m.neg),
    }
}

/// Distribution induced on the conclusion attribute:
/// `min(max(mu_E, neg), max(1 - mu_E, pos))`. Valid for fuzzy `E`.
pub fn induce(set: &FuzzySubset, c: ConclusionPair) -> PossibilityDistribution {
    let pi = set
        .degrees()
        .iter()
        .map(|&mu| mu.max(c.neg).min(mu.complement().max(c.pos)))
        .collect();
    PossibilityDistribution::new(set.domain().clone(), pi).expect("same length as the set")
}

/// Max-min form `max(min(mu_E, pos), min(1 - mu_E, neg))`, equal to
/// [`induce`] when `E` is crisp.
pub fn induce_crisp(set: &FuzzySubset, c: ConclusionPair) -> Result<PossibilityDistribution> {
    if !set.is_crisp() {
        return Err(Error::NotCrisp(set.domain().name().to_string()));
    }
    let pi = set
        .degrees()
        .iter()
        .map(|&mu| mu.min(c.pos).max(mu.complement().min(c.neg)))
        .collect();
    PossibilityDistribution::new(set.domain().clone(), pi)
}

/// Replaces a rule with a fuzzy conclusion by nested crisp rules.
///
/// With distinct positive membership levels `1 = t_1 > ... > t_k`, rule `j`
/// concludes `Q_j = { u : mu_E(u) >= t_j }` with exception
/// `max(t_{j+1}, base_exception)` (`t_{k+1} = 0`). Under a certain match the
/// combined result is `max(mu_E, base_exception)`, as for the original rule.
pub fn decompose_fuzzy_conclusion(rule: &UncertainRule, base_exception: Degree) -> Result<Vec<UncertainRule>> {
    let set = &rule.conclusion.set;
    if !set.is_normalized() {
        return Err(Error::NotNormalized(set.domain().name().to_string()));
    }
    if set.is_crisp() {
        let mut only = rule.clone();
        only.exception = base_exception;
        return Ok(vec![only]);
    }
    let mut levels: Vec<Degree> = set.degrees().iter().copied().filter(|d| !d.is_zero()).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let k = levels.len();
    let mut out = Vec::with_capacity(k);
    for (j, &level) in levels.iter().enumerate() {
        let next = levels.get(j + 1).copied().unwrap_or(Degree::ZERO);
        let mu = set
            .degrees()
            .iter()
            .map(|d| if *d >= level { Degree::ONE } else { Degree::ZERO })
            .collect();
        let cut = FuzzySubset::new(set.domain().clone(), mu)?;
        let mut crisp = rule.clone();
        crisp.id = format!("{}#{}", rule.id, j + 1);
        crisp.conclusion.set = cut;
        crisp.conclusion.term = format!("{}>={}", rule.conclusion.term, level);
        crisp.exception = next.max(base_exception);
        crisp.decomposed_from = Some(rule.id.clone());
        out.push(crisp);
    }
    Ok(out)
}

/// Folds `if NOT p then NOT E` into `if p then E`.
///
/// The pair is recognised when the conditions are whole-condition
/// complements and the crisp conclusions are complements on the same
/// attribute. The folded rule gives the same combined output:
/// `otherwise = min(a.otherwise, b.exception)` and
/// `exception = min(a.exception, b.otherwise)`.
pub fn fold_paired(a: &UncertainRule, b: &UncertainRule) -> Option<UncertainRule> {
    let complementary = a.condition.is_complement_of(&b.condition)
        && a.conclusion.attribute == b.conclusion.attribute
        && a.conclusion.term == b.conclusion.term
        && a.conclusion.negated != b.conclusion.negated
        && a.has_crisp_conclusion()
        && b.has_crisp_conclusion();
    if !complementary || a.paired_with.is_some() || b.paired_with.is_some() {
        return None;
    }
    let mut folded = a.clone();
    folded.otherwise = a.otherwise.min(b.exception);
    folded.exception = a.exception.min(b.otherwise);
    folded.paired_with = Some(b.id.clone());
    folded.phrasing = Phrasing {
        holds: a.phrasing.holds.clone().or_else(|| b.phrasing.fails.clone()),
        fails: a.phrasing.fails.clone().or_else(|| b.phrasing.holds.clone()),
    };
    Some(folded)
}
