//! Fuzzy pattern matching of rule conditions against facts.
//!
//! An elementary condition `attribute IS pattern` is matched against the
//! fact's possibility distribution, giving the possibility that the condition
//! holds and the possibility that it fails. Compound conditions aggregate
//! these pairs with importance weights.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{consistency, max_all, min_all, Degree, FuzzySubset, PossibilityDistribution};

/// Possibility that a condition holds (`pos`) and that it fails (`neg`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchPair {
    pub pos: Degree,
    pub neg: Degree,
}

impl MatchPair {
    pub const CERTAIN: MatchPair = MatchPair {
        pos: Degree::ONE,
        neg: Degree::ZERO,
    };
    pub const IMPOSSIBLE: MatchPair = MatchPair {
        pos: Degree::ZERO,
        neg: Degree::ONE,
    };
    pub const UNKNOWN: MatchPair = MatchPair {
        pos: Degree::ONE,
        neg: Degree::ONE,
    };

    pub fn new(pos: Degree, neg: Degree) -> Self {
        MatchPair { pos, neg }
    }

    /// `max(pos, neg) = 1`.
    pub fn is_normalized(self) -> bool {
        self.pos.max(self.neg).is_one()
    }

    /// The pair for the negated condition.
    #[must_use]
    pub fn swapped(self) -> Self {
        MatchPair {
            pos: self.neg,
            neg: self.pos,
        }
    }
}

impl fmt::Display for MatchPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.neg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
}

/// Result of matching one pattern against one fact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryMatch {
    pub pair: MatchPair,
    /// False when the fact was subnormal, in which case the pair may be too.
    pub fact_normalized: bool,
}

pub fn match_elementary(pattern: &FuzzySubset, fact: &PossibilityDistribution) -> Result<ElementaryMatch> {
    let pos = consistency(pattern, fact)?;
    let neg = consistency(&pattern.complement(), fact)?;
    Ok(ElementaryMatch {
        pair: MatchPair { pos, neg },
        fact_normalized: fact.is_normalized(),
    })
}

/// Checks the importance weights of a compound condition.
///
/// Both connectives require the largest weight to be 1. For a disjunction this
/// is the normalization of the weights as they appear after the dual
/// substitution, so a disjunction of equally important parts uses all-ones.
pub fn check_weights(weights: &[Degree]) -> Result<()> {
    if weights.is_empty() {
        return Ok(());
    }
    let top = max_all(weights.iter().copied());
    if top.is_one() {
        Ok(())
    } else {
        Err(Error::WeightsNotNormalized(top.to_string()))
    }
}

/// Aggregates elementary pairs into the pair of the compound condition.
///
/// Conjunction: `pos = min_i max(pos_i, 1 - w_i)`, `neg = max_i min(neg_i, w_i)`.
/// Disjunction swaps min and max and replaces `w_i` by `1 - w_i`, giving
/// `pos = max_i min(pos_i, w_i)`, `neg = min_i max(neg_i, 1 - w_i)`.
pub fn aggregate(pairs: &[MatchPair], weights: &[Degree], connective: Connective) -> Result<MatchPair> {
    if pairs.len() != weights.len() {
        return Err(Error::WeightCount {
            pairs: pairs.len(),
            weights: weights.len(),
        });
    }
    check_weights(weights)?;
    let terms = pairs.iter().zip(weights);
    Ok(match connective {
        Connective::And => MatchPair {
            pos: min_all(terms.clone().map(|(p, w)| p.pos.max(w.complement()))),
            neg: max_all(terms.map(|(p, w)| p.neg.min(*w))),
        },
        Connective::Or => MatchPair {
            pos: max_all(terms.clone().map(|(p, w)| p.pos.min(*w))),
            neg: min_all(terms.map(|(p, w)| p.neg.max(w.complement()))),
        },
    })
}

/// One elementary condition of a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionPart {
    pub attribute: String,
    /// Name of the knowledge-base term the pattern came from.
    pub term: String,
    /// `attribute IS NOT term`; `pattern` is already complemented.
    pub negated: bool,
    pub weight: Degree,
    pub pattern: FuzzySubset,
}

impl ConditionPart {
    pub fn new(attribute: impl Into<String>, term: impl Into<String>, pattern: FuzzySubset) -> Self {
        ConditionPart {
            attribute: attribute.into(),
            term: term.into(),
            negated: false,
            weight: Degree::ONE,
            pattern,
        }
    }

    #[must_use]
    pub fn weighted(mut self, weight: Degree) -> Self {
        self.weight = weight;
        self
    }

    /// Turns `a IS t` into `a IS NOT t`, complementing the pattern.
    #[must_use]
    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self.pattern = self.pattern.complement();
        self
    }
}

impl fmt::Display for ConditionPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let not = if self.negated { "NOT " } else { "" };
        write!(f, "{} IS {}{}", self.attribute, not, self.term)?;
        if !self.weight.is_one() {
            write!(f, " WEIGHT {}", self.weight)?;
        }
        Ok(())
    }
}

/// A compound condition: weighted elementary parts under one connective,
/// optionally negated as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCondition {
    pub parts: Vec<ConditionPart>,
    pub connective: Connective,
    pub negated: bool,
}

/// Per-part details plus the aggregated pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionMatch {
    pub parts: Vec<PartMatch>,
    pub pair: MatchPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartMatch {
    pub attribute: String,
    pub fact: PossibilityDistribution,
    /// True when no fact was available and total ignorance was assumed.
    pub assumed_unknown: bool,
    pub result: ElementaryMatch,
}

impl WeightedCondition {
    pub fn single(part: ConditionPart) -> Self {
        WeightedCondition {
            parts: vec![part],
            connective: Connective::And,
            negated: false,
        }
    }

    pub fn all(parts: Vec<ConditionPart>) -> Self {
        WeightedCondition {
            parts,
            connective: Connective::And,
            negated: false,
        }
    }

    pub fn any(parts: Vec<ConditionPart>) -> Self {
        WeightedCondition {
            parts,
            connective: Connective::Or,
            negated: false,
        }
    }

    #[must_use]
    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    pub fn weights(&self) -> Vec<Degree> {
        self.parts.iter().map(|p| p.weight).collect()
    }

    pub fn attributes(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().map(|p| p.attribute.as_str())
    }

    /// Matches every part against `facts`; a missing fact means total ignorance.
    pub fn evaluate<'a, F>(&self, facts: F) -> Result<ConditionMatch>
    where
        F: Fn(&str) -> Option<&'a PossibilityDistribution>,
    {
        let mut parts = Vec::with_capacity(self.parts.len());
        for part in &self.parts {
            let (fact, assumed_unknown) = match facts(&part.attribute) {
                Some(d) => (d.clone(), false),
                None => (PossibilityDistribution::ignorance(part.pattern.domain().clone()), true),
            };
            let result = match_elementary(&part.pattern, &fact)?;
            parts.push(PartMatch {
                attribute: part.attribute.clone(),
                fact,
                assumed_unknown,
                result,
            });
        }
        let pairs: Vec<MatchPair> = parts.iter().map(|p| p.result.pair).collect();
        let pair = aggregate(&pairs, &self.weights(), self.connective)?;
        Ok(ConditionMatch {
            parts,
            pair: if self.negated { pair.swapped() } else { pair },
        })
    }

    /// True when `other` is this condition negated as a whole.
    pub fn is_complement_of(&self, other: &WeightedCondition) -> bool {
        self.negated != other.negated && self.parts == other.parts && self.connective == other.connective
    }
}

impl fmt::Display for WeightedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("NOT ")?;
        }
        let sep = match self.connective {
            Connective::And => " AND ",
            Connective::Or => " OR ",
        };
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{}", part)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{deg, Domain};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn yes_no() -> Arc<Domain> {
        Domain::new("yes_no", ["yes", "no"]).unwrap()
    }

    fn pair(p: f64, n: f64) -> MatchPair {
        MatchPair::new(deg(p), deg(n))
    }

    #[test]
    fn perfect_match() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::certain(yes_no(), "yes").unwrap();
        assert_eq!(match_elementary(&pattern, &fact).unwrap().pair, MatchPair::CERTAIN);
    }

    #[test]
    fn ignorance_matches_both_ways() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::ignorance(yes_no());
        assert_eq!(match_elementary(&pattern, &fact).unwrap().pair, MatchPair::UNKNOWN);
    }

    #[test]
    fn somewhat_likes_meeting_people() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::from_pairs(yes_no(), &[("yes", deg(1.0)), ("no", deg(0.5))]).unwrap();
        let m = match_elementary(&pattern, &fact).unwrap();
        assert_eq!(m.pair, pair(1.0, 0.5));
        assert!(m.fact_normalized);
    }

    #[test]
    fn subnormal_fact_is_flagged() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::from_pairs(yes_no(), &[("yes", deg(0.7))]).unwrap();
        assert!(!match_elementary(&pattern, &fact).unwrap().fact_normalized);
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let other = Domain::new("other", ["x"]).unwrap();
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::ignorance(other);
        assert!(matches!(match_elementary(&pattern, &fact), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn unit_weights_reduce_to_plain_min_max() {
        let pairs = [pair(1.0, 0.3), pair(0.6, 1.0), pair(0.8, 0.5)];
        let w = [Degree::ONE; 3];
        assert_eq!(aggregate(&pairs, &w, Connective::And).unwrap(), pair(0.6, 1.0));
    }

    #[test]
    fn single_condition_is_identity() {
        let p = pair(0.4, 1.0);
        assert_eq!(aggregate(&[p], &[Degree::ONE], Connective::And).unwrap(), p);
        assert_eq!(aggregate(&[p], &[Degree::ONE], Connective::Or).unwrap(), p);
    }

    #[test]
    fn weighted_conjunction_by_hand() {
        // pos = min(max(1, 0), max(0.6, 0.6)) = 0.6
        // neg = max(min(0.3, 1), min(1, 0.4)) = 0.4
        let pairs = [pair(1.0, 0.3), pair(0.6, 1.0)];
        let w = [deg(1.0), deg(0.4)];
        assert_eq!(aggregate(&pairs, &w, Connective::And).unwrap(), pair(0.6, 0.4));
    }

    #[test]
    fn weighted_disjunction_by_hand() {
        // pos = max(min(0, 1), min(1, 0.4)) = 0.4
        // neg = min(max(1, 0), max(0, 0.6)) = 0.6
        let pairs = [pair(0.0, 1.0), pair(1.0, 0.0)];
        let w = [deg(1.0), deg(0.4)];
        assert_eq!(aggregate(&pairs, &w, Connective::Or).unwrap(), pair(0.4, 0.6));
    }

    #[test]
    fn unnormalized_weights_rejected() {
        let pairs = [pair(1.0, 0.0), pair(1.0, 0.0)];
        let w = [deg(0.9), deg(0.4)];
        assert!(matches!(
            aggregate(&pairs, &w, Connective::And),
            Err(Error::WeightsNotNormalized(_))
        ));
        assert!(matches!(
            aggregate(&pairs, &w[..1], Connective::And),
            Err(Error::WeightCount { .. })
        ));
    }

    #[test]
    fn missing_fact_means_ignorance() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let cond = WeightedCondition::single(ConditionPart::new("likes", "yes", pattern));
        let m = cond.evaluate(|_| None).unwrap();
        assert_eq!(m.pair, MatchPair::UNKNOWN);
        assert!(m.parts[0].assumed_unknown);
    }

    #[test]
    fn negations() {
        let pattern = FuzzySubset::crisp(yes_no(), &["yes"]).unwrap();
        let fact = PossibilityDistribution::from_pairs(yes_no(), &[("yes", deg(1.0)), ("no", deg(0.5))]).unwrap();
        let lookup = |_: &str| Some(&fact);
        let part = ConditionPart::new("likes", "yes", pattern);
        let whole = WeightedCondition::single(part.clone()).negate();
        assert_eq!(whole.evaluate(lookup).unwrap().pair, pair(0.5, 1.0));
        let elementary = WeightedCondition::single(part.clone().negate());
        assert_eq!(elementary.evaluate(lookup).unwrap().pair, pair(0.5, 1.0));
        assert!(whole.is_complement_of(&WeightedCondition::single(part)));
        assert_eq!(whole.to_string(), "NOT likes IS yes");
    }

    fn degree() -> impl Strategy<Value = Degree> {
        (0u16..=1000).prop_map(|t| Degree::from_thousandths(t).unwrap())
    }

    fn pairs_and_weights(n: usize) -> impl Strategy<Value = (Vec<MatchPair>, Vec<Degree>)> {
        (
            proptest::collection::vec((degree(), degree()).prop_map(|(p, n)| MatchPair::new(p, n)), n),
            proptest::collection::vec(degree(), n),
            0..n,
        )
            .prop_map(|(pairs, mut w, top)| {
                w[top] = Degree::ONE;
                (pairs, w)
            })
    }

    proptest! {
        #[test]
        fn crisp_pattern_on_normalized_fact_is_normalized(
            members in proptest::collection::vec(any::<bool>(), 4),
            pi in proptest::collection::vec(degree(), 4),
            top in 0usize..4,
        ) {
            let d = Domain::new("d", ["a", "b", "c", "e"]).unwrap();
            let mu = members.iter().map(|m| if *m { Degree::ONE } else { Degree::ZERO }).collect();
            let mut pi = pi;
            pi[top] = Degree::ONE;
            let pattern = FuzzySubset::new(d.clone(), mu).unwrap();
            let fact = PossibilityDistribution::new(d, pi).unwrap();
            prop_assert!(match_elementary(&pattern, &fact).unwrap().pair.is_normalized());
        }

        #[test]
        fn fuzzy_pattern_on_normalized_fact_reaches_half(
            mu in proptest::collection::vec(degree(), 4),
            pi in proptest::collection::vec(degree(), 4),
            top in 0usize..4,
        ) {
            let d = Domain::new("d", ["a", "b", "c", "e"]).unwrap();
            let mut pi = pi;
            pi[top] = Degree::ONE;
            let pattern = FuzzySubset::new(d.clone(), mu).unwrap();
            let fact = PossibilityDistribution::new(d, pi).unwrap();
            let p = match_elementary(&pattern, &fact).unwrap().pair;
            prop_assert!(p.pos.max(p.neg).thousandths() >= 500);
        }

        #[test]
        fn unit_weights_match_unweighted(pairs in proptest::collection::vec((degree(), degree()), 1..6)) {
            let pairs: Vec<_> = pairs.into_iter().map(|(p, n)| MatchPair::new(p, n)).collect();
            let w = vec![Degree::ONE; pairs.len()];
            let agg = aggregate(&pairs, &w, Connective::And).unwrap();
            prop_assert_eq!(agg.pos, min_all(pairs.iter().map(|p| p.pos)));
            prop_assert_eq!(agg.neg, max_all(pairs.iter().map(|p| p.neg)));
        }

        #[test]
        fn raising_inputs_never_lowers_output((pairs, w) in pairs_and_weights(4), i in 0usize..4, bump in degree()) {
            let base = aggregate(&pairs, &w, Connective::And).unwrap();
            let mut up = pairs.clone();
            up[i].pos = up[i].pos.max(bump);
            prop_assert!(aggregate(&up, &w, Connective::And).unwrap().pos >= base.pos);
            let mut up = pairs.clone();
            up[i].neg = up[i].neg.max(bump);
            prop_assert!(aggregate(&up, &w, Connective::And).unwrap().neg >= base.neg);
        }

        #[test]
        fn lowering_importance_never_hurts_pos((pairs, w) in pairs_and_weights(4), i in 0usize..4, cut in degree()) {
            let base = aggregate(&pairs, &w, Connective::And).unwrap();
            let mut lower = w.clone();
            lower[i] = lower[i].min(cut);
            // Keep the weight vector normalized.
            if lower.iter().all(|x| !x.is_one()) {
                return Ok(());
            }
            let out = aggregate(&pairs, &lower, Connective::And).unwrap();
            prop_assert!(out.pos >= base.pos);
            prop_assert!(out.neg <= base.neg);
        }
    }
}
