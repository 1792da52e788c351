//! Wording of matrix columns in terms of the facts they stand for.

use crate::engine::{ColumnRef, ConditionSide, GroupTrace, UncertainRule};
use crate::fuzzy::Degree;
use crate::solver::{Atomic, Bound};

/// Sentence for "the condition of `rule` holds".
pub(crate) fn holds(rule: &UncertainRule) -> String {
    rule.phrasing
        .holds
        .clone()
        .unwrap_or_else(|| rule.condition.to_string())
}

/// Sentence for "the condition of `rule` fails".
pub(crate) fn fails(rule: &UncertainRule) -> String {
    rule.phrasing
        .fails
        .clone()
        .unwrap_or_else(|| format!("NOT ({})", rule.condition))
}

/// Statement the column's degree is the possibility of.
pub(crate) fn statement(rule: &UncertainRule, side: ConditionSide) -> String {
    match side {
        ConditionSide::Holds => holds(rule),
        ConditionSide::Fails => fails(rule),
    }
}

/// Opposite statement, made certain when the column's degree is low.
pub(crate) fn opposite(rule: &UncertainRule, side: ConditionSide) -> String {
    match side {
        ConditionSide::Holds => fails(rule),
        ConditionSide::Fails => holds(rule),
    }
}

/// `λ_2` / `ρ_2`, numbered by position in the group.
pub(crate) fn symbol(c: ColumnRef) -> String {
    let letter = match c.side {
        ConditionSide::Holds => 'λ',
        ConditionSide::Fails => 'ρ',
    };
    format!("{}_{}", letter, c.rule + 1)
}

pub(crate) fn certainty_words(d: Degree) -> &'static str {
    if d.is_one() {
        "certain"
    } else {
        "somewhat certain"
    }
}

/// One atomic threshold in fact language, or symbolically.
pub(crate) fn atomic(group: &GroupTrace, a: &Atomic, fact_language: bool) -> String {
    let c = ColumnRef::of(a.column);
    if !fact_language {
        return format!("{} {} {}", symbol(c), if a.bound == Bound::AtLeast { "≥" } else { "≤" }, a.threshold);
    }
    let rule = &group.rules[c.rule];
    let words = match a.bound {
        Bound::AtLeast => "at least",
        Bound::AtMost => "at most",
    };
    format!(
        "it should be possible {} at the degree {} that {}",
        words,
        a.threshold,
        statement(rule, c.side)
    )
}
