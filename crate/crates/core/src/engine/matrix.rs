//! The group's combination written as a min-max system `OV = MR ■ IV`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::{Atom, OutputVector};
use super::rule::UncertainRule;
use crate::error::{Error, Result};
use crate::fuzzy::Degree;
use crate::matching::MatchPair;
use crate::solver::{eval_minmax, Coupling, Matrix, MinMaxSystem};

/// Which half of a rule's match pair a column carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionSide {
    /// Possibility that the condition holds.
    Holds,
    /// Possibility that the condition fails.
    Fails,
}

impl ConditionSide {
    pub fn name(self) -> &'static str {
        match self {
            ConditionSide::Holds => "holds",
            ConditionSide::Fails => "fails",
        }
    }
}

/// Column label: rule index within the group and side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnRef {
    pub rule: usize,
    pub side: ConditionSide,
}

impl ColumnRef {
    pub fn index(self) -> usize {
        2 * self.rule
            + match self.side {
                ConditionSide::Holds => 0,
                ConditionSide::Fails => 1,
            }
    }

    pub fn of(index: usize) -> Self {
        ColumnRef {
            rule: index / 2,
            side: if index.is_multiple_of(2) {
                ConditionSide::Holds
            } else {
                ConditionSide::Fails
            },
        }
    }
}

/// Flattened match pairs `[pos_1, neg_1, pos_2, neg_2, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InputVector(pub Vec<Degree>);

impl InputVector {
    pub fn from_pairs(pairs: &[MatchPair]) -> Self {
        InputVector(pairs.iter().flat_map(|p| [p.pos, p.neg]).collect())
    }

    pub fn pair(&self, rule: usize) -> MatchPair {
        MatchPair::new(self.0[2 * rule], self.0[2 * rule + 1])
    }

    pub fn pairs(&self) -> Vec<MatchPair> {
        (0..self.0.len() / 2).map(|i| self.pair(i)).collect()
    }

    pub fn get(&self, c: ColumnRef) -> Degree {
        self.0[c.index()]
    }

    pub fn is_normalized(&self) -> bool {
        self.pairs().iter().all(|p| p.is_normalized())
    }
}

/// Rule matrix of a group, one row per atom, two columns per rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleMatrix {
    pub matrix: Matrix,
    pub rule_ids: Vec<String>,
}

impl RuleMatrix {
    pub fn columns(&self) -> impl Iterator<Item = ColumnRef> {
        (0..self.matrix.cols()).map(ColumnRef::of)
    }

    /// Coupling `max(v_holds, v_fails) = 1` for every rule.
    pub fn coupling(&self) -> Coupling {
        (0..self.rule_ids.len()).map(|i| (2 * i, 2 * i + 1)).collect()
    }

    pub fn evaluate(&self, iv: &InputVector) -> Result<OutputVector> {
        Ok(OutputVector(eval_minmax(&self.matrix, &iv.0)?))
    }

    pub fn system(&self) -> MinMaxSystem {
        MinMaxSystem::new(self.matrix.clone())
            .coupled(self.coupling())
            .expect("one disjoint pair per rule")
    }

    pub fn column_label(&self, c: ColumnRef) -> String {
        format!("{}.{}", self.rule_ids[c.rule], c.side.name())
    }

    /// Parses `R2.holds` / `R2.fails` back into a column.
    pub fn find_column(&self, label: &str) -> Result<ColumnRef> {
        let (id, side) = label
            .rsplit_once('.')
            .ok_or_else(|| Error::UnknownInput(label.to_string()))?;
        let side = match side {
            "holds" => ConditionSide::Holds,
            "fails" => ConditionSide::Fails,
            _ => return Err(Error::UnknownInput(label.to_string())),
        };
        let rule = self
            .rule_ids
            .iter()
            .position(|r| r == id)
            .ok_or_else(|| Error::UnknownInput(label.to_string()))?;
        Ok(ColumnRef { rule, side })
    }
}

impl fmt::Display for RuleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.matrix, f)
    }
}

/// Row for atom `A`, rule `i`: `(otherwise_i, 1)` if `A ⊆ E_i`, else `(1, exception_i)`.
pub fn build_rule_matrix(rules: &[UncertainRule], atoms: &[Atom]) -> Result<RuleMatrix> {
    if rules.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let mut rows = Vec::with_capacity(atoms.len());
    for atom in atoms {
        if atom.signature.len() != rules.len() {
            return Err(Error::Dimension(format!(
                "atom signature has {} entries for {} rules",
                atom.signature.len(),
                rules.len()
            )));
        }
        let row = rules
            .iter()
            .zip(&atom.signature)
            .flat_map(|(r, inside)| {
                if *inside {
                    [r.otherwise, Degree::ONE]
                } else {
                    [Degree::ONE, r.exception]
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(RuleMatrix {
        matrix: Matrix::from_rows(rows)?,
        rule_ids: rules.iter().map(|r| r.id.clone()).collect(),
    })
}
