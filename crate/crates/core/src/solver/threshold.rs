//! Threshold queries on one output of a min-max system.
//!
//! `b_k >= t` holds iff every column whose matrix entry is below `t` has its
//! input at least `t`. `b_k <= t` holds iff some column has both its entry
//! and its input at most `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::system::Matrix;
use crate::error::Result;
use crate::fuzzy::Degree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtLeast,
    AtMost,
}

impl Bound {
    pub fn symbol(self) -> &'static str {
        match self {
            Bound::AtLeast => ">=",
            Bound::AtMost => "<=",
        }
    }
}

/// `v_column >= threshold` or `v_column <= threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atomic {
    pub column: usize,
    pub bound: Bound,
    pub threshold: Degree,
}

impl Atomic {
    pub fn holds(&self, v: &[Degree]) -> bool {
        match self.bound {
            Bound::AtLeast => v[self.column] >= self.threshold,
            Bound::AtMost => v[self.column] <= self.threshold,
        }
    }

    fn is_tautology(&self) -> bool {
        match self.bound {
            Bound::AtLeast => self.threshold.is_zero(),
            Bound::AtMost => self.threshold.is_one(),
        }
    }
}

impl fmt::Display for Atomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{} {} {}", self.column, self.bound.symbol(), self.threshold)
    }
}

/// Condition on the inputs for `b_row` to reach a target, in disjunctive
/// normal form.
///
/// An empty conjunction among the alternatives means the target is met
/// whatever the inputs; no alternatives at all means it can never be met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdConstraint {
    pub row: usize,
    pub bound: Bound,
    pub target: Degree,
    /// Smallest matrix entry of the row: the output's lower limit.
    pub floor: Degree,
    pub alternatives: Vec<Vec<Atomic>>,
}

impl ThresholdConstraint {
    fn new(m: &Matrix, row: usize, bound: Bound, target: Degree, alternatives: Vec<Vec<Atomic>>) -> Self {
        let mut c = ThresholdConstraint {
            row,
            bound,
            target,
            floor: m.row_floor(row),
            alternatives,
        };
        c.simplify();
        c
    }

    fn simplify(&mut self) {
        for conj in &mut self.alternatives {
            conj.retain(|a| !a.is_tautology());
        }
        if self.alternatives.iter().any(Vec::is_empty) {
            self.alternatives = vec![Vec::new()];
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.alternatives.iter().any(Vec::is_empty)
    }

    pub fn is_infeasible(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn is_satisfied_by(&self, v: &[Degree]) -> bool {
        self.alternatives.iter().any(|conj| conj.iter().all(|a| a.holds(v)))
    }

    /// Drops alternatives that would force both members of a coupled pair
    /// below 1, which `max(v_j, v_j') = 1` forbids.
    pub fn apply_coupling(&mut self, coupling: &[(usize, usize)]) {
        self.alternatives.retain(|conj| {
            !coupling.iter().any(|&(a, b)| {
                let capped = |j: usize| {
                    conj.iter()
                        .any(|x| x.column == j && x.bound == Bound::AtMost && !x.threshold.is_one())
                };
                capped(a) && capped(b)
            })
        });
    }
}

impl fmt::Display for ThresholdConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infeasible() {
            return write!(f, "infeasible (floor {})", self.floor);
        }
        if self.is_trivial() {
            return f.write_str("always satisfied");
        }
        let alts: Vec<String> = self
            .alternatives
            .iter()
            .map(|conj| {
                let parts: Vec<String> = conj.iter().map(ToString::to_string).collect();
                parts.join(" AND ")
            })
            .collect();
        if alts.len() == 1 {
            f.write_str(&alts[0])
        } else {
            write!(f, "({})", alts.join(") OR ("))
        }
    }
}

/// Inputs needed for `b_row >= t`.
pub fn require_at_least(m: &Matrix, row: usize, t: Degree) -> Result<ThresholdConstraint> {
    m.check_row(row)?;
    let conj = (0..m.cols())
        .filter(|&j| m.get(row, j) < t)
        .map(|j| Atomic {
            column: j,
            bound: Bound::AtLeast,
            threshold: t,
        })
        .collect();
    Ok(ThresholdConstraint::new(m, row, Bound::AtLeast, t, vec![conj]))
}

/// Inputs that would bring `b_row <= t`; infeasible when `t` is below the
/// row floor.
pub fn require_at_most(m: &Matrix, row: usize, t: Degree) -> Result<ThresholdConstraint> {
    m.check_row(row)?;
    let alts = if t.is_one() {
        vec![Vec::new()]
    } else {
        (0..m.cols())
            .filter(|&j| m.get(row, j) <= t)
            .map(|j| {
                vec![Atomic {
                    column: j,
                    bound: Bound::AtMost,
                    threshold: t,
                }]
            })
            .collect()
    };
    Ok(ThresholdConstraint::new(m, row, Bound::AtMost, t, alts))
}
