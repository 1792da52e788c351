//! Combination of a rule group over the atoms of its conclusion sets.
//!
//! With crisp conclusion sets `E_1..E_n`, the min-combination of the induced
//! distributions is constant on each nonempty intersection of the `E_i` and
//! their complements. Those intersections are the atoms.

use serde::{Deserialize, Serialize};

use super::rule::{induce, propagate, ConclusionPair, UncertainRule};
use crate::error::{Error, Result};
use crate::fuzzy::{min_all, same_domain, Degree, FuzzySubset, PossibilityDistribution};
use crate::matching::MatchPair;

/// Nonempty set of domain elements sharing the same membership pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    /// Per rule: `true` if the atom lies inside the rule's conclusion set.
    pub signature: Vec<bool>,
    /// Element labels in domain order.
    pub members: Vec<String>,
    #[serde(skip)]
    indices: Vec<usize>,
}

impl Atom {
    pub fn contains(&self, element: &str) -> bool {
        self.members.iter().any(|m| m == element)
    }

    /// Domain indices of the members. Rebuilt from labels after deserializing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn label(&self) -> String {
        format!("{{{}}}", self.members.join(", "))
    }
}

/// Splits the domain by membership in each crisp set. Atoms are ordered by
/// their first member; empty intersections never appear.
pub fn partition(sets: &[&FuzzySubset]) -> Result<Vec<Atom>> {
    let first = sets.first().ok_or(Error::EmptyGroup)?;
    let domain = first.domain();
    for s in sets {
        if !same_domain(domain, s.domain()) {
            return Err(Error::DomainMismatch {
                left: domain.to_string(),
                right: s.domain().to_string(),
            });
        }
        if !s.is_crisp() {
            return Err(Error::NotCrisp(domain.name().to_string()));
        }
    }
    let mut atoms: Vec<Atom> = Vec::new();
    for (u, label) in domain.elements().iter().enumerate() {
        let signature: Vec<bool> = sets.iter().map(|s| s.degrees()[u].is_one()).collect();
        match atoms.iter_mut().find(|a| a.signature == signature) {
            Some(atom) => {
                atom.members.push(label.clone());
                atom.indices.push(u);
            }
            None => atoms.push(Atom {
                signature,
                members: vec![label.clone()],
                indices: vec![u],
            }),
        }
    }
    Ok(atoms)
}

/// Restores member indices against `domain` after deserialization.
pub(crate) fn reindex(atoms: &mut [Atom], domain: &crate::fuzzy::Domain) -> Result<()> {
    for atom in atoms {
        atom.indices = atom
            .members
            .iter()
            .map(|m| domain.index_of(m))
            .collect::<Result<_>>()?;
    }
    Ok(())
}

/// One possibility degree per atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OutputVector(pub Vec<Degree>);

impl OutputVector {
    /// Spreads each atom's degree over its members.
    pub fn expand(&self, atoms: &[Atom], domain: &std::sync::Arc<crate::fuzzy::Domain>) -> PossibilityDistribution {
        let mut pi = vec![Degree::ZERO; domain.len()];
        for (atom, d) in atoms.iter().zip(&self.0) {
            for &u in atom.indices() {
                pi[u] = *d;
            }
        }
        PossibilityDistribution::new(domain.clone(), pi).expect("atoms cover the domain")
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.0
    }
}

/// Everything produced when combining one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOutcome {
    pub conclusions: Vec<ConclusionPair>,
    pub atoms: Vec<Atom>,
    pub output: OutputVector,
    pub distribution: PossibilityDistribution,
}

/// `x_A = min_i (pos_i if A ⊆ E_i else neg_i)`.
pub fn atom_degrees(atoms: &[Atom], conclusions: &[ConclusionPair]) -> OutputVector {
    OutputVector(
        atoms
            .iter()
            .map(|a| {
                min_all(
                    a.signature
                        .iter()
                        .zip(conclusions)
                        .map(|(inside, c)| if *inside { c.pos } else { c.neg }),
                )
            })
            .collect(),
    )
}

/// Propagates, induces and min-combines a group of crisp-conclusion rules
/// sharing one conclusion attribute.
pub fn combine_group(rules: &[UncertainRule], inputs: &[MatchPair]) -> Result<GroupOutcome> {
    let first = rules.first().ok_or(Error::EmptyGroup)?;
    if inputs.len() != rules.len() {
        return Err(Error::Dimension(format!("{} rules but {} match pairs", rules.len(), inputs.len())));
    }
    for r in rules {
        if r.conclusion.attribute != first.conclusion.attribute {
            return Err(Error::MixedConclusions(
                first.conclusion.attribute.clone(),
                r.conclusion.attribute.clone(),
            ));
        }
        if !r.has_crisp_conclusion() {
            return Err(Error::FuzzyConclusion(r.id.clone()));
        }
    }
    let sets: Vec<&FuzzySubset> = rules.iter().map(|r| &r.conclusion.set).collect();
    let atoms = partition(&sets)?;
    let conclusions: Vec<ConclusionPair> = rules.iter().zip(inputs).map(|(r, m)| propagate(r, *m)).collect();
    let output = atom_degrees(&atoms, &conclusions);
    let distribution = output.expand(&atoms, first.conclusion.set.domain());
    Ok(GroupOutcome {
        conclusions,
        atoms,
        output,
        distribution,
    })
}

/// Rule-by-rule route: min-combination of each rule's induced distribution.
pub fn combine_by_induction(rules: &[UncertainRule], inputs: &[MatchPair]) -> Result<PossibilityDistribution> {
    let mut acc: Option<PossibilityDistribution> = None;
    for (r, m) in rules.iter().zip(inputs) {
        let d = induce(&r.conclusion.set, propagate(r, *m));
        acc = Some(match acc {
            None => d,
            Some(a) => a.min_combine(&d)?,
        });
    }
    acc.ok_or(Error::EmptyGroup)
}
