use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::degree::{max_all, Degree, SCALE};
use super::domain::{check_same, Domain};
use crate::error::{Error, Result};

/// Membership vector over a finite domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FuzzySubset {
    domain: Arc<Domain>,
    mu: Vec<Degree>,
}

/// Possibility vector over a finite domain.
///
/// Normalization (height 1) is checked, never silently enforced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PossibilityDistribution {
    domain: Arc<Domain>,
    pi: Vec<Degree>,
}

fn check_len(domain: &Domain, got: usize) -> Result<()> {
    if got == domain.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            domain: domain.name().to_string(),
            expected: domain.len(),
            got,
        })
    }
}

fn assign(domain: &Arc<Domain>, pairs: &[(&str, Degree)]) -> Result<Vec<Degree>> {
    let mut v = vec![Degree::ZERO; domain.len()];
    for (label, d) in pairs {
        v[domain.index_of(label)?] = *d;
    }
    Ok(v)
}

impl FuzzySubset {
    pub fn new(domain: Arc<Domain>, mu: Vec<Degree>) -> Result<Self> {
        check_len(&domain, mu.len())?;
        Ok(FuzzySubset { domain, mu })
    }

    /// Ordinary subset containing exactly `members`.
    pub fn crisp(domain: Arc<Domain>, members: &[&str]) -> Result<Self> {
        let pairs: Vec<_> = members.iter().map(|m| (*m, Degree::ONE)).collect();
        Self::from_pairs(domain, &pairs)
    }

    /// Unlisted elements get membership 0.
    pub fn from_pairs(domain: Arc<Domain>, pairs: &[(&str, Degree)]) -> Result<Self> {
        let mu = assign(&domain, pairs)?;
        Ok(FuzzySubset { domain, mu })
    }

    pub fn empty(domain: Arc<Domain>) -> Self {
        let mu = vec![Degree::ZERO; domain.len()];
        FuzzySubset { domain, mu }
    }

    pub fn full(domain: Arc<Domain>) -> Self {
        let mu = vec![Degree::ONE; domain.len()];
        FuzzySubset { domain, mu }
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.mu
    }

    pub fn membership(&self, element: &str) -> Result<Degree> {
        Ok(self.mu[self.domain.index_of(element)?])
    }

    pub fn is_crisp(&self) -> bool {
        self.mu.iter().all(|d| d.is_crisp())
    }

    pub fn height(&self) -> Degree {
        max_all(self.mu.iter().copied())
    }

    pub fn is_normalized(&self) -> bool {
        self.height().is_one()
    }

    /// Pointwise `1 - mu`.
    #[must_use]
    pub fn complement(&self) -> Self {
        FuzzySubset {
            domain: self.domain.clone(),
            mu: self.mu.iter().map(|d| d.complement()).collect(),
        }
    }

    /// Elements with positive membership, in domain order.
    pub fn support(&self) -> Vec<&str> {
        self.domain
            .elements()
            .iter()
            .zip(&self.mu)
            .filter(|(_, d)| !d.is_zero())
            .map(|(e, _)| e.as_str())
            .collect()
    }

    /// Scalar cardinality, the sum of memberships.
    pub fn cardinality(&self) -> Cardinality {
        Cardinality(self.mu.iter().map(|d| u64::from(d.thousandths())).sum())
    }

    /// Pointwise `mu <= other.mu`.
    pub fn is_subset_of(&self, other: &FuzzySubset) -> Result<bool> {
        check_same(&self.domain, &other.domain)?;
        Ok(self.mu.iter().zip(&other.mu).all(|(a, b)| a <= b))
    }

    pub fn as_distribution(&self) -> PossibilityDistribution {
        PossibilityDistribution {
            domain: self.domain.clone(),
            pi: self.mu.clone(),
        }
    }
}

impl PossibilityDistribution {
    pub fn new(domain: Arc<Domain>, pi: Vec<Degree>) -> Result<Self> {
        check_len(&domain, pi.len())?;
        Ok(PossibilityDistribution { domain, pi })
    }

    /// Unlisted elements get possibility 0.
    pub fn from_pairs(domain: Arc<Domain>, pairs: &[(&str, Degree)]) -> Result<Self> {
        let pi = assign(&domain, pairs)?;
        Ok(PossibilityDistribution { domain, pi })
    }

    /// Total ignorance: every value completely possible.
    pub fn ignorance(domain: Arc<Domain>) -> Self {
        let pi = vec![Degree::ONE; domain.len()];
        PossibilityDistribution { domain, pi }
    }

    /// The precise value `element`.
    pub fn certain(domain: Arc<Domain>, element: &str) -> Result<Self> {
        Self::from_pairs(domain, &[(element, Degree::ONE)])
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.pi
    }

    pub fn possibility(&self, element: &str) -> Result<Degree> {
        Ok(self.pi[self.domain.index_of(element)?])
    }

    pub fn height(&self) -> Degree {
        max_all(self.pi.iter().copied())
    }

    pub fn is_normalized(&self) -> bool {
        self.height().is_one()
    }

    /// `1 - height`; zero for normalized distributions.
    pub fn subnormality(&self) -> Degree {
        self.height().complement()
    }

    pub fn is_ignorance(&self) -> bool {
        self.pi.iter().all(|d| d.is_one())
    }

    /// Conjunctive combination (pointwise min).
    pub fn min_combine(&self, other: &PossibilityDistribution) -> Result<Self> {
        check_same(&self.domain, &other.domain)?;
        Ok(PossibilityDistribution {
            domain: self.domain.clone(),
            pi: self.pi.iter().zip(&other.pi).map(|(a, b)| (*a).min(*b)).collect(),
        })
    }

    /// Certainty that the value lies in the crisp set `a`:
    /// one minus the highest possibility outside `a`.
    pub fn necessity(&self, a: &FuzzySubset) -> Result<Degree> {
        check_same(&self.domain, &a.domain)?;
        if !a.is_crisp() {
            return Err(Error::NotCrisp(a.domain.name().to_string()));
        }
        let outside = self
            .pi
            .iter()
            .zip(&a.mu)
            .filter(|(_, m)| m.is_zero())
            .map(|(p, _)| *p);
        Ok(max_all(outside).complement())
    }

    pub fn as_subset(&self) -> FuzzySubset {
        FuzzySubset {
            domain: self.domain.clone(),
            mu: self.pi.clone(),
        }
    }

    pub fn cardinality(&self) -> Cardinality {
        self.as_subset().cardinality()
    }

    /// `(label, degree)` pairs in domain order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Degree)> + '_ {
        self.domain
            .elements()
            .iter()
            .map(String::as_str)
            .zip(self.pi.iter().copied())
    }
}

/// Height of the intersection: `max_u min(mu(u), pi(u))`.
///
/// Symmetric in its two degree vectors.
pub fn consistency(f: &FuzzySubset, p: &PossibilityDistribution) -> Result<Degree> {
    check_same(&f.domain, &p.domain)?;
    Ok(max_all(f.mu.iter().zip(&p.pi).map(|(a, b)| (*a).min(*b))))
}

/// Exact sum of degrees, in thousandths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cardinality(u64);

impl Cardinality {
    pub fn thousandths(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / f64::from(SCALE)
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = u64::from(SCALE);
        let (whole, frac) = (self.0 / scale, self.0 % scale);
        if frac == 0 {
            write!(f, "{}", whole)
        } else {
            let digits = format!("{:03}", frac);
            write!(f, "{}.{}", whole, digits.trim_end_matches('0'))
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let scale = u64::from(SCALE);
        if self.0.is_multiple_of(scale) {
            serializer.serialize_u64(self.0 / scale)
        } else {
            serializer.serialize_f64(self.as_f64())
        }
    }
}
