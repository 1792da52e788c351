//! Degrees, finite domains, fuzzy subsets and possibility distributions.
//!
//! Everything here is immutable once built and safe to share across threads.

mod degree;
mod domain;
mod sets;

pub use degree::{deg, max_all, min_all, Degree, DegreeParseError, SCALE};
pub use domain::{same_domain, Domain, CATCH_ALL};
pub use sets::{consistency, Cardinality, FuzzySubset, PossibilityDistribution};
