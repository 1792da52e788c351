use thiserror::Error;

/// Errors raised by the in-memory algebra, engine and explanation layers.
///
/// Text-format problems are reported separately as positioned
/// [`Diagnostic`](crate::ruleio::Diagnostic)s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(String),

    #[error("domain mismatch: `{left}` vs `{right}`")]
    DomainMismatch { left: String, right: String },

    #[error("expected {expected} degrees for domain `{domain}`, got {got}")]
    LengthMismatch {
        domain: String,
        expected: usize,
        got: usize,
    },

    #[error("domain `{0}` must have at least one element")]
    EmptyDomain(String),

    #[error("duplicate element `{element}` in domain `{domain}`")]
    DuplicateElement { domain: String, element: String },

    #[error("unknown element `{element}` in domain `{domain}`")]
    UnknownElement { domain: String, element: String },

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute `{0}` is not derived by any rule")]
    NotDerived(String),

    #[error("subset over `{0}` is not crisp")]
    NotCrisp(String),

    #[error("fuzzy set over `{0}` is not normalized")]
    NotNormalized(String),

    #[error("importance weights are not normalized (largest weight is {0}, expected 1)")]
    WeightsNotNormalized(String),

    #[error("{pairs} match pairs but {weights} weights")]
    WeightCount { pairs: usize, weights: usize },

    #[error("empty rule group")]
    EmptyGroup,

    #[error("rules in a group must conclude on the same attribute (`{0}` vs `{1}`)")]
    MixedConclusions(String, String),

    #[error("rule `{0}` has a fuzzy conclusion; decompose it into crisp rules first")]
    FuzzyConclusion(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("cyclic dependency between attributes: {0}")]
    Cycle(String),

    #[error("unknown rule input `{0}`")]
    UnknownInput(String),

    #[error("unknown domain `{0}`")]
    UnknownDomain(String),

    #[error("unknown term `{term}` for attribute `{attribute}`")]
    UnknownTerm { attribute: String, term: String },

    #[error("duplicate {0}")]
    Duplicate(String),

    #[error("`{0}` is reserved for the open-world catch-all")]
    Reserved(String),

    #[error("attribute `{0}` is concluded by rules and cannot be given as a fact")]
    DerivedFact(String),

    #[error("fact for `{attribute}` is subnormal (height {height})")]
    SubnormalFact { attribute: String, height: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
