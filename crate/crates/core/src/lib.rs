//! Possibilistic rule-based inference with explanations.
//!
//! A knowledge base holds uncertain rules `if p then q` with two degrees:
//! how possible `q` stays when `p` fails (`OTHERWISE`) and how possible an
//! exception is when `p` holds (`EXCEPTION`). Facts are possibility
//! distributions. A consultation matches every rule condition against the
//! facts, propagates the match pairs through the rules and min-combines the
//! results per conclusion attribute, layer by layer.
//!
//! Each group of rules sharing a conclusion attribute reduces to a min-max
//! product `output = M ■ input` over the atoms of the partition induced by
//! the conclusion sets. The [`solver`] inverts such systems, and
//! [`explain`] uses that to say which facts fix a degree, what would raise
//! or lower it, and why a conclusion is vague.
//!
//! ```
//! use possibilist::engine::run_layers;
//! use possibilist::explain::explain_mainly;
//! use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};
//!
//! let kb = parse_kb(include_str!("../data/professions.kb")).unwrap();
//! let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default()).unwrap();
//! let c = run_layers(&kb, &facts).unwrap();
//! let p = c.distribution("profession").unwrap();
//! assert_eq!(p.possibility("business_man").unwrap().to_string(), "0.6");
//! let why = explain_mainly(&c, "profession", "business_man").unwrap();
//! assert_eq!(why.contributors[0].rule, "R3");
//! ```
//!
//! Runnable examples live in `examples/`: `consult_peter`, `pattern_matching`,
//! `rule_matrix`, `solve_relational`, `why_explanations`, `mainly_blame`,
//! `certainty`, `sensitivity`, `imprecision_diagnosis`, `fuzzy_conclusion`,
//! `chained_layers` and `kb_roundtrip`.

pub mod cli;
pub mod engine;
pub mod error;
pub mod explain;
pub mod fuzzy;
pub mod matching;
pub mod ruleio;
pub mod solver;

pub use error::{Error, Result};
