//! Uncertain rules, their combination over atoms, the rule matrix view and
//! layered consultations.

mod consult;
mod kb;
mod matrix;
mod partition;
mod rule;

pub use consult::{run_layers, Consultation, FactBase, FactEntry, GroupTrace};
pub use kb::{Attribute, KbBuilder, KnowledgeBase, Layering, Origin, PartSpec, RuleSpec, Term, World};
pub use matrix::{build_rule_matrix, ColumnRef, ConditionSide, InputVector, RuleMatrix};
pub use partition::{atom_degrees, combine_by_induction, combine_group, partition, Atom, GroupOutcome, OutputVector};
pub use rule::{
    decompose_fuzzy_conclusion, fold_paired, induce, induce_crisp, propagate, Conclusion, ConclusionPair, Phrasing,
    UncertainRule,
};
