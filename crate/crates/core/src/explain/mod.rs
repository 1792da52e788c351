//! Explanations of a completed consultation: derivation traces, the facts
//! that mainly determine a degree, surprise against a user belief, what
//! would raise or lower a degree, why a conclusion is imprecise, and why a
//! value is not more certain.
//!
//! Every query works on the rule matrix of one derived attribute. Drilling
//! into an input that is itself derived repeats the query on that
//! attribute.

mod blame;
mod certainty;
mod diagnose;
mod how;
mod phrase;
mod why;

pub use blame::{blame_atom, explain_mainly, surprise, surprise_degree, BlameSet, Contributor, Side};
pub use certainty::{certainty_view, CertaintyView, Competitor};
pub use diagnose::{diagnose_imprecision, Conflict, Diagnosis};
pub use how::{replay_how, trace_how, AtomRow, GroupNode, How, PartNode, RuleNode};
pub use why::{explain_negative, explain_positive, Verdict, WhyAnswer};

use serde::Serialize;

use crate::engine::{ColumnRef, Consultation};
use crate::error::Result;
use crate::solver::{sensitivity_curve, SensitivityCurve};

/// Sensitivity of one element's degree to one input column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sensitivity {
    pub input: String,
    pub current: crate::fuzzy::Degree,
    pub curve: SensitivityCurve,
}

/// Curves of `element`'s degree against each input of its group, or
/// against the single input labelled `input` (`R2.holds`).
pub fn sensitivity(c: &Consultation, attribute: &str, element: &str, input: Option<&str>) -> Result<Vec<Sensitivity>> {
    let g = c.derived_group(attribute)?;
    let atom = g.atom_of(element)?;
    let columns: Vec<ColumnRef> = match input {
        Some(label) => vec![g.matrix.find_column(label)?],
        None => g.matrix.columns().collect(),
    };
    columns
        .into_iter()
        .map(|col| {
            Ok(Sensitivity {
                input: g.matrix.column_label(col),
                current: g.input.get(col),
                curve: sensitivity_curve(&g.matrix.matrix, &g.input.0, atom, col.index())?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_layers, ConditionSide};
    use crate::fuzzy::{deg, Degree};
    use crate::ruleio::{parse_facts, parse_kb, ParseOptions};
    use crate::solver::Bound;

    const KB: &str = include_str!("../../data/professions.kb");
    const PETER: &str = include_str!("../../data/peter.facts");

    fn peter() -> Consultation {
        let kb = parse_kb(KB).unwrap();
        let facts = parse_facts(PETER, &kb, ParseOptions::default()).unwrap();
        run_layers(&kb, &facts).unwrap()
    }

    #[test]
    fn peter_output_vector() {
        let c = peter();
        let g = c.group("profession").unwrap();
        let labels: Vec<String> = g.atoms.iter().map(|a| a.label()).collect();
        assert_eq!(
            labels,
            [
                "{business_man, lawyer, doctor}",
                "{professor}",
                "{researcher}",
                "{engineer, architect}",
                "{others}"
            ]
        );
        assert_eq!(g.output.0, vec![deg(0.6), Degree::ONE, deg(0.2), deg(0.2), deg(0.5)]);
    }

    #[test]
    fn business_man_blames_security_fact() {
        let b = explain_mainly(&peter(), "profession", "business_man").unwrap();
        assert_eq!(b.value, deg(0.6));
        assert_eq!(b.contributors.len(), 1);
        let k = &b.contributors[0];
        assert_eq!((k.rule.as_str(), k.column.side, k.side, k.value), ("R3", ConditionSide::Fails, Side::Fact, deg(0.6)));
    }

    #[test]
    fn researcher_blame_is_a_tie() {
        let b = explain_mainly(&peter(), "profession", "researcher").unwrap();
        let sides: Vec<(&str, Side)> = b.contributors.iter().map(|k| (k.rule.as_str(), k.side)).collect();
        assert_eq!(sides, vec![("R2", Side::Fact), ("R2", Side::Rule)]);
        assert!(b.contributors.iter().all(|k| k.value == deg(0.2)));
    }

    #[test]
    fn professor_is_unconstrained() {
        let b = explain_mainly(&peter(), "profession", "professor").unwrap();
        assert!(b.unconstrained && b.contributors.is_empty());
    }

    #[test]
    fn unknown_element_is_an_error() {
        assert!(explain_mainly(&peter(), "profession", "pilot").is_err());
        assert!(explain_mainly(&peter(), "fond_of_creation", "yes").is_err());
    }

    #[test]
    fn surprise_for_researcher_belief() {
        assert_eq!(surprise(&peter(), "profession").unwrap(), deg(0.8));
    }

    #[test]
    fn researcher_at_least_point_eight() {
        let c = peter();
        let a = explain_positive(&c, "profession", "researcher", deg(0.8)).unwrap();
        assert_eq!(a.alternatives, vec![vec!["R1.fails >= 0.8".to_string(), "R2.holds >= 0.8".to_string()]]);
        let text = a.render(&c, true);
        assert!(text.contains("it should be possible at least at the degree 0.8 that the person does not like meeting people"));
        assert!(text.contains("it should be possible at least at the degree 0.8 that the person is fond of creation/invention"));
        assert!(a.render(&c, false).contains("ρ_1 ≥ 0.8"));
    }

    #[test]
    fn trivial_positive_targets() {
        let c = peter();
        assert_eq!(explain_positive(&c, "profession", "lawyer", Degree::ZERO).unwrap().verdict, Verdict::AlwaysMet);
        assert_eq!(explain_positive(&c, "profession", "doctor", deg(0.3)).unwrap().verdict, Verdict::AlwaysMet);
    }

    #[test]
    fn business_man_cannot_go_below_floor() {
        let c = peter();
        let a = explain_negative(&c, "profession", "business_man", deg(0.2)).unwrap();
        assert_eq!(a.verdict, Verdict::Infeasible);
        assert!(a.render(&c, true).contains("the possibility cannot go below 0.3 in any case"));
        assert_eq!(explain_negative(&c, "profession", "business_man", Degree::ONE).unwrap().verdict, Verdict::AlwaysMet);
    }

    #[test]
    fn researcher_at_most_point_two() {
        let a = explain_negative(&peter(), "profession", "researcher", deg(0.2)).unwrap();
        assert_eq!(a.bound, Bound::AtMost);
        assert_eq!(a.alternatives, vec![vec!["R2.holds <= 0.2".to_string()]]);
        let a = explain_negative(&peter(), "profession", "researcher", deg(0.3)).unwrap();
        assert_eq!(
            a.alternatives,
            vec![vec!["R1.fails <= 0.3".to_string()], vec!["R2.holds <= 0.3".to_string()]]
        );
    }

    #[test]
    fn peter_imprecision_is_input_uncertainty() {
        let d = diagnose_imprecision(&peter(), "profession").unwrap();
        let found: Vec<(&str, Degree)> = d.uncertain_inputs.iter().map(|k| (k.rule.as_str(), k.input)).collect();
        assert_eq!(found, vec![("R1", deg(0.5)), ("R3", deg(0.6))]);
        assert!(d.conflict.is_none());
        assert!(d.vacuous_rules.is_empty());
    }

    #[test]
    fn ignorance_makes_every_rule_vacuous() {
        let kb = parse_kb(KB).unwrap();
        let c = run_layers(&kb, &Default::default()).unwrap();
        let d = diagnose_imprecision(&c, "profession").unwrap();
        assert_eq!(d.vacuous_rules, vec!["R1", "R2", "R3"]);
        assert!(d.uncertain_inputs.is_empty());
        for k in 0..5 {
            assert!(blame_atom(Some(&c), c.group("profession").unwrap(), k).unconstrained);
        }
    }

    #[test]
    fn closed_world_conflict() {
        let text = "DOMAIN yn = yes, no\nDOMAIN jobs = a, b\nATTRIBUTE p OF yn\nATTRIBUTE q OF yn\n\
                    ATTRIBUTE job OF jobs CLOSED\nTERM p yes = yes\nTERM q yes = yes\nTERM job a = a\nTERM job b = b\n\
                    RULE R1\nIF p IS yes\nTHEN job IS a\nEND\nRULE R2\nIF q IS yes\nTHEN job IS b\nEND\n";
        let kb = parse_kb(text).unwrap();
        let facts = parse_facts("FACT p = yes\nFACT q = yes\n", &kb, ParseOptions::default()).unwrap();
        let c = run_layers(&kb, &facts).unwrap();
        let d = diagnose_imprecision(&c, "job").unwrap();
        assert_eq!(d.subnormality, Degree::ONE);
        let k = d.conflict.unwrap();
        assert_eq!(k.rules, ("R1".to_string(), "R2".to_string()));
        assert_eq!(k.height, Degree::ZERO);
    }

    #[test]
    fn professor_certainty() {
        let v = certainty_view(&peter(), "profession", "professor").unwrap();
        assert_eq!(v.necessity, deg(0.4));
        let comp: Vec<(Vec<String>, Degree)> = v.competitors.iter().map(|k| (k.members.clone(), k.degree)).collect();
        assert_eq!(
            comp,
            vec![
                (vec!["business_man".into(), "lawyer".into(), "doctor".into()], deg(0.6)),
                (vec!["others".into()], deg(0.5)),
            ]
        );
    }

    #[test]
    fn how_tree_replays() {
        let c = peter();
        let h = trace_how(&c, "profession", Degree::ZERO).unwrap();
        let How::Group(g) = &h else { panic!("derived") };
        assert_eq!(g.rules.len(), 3);
        assert_eq!(g.rules[1].rule.paired_with.as_deref(), Some("R2'"));
        assert_eq!(g.atoms.len(), 5);
        assert_eq!(replay_how(&h).unwrap(), g.distribution);
        let facts_only = trace_how(&c, "fond_of_creation", Degree::ZERO).unwrap();
        assert!(matches!(facts_only, How::Fact { .. }));
    }

    #[test]
    fn display_threshold_prunes_weak_rules() {
        let c = peter();
        let h = trace_how(&c, "profession", deg(0.7)).unwrap();
        let How::Group(g) = &h else { panic!("derived") };
        // R1 = (1, 0.5) and R3 = (1, 0.6) exclude less than 0.7; R2 = (0.2, 1) excludes 0.8.
        let pruned: Vec<bool> = g.rules.iter().map(|r| r.pruned).collect();
        assert_eq!(pruned, vec![true, false, true]);
        assert!(h.render().contains("2 rule(s) below the display threshold"));
        assert_eq!(replay_how(&h).unwrap(), g.distribution);
    }

    #[test]
    fn sensitivity_of_researcher() {
        let s = sensitivity(&peter(), "profession", "researcher", Some("R2.holds")).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].curve.floor, s[0].curve.cap), (deg(0.2), deg(0.5)));
        assert_eq!(sensitivity(&peter(), "profession", "researcher", None).unwrap().len(), 6);
        assert!(sensitivity(&peter(), "profession", "researcher", Some("R9.holds")).is_err());
    }
}
