//! Line-oriented text format for knowledge bases and facts.
//!
//! ```text
//! DOMAIN yes_no = yes, no
//! ATTRIBUTE likes OF yes_no
//! ATTRIBUTE job OF jobs OPEN          # or CLOSED
//! TERM job people = sales, teacher:0.6
//! RULE R1
//!   IF likes IS yes WEIGHT 1 AND other IS NOT high WEIGHT 0.4
//!   THEN job IS people
//!   EXCEPTION 0.3                     # possibility of the conclusion failing anyway
//!   OTHERWISE 1                       # possibility of the conclusion when the condition fails
//!   SAY "the person likes meeting people"
//!   SAY NOT "the person does not like meeting people"
//! END
//! ```
//!
//! A leading `NOT` after `IF` negates the whole condition. Facts files hold
//! `FACT attr = elem:degree, ...`, `FACT attr UNKNOWN` and
//! `BELIEF attr = elem, ...` lines. Unlisted elements get degree 0.

mod diag;
mod lexer;
mod parse;
mod write;

pub use diag::{Code, Diagnostic};
pub use parse::{parse_facts, parse_kb, ParseOptions};
pub use write::{write_facts, write_kb};

/// Renders diagnostics one per line as `file:line:col: CODE message`.
pub fn render_diagnostics(file: &str, diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.render(file) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_layers;
    use crate::fuzzy::{deg, Degree};
    use proptest::prelude::*;

    const KB: &str = include_str!("../../data/professions.kb");
    const PETER: &str = include_str!("../../data/peter.facts");

    fn codes(r: Result<crate::engine::KnowledgeBase, Vec<Diagnostic>>) -> Vec<(usize, Code)> {
        r.unwrap_err().iter().map(|d| (d.line, d.code)).collect()
    }

    #[test]
    fn shipped_kb_parses() {
        let kb = parse_kb(KB).unwrap();
        assert_eq!(kb.source_rule_count(), 4);
        let pairs: Vec<(Degree, Degree)> = kb.rules.iter().map(|r| (r.otherwise, r.exception)).collect();
        assert_eq!(
            pairs,
            vec![(Degree::ONE, deg(0.3)), (deg(0.2), deg(0.4)), (Degree::ONE, deg(0.3))]
        );
    }

    #[test]
    fn empty_file_is_empty_kb() {
        let kb = parse_kb("").unwrap();
        assert!(kb.rules.is_empty() && kb.domains.is_empty());
        assert!(parse_kb("# only a comment\n\n").is_ok());
    }

    #[test]
    fn out_of_range_degree_has_line() {
        let text = "DOMAIN d = a, b\nATTRIBUTE x OF d\nTERM x t = a:1.2\n";
        let diags = parse_kb(text).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!((diags[0].line, diags[0].col, diags[0].code), (3, 14, Code::E004));
        assert_eq!(diags[0].render("f.kb"), "f.kb:3:14: E004 degree `1.2`: outside [0, 1]");
    }

    #[test]
    fn too_precise_degree() {
        assert_eq!(codes(parse_kb("DOMAIN d = a\nATTRIBUTE x OF d\nTERM x t = a:0.1234\n")), vec![(3, Code::E004)]);
    }

    #[test]
    fn distinct_codes() {
        assert_eq!(codes(parse_kb("DOMAIN d = a ;")), vec![(1, Code::E001)]);
        assert_eq!(codes(parse_kb("DOMAIN d a")), vec![(1, Code::E002)]);
        assert_eq!(codes(parse_kb("ATTRIBUTE x OF nowhere")), vec![(1, Code::E003)]);
        assert_eq!(codes(parse_kb("DOMAIN d = a, a")), vec![(1, Code::E007)]);
        assert_eq!(codes(parse_kb("DOMAIN d = a, others")), vec![(1, Code::E008)]);
        assert_eq!(codes(parse_kb("DOMAIN THEN = a")), vec![(1, Code::E008)]);
        assert_eq!(codes(parse_kb("RULE R\n  IF a IS b\n")), vec![(1, Code::E002)]);
    }

    #[test]
    fn cycle_and_weights_reported_on_rule_line() {
        let base = "DOMAIN d = a, b\nATTRIBUTE x OF d\nATTRIBUTE y OF d\nTERM x t = a\nTERM y t = a\n";
        let cyc = format!("{base}RULE R1\nIF x IS t\nTHEN y IS t\nEND\nRULE R2\nIF y IS t\nTHEN x IS t\nEND\n");
        assert_eq!(codes(parse_kb(&cyc)), vec![(6, Code::E006)]);
        let w = format!("{base}RULE R1\nIF x IS t WEIGHT 0.5\nTHEN y IS t\nEND\n");
        assert_eq!(codes(parse_kb(&w)), vec![(6, Code::E005)]);
        let mixed = format!("{base}RULE R1\nIF x IS t AND x IS t OR x IS t\nTHEN y IS t\nEND\n");
        assert_eq!(codes(parse_kb(&mixed)), vec![(7, Code::E002)]);
    }

    #[test]
    fn several_errors_reported_together() {
        let diags = parse_kb("DOMAIN d = a ;\nDOMAIN e\nBOGUS\n").unwrap_err();
        let lines: Vec<usize> = diags.iter().map(|d| d.line).collect();
        assert_eq!(lines, vec![1, 2, 3]);
    }

    #[test]
    fn peter_facts_match_as_expected() {
        let kb = parse_kb(KB).unwrap();
        let facts = parse_facts(PETER, &kb, ParseOptions::default()).unwrap();
        let c = run_layers(&kb, &facts).unwrap();
        let g = c.group("profession").unwrap();
        let pairs: Vec<(Degree, Degree)> = g.matches.iter().map(|m| (m.pair.pos, m.pair.neg)).collect();
        assert_eq!(
            pairs,
            vec![(Degree::ONE, deg(0.5)), (deg(0.2), Degree::ONE), (Degree::ONE, deg(0.6))]
        );
    }

    #[test]
    fn omitted_fact_is_ignorance() {
        let kb = parse_kb(KB).unwrap();
        let facts = parse_facts("FACT likes_meeting_people = yes\n", &kb, ParseOptions::default()).unwrap();
        let c = run_layers(&kb, &facts).unwrap();
        let f = c.fact("fond_of_creation").unwrap();
        assert!(!f.given && f.distribution.is_ignorance());
    }

    #[test]
    fn fact_errors() {
        let kb = parse_kb(KB).unwrap();
        let strict = ParseOptions::default();
        let one = |t: &str, o| parse_facts(t, &kb, o).unwrap_err()[0].code;
        assert_eq!(one("FACT fond_of_creation = yes:0.7, no:0.2", strict), Code::E009);
        assert!(parse_facts("FACT fond_of_creation = yes:0.7", &kb, ParseOptions { permissive: true }).is_ok());
        assert_eq!(one("FACT nope = yes", strict), Code::E003);
        assert_eq!(one("FACT fond_of_creation = maybe", strict), Code::E003);
        assert_eq!(one("FACT profession = others", strict), Code::E010);
        assert_eq!(one("FACT fond_of_creation = yes\nFACT fond_of_creation = no", strict), Code::E007);
        assert_eq!(one("BELIEF profession = researcher:0.5", strict), Code::E005);
    }

    #[test]
    fn kb_round_trip() {
        let kb = parse_kb(KB).unwrap();
        let text = write_kb(&kb);
        assert_eq!(parse_kb(&text).unwrap(), kb);
        assert_eq!(write_kb(&parse_kb(&text).unwrap()), text);
    }

    #[test]
    fn facts_round_trip() {
        let kb = parse_kb(KB).unwrap();
        let facts = parse_facts(PETER, &kb, ParseOptions::default()).unwrap();
        let again = parse_facts(&write_facts(&facts), &kb, ParseOptions::default()).unwrap();
        assert_eq!(again, facts);
    }

    #[test]
    fn one_rule_with_otherwise_equals_the_pair() {
        let kb = parse_kb(KB).unwrap();
        let joined = KB.replace("  EXCEPTION 0.4\n", "  EXCEPTION 0.4\n  OTHERWISE 0.2\n");
        let start = joined.find("RULE R2'").unwrap();
        let end = start + joined[start..].find("END\n").unwrap() + 4;
        let joined = format!("{}{}", &joined[..start], &joined[end..]);
        let single = parse_kb(&joined).unwrap();
        let facts = parse_facts(PETER, &kb, ParseOptions::default()).unwrap();
        let a = run_layers(&kb, &facts).unwrap();
        let b = run_layers(&single, &facts).unwrap();
        assert_eq!(a.group("profession").unwrap().distribution, b.group("profession").unwrap().distribution);
    }

    proptest! {
        #[test]
        fn parser_never_panics(text in "[A-Za-z0-9_:,=#\"'. \n-]{0,200}") {
            let _ = parse_kb(&text);
        }

        #[test]
        fn parser_never_panics_on_keyword_soup(
            words in proptest::collection::vec(
                prop_oneof![
                    Just("DOMAIN"), Just("ATTRIBUTE"), Just("TERM"), Just("RULE"), Just("IF"), Just("THEN"),
                    Just("AND"), Just("OR"), Just("NOT"), Just("IS"), Just("END"), Just("SAY"), Just("EXCEPTION"),
                    Just("x"), Just("d"), Just("="), Just(","), Just(":"), Just("0.5"), Just("\n"), Just("\"s\""),
                ],
                0..60,
            )
        ) {
            let text = words.join(" ");
            let _ = parse_kb(&text);
            if let Ok(kb) = parse_kb(KB) {
                let _ = parse_facts(&text, &kb, ParseOptions::default());
            }
        }
    }
}
