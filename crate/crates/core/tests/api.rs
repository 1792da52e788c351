use possibilist::engine::{run_layers, Consultation, FactBase, KnowledgeBase, RuleSpec, World};
use possibilist::explain::{diagnose_imprecision, explain_mainly, trace_how, How};
use possibilist::fuzzy::{deg, Degree, PossibilityDistribution};
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};
use proptest::prelude::*;

const KB: &str = include_str!("../data/professions.kb");

fn chained() -> KnowledgeBase {
    KnowledgeBase::builder()
        .domain("sky", &["clear", "cloudy", "rain"])
        .domain("plan", &["hike", "museum"])
        .domain("mood", &["good", "bad"])
        .attribute("weather", "sky", None)
        .attribute("outing", "plan", None)
        .attribute("spirits", "mood", Some(World::Closed))
        .term("weather", "dry", &[("clear", Degree::ONE), ("cloudy", deg(0.7))])
        .term("outing", "hike", &[("hike", Degree::ONE)])
        .term("spirits", "good", &[("good", Degree::ONE)])
        .rule(RuleSpec::new("R1", "outing", "hike").when("weather", "dry").uncertainty(Degree::ZERO, deg(0.2)))
        .rule(RuleSpec::new("R2", "spirits", "good").when("outing", "hike").uncertainty(deg(0.4), deg(0.1)))
        .build()
        .unwrap()
}

fn weather(c: f64, cl: f64, r: f64) -> FactBase {
    let kb = chained();
    let dom = kb.attribute("weather").unwrap().domain.clone();
    let d = PossibilityDistribution::new(dom, vec![deg(c), deg(cl), deg(r)]).unwrap();
    FactBase::new().with("weather", d)
}

#[test]
fn layers_run_in_dependency_order() {
    let kb = chained();
    let layering = kb.layering().unwrap();
    let order: Vec<&str> = layering.order.iter().map(|(a, _)| a.as_str()).collect();
    assert_eq!(order, ["outing", "spirits"]);
    let c = run_layers(&kb, &weather(1.0, 0.0, 0.0)).unwrap();
    assert_eq!(c.distribution("outing").unwrap().degrees(), &[Degree::ONE, deg(0.2), deg(0.2)]);
    assert_eq!(c.distribution("spirits").unwrap().degrees(), &[Degree::ONE, deg(0.2)]);
}

#[test]
fn open_world_only_on_derived_attributes() {
    let kb = chained();
    assert_eq!(kb.attribute("outing").unwrap().domain.elements(), ["hike", "museum", "others"]);
    assert_eq!(kb.attribute("weather").unwrap().domain.len(), 3);
    assert_eq!(kb.attribute("spirits").unwrap().domain.len(), 2);
}

#[test]
fn explanations_follow_upstream_attributes() {
    let c = run_layers(&chained(), &weather(0.3, 1.0, 0.5)).unwrap();
    let b = explain_mainly(&c, "spirits", "bad").unwrap();
    assert!(b.contributors.iter().any(|k| !k.upstream.is_empty()));
    let How::Group(g) = trace_how(&c, "spirits", Degree::ZERO).unwrap() else { panic!() };
    assert_eq!(g.upstream.len(), 1);
    assert!(diagnose_imprecision(&c, "spirits").is_ok());
}

#[test]
fn consultation_json_round_trip() {
    let c = run_layers(&chained(), &weather(0.3, 1.0, 0.5)).unwrap();
    let back = Consultation::from_json(&c.to_json()).unwrap();
    assert_eq!(back, c);
    assert!(back.replays_exactly());
}

#[test]
fn fuzzy_conclusion_is_decomposed() {
    let text = "DOMAIN yn = yes, no\nDOMAIN size = s, m, l\nATTRIBUTE p OF yn\nATTRIBUTE q OF size CLOSED\n\
                TERM p yes = yes\nTERM q big = l, m:0.6, s:0.1\n\
                RULE R1\nIF p IS yes\nTHEN q IS big\nEXCEPTION 0.3\nEND\n";
    let kb = parse_kb(text).unwrap();
    let facts = parse_facts("FACT p = yes\n", &kb, ParseOptions::default()).unwrap();
    let c = run_layers(&kb, &facts).unwrap();
    let g = c.group("q").unwrap();
    let ids: Vec<&str> = g.rules.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["R1#1", "R1#2", "R1#3"]);
    assert_eq!(c.distribution("q").unwrap().degrees(), &[deg(0.3), deg(0.6), Degree::ONE]);
}

proptest! {
    #[test]
    fn professions_matrix_matches_output(xs in proptest::collection::vec(0u16..=10, 4), sides in proptest::collection::vec(any::<bool>(), 4)) {
        let kb = parse_kb(KB).unwrap();
        let mut facts = FactBase::new();
        for (i, a) in ["likes_meeting_people", "fond_of_creation", "looks_for_security", "fond_of_speculation"].iter().enumerate() {
            let x = Degree::from_thousandths(100 * xs[i]).unwrap();
            let pi = if sides[i] { vec![Degree::ONE, x] } else { vec![x, Degree::ONE] };
            let dom = kb.attribute(a).unwrap().domain.clone();
            facts.set(a, PossibilityDistribution::new(dom, pi).unwrap());
        }
        let c = run_layers(&kb, &facts).unwrap();
        let g = c.group("profession").unwrap();
        prop_assert_eq!(g.matrix.evaluate(&g.input).unwrap(), g.output.clone());
        prop_assert!(c.replays_exactly());
    }
}
