//! How one output degree responds to each input of its rule group.

use possibilist::engine::run_layers;
use possibilist::explain::sensitivity;
use possibilist::fuzzy::Degree;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;

    for s in sensitivity(&c, "profession", "researcher", None)? {
        let samples: Vec<String> = (0..=10u16)
            .map(|k| s.curve.eval(Degree::from_thousandths(100 * k).unwrap()).to_string())
            .collect();
        println!("{:<9} now {:<4} [{}]", s.input, s.current.to_string(), samples.join(" "));
    }
    Ok(())
}
