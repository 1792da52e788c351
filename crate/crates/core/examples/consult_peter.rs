//! Runs the professions knowledge base on Peter's answers.

use possibilist::engine::run_layers;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;
    let g = c.derived_group("profession")?;
    for (k, atom) in g.atoms.iter().enumerate() {
        println!("{:<32} {}", atom.label(), g.output.0[k]);
    }
    Ok(())
}
