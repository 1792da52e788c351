//! How certain the most plausible value is, and what keeps it from being
//! more certain.

use possibilist::engine::run_layers;
use possibilist::explain::certainty_view;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;
    print!("{}", certainty_view(&c, "profession", "professor")?.render(&c, false));
    Ok(())
}
