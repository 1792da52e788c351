//! What would make a value more possible, and what would make it less.

use possibilist::engine::run_layers;
use possibilist::explain::{explain_negative, explain_positive};
use possibilist::fuzzy::deg;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;

    print!("{}", explain_positive(&c, "profession", "researcher", deg(0.8))?.render(&c, true));
    print!("{}", explain_positive(&c, "profession", "researcher", deg(0.8))?.render(&c, false));
    print!("{}", explain_negative(&c, "profession", "researcher", deg(0.3))?.render(&c, true));
    print!("{}", explain_negative(&c, "profession", "business_man", deg(0.2))?.render(&c, true));
    Ok(())
}
