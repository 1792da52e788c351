//! Which facts or rules fix a degree, and how surprising the result is.

use possibilist::engine::run_layers;
use possibilist::explain::{explain_mainly, surprise};
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;

    for e in ["business_man", "researcher", "professor", "others"] {
        print!("{}", explain_mainly(&c, "profession", e)?.render(&c, true));
        println!();
    }
    println!("surprise against the stored belief: {}", surprise(&c, "profession")?);
    Ok(())
}
