//! The rule matrix of a group: each atom's degree is a min-max product of
//! its row with the input vector of match pairs.

use possibilist::engine::run_layers;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;
    let g = c.derived_group("profession")?;

    let labels: Vec<String> = g.matrix.columns().map(|col| g.matrix.column_label(col)).collect();
    println!("columns: {}", labels.join(" "));
    println!("{}", g.matrix);
    println!("input:  {:?}", g.input.0.iter().map(ToString::to_string).collect::<Vec<_>>());
    let out = g.matrix.evaluate(&g.input)?;
    println!("output: {:?}", out.0.iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(out, g.output);
    Ok(())
}
