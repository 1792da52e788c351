//! Parsing, diagnostics and writing of knowledge bases and facts.

use possibilist::ruleio::{parse_facts, parse_kb, render_diagnostics, write_facts, write_kb, ParseOptions};

// Syntax errors are reported first; the second file parses but does not
// build.
const BROKEN: [&str; 2] = [
    "DOMAIN d = a, b\nATTRIBUTE x OF d\nTERM x t = a:1.5\nRULE R1\nIF x IS t\n",
    "DOMAIN d = a, b\nATTRIBUTE x OF d\nATTRIBUTE y OF e\nTERM x t = a\nTERM y t = a\n\
     RULE R1\nIF x IS t\nTHEN y IS t\nEND\nRULE R2\nIF y IS t\nTHEN x IS t\nEND\n",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let text = write_kb(&kb);
    print!("{text}");
    assert_eq!(parse_kb(&text).map_err(|d| format!("{d:?}"))?, kb);

    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    println!();
    print!("{}", write_facts(&facts));

    println!();
    for (i, text) in BROKEN.iter().enumerate() {
        if let Err(diags) = parse_kb(text) {
            print!("{}", render_diagnostics(&format!("broken{i}.kb"), &diags));
        }
    }
    Ok(())
}
