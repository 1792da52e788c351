//! Why a conclusion is vague: uncertain facts, silent rules or conflicts.

use possibilist::engine::{run_layers, FactBase};
use possibilist::explain::diagnose_imprecision;
use possibilist::ruleio::{parse_facts, parse_kb, ParseOptions};

const CONFLICT: &str = "
DOMAIN yn = yes, no
DOMAIN jobs = pilot, sailor
ATTRIBUTE flies OF yn
ATTRIBUTE sails OF yn
ATTRIBUTE job OF jobs CLOSED
TERM flies yes = yes
TERM sails yes = yes
TERM job pilot = pilot
TERM job sailor = sailor
RULE R1
IF flies IS yes
THEN job IS pilot
EXCEPTION 0.2
END
RULE R2
IF sails IS yes
THEN job IS sailor
EXCEPTION 0.3
END
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(include_str!("../data/professions.kb")).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts(include_str!("../data/peter.facts"), &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;
    print!("{}", diagnose_imprecision(&c, "profession")?.render(&c));

    println!("\nwith no answers at all:");
    let c = run_layers(&kb, &FactBase::new())?;
    print!("{}", diagnose_imprecision(&c, "profession")?.render(&c));

    println!("\nconflicting rules:");
    let kb = parse_kb(CONFLICT).map_err(|d| format!("{d:?}"))?;
    let facts = parse_facts("FACT flies = yes\nFACT sails = yes\n", &kb, ParseOptions::default())
        .map_err(|d| format!("{d:?}"))?;
    let c = run_layers(&kb, &facts)?;
    print!("{}", diagnose_imprecision(&c, "job")?.render(&c));
    Ok(())
}
