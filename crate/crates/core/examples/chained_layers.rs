//! Conclusions feeding further rules, with the derivation tree.

use possibilist::engine::{run_layers, FactBase};
use possibilist::explain::{explain_mainly, trace_how};
use possibilist::fuzzy::{Degree, PossibilityDistribution};
use possibilist::ruleio::parse_kb;

const KB: &str = "
DOMAIN sky = clear, cloudy, rain
DOMAIN plan = hike, museum
DOMAIN mood = good, bad
ATTRIBUTE weather OF sky
ATTRIBUTE outing OF plan
ATTRIBUTE spirits OF mood CLOSED
TERM weather dry = clear, cloudy:0.7
TERM outing hike = hike
TERM spirits good = good

RULE R1
IF weather IS dry
THEN outing IS hike
EXCEPTION 0.2
OTHERWISE 0
END

RULE R2
IF outing IS hike
THEN spirits IS good
EXCEPTION 0.1
OTHERWISE 0.4
END
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = parse_kb(KB).map_err(|d| format!("{d:?}"))?;
    let sky = kb.attribute("weather")?.domain.clone();
    let facts = FactBase::new().with("weather", PossibilityDistribution::from_pairs(sky, &[("cloudy", Degree::ONE), ("rain", "0.5".parse()?)])?);
    let c = run_layers(&kb, &facts)?;
    print!("{}", trace_how(&c, "spirits", Degree::ZERO)?.render());
    print!("{}", explain_mainly(&c, "spirits", "bad")?.render(&c, true));
    Ok(())
}
