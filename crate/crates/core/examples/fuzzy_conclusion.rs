//! A rule with a fuzzy conclusion is run as nested crisp rules.

use possibilist::engine::{combine_group, decompose_fuzzy_conclusion, Conclusion, UncertainRule};
use possibilist::fuzzy::{deg, Degree, Domain, FuzzySubset};
use possibilist::matching::{ConditionPart, MatchPair, WeightedCondition};

fn main() -> possibilist::Result<()> {
    let yn = Domain::new("yn", ["yes", "no"])?;
    let temp = Domain::new("temperature", ["cold", "mild", "warm", "hot"])?;
    let warmish = FuzzySubset::from_pairs(temp, &[("mild", deg(0.4)), ("warm", Degree::ONE), ("hot", deg(0.7))])?;
    let rule = UncertainRule::new(
        "R1",
        WeightedCondition::single(ConditionPart::new("summer", "yes", FuzzySubset::crisp(yn, &["yes"])?)),
        Conclusion::new("temperature", "warmish", warmish),
    );

    let parts = decompose_fuzzy_conclusion(&rule, deg(0.1))?;
    for p in &parts {
        println!("{}: THEN {} IS {:?} EXCEPTION {}", p.id, p.conclusion.attribute, p.conclusion.set.support(), p.exception);
    }
    let certain = vec![MatchPair::new(Degree::ONE, Degree::ZERO); parts.len()];
    let out = combine_group(&parts, &certain)?;
    for (e, p) in out.distribution.iter() {
        println!("  {e:<5} {p}");
    }
    Ok(())
}
