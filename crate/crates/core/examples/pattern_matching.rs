//! Matching fuzzy patterns against imprecise facts, then combining the
//! parts of a weighted condition.

use possibilist::fuzzy::{deg, Degree, Domain, FuzzySubset, PossibilityDistribution};
use possibilist::matching::{aggregate, match_elementary, Connective, MatchPair};

fn main() -> possibilist::Result<()> {
    let ages = Domain::new("age", ["20", "30", "40", "50", "60"])?;
    let young = FuzzySubset::from_pairs(ages.clone(), &[("20", Degree::ONE), ("30", deg(0.7)), ("40", deg(0.2))])?;
    let around_35 = PossibilityDistribution::from_pairs(ages.clone(), &[("30", Degree::ONE), ("40", Degree::ONE), ("50", deg(0.3))])?;

    let m = match_elementary(&young, &around_35)?;
    println!("young vs about 35: possibly {}, possibly not {}", m.pair.pos, m.pair.neg);

    let pairs = [m.pair, MatchPair::new(Degree::ONE, deg(0.4))];
    let strict = aggregate(&pairs, &[Degree::ONE, Degree::ONE], Connective::And)?;
    let lenient = aggregate(&pairs, &[deg(0.5), Degree::ONE], Connective::And)?;
    println!("both parts, equal weights: {strict}");
    println!("first part at weight 0.5:  {lenient}");
    println!("either part:               {}", aggregate(&pairs, &[Degree::ONE, Degree::ONE], Connective::Or)?);
    Ok(())
}
