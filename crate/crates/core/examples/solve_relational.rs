//! Inverting a min-max system: which inputs reproduce an observed output?

use possibilist::fuzzy::deg;
use possibilist::solver::{solve_exact, Matrix, MinMaxSystem};

fn main() -> possibilist::Result<()> {
    let m = Matrix::from_rows(vec![
        vec![deg(1.0), deg(0.3), deg(0.6), deg(1.0)],
        vec![deg(0.2), deg(1.0), deg(1.0), deg(0.5)],
        vec![deg(1.0), deg(1.0), deg(0.4), deg(0.7)],
    ])?;
    let system = MinMaxSystem::new(m).observing(vec![deg(0.3), deg(0.5), deg(0.4)]);
    let s = solve_exact(&system)?;
    println!("solvable: {}", s.solvable);
    println!("lower bound: {:?}", s.space.lower.iter().map(ToString::to_string).collect::<Vec<_>>());
    for v in &s.minimal {
        println!("minimal: {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    if let Some(max) = s.space.maximal_solutions(10_000) {
        for v in max {
            println!("maximal: {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
    }

    let coupled = system.coupled(vec![(0, 1), (2, 3)])?;
    println!("with coupled pairs, solvable: {}", solve_exact(&coupled)?.solvable);
    Ok(())
}
