//! Bounded solution sets of equations over S(2,2).

use rigid_solvable::equations::{solve_ball, vanishes_on, MixedWord, SearchConfig, System};

fn main() -> rigid_solvable::Result<()> {
    let cfg = SearchConfig::default();
    let centralizer = System::parse("[$1, [x1,x2]]", None)?;
    let sols = solve_ball(&centralizer, 2, 2, 4, &cfg)?;
    println!("centralizer of [x1,x2] in the ball of radius 4: {} elements", sols.len());
    for a in &sols.assignments {
        println!("  {}", a[0]);
    }
    // every solution also commutes with [x1,x2]^x1
    let f = MixedWord::parse("[$1, [x1,x2]^x1]")?;
    println!("[$1, [x1,x2]^x1] vanishes on all of them: {}", vanishes_on(&f, &sols)?);

    let pairs = System::parse("[$1, $2]\n[$1, x1]", None)?;
    let sols = solve_ball(&pairs, 2, 2, 2, &cfg)?;
    println!("pairs commuting with each other and x1 (radius 2): {}", sols.len());
    println!("{}", serde_json::to_string(&sols.to_json()["params"]).unwrap());
    Ok(())
}
