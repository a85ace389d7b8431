//! Magnus coordinates are Fox derivatives; sigma recovers w-bar - 1.

use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::magnus::{bar_minus_one, SplitMatrix};
use rigid_solvable::word::Word;

fn main() -> rigid_solvable::Result<()> {
    let base = FreeSolvable::new(2, 1);
    for text in ["x1", "X1", "x1 x2", "[x1,x2]", "[x1,x2]^x1", "x1^3 X2"] {
        let w: Word = text.parse()?;
        let p = SplitMatrix::eval_word(&w, &base)?;
        let coords: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
        println!("{text:>12}: d = ({})", coords.join(", "));
        assert_eq!(p.sigma(), bar_minus_one(&w, &base)?);
    }

    // over a non-abelian base the same identity holds
    let base = FreeSolvable::new(2, 2);
    let w: Word = "x2 x1 [x1,x2]".parse()?;
    let p = SplitMatrix::eval_word(&w, &base)?;
    println!("sigma(d(w)) over S(2,2): {}", p.sigma());
    println!("w-bar - 1:               {}", bar_minus_one(&w, &base)?);
    Ok(())
}
