//! Principal series of S(2,3) by projection and by iterated commutators.

use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::word::Word;

fn main() -> rigid_solvable::Result<()> {
    let g = FreeSolvable::new(2, 3);
    let witnesses = g.standard_witnesses()?;
    println!("g_1 = x1, g_(j+1) = [g_j, g_j^x2]; g_2 = {}", witnesses[1].project(2)?);
    println!("{:>24}  G_1   G_2   G_3   G_4", "");
    for text in ["x1 x2", "[x1,x2]", "[x1,x2]^x2", "[[x1,x2],[x1,x2]^x2]", "[x1,x2,x1]"] {
        let x = g.normalize(&text.parse::<Word>()?)?;
        let mut row = format!("{text:>24}");
        for i in 1..=4 {
            let a = g.member_by_projection(&x, i)?;
            if i <= 3 {
                assert_eq!(a, g.member_by_commutator(&x, i, &witnesses[i - 1..])?);
            }
            row.push_str(&format!("  {:<5}", a));
        }
        println!("{row}");
    }
    Ok(())
}
