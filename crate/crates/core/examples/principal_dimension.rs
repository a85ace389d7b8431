//! Principal dimensions of metabelian subgroups and of whole families.

use rigid_solvable::linalg::{closed_form_dimension, lex_compare, principal_dimension_metabelian, Family};
use rigid_solvable::word::Word;

fn main() -> rigid_solvable::Result<()> {
    let cases: [(&str, usize); 5] = [
        ("x1; x2", 2),
        ("x1; x2; x3", 3),
        ("x1 x2; x2^2", 2),
        ("x1; [x1,x2]", 2),
        ("x1 x2; x1^2 x2^2", 3),
    ];
    for (gens, m) in cases {
        let words: Vec<Word> = gens.split(';').map(str::parse).collect::<Result<_, _>>()?;
        println!("<{gens}> in S({m},2): r = {}", principal_dimension_metabelian(&words, m)?);
    }
    let s = closed_form_dimension(Family::FreeSolvable { m: 2, n: 2 })?;
    let w = closed_form_dimension(Family::Wreath { m: 1, n: 1 })?;
    println!("r(S(2,2)) = {s}, r(Z wr Z) = {w}, compare: {:?}", lex_compare(&s, &w)?);
    println!("r(S(3,4)) = {}", closed_form_dimension(Family::FreeSolvable { m: 3, n: 4 })?);
    Ok(())
}
