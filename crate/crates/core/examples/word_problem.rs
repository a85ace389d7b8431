//! Canonical forms in free solvable groups: equal elements get equal forms.

use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::group::Group;
use rigid_solvable::word::Word;

fn main() -> rigid_solvable::Result<()> {
    let g = FreeSolvable::new(2, 2);
    let c: Word = "[x1,x2]".parse()?;
    let e = g.normalize(&c)?;
    println!("[x1,x2] in S(2,2) = {e}");

    // [x1,x2] commutes with its conjugates in the metabelian group, not in S(2,3)
    let law: Word = "[[x1,x2], [x1,x2]^x1]".parse()?;
    for n in 2..=3 {
        let g = FreeSolvable::new(2, n);
        println!("[[x1,x2],[x1,x2]^x1] trivial in S(2,{n}): {}", g.normalize(&law)?.is_trivial());
    }

    let u: Word = "X1 x2 x2 x1".parse()?;
    let v: Word = "x2^x1 x2^x1".parse()?;
    println!("{u} == {v}: {}", g.normalize(&u)? == g.normalize(&v)?);

    let x = g.normalize(&"x1 x2".parse()?)?;
    let y = g.inv(&x);
    println!("(x1 x2)(x1 x2)^-1 = {}", g.mul(&x, &y));
    Ok(())
}
