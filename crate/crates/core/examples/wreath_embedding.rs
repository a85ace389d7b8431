//! S(m,n) inside the iterated wreath product W(m,n-1), and the map onto Z wr Z.

use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::group::Group;
use rigid_solvable::word::Word;
use rigid_solvable::wreath::{embed_free_solvable, function_to_matrix, z_wr_z_generators, WreathGroup};

fn main() -> rigid_solvable::Result<()> {
    let g = FreeSolvable::new(2, 2);
    let c = g.normalize(&"[x1,x2]".parse()?)?;
    let f = embed_free_solvable(&c);
    println!("[x1,x2] as a function: {f}");
    println!("back to a matrix:      {}", function_to_matrix(&f)?);

    let x = g.normalize(&"x1 x2 x2".parse()?)?;
    let w = WreathGroup::new(2, 1);
    assert_eq!(embed_free_solvable(&g.mul(&x, &c)), w.mul(&embed_free_solvable(&x), &f));

    let zz = WreathGroup::new(1, 1);
    let images = z_wr_z_generators();
    for text in ["[x1,x2]", "[x1, x1^x2]", "[x1,x2]^x2"] {
        let w: Word = text.parse()?;
        println!("{text:>12} -> {}", zz.evaluate(&w, &images)?);
    }
    Ok(())
}
