//! Exact ranks over Z, over Laurent rings, and over group subrings.

use num_bigint::BigInt;
use rigid_solvable::free_solvable::FreeSolvable;
use rigid_solvable::linalg::{coset_rank, full_laurent_matrix, smith_form, LaurentMatrix, LaurentPoly};
use rigid_solvable::magnus::restricted_module_generators;
use rigid_solvable::word::Word;

fn main() -> rigid_solvable::Result<()> {
    let m: Vec<Vec<BigInt>> = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let s = smith_form(&m);
    println!("smith: rank {}, factors {:?}", s.rank, s.invariant_factors);

    // [[x, -1], [x^2, -x]] has rank 1 over Q(x)
    let x = |e: i64, c: i64| LaurentPoly::from_terms(1, [(vec![e], c)]);
    let lm = LaurentMatrix::new(1, vec![vec![x(1, 1), x(0, -1)], vec![x(2, 1), x(1, -1)]])?;
    println!("laurent rank: {}", lm.rank()?);

    // Fox rows of A = <x1^2, x2> over Z[A-bar] and over Z[B]
    let gens: Vec<Word> = vec!["x1^2".parse()?, "x2".parse()?, "[x1^2, x2]".parse()?];
    let rows: Vec<_> = restricted_module_generators(&gens, &FreeSolvable::new(2, 1))?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    println!("rank over Z[A-bar]: {}", coset_rank(&rows, &[vec![2, 0], vec![0, 1]])?);
    println!("rank over Z[B]:     {}", full_laurent_matrix(&rows)?.rank()?);
    Ok(())
}
