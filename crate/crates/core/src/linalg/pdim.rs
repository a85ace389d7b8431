//! Principal dimension `r(G) = (r_1, …, r_n)`: the ranks of the principal
//! series factors `G_i / G_{i+1}` over `Z[G / G_i]`.
//!
//! Computed exactly only at the commutative levels, i.e. for subgroups of
//! `S(m, 2)`. Closed forms cover `S(m, n)` and `W(m, n)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_solvable::FreeSolvable;
use crate::group::Group;
use crate::linalg::coset::coset_rank;
use crate::linalg::smith::{lattice_basis, smith_rank};
use crate::magnus::restricted_module_generators;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrincipalDimension(pub Vec<usize>);

impl PrincipalDimension {
    /// Rigidity class `n`.
    pub fn class(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for PrincipalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    FreeSolvable { m: usize, n: usize },
    /// `W(m, n)` with `W(m, 0) = Z^m`.
    Wreath { m: usize, n: usize },
}

/// Left-lexicographic order on equal-length tuples.
pub fn lex_compare(a: &PrincipalDimension, b: &PrincipalDimension) -> Result<Ordering> {
    if a.0.len() != b.0.len() {
        return Err(Error::LengthMismatch(a.0.len(), b.0.len()));
    }
    Ok(a.0.cmp(&b.0))
}

pub fn closed_form_dimension(family: Family) -> Result<PrincipalDimension> {
    match family {
        Family::FreeSolvable { m, n } => {
            if m == 0 || n == 0 {
                return Err(Error::OutOfRange { what: "m, n", value: 0, lo: 1, hi: i64::MAX });
            }
            // S(1, n) = Z for every n
            if m == 1 {
                return Ok(PrincipalDimension(vec![1]));
            }
            let mut r = vec![m];
            r.extend(std::iter::repeat_n(m - 1, n - 1));
            Ok(PrincipalDimension(r))
        }
        Family::Wreath { m, n } => {
            if m == 0 {
                return Err(Error::OutOfRange { what: "m", value: 0, lo: 1, hi: i64::MAX });
            }
            Ok(PrincipalDimension(vec![m; n + 1]))
        }
    }
}

/// `r(A)` for `A = ⟨generators⟩ ≤ S(m, 2)`.
///
/// `r_1` is the rank of the image `Ā ≤ Z^m`. The module `D(A)` of the induced
/// splitting is spanned over `ZĀ` by the Fox rows `d(a_j)`, and
/// `rank D(A) = rank(A ∩ G_2) + 1`. An abelian `A` with nontrivial image is
/// 1-rigid and gets the 1-tuple `(r_1)`.
pub fn principal_dimension_metabelian(generators: &[Word], m: usize) -> Result<PrincipalDimension> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let g = FreeSolvable::new(m, 2);
    let elems = generators.iter().map(|w| g.normalize(w)).collect::<Result<Vec<_>>>()?;
    let images: Vec<Vec<i64>> = generators.iter().map(|w| w.exponent_sums(m)).collect();
    let int_images: Vec<Vec<BigInt>> =
        images.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (r1, _) = smith_rank(&int_images);
    if r1 == 0 {
        return Err(Error::TrivialImage);
    }
    let abelian = elems
        .iter()
        .enumerate()
        .all(|(i, a)| elems[i + 1..].iter().all(|b| g.commutator(a, b).is_trivial()));
    if abelian {
        return Ok(PrincipalDimension(vec![r1]));
    }
    let basis = lattice_basis(&images);
    debug_assert_eq!(basis.len(), r1);
    let rows: Vec<_> = restricted_module_generators(generators, &FreeSolvable::new(m, 1))?
        .into_iter()
        .map(|(row, _)| row)
        .collect();
    let rank_d = coset_rank(&rows, &basis)?;
    Ok(PrincipalDimension(vec![r1, rank_d - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn full_free_metabelian() {
        let r = principal_dimension_metabelian(&words(&["x1", "x2"]), 2).unwrap();
        assert_eq!(r, PrincipalDimension(vec![2, 1]));
        assert_eq!(closed_form_dimension(Family::FreeSolvable { m: 2, n: 2 }).unwrap(), r);
        let r3 = principal_dimension_metabelian(&words(&["x1", "x2", "x3"]), 3).unwrap();
        assert_eq!(r3, PrincipalDimension(vec![3, 2]));
    }

    #[test]
    fn redundant_generators() {
        let r = principal_dimension_metabelian(&words(&["x1", "x2", "[x1,x2]"]), 2).unwrap();
        assert_eq!(r, PrincipalDimension(vec![2, 1]));
    }

    #[test]
    fn lamplighter_subgroup() {
        let r = principal_dimension_metabelian(&words(&["x1", "[x1,x2]"]), 2).unwrap();
        assert_eq!(r, PrincipalDimension(vec![1, 1]));
    }

    #[test]
    fn abelian_and_trivial() {
        assert_eq!(principal_dimension_metabelian(&words(&["x1"]), 2).unwrap(), PrincipalDimension(vec![1]));
        assert_eq!(
            principal_dimension_metabelian(&words(&["x1 x2", "(x1 x2)^3"]), 2).unwrap(),
            PrincipalDimension(vec![1])
        );
        assert_eq!(principal_dimension_metabelian(&words(&["[x1,x2]"]), 2), Err(Error::TrivialImage));
        assert_eq!(principal_dimension_metabelian(&[], 2), Err(Error::EmptyGenerators));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_dimension(Family::FreeSolvable { m: 3, n: 1 }).unwrap().0, vec![3]);
        assert_eq!(closed_form_dimension(Family::FreeSolvable { m: 3, n: 3 }).unwrap().0, vec![3, 2, 2]);
        assert_eq!(closed_form_dimension(Family::Wreath { m: 1, n: 1 }).unwrap().0, vec![1, 1]);
        assert_eq!(closed_form_dimension(Family::Wreath { m: 2, n: 2 }).unwrap().0, vec![2, 2, 2]);
        assert!(closed_form_dimension(Family::FreeSolvable { m: 0, n: 1 }).is_err());
    }

    #[test]
    fn lexicographic() {
        let p = |v: &[usize]| PrincipalDimension(v.to_vec());
        assert_eq!(lex_compare(&p(&[2, 1]), &p(&[1, 1])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&p(&[1, 1]), &p(&[1, 1])).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(&p(&[1, 2]), &p(&[2, 0])).unwrap(), Ordering::Less);
        assert!(lex_compare(&p(&[1]), &p(&[1, 1])).is_err());
    }
}
