//! Rank over a subring `ZĀ ⊆ ZB` for free abelian `B`.
//!
//! `ZB` is a free `ZĀ`-module on coset representatives of `B/Ā`, so a row
//! of the free module `(ZB)^m` is rewritten as a row over the Laurent ring
//! in the `Ā`-coordinates, one column per (coordinate, coset) pair that
//! occurs. Coset representatives are the minimal canonical keys in each
//! coset among the support elements present.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_solvable::FreeSolvable;
use crate::group::Key;
use crate::group_ring::RingElement;
use crate::linalg::laurent::{LaurentMatrix, LaurentPoly};
use crate::linalg::smith::smith_rank;

/// The subgroup of `Z^m` spanned by independent vectors.
#[derive(Clone, Debug)]
pub struct SubLattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

impl SubLattice {
    pub fn new(dim: usize, basis: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != dim) {
            return Err(Error::LengthMismatch(v.len(), dim));
        }
        let m: Vec<Vec<BigInt>> = basis.iter().map(|v| v.iter().map(|&x| x.into()).collect()).collect();
        if smith_rank(&m).0 != basis.len() {
            return Err(Error::DependentSubBasis);
        }
        Ok(SubLattice { dim, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer `λ` with `Σ λ_j s_j = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let k = self.basis.len();
        // rows: coordinates of Z^m; columns: basis vectors, then v
        let mut a: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|s| BigRational::from_integer(s[i].into()))
                    .chain(std::iter::once(BigRational::from_integer(v[i].into())))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let p = (r..self.dim).find(|&i| !a[i][c].is_zero())?;
            a.swap(r, p);
            let inv = BigRational::one() / &a[r][c];
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.dim {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=k {
                        let s = &f * &a[r][j];
                        a[i][j] -= s;
                    }
                }
            }
            pivots.push(r);
            r += 1;
        }
        if a.iter().skip(r).any(|row| !row[k].is_zero()) {
            return None;
        }
        pivots
            .iter()
            .map(|&i| {
                let x = &a[i][k];
                x.is_integer().then(|| i64::try_from(x.to_integer()).expect("coordinate fits i64"))
            })
            .collect()
    }
}

fn check_rows(rows: &[Vec<RingElement<FreeSolvable>>]) -> Result<Option<FreeSolvable>> {
    let mut group = None;
    for row in rows {
        for d in row {
            let g = *d.group();
            if g.class() != 1 {
                return Err(Error::mismatch("coset rank needs a free abelian base S(m, 1)"));
            }
            if *group.get_or_insert(g) != g {
                return Err(Error::mismatch("rows over different groups"));
            }
        }
    }
    if let Some(w) = rows.windows(2).find(|w| w[0].len() != w[1].len()) {
        return Err(Error::LengthMismatch(w[0].len(), w[1].len()));
    }
    Ok(group)
}

/// Rewrites the rows as a matrix over the Laurent ring `ZĀ ⊗ Q`.
pub fn coset_matrix(
    rows: &[Vec<RingElement<FreeSolvable>>],
    sub_basis: &[Vec<i64>],
) -> Result<LaurentMatrix> {
    let k = sub_basis.len();
    let Some(group) = check_rows(rows)? else {
        return LaurentMatrix::new(k, rows.iter().map(|_| Vec::new()).collect());
    };
    let lattice = SubLattice::new(group.rank(), sub_basis.to_vec())?;

    let mut support: BTreeMap<Key, Vec<i64>> = BTreeMap::new();
    for d in rows.iter().flatten() {
        for (b, _) in d.iter() {
            support.entry(b.key().clone()).or_insert_with(|| b.exponents().unwrap().to_vec());
        }
    }
    // key order: the first member seen in each coset is its minimum
    let mut reps: Vec<Vec<i64>> = Vec::new();
    let mut placement: BTreeMap<Key, (usize, Vec<i64>)> = BTreeMap::new();
    for (key, b) in &support {
        let found = reps.iter().enumerate().find_map(|(ci, r)| {
            let diff: Vec<i64> = b.iter().zip(r).map(|(x, y)| x - y).collect();
            lattice.coordinates(&diff).map(|lambda| (ci, lambda))
        });
        let entry = match found {
            Some(hit) => hit,
            None => {
                reps.push(b.clone());
                (reps.len() - 1, vec![0; k])
            }
        };
        placement.insert(key.clone(), entry);
    }

    let ncosets = reps.len();
    let out = rows
        .iter()
        .map(|row| {
            let mut cols = vec![LaurentPoly::zero(k); row.len() * ncosets];
            for (i, d) in row.iter().enumerate() {
                for (b, c) in d.iter() {
                    let (coset, lambda) = &placement[b.key()];
                    let term = LaurentPoly::monomial(lambda.clone(), BigRational::from_integer(c.clone()));
                    let slot = &mut cols[i * ncosets + coset];
                    *slot = slot.add(&term);
                }
            }
            cols
        })
        .collect();
    LaurentMatrix::new(k, out)
}

/// Rank of the `ZĀ`-module spanned by `rows` inside `(ZB)^m`.
pub fn coset_rank(rows: &[Vec<RingElement<FreeSolvable>>], sub_basis: &[Vec<i64>]) -> Result<usize> {
    coset_matrix(rows, sub_basis)?.rank()
}

/// Rows of `(ZB)^m` as a Laurent matrix over all of `B = Z^m`.
pub fn full_laurent_matrix(rows: &[Vec<RingElement<FreeSolvable>>]) -> Result<LaurentMatrix> {
    let m = check_rows(rows)?.map_or(0, |g| g.rank());
    let out = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|d| {
                    let mut p = LaurentPoly::zero(m);
                    for (b, c) in d.iter() {
                        p.add_term(b.exponents().unwrap().to_vec(), BigRational::from_integer(c.clone()));
                    }
                    p
                })
                .collect()
        })
        .collect();
    LaurentMatrix::new(m, out)
}
