//! Smith normal form and lattice bases over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn has_torsion(&self) -> bool {
        self.invariant_factors.iter().any(|d| d > &BigInt::from(1))
    }
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Diagonalizes by unimodular row and column operations.
pub fn smith_form(matrix: &[Vec<BigInt>]) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // enforce d_t | every remaining entry
                let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    Some(i) => {
                        for j in t..nc {
                            let s = a[i][j].clone();
                            a[t][j] += s;
                        }
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t back to the pivot
            if let Some((pi, pj)) = smallest_nonzero(&a, t) {
                if a[pi][pj].abs() < a[t][t].abs() {
                    a.swap(t, pi);
                    for row in a.iter_mut() {
                        row.swap(t, pj);
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
    }
    SmithForm { rank: diag.len(), invariant_factors: diag }
}

/// Rank over the rationals and the nonzero invariant factors.
pub fn smith_rank(matrix: &[Vec<BigInt>]) -> (usize, Vec<BigInt>) {
    let s = smith_form(matrix);
    (s.rank, s.invariant_factors)
}

/// A basis (in row echelon form) of the lattice spanned by `vectors`.
pub fn lattice_basis(vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<BigInt>> =
        vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nc = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..nc {
        loop {
            let nonzero: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            let Some(&p) = nonzero.iter().min_by_key(|&&i| a[i][c].abs()) else { break };
            if nonzero.len() == 1 {
                a.swap(r, p);
                r += 1;
                break;
            }
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = a[i][c].div_floor(&a[p][c]);
                for j in c..nc {
                    let s = &q * &a[p][j];
                    a[i][j] -= s;
                }
            }
        }
    }
    a.truncate(r);
    a.iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).expect("lattice entry fits i64")).collect())
        .collect()
}
