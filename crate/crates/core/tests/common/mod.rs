//! Independent oracles shared by the integration tests. Nothing here calls
//! the elimination or Magnus code it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rigid_solvable::free_solvable::{FreeSolvable, SolvableElement};
use rigid_solvable::group_ring::RingElement;
use rigid_solvable::linalg::LaurentPoly;
use rigid_solvable::word::Word;

/// Determinant by the Leibniz expansion.
pub fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut prod = BigInt::one();
        for (i, &j) in p.iter().enumerate() {
            prod *= &m[i][j];
        }
        if inversions % 2 == 1 {
            prod = -prod;
        }
        total += prod;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All `k × k` minors.
pub fn minors(m: &[Vec<BigInt>], k: usize) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            out.push(leibniz(&sub));
        }
    }
    out
}

/// Largest `k` with a nonzero `k × k` minor.
pub fn minor_rank(m: &[Vec<BigInt>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=r.min(c)).rev().find(|&k| minors(m, k).iter().any(|d| !d.is_zero())).unwrap_or(0)
}

/// Invariant factors from determinantal divisors `d_k = gcd of k × k minors`.
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rank = minor_rank(m);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rank {
        let d = minors(m, k).iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        out.push(&d / &prev);
        prev = d;
    }
    out
}

pub fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Fox derivatives of `w` over `Z^m` from the closed formula for the
/// convention `d(uv) = d(u)·v̄ + d(v)`: with `s` the exponent vector of the
/// letters after position `k`, a letter `x_i` adds `+b^s` to coordinate `i`
/// and a letter `X_i` adds `−b^(s − e_i)`.
pub fn fox_over_abelian(w: &Word, m: usize) -> (Vec<i64>, Vec<RingElement<FreeSolvable>>) {
    let b = FreeSolvable::new(m, 1);
    let letters = w.letters();
    let mut coords = vec![RingElement::zero(b); m];
    for (k, l) in letters.iter().enumerate() {
        let mut suffix = vec![0i64; m];
        for s in &letters[k + 1..] {
            suffix[s.gen] += if s.inverse { -1 } else { 1 };
        }
        let (at, sign) = if l.inverse {
            suffix[l.gen] -= 1;
            (suffix, -1)
        } else {
            (suffix, 1)
        };
        let term = RingElement::monomial(b, b.abelian(at), sign);
        coords[l.gen] = coords[l.gen].add(&term).unwrap();
    }
    let mut top = vec![0i64; m];
    for l in letters {
        top[l.gen] += if l.inverse { -1 } else { 1 };
    }
    (top, coords)
}

/// Every word of length at most `radius`, by brute enumeration of letter strings.
pub fn all_words(m: usize, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..m {
                for inv in [false, true] {
                    let letter = if inv { Word::generator(g).inverse() } else { Word::generator(g) };
                    next.push(w.concat(&letter));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn abelianization(e: &SolvableElement) -> Vec<i64> {
    match e.project(1).unwrap().exponents() {
        Some(x) => x.to_vec(),
        None => vec![0; e.rank()],
    }
}

/// Laurent rank oracle: largest nonvanishing minor, expanded with Leibniz in the polynomial ring.
pub fn laurent_minor_rank(m: &[Vec<LaurentPoly>], nvars: usize) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let mut perm: Vec<usize> = (0..k).collect();
                    let mut det = LaurentPoly::zero(nvars);
                    permute(&mut perm, 0, &mut |p| {
                        let sign = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        let mut prod = LaurentPoly::one(nvars);
                        for (i, &j) in p.iter().enumerate() {
                            prod = prod.mul(&m[rows[i]][cols[j]]);
                        }
                        det = if sign % 2 == 1 { det.sub(&prod) } else { det.add(&prod) };
                    });
                    !det.is_zero()
                })
            })
        })
        .unwrap_or(0)
}
