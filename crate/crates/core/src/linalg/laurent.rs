//! Laurent polynomials with rational coefficients and exact matrix rank.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group_ring::{bigint_from_json, bigint_to_json};

/// An element of `Q[t_1^±1, …, t_k^±1]`; terms keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn integer(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn monomial(exps: Vec<i64>, c: BigRational) -> Self {
        let mut p = LaurentPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `Σ c·t^e` from `(exponents, integer coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, exps: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    fn leading(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.last_key_value()
    }

    /// Per-variable exponent range.
    fn bounds(&self) -> Vec<(i64, i64)> {
        (0..self.nvars)
            .map(|i| {
                let it = self.terms.keys().map(|e| e[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    }

    /// `self / divisor` when the quotient is a Laurent polynomial.
    ///
    /// Lex order on `Z^k` is a group order, so leading terms multiply; the
    /// quotient's exponents are confined to the box implied by the Newton
    /// polytopes, which bounds the loop.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (ed, cd) = divisor.leading().ok_or(Error::InexactDivision)?;
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let (ba, bd) = (self.bounds(), divisor.bounds());
        let boxes: Vec<(i64, i64)> = ba.iter().zip(&bd).map(|(a, d)| (a.0 - d.1, a.1 - d.0)).collect();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((ea, ca)) = rem.leading() {
            let e: Vec<i64> = ea.iter().zip(ed).map(|(x, y)| x - y).collect();
            if e.iter().zip(&boxes).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(Error::InexactDivision);
            }
            let step = LaurentPoly::monomial(e, ca / cd);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Ok(quot)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exps": e, "num": bigint_to_json(c.numer()), "den": bigint_to_json(c.denom()) }))
                .collect(),
        )
    }

    pub fn from_json(nvars: Option<usize>, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::json("polynomial must be an array of terms"))?;
        let mut p: Option<LaurentPoly> = nvars.map(LaurentPoly::zero);
        for t in arr {
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::json("missing exps"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::json("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            let num = bigint_from_json(t.get("num").ok_or_else(|| Error::json("missing num"))?)?;
            let den = match t.get("den") {
                Some(d) => bigint_from_json(d)?,
                None => BigInt::one(),
            };
            if den.is_zero() {
                return Err(Error::json("zero denominator"));
            }
            let poly = p.get_or_insert_with(|| LaurentPoly::zero(exps.len()));
            if exps.len() != poly.nvars {
                return Err(Error::LengthMismatch(exps.len(), poly.nvars));
            }
            poly.add_term(exps, BigRational::new(num, den));
        }
        p.ok_or_else(|| Error::json("cannot infer the number of variables of an empty polynomial"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, &x) in e.iter().enumerate().filter(|(_, x)| **x != 0) {
                write!(f, "*t{}", v + 1)?;
                if x != 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

/// A matrix over one Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    nvars: usize,
    rows: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch(row.len(), ncols));
            }
            if let Some(p) = row.iter().find(|p| p.nvars != nvars) {
                return Err(Error::mismatch(format!(
                    "entry in {} variables, ring has {nvars}",
                    p.nvars
                )));
            }
        }
        Ok(LaurentMatrix { nvars, rows })
    }

    /// Integer matrix embedded as constants.
    pub fn from_integers(nvars: usize, m: &[Vec<BigInt>]) -> Self {
        let rows = m
            .iter()
            .map(|r| r.iter().map(|x| LaurentPoly::integer(nvars, x.clone())).collect())
            .collect();
        LaurentMatrix { nvars, rows }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols()).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        LaurentMatrix { nvars: self.nvars, rows }
    }

    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    /// Pivot: first row with a nonzero entry in the current column.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.rows.clone();
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut prev = LaurentPoly::one(self.nvars);
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..nr {
                for j in c + 1..nc {
                    let num = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][c] = LaurentPoly::zero(self.nvars);
            }
            prev = a[r][c].clone();
            r += 1;
        }
        Ok(r)
    }

    /// `[[ [ {exps, num, den}, … ], … ], … ]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows.iter().map(|r| Value::Array(r.iter().map(LaurentPoly::to_json).collect())).collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::json("matrix must be an array of rows"))?;
        // number of variables: from the first term anywhere
        let nvars = rows
            .iter()
            .filter_map(Value::as_array)
            .flatten()
            .filter_map(Value::as_array)
            .flatten()
            .find_map(|t| t.get("exps").and_then(Value::as_array).map(Vec::len))
            .unwrap_or(0);
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::json("row must be an array"))?
                    .iter()
                    .map(|p| LaurentPoly::from_json(Some(nvars), p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::new(nvars, parsed)
    }
}

pub fn laurent_rank(m: &LaurentMatrix) -> Result<usize> {
    m.rank()
}
