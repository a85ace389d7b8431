//! Free solvable groups `S(m, n) = F_m / F_m^(n)`.
//!
//! `S(m, 0)` is trivial and `S(m, 1) = Z^m`. For `n ≥ 2` an element is stored
//! as its Magnus matrix over `S(m, n − 1)`; the Magnus map is injective on
//! `S(m, n)`, so the matrix itself is the canonical form and equality of
//! elements is equality of matrices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{push_i64, Group, Key, MarkedGroup};
use crate::magnus::SplitMatrix;
use crate::word::{Letter, Word};

/// Default cap on `(2m)^radius` for ball enumeration.
pub const DEFAULT_BALL_CAP: u128 = 1_000_000;

/// The ambient group `S(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeSolvable {
    m: usize,
    n: usize,
}

#[derive(Clone, Debug)]
enum Body {
    Trivial,
    Abelian(Vec<i64>),
    Matrix(Box<SplitMatrix<FreeSolvable>>),
}

#[derive(Clone)]
pub struct SolvableElement {
    m: usize,
    n: usize,
    body: Body,
    key: Key,
}

impl SolvableElement {
    fn new(m: usize, n: usize, body: Body) -> Self {
        let mut buf = Vec::new();
        match &body {
            Body::Trivial => buf.push(0),
            Body::Abelian(v) => {
                buf.push(1);
                v.iter().for_each(|&x| push_i64(&mut buf, x));
            }
            Body::Matrix(p) => {
                buf.push(2);
                p.canonical_bytes(&mut buf);
            }
        }
        SolvableElement { m, n, body, key: Arc::from(buf) }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn class(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> FreeSolvable {
        FreeSolvable { m: self.m, n: self.n }
    }

    pub fn key(&self) -> &Key {
        &self.key
    }

    pub fn is_trivial(&self) -> bool {
        match &self.body {
            Body::Trivial => true,
            Body::Abelian(v) => v.iter().all(|&x| x == 0),
            Body::Matrix(p) => p.is_identity(),
        }
    }

    /// Exponent vector, for elements of `S(m, 1)`.
    pub fn exponents(&self) -> Option<&[i64]> {
        match &self.body {
            Body::Abelian(v) => Some(v),
            _ => None,
        }
    }

    /// Magnus matrix over `S(m, n − 1)`, for `n ≥ 2`.
    pub fn matrix(&self) -> Option<&SplitMatrix<FreeSolvable>> {
        match &self.body {
            Body::Matrix(p) => Some(p),
            _ => None,
        }
    }

    /// Image in `S(m, n − 1)`.
    pub fn top(&self) -> Option<SolvableElement> {
        match &self.body {
            Body::Trivial => None,
            Body::Abelian(_) => Some(FreeSolvable::new(self.m, 0).identity()),
            Body::Matrix(p) => Some(p.top().clone()),
        }
    }

    /// Image under the canonical epimorphism `S(m, n) → S(m, k)`, taking tops.
    pub fn project(&self, k: usize) -> Result<SolvableElement> {
        if k > self.n {
            return Err(Error::OutOfRange { what: "k", value: k as i64, lo: 0, hi: self.n as i64 });
        }
        let mut e = self.clone();
        while e.n > k {
            e = e.top().expect("class ≥ 1 has a top");
        }
        Ok(e)
    }

    pub fn to_json(&self) -> Value {
        match &self.body {
            Body::Trivial => json!({ "m": self.m, "n": self.n }),
            Body::Abelian(v) => json!({ "m": self.m, "n": self.n, "exponents": v }),
            Body::Matrix(p) => {
                let mut v = p.to_json_with(SolvableElement::to_json);
                v["m"] = json!(self.m);
                v["n"] = json!(self.n);
                v
            }
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::json(format!("missing {name}")))
        };
        let (m, n) = (field("m")?, field("n")?);
        let group = FreeSolvable::new(m, n);
        match n {
            0 => Ok(group.identity()),
            1 => {
                let v = value
                    .get("exponents")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::json("missing exponents"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::json("bad exponent")))
                    .collect::<Result<Vec<_>>>()?;
                if v.len() != m {
                    return Err(Error::LengthMismatch(v.len(), m));
                }
                Ok(group.abelian(v))
            }
            _ => {
                let base = FreeSolvable::new(m, n - 1);
                let p = SplitMatrix::from_json_with(base, m, value, |v| {
                    let e = SolvableElement::from_json(v)?;
                    if e.group() != base {
                        return Err(Error::mismatch("nested element of the wrong class"));
                    }
                    Ok(e)
                })?;
                Ok(group.from_matrix(p))
            }
        }
    }
}

impl PartialEq for SolvableElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.key == other.key
    }
}

impl Eq for SolvableElement {}

impl Hash for SolvableElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for SolvableElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by serialization.
impl Ord for SolvableElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.n, &self.key).cmp(&(other.m, other.n, &other.key))
    }
}

impl fmt::Debug for SolvableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{}):{}", self.m, self.n, self)
    }
}

impl fmt::Display for SolvableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        match &self.body {
            Body::Trivial => f.write_str("1"),
            Body::Abelian(v) => {
                let mut first = true;
                for (i, &e) in v.iter().enumerate().filter(|(_, e)| **e != 0) {
                    if !first {
                        f.write_str("*")?;
                    }
                    first = false;
                    write!(f, "b{}", i + 1)?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
                Ok(())
            }
            Body::Matrix(p) => write!(f, "{p}"),
        }
    }
}

impl FreeSolvable {
    pub fn new(m: usize, n: usize) -> Self {
        FreeSolvable { m, n }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn class(&self) -> usize {
        self.n
    }

    /// The element of `S(m, 1) = Z^m` with the given exponents.
    pub fn abelian(&self, exponents: Vec<i64>) -> SolvableElement {
        assert_eq!(self.n, 1, "exponent vectors only describe S(m, 1)");
        assert_eq!(exponents.len(), self.m);
        SolvableElement::new(self.m, 1, Body::Abelian(exponents))
    }

    /// Wraps a Magnus matrix over `S(m, n − 1)`.
    pub fn from_matrix(&self, p: SplitMatrix<FreeSolvable>) -> SolvableElement {
        assert!(self.n >= 2);
        assert_eq!(p.base(), &FreeSolvable::new(self.m, self.n - 1));
        SolvableElement::new(self.m, self.n, Body::Matrix(Box::new(p)))
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.gen >= self.m) {
            Some(l) => Err(Error::GeneratorOutOfRange { index: l.gen + 1, rank: self.m }),
            None => Ok(()),
        }
    }

    /// Canonical form of the image of `w`.
    pub fn normalize(&self, w: &Word) -> Result<SolvableElement> {
        self.check_word(w)?;
        Ok(match self.n {
            0 => self.identity(),
            1 => self.abelian(w.exponent_sums(self.m)),
            n => {
                let base = FreeSolvable::new(self.m, n - 1);
                self.from_matrix(SplitMatrix::eval_word(w, &base)?)
            }
        })
    }

    pub fn letter(&self, l: Letter) -> SolvableElement {
        let g = self.generator(l.gen);
        if l.inverse {
            self.inv(&g)
        } else {
            g
        }
    }

    /// Whether `e ∈ G_i = G^(i−1)`, i.e. its image in `S(m, i − 1)` is trivial.
    pub fn member_by_projection(&self, e: &SolvableElement, i: usize) -> Result<bool> {
        self.check_elem(e)?;
        if i < 1 || i > self.n + 1 {
            return Err(Error::OutOfRange { what: "i", value: i as i64, lo: 1, hi: self.n as i64 + 1 });
        }
        Ok(e.project(i - 1)?.is_trivial())
    }

    /// Whether `[e, g_i, g_{i+1}, …, g_n] = 1`, where `witnesses = (g_i, …, g_n)`
    /// and each `g_j ∈ G_j \ G_{j+1}`.
    pub fn member_by_commutator(
        &self,
        e: &SolvableElement,
        i: usize,
        witnesses: &[SolvableElement],
    ) -> Result<bool> {
        self.check_elem(e)?;
        if i < 1 || i > self.n + 1 {
            return Err(Error::OutOfRange { what: "i", value: i as i64, lo: 1, hi: self.n as i64 + 1 });
        }
        if witnesses.len() != self.n + 1 - i {
            return Err(Error::LengthMismatch(witnesses.len(), self.n + 1 - i));
        }
        for (offset, g) in witnesses.iter().enumerate() {
            self.validate_witness(g, i + offset)?;
        }
        let mut c = e.clone();
        for g in witnesses {
            c = self.commutator(&c, g);
        }
        Ok(c.is_trivial())
    }

    fn validate_witness(&self, g: &SolvableElement, j: usize) -> Result<()> {
        if g.group() != *self {
            return Err(Error::InvalidWitness { index: j, reason: "wrong ambient group".into() });
        }
        let in_j = self.member_by_projection(g, j)?;
        let in_next = self.member_by_projection(g, j + 1)?;
        if !in_j || in_next {
            return Err(Error::InvalidWitness {
                index: j,
                reason: format!("{g} is not in G_{j} \\ G_{}", j + 1),
            });
        }
        Ok(())
    }

    /// Witnesses `g_1 = x1`, `g_{j+1} = [g_j, g_j^{x2}]`, each checked to lie
    /// in `G_j \ G_{j+1}`.
    pub fn standard_witnesses(&self) -> Result<Vec<SolvableElement>> {
        let mut out = Vec::with_capacity(self.n);
        if self.n == 0 {
            return Ok(out);
        }
        if self.n >= 2 && self.m < 2 {
            return Err(Error::InvalidWitness { index: 2, reason: "S(1, n) is abelian".into() });
        }
        let mut g = self.generator(0);
        for j in 1..=self.n {
            if j > 1 {
                let x2 = self.generator(1);
                g = self.commutator(&g, &self.conjugate(&g, &x2));
            }
            self.validate_witness(&g, j)?;
            out.push(g.clone());
        }
        Ok(out)
    }

    /// All distinct elements of word length at most `radius`, sorted by
    /// canonical serialization.
    pub fn ball(&self, radius: usize, cap: u128) -> Result<Vec<SolvableElement>> {
        let estimate = (2 * self.m as u128).checked_pow(radius as u32).unwrap_or(u128::MAX);
        if estimate > cap {
            return Err(Error::BallTooLarge { estimate, cap });
        }
        let letters: Vec<SolvableElement> = (0..self.m)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .map(|l| self.letter(l))
            .collect();
        let id = self.identity();
        let mut seen: HashSet<Key> = HashSet::from([id.key.clone()]);
        let mut all = vec![id.clone()];
        let mut frontier = vec![id];
        for _ in 0..radius {
            let mut next = Vec::new();
            for e in &frontier {
                for l in &letters {
                    let f = self.mul(e, l);
                    if seen.insert(f.key.clone()) {
                        next.push(f);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    fn check_elem(&self, e: &SolvableElement) -> Result<()> {
        if e.group() != *self {
            return Err(Error::mismatch(format!("{e:?} is not in S({}, {})", self.m, self.n)));
        }
        Ok(())
    }
}

impl Group for FreeSolvable {
    type Elem = SolvableElement;

    fn identity(&self) -> SolvableElement {
        match self.n {
            0 => SolvableElement::new(self.m, 0, Body::Trivial),
            1 => self.abelian(vec![0; self.m]),
            n => self.from_matrix(SplitMatrix::identity(FreeSolvable::new(self.m, n - 1), self.m)),
        }
    }

    fn mul(&self, a: &SolvableElement, b: &SolvableElement) -> SolvableElement {
        debug_assert!(a.group() == *self && b.group() == *self);
        let body = match (&a.body, &b.body) {
            (Body::Trivial, Body::Trivial) => Body::Trivial,
            (Body::Abelian(x), Body::Abelian(y)) => {
                Body::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Body::Matrix(p), Body::Matrix(q)) => Body::Matrix(Box::new(p.mul_unchecked(q))),
            _ => panic!("multiplying elements of different classes"),
        };
        SolvableElement::new(self.m, self.n, body)
    }

    fn inv(&self, a: &SolvableElement) -> SolvableElement {
        let body = match &a.body {
            Body::Trivial => Body::Trivial,
            Body::Abelian(x) => Body::Abelian(x.iter().map(|p| -p).collect()),
            Body::Matrix(p) => Body::Matrix(Box::new(p.inv())),
        };
        SolvableElement::new(self.m, self.n, body)
    }

    fn key(&self, a: &SolvableElement) -> Key {
        a.key.clone()
    }

    fn contains(&self, a: &SolvableElement) -> bool {
        a.group() == *self
    }

    fn is_identity(&self, a: &SolvableElement) -> bool {
        a.is_trivial()
    }

    fn fmt_elem(&self, a: &SolvableElement, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
}

impl MarkedGroup for FreeSolvable {
    fn rank(&self) -> usize {
        self.m
    }

    fn generator(&self, index: usize) -> SolvableElement {
        assert!(index < self.m, "generator index out of range");
        match self.n {
            0 => self.identity(),
            1 => {
                let mut v = vec![0; self.m];
                v[index] = 1;
                self.abelian(v)
            }
            n => {
                let base = FreeSolvable::new(self.m, n - 1);
                self.from_matrix(SplitMatrix::generator(base, Letter::new(index, false)).unwrap())
            }
        }
    }
}

pub fn normalize(m: usize, n: usize, w: &Word) -> Result<SolvableElement> {
    FreeSolvable::new(m, n).normalize(w)
}

pub fn is_trivial(e: &SolvableElement) -> bool {
    e.is_trivial()
}

pub fn project(e: &SolvableElement, k: usize) -> Result<SolvableElement> {
    e.project(k)
}

pub fn series_member_projection(e: &SolvableElement, i: usize) -> Result<bool> {
    e.group().member_by_projection(e, i)
}

pub fn series_member_commutator(
    e: &SolvableElement,
    i: usize,
    witnesses: &[SolvableElement],
) -> Result<bool> {
    e.group().member_by_commutator(e, i, witnesses)
}

pub fn ball_enumerate(m: usize, n: usize, radius: usize) -> Result<Vec<SolvableElement>> {
    FreeSolvable::new(m, n).ball(radius, DEFAULT_BALL_CAP)
}

/// Multiset of canonical keys, used to compare element collections.
pub fn key_counts<'a>(it: impl IntoIterator<Item = &'a SolvableElement>) -> BTreeMap<Key, usize> {
    let mut out = BTreeMap::new();
    for e in it {
        *out.entry(e.key.clone()).or_insert(0) += 1;
    }
    out
}
