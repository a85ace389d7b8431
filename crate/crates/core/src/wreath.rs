//! Iterated wreath products `W(m, 0) = Z^m`, `W(m, n) = Z^m ≀ W(m, n − 1)`.
//!
//! A level-`n` element is a pair (finitely supported `f: W(m, n−1) → Z^m`,
//! top in `W(m, n−1)`). Multiplication is `(f, b)(g, c) = (f·c + g, bc)`
//! with right translation `(f·c)(x) = f(x·c⁻¹)`; this is exactly the
//! matrix product of `[[B, 0], [T, 1]]` with `T` free of rank `m`, the
//! basis vector `t_i` corresponding to `δ_e·e_i`.
//!
//! Levels: `S(m, n)` embeds in `W(m, n − 1)`, so `S(m, 1) = Z^m = W(m, 0)`
//! and `S(m, 2)` lands in `Z^m ≀ Z^m = W(m, 1)`. `W(m, n)` has solvability
//! class `n + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::free_solvable::SolvableElement;
use crate::group::{push_bytes, push_i64, push_len, Group, Key};
use crate::group_ring::{bigint_from_json, bigint_to_json, RingElement};
use crate::magnus::SplitMatrix;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WreathGroup {
    m: usize,
    level: usize,
}

type BaseMap = BTreeMap<Key, (WreathElement, Vec<BigInt>)>;

#[derive(Clone, Debug)]
enum WBody {
    Vector(Vec<i64>),
    Function { top: Box<WreathElement>, base: BaseMap },
}

#[derive(Clone)]
pub struct WreathElement {
    m: usize,
    level: usize,
    body: WBody,
    key: Key,
}

impl WreathElement {
    fn new(m: usize, level: usize, body: WBody) -> Self {
        let mut buf = Vec::new();
        match &body {
            WBody::Vector(v) => {
                buf.push(1);
                v.iter().for_each(|&x| push_i64(&mut buf, x));
            }
            WBody::Function { top, base } => {
                buf.push(2);
                push_bytes(&mut buf, &top.key);
                push_len(&mut buf, base.len());
                for (k, (_, vec)) in base {
                    push_bytes(&mut buf, k);
                    vec.iter().for_each(|c| crate::group::push_bigint(&mut buf, c));
                }
            }
        }
        WreathElement { m, level, body, key: Arc::from(buf) }
    }

    pub fn group(&self) -> WreathGroup {
        WreathGroup { m: self.m, level: self.level }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn key(&self) -> &Key {
        &self.key
    }

    pub fn is_trivial(&self) -> bool {
        match &self.body {
            WBody::Vector(v) => v.iter().all(|&x| x == 0),
            WBody::Function { top, base } => base.is_empty() && top.is_trivial(),
        }
    }

    /// Level-0 exponent vector.
    pub fn vector(&self) -> Option<&[i64]> {
        match &self.body {
            WBody::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<&WreathElement> {
        match &self.body {
            WBody::Function { top, .. } => Some(top),
            _ => None,
        }
    }

    /// Support of the base function in canonical order.
    pub fn base(&self) -> Vec<(&WreathElement, &[BigInt])> {
        match &self.body {
            WBody::Function { base, .. } => base.values().map(|(x, v)| (x, v.as_slice())).collect(),
            WBody::Vector(_) => Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.body {
            WBody::Vector(v) => json!({ "m": self.m, "level": 0, "top": v, "base": [] }),
            WBody::Function { top, base } => json!({
                "m": self.m,
                "level": self.level,
                "top": top.to_json(),
                "base": base.values().map(|(x, v)| json!({
                    "at": x.to_json(),
                    "vec": v.iter().map(bigint_to_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
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
        let (m, level) = (field("m")?, field("level")?);
        let group = WreathGroup::new(m, level);
        let top = value.get("top").ok_or_else(|| Error::json("missing top"))?;
        if level == 0 {
            let v = top
                .as_array()
                .ok_or_else(|| Error::json("level-0 top must be a vector"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::json("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != m {
                return Err(Error::LengthMismatch(v.len(), m));
            }
            return Ok(group.vector(v));
        }
        let lower = WreathGroup::new(m, level - 1);
        let top = WreathElement::from_json(top)?;
        let mut pairs = Vec::new();
        for item in value.get("base").and_then(Value::as_array).ok_or_else(|| Error::json("missing base"))? {
            let at = WreathElement::from_json(item.get("at").ok_or_else(|| Error::json("missing at"))?)?;
            let vec = item
                .get("vec")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::json("missing vec"))?
                .iter()
                .map(bigint_from_json)
                .collect::<Result<Vec<_>>>()?;
            if at.group() != lower {
                return Err(Error::mismatch("support element at the wrong level"));
            }
            pairs.push((at, vec));
        }
        group.function(top, pairs)
    }
}

impl PartialEq for WreathElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.level == other.level && self.key == other.key
    }
}

impl Eq for WreathElement {}

impl Hash for WreathElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{}):{}", self.m, self.level, self)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn vec<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        }
        match &self.body {
            WBody::Vector(v) => vec(f, v),
            WBody::Function { top, base } => {
                f.write_str("{")?;
                for (i, (x, v)) in base.values().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x} -> ")?;
                    vec(f, v)?;
                }
                write!(f, "; {top}}}")
            }
        }
    }
}

impl WreathGroup {
    pub fn new(m: usize, level: usize) -> Self {
        WreathGroup { m, level }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `W(m, level − 1)`, the group the base functions are defined on.
    pub fn lower(&self) -> Option<WreathGroup> {
        self.level.checked_sub(1).map(|l| WreathGroup::new(self.m, l))
    }

    pub fn vector(&self, v: Vec<i64>) -> WreathElement {
        assert_eq!(self.level, 0);
        assert_eq!(v.len(), self.m);
        WreathElement::new(self.m, 0, WBody::Vector(v))
    }

    /// Builds `(f, top)` from `(x, f(x))` pairs; repeated points add up.
    pub fn function(
        &self,
        top: WreathElement,
        pairs: impl IntoIterator<Item = (WreathElement, Vec<BigInt>)>,
    ) -> Result<WreathElement> {
        let lower = self.lower().ok_or_else(|| Error::mismatch("level-0 elements have no base function"))?;
        if top.group() != lower {
            return Err(Error::mismatch("top at the wrong level"));
        }
        let mut base = BaseMap::new();
        for (x, v) in pairs {
            if x.group() != lower {
                return Err(Error::mismatch("support element at the wrong level"));
            }
            if v.len() != self.m {
                return Err(Error::LengthMismatch(v.len(), self.m));
            }
            add_at(&mut base, x.key.clone(), x, &v);
        }
        Ok(WreathElement::new(self.m, self.level, WBody::Function { top: Box::new(top), base }))
    }

    /// `δ_e·e_i` with trivial top: the `i`-th generator of the bottom copy of `Z^m`.
    pub fn base_generator(&self, i: usize) -> WreathElement {
        assert!(i < self.m);
        let mut e = vec![BigInt::zero(); self.m];
        e[i] = BigInt::from(1);
        match self.lower() {
            None => {
                let mut v = vec![0; self.m];
                v[i] = 1;
                self.vector(v)
            }
            Some(lower) => self.function(lower.identity(), [(lower.identity(), e)]).unwrap(),
        }
    }

    /// `(0, b)`: the copy of the lower group inside this level.
    pub fn lift(&self, b: &WreathElement) -> Result<WreathElement> {
        self.function(b.clone(), [])
    }

    /// Image of `w` under the homomorphism `x_i ↦ images[i]`.
    pub fn evaluate(&self, w: &Word, images: &[WreathElement]) -> Result<WreathElement> {
        if let Some(bad) = images.iter().find(|e| e.group() != *self) {
            return Err(Error::mismatch(format!("{bad:?} is not in W({}, {})", self.m, self.level)));
        }
        let mut acc = self.identity();
        for l in w.letters() {
            let g = images
                .get(l.gen)
                .ok_or(Error::GeneratorOutOfRange { index: l.gen + 1, rank: images.len() })?;
            acc = self.mul(&acc, &if l.inverse { self.inv(g) } else { g.clone() });
        }
        Ok(acc)
    }
}

fn add_at(base: &mut BaseMap, key: Key, x: WreathElement, v: &[BigInt]) {
    use std::collections::btree_map::Entry;
    match base.entry(key) {
        Entry::Vacant(slot) => {
            if v.iter().any(|c| !c.is_zero()) {
                slot.insert((x, v.to_vec()));
            }
        }
        Entry::Occupied(mut o) => {
            o.get_mut().1.iter_mut().zip(v).for_each(|(a, b)| *a += b);
            if o.get().1.iter().all(Zero::is_zero) {
                o.remove();
            }
        }
    }
}

impl Group for WreathGroup {
    type Elem = WreathElement;

    fn identity(&self) -> WreathElement {
        match self.lower() {
            None => self.vector(vec![0; self.m]),
            Some(lower) => WreathElement::new(
                self.m,
                self.level,
                WBody::Function { top: Box::new(lower.identity()), base: BaseMap::new() },
            ),
        }
    }

    fn mul(&self, p: &WreathElement, q: &WreathElement) -> WreathElement {
        debug_assert!(p.group() == *self && q.group() == *self);
        let body = match (&p.body, &q.body) {
            (WBody::Vector(x), WBody::Vector(y)) => WBody::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect()),
            (WBody::Function { top: pt, base: pb }, WBody::Function { top: qt, base: qb }) => {
                let lower = self.lower().unwrap();
                let mut base = BaseMap::new();
                for (x, v) in pb.values() {
                    let y = lower.mul(x, qt);
                    base.insert(y.key.clone(), (y, v.clone()));
                }
                for (k, (x, v)) in qb {
                    add_at(&mut base, k.clone(), x.clone(), v);
                }
                WBody::Function { top: Box::new(lower.mul(pt, qt)), base }
            }
            _ => panic!("multiplying wreath elements of different levels"),
        };
        WreathElement::new(self.m, self.level, body)
    }

    fn inv(&self, p: &WreathElement) -> WreathElement {
        match &p.body {
            WBody::Vector(x) => self.vector(x.iter().map(|a| -a).collect()),
            WBody::Function { .. } => {
                let matrix = function_to_matrix(p).expect("level ≥ 1");
                matrix_to_function(&matrix.inv()).expect("same rank")
            }
        }
    }

    fn key(&self, a: &WreathElement) -> Key {
        a.key.clone()
    }

    fn contains(&self, a: &WreathElement) -> bool {
        a.group() == *self
    }

    fn is_identity(&self, a: &WreathElement) -> bool {
        a.is_trivial()
    }

    fn fmt_elem(&self, a: &WreathElement, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
}

/// `[[b, 0], [Σ t_i d_i, 1]] ↦ (x ↦ (coeff of x in d_1, …, d_m), b)`.
pub fn matrix_to_function(p: &SplitMatrix<WreathGroup>) -> Result<WreathElement> {
    let lower = *p.base();
    if p.rank() != lower.m {
        return Err(Error::LengthMismatch(p.rank(), lower.m));
    }
    let group = WreathGroup::new(lower.m, lower.level + 1);
    let mut points: BTreeMap<Key, (WreathElement, Vec<BigInt>)> = BTreeMap::new();
    for (i, d) in p.coords().iter().enumerate() {
        for (x, c) in d.iter() {
            let entry = points
                .entry(x.key.clone())
                .or_insert_with(|| (x.clone(), vec![BigInt::zero(); lower.m]));
            entry.1[i] = c.clone();
        }
    }
    group.function(p.top().clone(), points.into_values())
}

pub fn function_to_matrix(w: &WreathElement) -> Result<SplitMatrix<WreathGroup>> {
    let WBody::Function { top, base } = &w.body else {
        return Err(Error::mismatch("level-0 elements have no matrix form"));
    };
    let lower = top.group();
    let mut coords = vec![RingElement::zero(lower); w.m];
    for (k, (x, v)) in base {
        for (i, c) in v.iter().enumerate() {
            coords[i].add_keyed(k.clone(), x.clone(), c.clone());
        }
    }
    SplitMatrix::from_parts(lower, (**top).clone(), coords)
}

/// The embedding `S(m, n) → W(m, n − 1)`, converting every Magnus level to
/// function form. `S(m, 0)` goes to the identity of `W(m, 0)`.
pub fn embed_free_solvable(e: &SolvableElement) -> WreathElement {
    let m = e.rank();
    match e.class() {
        0 => WreathGroup::new(m, 0).identity(),
        1 => WreathGroup::new(m, 0).vector(e.exponents().unwrap().to_vec()),
        n => {
            let p = e.matrix().unwrap();
            let lower = WreathGroup::new(m, n - 2);
            let top = embed_free_solvable(p.top());
            let coords = p.coords().iter().map(|d| d.map_group(lower, embed_free_solvable)).collect();
            let q = SplitMatrix::from_parts(lower, top, coords).expect("embedding preserves levels");
            matrix_to_function(&q).expect("rank m")
        }
    }
}

/// The lamplighter-style generators `(δ_e ↦ e_1, 1)` and `(0, e_1)` of `Z ≀ Z = W(1, 1)`.
pub fn z_wr_z_generators() -> [WreathElement; 2] {
    let g = WreathGroup::new(1, 1);
    let t = g.lift(&WreathGroup::new(1, 0).vector(vec![1])).unwrap();
    [g.base_generator(0), t]
}
