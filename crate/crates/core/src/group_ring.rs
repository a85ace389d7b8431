//! The integral group ring `ZB` over an arbitrary group `B`.
//!
//! Elements are finitely supported maps from group elements to unbounded
//! integers, stored under the canonical key of each element so iteration,
//! printing and equality follow the canonical order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Group, Key};

#[derive(Clone, Debug)]
struct Term<E> {
    elem: E,
    coeff: BigInt,
}

#[derive(Clone, Debug)]
pub struct RingElement<G: Group> {
    group: G,
    terms: BTreeMap<Key, Term<G::Elem>>,
}

impl<G: Group> RingElement<G> {
    pub fn zero(group: G) -> Self {
        RingElement { group, terms: BTreeMap::new() }
    }

    pub fn one(group: G) -> Self {
        let e = group.identity();
        Self::monomial(group, e, BigInt::one())
    }

    pub fn monomial(group: G, elem: G::Elem, coeff: impl Into<BigInt>) -> Self {
        let mut r = Self::zero(group);
        r.add_term(elem, coeff.into());
        r
    }

    /// `Σ c·g` for the given pairs; repeated elements are merged.
    pub fn from_terms<I, C>(group: G, terms: I) -> Self
    where
        I: IntoIterator<Item = (G::Elem, C)>,
        C: Into<BigInt>,
    {
        let mut r = Self::zero(group);
        for (g, c) in terms {
            r.add_term(g, c.into());
        }
        r
    }

    /// The fundamental-ideal element `g − 1`.
    pub fn minus_one(group: G, elem: G::Elem) -> Self {
        let e = group.identity();
        Self::from_terms(group, [(elem, BigInt::one()), (e, -BigInt::one())])
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of support elements.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn iter(&self) -> impl Iterator<Item = (&G::Elem, &BigInt)> + '_ {
        self.terms.values().map(|t| (&t.elem, &t.coeff))
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, elem: &G::Elem) -> BigInt {
        self.terms
            .get(&self.group.key(elem))
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, elem: G::Elem, coeff: BigInt) {
        let key = self.group.key(&elem);
        self.add_keyed(key, elem, coeff);
    }

    pub(crate) fn add_keyed(&mut self, key: Key, elem: G::Elem, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(Term { elem, coeff });
            }
            Entry::Occupied(mut o) => {
                o.get_mut().coeff += coeff;
                if o.get().coeff.is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::mismatch(format!(
                "ring elements over {:?} and {:?}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let (mut big, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (k, t) in &small.terms {
            big.add_keyed(k.clone(), t.elem.clone(), t.coeff.clone());
        }
        big
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (k, t) in &other.terms {
            self.add_keyed(k.clone(), t.elem.clone(), t.coeff.clone());
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.group.clone());
        }
        let mut r = self.clone();
        for t in r.terms.values_mut() {
            t.coeff *= c;
        }
        r
    }

    /// Convolution product; the group multiplication order is preserved.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = Self::zero(self.group.clone());
        for a in self.terms.values() {
            for b in other.terms.values() {
                let g = self.group.mul(&a.elem, &b.elem);
                r.add_term(g, &a.coeff * &b.coeff);
            }
        }
        Ok(r)
    }

    /// Right translation: every support element `h` becomes `h·g`.
    pub fn translate(&self, g: &G::Elem) -> Result<Self> {
        if !self.group.contains(g) {
            return Err(Error::mismatch(format!("{g:?} is not in {:?}", self.group)));
        }
        Ok(self.translate_unchecked(g))
    }

    pub(crate) fn translate_unchecked(&self, g: &G::Elem) -> Self {
        if self.group.is_identity(g) {
            return self.clone();
        }
        let mut r = Self::zero(self.group.clone());
        for t in self.terms.values() {
            let h = self.group.mul(&t.elem, g);
            let key = self.group.key(&h);
            r.terms.insert(key, Term { elem: h, coeff: t.coeff.clone() });
        }
        r
    }

    /// Left translation `h ↦ g·h`.
    pub fn left_translate(&self, g: &G::Elem) -> Result<Self> {
        if !self.group.contains(g) {
            return Err(Error::mismatch(format!("{g:?} is not in {:?}", self.group)));
        }
        let mut r = Self::zero(self.group.clone());
        for t in self.terms.values() {
            let h = self.group.mul(g, &t.elem);
            let key = self.group.key(&h);
            r.terms.insert(key, Term { elem: h, coeff: t.coeff.clone() });
        }
        Ok(r)
    }

    /// Sum of coefficients: the augmentation homomorphism `ZB → Z`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().map(|t| &t.coeff).sum()
    }

    /// Whether the element lies in the fundamental ideal `(B − 1)·ZB`.
    pub fn in_fundamental_ideal(&self) -> bool {
        self.augmentation().is_zero()
    }

    /// Writes `u − ε(u)·1` as `Σ c_g (g − 1)`, returning the pairs `(g, c_g)`.
    pub fn fundamental_ideal_decomposition(&self) -> Vec<(G::Elem, BigInt)> {
        self.terms
            .values()
            .filter(|t| !self.group.is_identity(&t.elem))
            .map(|t| (t.elem.clone(), t.coeff.clone()))
            .collect()
    }

    /// Replaces every support element by its image under `f` into another group.
    pub fn map_group<H: Group>(&self, target: H, f: impl Fn(&G::Elem) -> H::Elem) -> RingElement<H> {
        let mut r = RingElement::zero(target);
        for t in self.terms.values() {
            r.add_term(f(&t.elem), t.coeff.clone());
        }
        r
    }

    /// Canonical bytes: sorted `(key, coefficient)` pairs.
    pub fn canonical_bytes(&self, buf: &mut Vec<u8>) {
        crate::group::push_len(buf, self.terms.len());
        for (k, t) in &self.terms {
            crate::group::push_bytes(buf, k);
            crate::group::push_bigint(buf, &t.coeff);
        }
    }

    /// JSON list of `{coeff, element}` in canonical order.
    pub fn to_json_with(&self, elem: impl Fn(&G::Elem) -> Value) -> Value {
        Value::Array(
            self.terms
                .values()
                .map(|t| json!({ "coeff": bigint_to_json(&t.coeff), "element": elem(&t.elem) }))
                .collect(),
        )
    }

    pub fn from_json_with(
        group: G,
        value: &Value,
        elem: impl Fn(&Value) -> Result<G::Elem>,
    ) -> Result<Self> {
        let arr = value.as_array().ok_or_else(|| Error::json("ring element must be an array"))?;
        let mut r = Self::zero(group);
        for item in arr {
            let c = bigint_from_json(item.get("coeff").ok_or_else(|| Error::json("missing coeff"))?)?;
            let g = elem(item.get("element").ok_or_else(|| Error::json("missing element"))?)?;
            if !r.group.contains(&g) {
                return Err(Error::mismatch("element outside the ring's group"));
            }
            r.add_term(g, c);
        }
        Ok(r)
    }
}

impl<G: Group> PartialEq for RingElement<G> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, ta), (kb, tb))| ka == kb && ta.coeff == tb.coeff)
    }
}

impl<G: Group> Eq for RingElement<G> {}

/// Prints `c1*g1 + c2*g2 + ...` in canonical order; zero prints as `0`.
impl<G: Group> fmt::Display for RingElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.values().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*", t.coeff)?;
            self.group.fmt_elem(&t.elem, f)?;
        }
        Ok(())
    }
}

pub(crate) fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_string().parse::<serde_json::Number>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::json("expected an integer")),
    };
    s.parse().map_err(|_| Error::json(format!("bad integer {s}")))
}
