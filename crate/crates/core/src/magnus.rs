//! Matrix splittings `[[B, 0], [D, 1]]` over a base group `B` with a module
//! row in the free right `ZB`-module on `t_1, …, t_m`.
//!
//! Multiplication follows the right-module convention
//! `[[b1,0],[d1,1]]·[[b2,0],[d2,1]] = [[b1 b2, 0],[d1 b2 + d2, 1]]`, which is
//! the product rule `d(uv) = d(u)·v̄ + d(v)` for the row.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{push_bytes, Group, MarkedGroup};
use crate::group_ring::RingElement;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct SplitMatrix<G: Group> {
    base: G,
    top: G::Elem,
    coords: Vec<RingElement<G>>,
}

/// One generator of the module `D(A)`: the row `d(a)` together with `ā`.
pub type ModuleGenerator<G> = (Vec<RingElement<G>>, <G as Group>::Elem);

impl<G: Group> SplitMatrix<G> {
    pub fn identity(base: G, m: usize) -> Self {
        let coords = vec![RingElement::zero(base.clone()); m];
        SplitMatrix { top: base.identity(), base, coords }
    }

    pub fn from_parts(base: G, top: G::Elem, coords: Vec<RingElement<G>>) -> Result<Self> {
        if !base.contains(&top) {
            return Err(Error::mismatch("top element outside the base group"));
        }
        if coords.iter().any(|c| c.group() != &base) {
            return Err(Error::mismatch("module coordinate over a different group"));
        }
        Ok(SplitMatrix { base, top, coords })
    }

    pub fn base(&self) -> &G {
        &self.base
    }

    pub fn top(&self) -> &G::Elem {
        &self.top
    }

    pub fn coords(&self) -> &[RingElement<G>] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn into_parts(self) -> (G::Elem, Vec<RingElement<G>>) {
        (self.top, self.coords)
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_identity(&self.top) && self.coords.iter().all(RingElement::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.base != other.base || self.rank() != other.rank() {
            return Err(Error::mismatch(format!(
                "split matrices over {:?} (m = {}) and {:?} (m = {})",
                self.base,
                self.rank(),
                other.base,
                other.rank()
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let top = self.base.mul(&self.top, &other.top);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(d1, d2)| {
                let mut d = d1.translate_unchecked(&other.top);
                d.add_assign_unchecked(d2);
                d
            })
            .collect();
        SplitMatrix { base: self.base.clone(), top, coords }
    }

    /// `[[b⁻¹, 0], [−d·b⁻¹, 1]]`
    pub fn inv(&self) -> Self {
        let top = self.base.inv(&self.top);
        let coords = self.coords.iter().map(|d| d.translate_unchecked(&top).neg()).collect();
        SplitMatrix { base: self.base.clone(), top, coords }
    }

    pub fn canonical_bytes(&self, buf: &mut Vec<u8>) {
        push_bytes(buf, &self.base.key(&self.top));
        for c in &self.coords {
            c.canonical_bytes(buf);
        }
    }

    /// `{top, coords}` with elements rendered by `elem`.
    pub fn to_json_with(&self, elem: impl Fn(&G::Elem) -> Value + Copy) -> Value {
        json!({
            "top": elem(&self.top),
            "coords": self.coords.iter().map(|c| c.to_json_with(elem)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_with(
        base: G,
        m: usize,
        value: &Value,
        elem: impl Fn(&Value) -> Result<G::Elem> + Copy,
    ) -> Result<Self> {
        let top = elem(value.get("top").ok_or_else(|| Error::json("missing top"))?)?;
        let coords = value
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::json("missing coords"))?;
        if coords.len() != m {
            return Err(Error::LengthMismatch(coords.len(), m));
        }
        let coords = coords
            .iter()
            .map(|c| RingElement::from_json_with(base.clone(), c, elem))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(base, top, coords)
    }
}

impl<G: MarkedGroup> SplitMatrix<G> {
    /// The Magnus image `[[b_i, 0], [t_i, 1]]` of `x_i`, or its inverse.
    pub fn generator(base: G, letter: Letter) -> Result<Self> {
        let m = base.rank();
        if letter.gen >= m {
            return Err(Error::GeneratorOutOfRange { index: letter.gen + 1, rank: m });
        }
        let mut coords = vec![RingElement::zero(base.clone()); m];
        coords[letter.gen] = RingElement::one(base.clone());
        let g = SplitMatrix { top: base.generator(letter.gen), base, coords };
        Ok(if letter.inverse { g.inv() } else { g })
    }

    /// The Magnus homomorphism applied to `w`, letter by letter from the left.
    /// The coordinates are the Fox derivatives of `w` evaluated in `ZB`.
    pub fn eval_word(word: &Word, base: &G) -> Result<Self> {
        let m = base.rank();
        let mut gens: Vec<[Option<Self>; 2]> = vec![[None, None]; m];
        let mut acc = Self::identity(base.clone(), m);
        for &l in word.letters() {
            if l.gen >= m {
                return Err(Error::GeneratorOutOfRange { index: l.gen + 1, rank: m });
            }
            let slot = &mut gens[l.gen][l.inverse as usize];
            if slot.is_none() {
                *slot = Some(Self::generator(base.clone(), l)?);
            }
            acc = acc.mul_unchecked(slot.as_ref().unwrap());
        }
        Ok(acc)
    }

    /// `σ(d) = Σ_i (b_i − 1)·d_i`, landing in the fundamental ideal.
    pub fn sigma(&self) -> RingElement<G> {
        let mut out = RingElement::zero(self.base.clone());
        for (i, d) in self.coords.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let bi = self.base.generator(i);
            out.add_assign_unchecked(&d.left_translate(&bi).expect("generator lies in the base"));
            out.add_assign_unchecked(&d.neg());
        }
        out
    }
}

/// For each generator word `a_j` of a subgroup `A`, the row `d(a_j)` and the
/// image `ā_j`. The rows generate the `ZĀ`-module `D(A)` of the induced
/// splitting of `A`.
pub fn restricted_module_generators<G: MarkedGroup>(
    generators: &[Word],
    base: &G,
) -> Result<Vec<ModuleGenerator<G>>> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    generators
        .iter()
        .map(|w| {
            let (top, coords) = SplitMatrix::eval_word(w, base)?.into_parts();
            Ok((coords, top))
        })
        .collect()
}

/// The image `w̄ − 1` of the fundamental identity for a word.
pub fn bar_minus_one<G: MarkedGroup>(word: &Word, base: &G) -> Result<RingElement<G>> {
    let mut g = base.identity();
    for l in word.letters() {
        if l.gen >= base.rank() {
            return Err(Error::GeneratorOutOfRange { index: l.gen + 1, rank: base.rank() });
        }
        let b = base.generator(l.gen);
        g = base.mul(&g, &if l.inverse { base.inv(&b) } else { b });
    }
    let one = base.identity();
    Ok(RingElement::from_terms(base.clone(), [(g, BigInt::one()), (one, -BigInt::one())]))
}

impl<G: Group> PartialEq for SplitMatrix<G> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.base.key(&self.top) == other.base.key(&other.top)
            && self.coords == other.coords
    }
}

impl<G: Group> Eq for SplitMatrix<G> {}

impl<G: Group> fmt::Display for SplitMatrix<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        self.base.fmt_elem(&self.top, f)?;
        f.write_str(" | ")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_solvable::FreeSolvable;

    fn z2() -> FreeSolvable {
        FreeSolvable::new(2, 1)
    }

    fn ring(terms: &[([i64; 2], i64)]) -> RingElement<FreeSolvable> {
        let g = z2();
        RingElement::from_terms(g, terms.iter().map(|&(e, c)| (g.abelian(e.to_vec()), c)))
    }

    fn eval(s: &str) -> SplitMatrix<FreeSolvable> {
        SplitMatrix::eval_word(&s.parse().unwrap(), &z2()).unwrap()
    }

    #[test]
    fn product_of_generators() {
        let p = eval("x1").mul(&eval("x2")).unwrap();
        assert_eq!(p.top(), &z2().abelian(vec![1, 1]));
        assert_eq!(p.coords(), &[ring(&[([0, 1], 1)]), ring(&[([0, 0], 1)])]);
        assert_eq!(p, eval("x1 x2"));
    }

    #[test]
    fn inverse_of_generator() {
        let p = eval("x1").inv();
        assert_eq!(p.top(), &z2().abelian(vec![-1, 0]));
        assert_eq!(p.coords(), &[ring(&[([-1, 0], -1)]), ring(&[])]);
        assert!(SplitMatrix::identity(z2(), 2).inv().is_identity());
    }

    #[test]
    fn commutator_row() {
        let c = eval("[x1,x2]");
        assert!(z2().is_identity(c.top()));
        assert_eq!(c.coords(), &[ring(&[([0, 1], 1), ([0, 0], -1)]), ring(&[([0, 0], 1), ([1, 0], -1)])]);
        assert!(c.sigma().is_zero());
    }

    #[test]
    fn empty_and_cancelling_words() {
        assert!(eval("").is_identity());
        assert!(eval("x1 X1").is_identity());
        assert!(SplitMatrix::identity(z2(), 2).sigma().is_zero());
        assert_eq!(eval("x1").sigma(), ring(&[([1, 0], 1), ([0, 0], -1)]));
    }

    #[test]
    fn generator_out_of_range() {
        let err = SplitMatrix::eval_word(&"x3".parse().unwrap(), &z2()).unwrap_err();
        assert_eq!(err, Error::GeneratorOutOfRange { index: 3, rank: 2 });
    }

    #[test]
    fn module_generators() {
        let words: Vec<Word> = ["x1", "x2"].iter().map(|s| s.parse().unwrap()).collect();
        let rows = restricted_module_generators(&words, &z2()).unwrap();
        assert_eq!(rows[0].0, vec![ring(&[([0, 0], 1)]), ring(&[])]);
        assert_eq!(rows[1].1, z2().abelian(vec![0, 1]));

        let sq = restricted_module_generators(&["x1^2".parse().unwrap()], &z2()).unwrap();
        assert_eq!(sq[0].0, vec![ring(&[([0, 0], 1), ([1, 0], 1)]), ring(&[])]);
        assert_eq!(sq[0].1, z2().abelian(vec![2, 0]));

        let c = restricted_module_generators(&["[x1,x2]".parse().unwrap()], &z2()).unwrap();
        assert_eq!(c[0].0, eval("[x1,x2]").coords().to_vec());
        assert!(restricted_module_generators(&[], &z2()).is_err());
    }

    #[test]
    fn mismatched_rank() {
        let a = SplitMatrix::identity(z2(), 2);
        let b = SplitMatrix::identity(FreeSolvable::new(3, 1), 3);
        let c = SplitMatrix::identity(z2(), 1);
        assert!(a.mul(&c).is_err());
        let _ = b;
    }
}
