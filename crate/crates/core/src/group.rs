//! The interface a group must expose for its integral group ring to be built.

use std::fmt;
use std::sync::Arc;

/// Canonical serialization of a group element. Equal elements have equal keys
/// and byte order on keys is the canonical total order.
pub type Key = Arc<[u8]>;

pub trait Group: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn key(&self, a: &Self::Elem) -> Key;

    /// Whether `a` is an element of this particular group (same rank, class, level).
    fn contains(&self, a: &Self::Elem) -> bool;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.key(a) == self.key(&self.identity())
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a:?}")
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    /// `a^b = b⁻¹ a b`
    fn conjugate(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(b), a), b)
    }
}

/// A group together with a marked generating tuple `b_1, …, b_m`, i.e. a
/// quotient `F_m / N` of the free group.
pub trait MarkedGroup: Group {
    fn rank(&self) -> usize;
    fn generator(&self, index: usize) -> Self::Elem;
}

/// Wraps an element for `Display` through its group.
pub struct Displayed<'a, G: Group>(pub &'a G, pub &'a G::Elem);

impl<G: Group> fmt::Display for Displayed<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_elem(self.1, f)
    }
}

// Byte encoders shared by the canonical keys. Integers are written big-endian
// with the sign bit flipped so that byte order agrees with numeric order.

pub(crate) fn push_i64(buf: &mut Vec<u8>, v: i64) {
    buf.extend_from_slice(&((v as u64) ^ (1 << 63)).to_be_bytes());
}

pub(crate) fn push_len(buf: &mut Vec<u8>, len: usize) {
    buf.extend_from_slice(&(len as u32).to_be_bytes());
}

pub(crate) fn push_bytes(buf: &mut Vec<u8>, bytes: &[u8]) {
    push_len(buf, bytes.len());
    buf.extend_from_slice(bytes);
}

pub(crate) fn push_bigint(buf: &mut Vec<u8>, v: &num_bigint::BigInt) {
    let (sign, mag) = v.to_bytes_be();
    buf.push(match sign {
        num_bigint::Sign::Minus => 0,
        num_bigint::Sign::NoSign => 1,
        num_bigint::Sign::Plus => 2,
    });
    push_bytes(buf, &mag);
}
