use std::fmt;

use super::AlgebraError;

/// Largest supported field order. Keeps every product of two residues inside `u32`.
pub const MAX_ORDER: u32 = 1 << 16;

/// The prime field `F_q`.
///
/// Elements are plain residues (`FqElem`); the field value carries the modulus and
/// performs the arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    q: u32,
}

/// A residue `0 <= v < q`. Which field it belongs to is tracked by the container.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    pub fn new(q: u32) -> Result<Self, AlgebraError> {
        if q >= MAX_ORDER || !is_prime(q) {
            return Err(AlgebraError::UnsupportedOrder(q));
        }
        Ok(Fq { q })
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.q
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.q as i64) as u32)
    }

    /// Wraps a value already known to lie in `0..q`.
    #[inline]
    pub fn elem_unchecked(self, v: u32) -> FqElem {
        debug_assert!(v < self.q);
        FqElem(v)
    }

    #[inline]
    pub fn add(self, a: FqElem, b: FqElem) -> FqElem {
        let s = a.0 + b.0;
        FqElem(if s >= self.q { s - self.q } else { s })
    }

    #[inline]
    pub fn sub(self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.q - b.0 })
    }

    #[inline]
    pub fn neg(self, a: FqElem) -> FqElem {
        FqElem(if a.0 == 0 { 0 } else { self.q - a.0 })
    }

    #[inline]
    pub fn mul(self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(a.0 * b.0 % self.q)
    }

    pub fn pow(self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: FqElem) -> Result<FqElem, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 2) as u64))
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}
