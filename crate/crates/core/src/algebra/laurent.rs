use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fq, FqElem};
use super::lognorm::LogNorm;
use super::parse::{format_terms, parse_terms};
use super::poly::FqPoly;
use super::AlgebraError;

/// An element of `F_q((1/t))` with finitely many nonzero coefficients.
///
/// `coeffs[i]` is the coefficient of `t^(lo + i)`. The canonical form has a nonzero
/// first and last coefficient; zero is the empty vector with `lo = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentNum {
    field: Fq,
    lo: i64,
    coeffs: Vec<FqElem>,
}

impl LaurentNum {
    pub fn zero(field: Fq) -> Self {
        LaurentNum {
            field,
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Fq) -> Self {
        Self::monomial(field, FqElem::ONE, 0)
    }

    /// `c * t^e`
    pub fn monomial(field: Fq, c: FqElem, e: i64) -> Self {
        Self::from_window(field, e, vec![c])
    }

    /// Builds `sum coeffs[i] * t^(lo + i)` and canonicalizes.
    pub fn from_window(field: Fq, lo: i64, coeffs: Vec<FqElem>) -> Self {
        let mut x = LaurentNum { field, lo, coeffs };
        x.normalize();
        x
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(field: Fq, terms: &[(i64, i64)]) -> Self {
        if terms.is_empty() {
            return Self::zero(field);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![FqElem::ZERO; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = field.add(*slot, field.elem(c));
        }
        Self::from_window(field, lo, coeffs)
    }

    pub fn from_poly(p: &FqPoly) -> Self {
        Self::from_window(p.field(), 0, p.coeffs().to_vec())
    }

    pub fn parse(field: Fq, text: &str) -> Result<Self, AlgebraError> {
        Ok(Self::from_terms(field, &parse_terms(text)?))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the highest nonzero term; `None` for zero.
    #[inline]
    pub fn top_degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    /// Exponent of the lowest nonzero term; `None` for zero.
    #[inline]
    pub fn bottom_degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Number of stored fractional digits, i.e. `max(0, -lowest exponent)`.
    pub fn depth(&self) -> u64 {
        self.bottom_degree().map_or(0, |lo| (-lo).max(0) as u64)
    }

    /// Coefficient of `t^e`.
    #[inline]
    pub fn coeff(&self, e: i64) -> FqElem {
        let i = e - self.lo;
        if i < 0 {
            return FqElem::ZERO;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(FqElem::ZERO)
    }

    /// Coefficients of `t^hi, t^(hi-1), ..., t^lo` (highest first).
    pub fn digits_desc(&self, hi: i64, lo: i64) -> Vec<FqElem> {
        if hi < lo {
            return Vec::new();
        }
        (lo..=hi).rev().map(|e| self.coeff(e)).collect()
    }

    /// Nonzero `(exponent, coefficient)` pairs, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    /// `|x| = q^deg(x)` as a log-norm.
    pub fn abs_log(&self) -> LogNorm {
        match self.top_degree() {
            None => LogNorm::Zero,
            Some(d) => LogNorm::from_degree(d),
        }
    }

    /// Multiplication by `t^k` (any sign).
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentNum {
            field: self.field,
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = self.field;
        Self::from_window(f, self.lo, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Splits into the polynomial part (exponents `>= 0`) and the fractional part
    /// (exponents `<= -1`, absolute value `< 1`).
    pub fn split(&self) -> (FqPoly, LaurentNum) {
        let f = self.field;
        if self.is_zero() {
            return (FqPoly::zero(f), self.clone());
        }
        let hi = self.top_degree().unwrap();
        let int_part = if hi >= 0 {
            let coeffs = (0..=hi).map(|e| self.coeff(e)).collect();
            FqPoly::from_elems(f, coeffs)
        } else {
            FqPoly::zero(f)
        };
        let frac_part = if self.lo <= -1 {
            let top = hi.min(-1);
            Self::from_window(f, self.lo, (self.lo..=top).map(|e| self.coeff(e)).collect())
        } else {
            Self::zero(f)
        };
        (int_part, frac_part)
    }

    /// Drops every term with exponent `< min_exp`.
    pub fn truncate_below(&self, min_exp: i64) -> Self {
        if self.is_zero() || self.lo >= min_exp {
            return self.clone();
        }
        let hi = self.top_degree().unwrap();
        if hi < min_exp {
            return Self::zero(self.field);
        }
        Self::from_window(
            self.field,
            min_exp,
            (min_exp..=hi).map(|e| self.coeff(e)).collect(),
        )
    }

    /// Polynomial view, if every exponent is nonnegative.
    pub fn to_poly(&self) -> Option<FqPoly> {
        if self.is_zero() {
            return Some(FqPoly::zero(self.field));
        }
        if self.lo < 0 {
            return None;
        }
        Some(self.split().0)
    }

    pub fn mul_poly(&self, p: &FqPoly) -> Self {
        self * &LaurentNum::from_poly(p)
    }

    fn combine(&self, other: &Self, op: impl Fn(FqElem, FqElem) -> FqElem) -> Self {
        debug_assert_eq!(self.field, other.field);
        if other.is_zero() {
            return Self::from_window(
                self.field,
                self.lo,
                self.coeffs.iter().map(|&a| op(a, FqElem::ZERO)).collect(),
            );
        }
        if self.is_zero() {
            return Self::from_window(
                self.field,
                other.lo,
                other.coeffs.iter().map(|&b| op(FqElem::ZERO, b)).collect(),
            );
        }
        let lo = self.lo.min(other.lo);
        let hi = self.top_degree().unwrap().max(other.top_degree().unwrap());
        let coeffs = (lo..=hi).map(|e| op(self.coeff(e), other.coeff(e))).collect();
        Self::from_window(self.field, lo, coeffs)
    }
}

impl fmt::Display for LaurentNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms().map(|(e, c)| (e, c.value()))))
    }
}

impl Add for &LaurentNum {
    type Output = LaurentNum;
    fn add(self, rhs: &LaurentNum) -> LaurentNum {
        let f = self.field;
        self.combine(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &LaurentNum {
    type Output = LaurentNum;
    fn sub(self, rhs: &LaurentNum) -> LaurentNum {
        let f = self.field;
        self.combine(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &LaurentNum {
    type Output = LaurentNum;
    fn neg(self) -> LaurentNum {
        self.scale(self.field.neg(FqElem::ONE))
    }
}

impl Mul for &LaurentNum {
    type Output = LaurentNum;
    fn mul(self, rhs: &LaurentNum) -> LaurentNum {
        debug_assert_eq!(self.field, rhs.field);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return LaurentNum::zero(f);
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        LaurentNum::from_window(f, self.lo + rhs.lo, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentNum {
            type Output = LaurentNum;
            fn $m(self, rhs: LaurentNum) -> LaurentNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
