use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fq, FqElem};
use super::parse::{format_terms, parse_terms};
use super::AlgebraError;

/// A polynomial in `F_q[t]`. `coeffs[i]` is the coefficient of `t^i`; the vector never
/// ends in a zero, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    field: Fq,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn zero(field: Fq) -> Self {
        FqPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Fq) -> Self {
        Self::constant(field, FqElem::ONE)
    }

    pub fn constant(field: Fq, c: FqElem) -> Self {
        Self::from_elems(field, vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(field: Fq, c: FqElem, deg: usize) -> Self {
        let mut coeffs = vec![FqElem::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::from_elems(field, coeffs)
    }

    /// Builds from integer coefficients (lowest degree first), reducing mod q.
    pub fn from_coeffs(field: Fq, coeffs: &[i64]) -> Self {
        Self::from_elems(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn from_elems(field: Fq, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    pub fn parse(field: Fq, text: &str) -> Result<Self, AlgebraError> {
        let terms = parse_terms(text)?;
        let top = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        if terms.iter().any(|&(e, _)| e < 0) {
            return Err(AlgebraError::Parse(text.to_string()));
        }
        let mut coeffs = vec![FqElem::ZERO; top as usize + 1];
        for (e, c) in terms {
            let slot = &mut coeffs[e as usize];
            *slot = field.add(*slot, field.elem(c));
        }
        Ok(Self::from_elems(field, coeffs))
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = self.field;
        Self::from_elems(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly {
            field: self.field,
            coeffs,
        }
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading_coeff()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Euclidean division: `self = quot * g + rem` with `deg rem < deg g`.
    pub fn divrem(&self, g: &FqPoly) -> Result<(FqPoly, FqPoly), AlgebraError> {
        let dg = g.degree().ok_or(AlgebraError::DivisionByZero)?;
        let f = self.field;
        let inv_lead = f.inv(g.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let mut quot = vec![FqElem::ZERO; rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dg], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &gc) in g.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, gc));
            }
        }
        rem.truncate(dg);
        Ok((FqPoly::from_elems(f, quot), FqPoly::from_elems(f, rem)))
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is rejected.
    pub fn gcd(&self, g: &FqPoly) -> Result<FqPoly, AlgebraError> {
        if self.is_zero() && g.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut a = self.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Exact division, failing when `g` does not divide `self`.
    pub fn div_exact(&self, g: &FqPoly) -> Result<FqPoly, AlgebraError> {
        let (quot, rem) = self.divrem(g)?;
        if !rem.is_zero() {
            return Err(AlgebraError::Inexact);
        }
        Ok(quot)
    }

    fn zip_with(&self, other: &FqPoly, op: impl Fn(FqElem, FqElem) -> FqElem) -> FqPoly {
        debug_assert_eq!(self.field, other.field);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| op(self.coeff(i), other.coeff(i))).collect();
        FqPoly::from_elems(self.field, coeffs)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.value()));
        f.write_str(&format_terms(terms))
    }
}

impl Add for &FqPoly {
    type Output = FqPoly;
    fn add(self, rhs: &FqPoly) -> FqPoly {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &FqPoly {
    type Output = FqPoly;
    fn sub(self, rhs: &FqPoly) -> FqPoly {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = self.field;
        FqPoly::from_elems(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}

impl Mul for &FqPoly {
    type Output = FqPoly;
    fn mul(self, rhs: &FqPoly) -> FqPoly {
        debug_assert_eq!(self.field, rhs.field);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(f);
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
        FqPoly::from_elems(f, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FqPoly {
            type Output = FqPoly;
            fn $m(self, rhs: FqPoly) -> FqPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::new(2).unwrap()
    }

    fn p(field: Fq, s: &str) -> FqPoly {
        FqPoly::parse(field, s).unwrap()
    }

    #[test]
    fn characteristic_two_square() {
        let f = f2();
        assert_eq!(&p(f, "t+1") * &p(f, "t+1"), p(f, "t^2+1"));
    }

    #[test]
    fn long_division() {
        let f = f2();
        let (q, r) = p(f, "t^2+1").divrem(&p(f, "t")).unwrap();
        assert_eq!(q, p(f, "t"));
        assert_eq!(r, p(f, "1"));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = f2();
        assert_eq!(p(f, "t^2+t").gcd(&p(f, "t+1")).unwrap(), p(f, "t+1"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f2();
        assert_eq!(
            p(f, "t").divrem(&FqPoly::zero(f)),
            Err(AlgebraError::DivisionByZero)
        );
        assert!(FqPoly::zero(f).gcd(&FqPoly::zero(f)).is_err());
    }

    #[test]
    fn zero_has_no_degree() {
        let f = f2();
        assert_eq!(FqPoly::zero(f).degree(), None);
        assert_eq!(p(f, "t^3+t^3").degree(), None);
        assert_eq!(FqPoly::zero(f).to_string(), "0");
    }

    #[test]
    fn display_round_trips() {
        let f = Fq::new(5).unwrap();
        let a = p(f, "3*t^4+t^2+4t+2");
        assert_eq!(a.to_string(), "3*t^4+t^2+4*t+2");
        assert_eq!(p(f, &a.to_string()), a);
        assert!(FqPoly::parse(f, "t^-1").is_err());
    }
}
