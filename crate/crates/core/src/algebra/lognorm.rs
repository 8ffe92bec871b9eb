use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::AlgebraError;

/// Exact rational exponent.
pub type Exponent = Ratio<i64>;

/// A value of an absolute value or quasi-norm: either zero or `q^k` with `k` rational.
///
/// Ordered with `Zero` below every power; multiplication adds exponents and `Zero`
/// absorbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogNorm {
    Zero,
    Exp(Exponent),
}

impl LogNorm {
    pub fn one() -> Self {
        LogNorm::Exp(Exponent::zero())
    }

    pub fn from_degree(d: i64) -> Self {
        LogNorm::Exp(Exponent::from_integer(d))
    }

    pub fn exponent(self) -> Option<Exponent> {
        match self {
            LogNorm::Zero => None,
            LogNorm::Exp(k) => Some(k),
        }
    }

    /// `self^(1/a)` for a positive integer `a`.
    pub fn root(self, a: u32) -> Self {
        match self {
            LogNorm::Zero => LogNorm::Zero,
            LogNorm::Exp(k) => LogNorm::Exp(k / a as i64),
        }
    }

    pub fn inv(self) -> Option<Self> {
        self.exponent().map(|k| LogNorm::Exp(-k))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, LogNorm::Zero)
    }
}

impl Ord for LogNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogNorm::Zero, LogNorm::Zero) => Ordering::Equal,
            (LogNorm::Zero, _) => Ordering::Less,
            (_, LogNorm::Zero) => Ordering::Greater,
            (LogNorm::Exp(a), LogNorm::Exp(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LogNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for LogNorm {
    type Output = LogNorm;
    // norms multiply by adding exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: LogNorm) -> LogNorm {
        match (self, rhs) {
            (LogNorm::Exp(a), LogNorm::Exp(b)) => LogNorm::Exp(a + b),
            _ => LogNorm::Zero,
        }
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::Zero => f.write_str("zero"),
            LogNorm::Exp(k) if k.denom().is_one() => write!(f, "{}", k.numer()),
            LogNorm::Exp(k) => write!(f, "{}/{}", k.numer(), k.denom()),
        }
    }
}

impl FromStr for LogNorm {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "zero" {
            return Ok(LogNorm::Zero);
        }
        let err = || AlgebraError::Parse(s.to_string());
        let k = match s.split_once('/') {
            Some((n, d)) => {
                let d: i64 = d.parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Exponent::new(n.parse().map_err(|_| err())?, d)
            }
            None => Exponent::from_integer(s.parse().map_err(|_| err())?),
        };
        Ok(LogNorm::Exp(k))
    }
}
