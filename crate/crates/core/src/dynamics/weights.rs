use std::fmt;
use std::str::FromStr;

/// Rejected weight vector.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid weights: {0}")]
pub struct InvalidWeights(pub String);

/// Weight vector `a = (a_1..a_m ; a_{m+1}..a_{m+n})` with equal block sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    m: usize,
    a: Vec<u32>,
}

impl Weights {
    pub fn new(m: usize, n: usize, a: Vec<u32>) -> Result<Self, InvalidWeights> {
        if m == 0 || n == 0 {
            return Err(InvalidWeights("both blocks must be nonempty".into()));
        }
        if a.len() != m + n {
            return Err(InvalidWeights(format!("expected {} weights, got {}", m + n, a.len())));
        }
        if a.contains(&0) {
            return Err(InvalidWeights("weights must be positive".into()));
        }
        let (x, y) = a.split_at(m);
        let (sx, sy): (u64, u64) = (x.iter().map(|&v| v as u64).sum(), y.iter().map(|&v| v as u64).sum());
        if sx != sy {
            return Err(InvalidWeights(format!("block sums differ: {sx} != {sy}")));
        }
        Ok(Weights { m, a })
    }

    /// Equal weights `(1..1 ; 1..1)` require `m = n`.
    pub fn uniform(m: usize, n: usize) -> Result<Self, InvalidWeights> {
        Self::new(m, n, vec![1; m + n])
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.len() - self.m
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn all(&self) -> &[u32] {
        &self.a
    }

    /// Weights of the approximating block `x`.
    pub fn alpha(&self) -> &[u32] {
        &self.a[..self.m]
    }

    /// Weights of the denominator block `y`.
    pub fn beta(&self) -> &[u32] {
        &self.a[self.m..]
    }

    /// Common block sum.
    pub fn block_sum(&self) -> u64 {
        self.alpha().iter().map(|&v| v as u64).sum()
    }

    pub fn max_alpha(&self) -> u32 {
        *self.alpha().iter().max().unwrap()
    }

    pub fn max_beta(&self) -> u32 {
        *self.beta().iter().max().unwrap()
    }
}

impl fmt::Display for Weights {
    /// `m:n:a1,...,ad`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "{}:{}:{}", self.m, self.n(), a.join(","))
    }
}

impl FromStr for Weights {
    type Err = InvalidWeights;

    /// Accepts `m:n:a1,...,ad` or the block form `(a1,..;b1,..)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidWeights(format!("cannot parse {s:?}"));
        let list = |t: &str| -> Result<Vec<u32>, InvalidWeights> {
            t.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
        };
        let s = s.trim();
        if let Some(body) = s.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            let (x, y) = body.split_once(';').ok_or_else(bad)?;
            let (x, y) = (list(x)?, list(y)?);
            let m = x.len();
            let n = y.len();
            return Weights::new(m, n, [x, y].concat());
        }
        let mut parts = s.splitn(3, ':');
        let (Some(m), Some(n), Some(a)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        Weights::new(m, n, list(a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let w: Weights = "1:2:2,1,1".parse().unwrap();
        assert_eq!((w.m(), w.n(), w.d()), (1, 2, 3));
        assert_eq!(w, "(2;1,1)".parse().unwrap());
        assert_eq!(w.to_string(), "1:2:2,1,1");
        assert_eq!(w.block_sum(), 2);
    }

    #[test]
    fn rejects_unbalanced_or_malformed() {
        assert!("(1;2)".parse::<Weights>().is_err());
        assert!("1:1:1".parse::<Weights>().is_err());
        assert!("1:1:0,0".parse::<Weights>().is_err());
        assert!("x".parse::<Weights>().is_err());
    }
}
