//! Declarative regions of `K^(m+n)` and digit cylinders on the shells.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{Exponent, LaurentNum};
use crate::dynamics::Weights;

use super::norm::{level, table_at, DigitTable, Side};
use super::DiophantineError;

/// A clopen subset of the unit shell, described by leading digits of the normalized
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cylinder {
    Full,
    Empty,
    Digits {
        side: Side,
        depth: u32,
        allowed: BTreeSet<DigitTable>,
    },
}

impl Cylinder {
    /// A depth-`depth` cylinder allowing exactly `tables`.
    pub fn digits(side: Side, depth: u32, tables: impl IntoIterator<Item = DigitTable>) -> Self {
        Cylinder::Digits {
            side,
            depth,
            allowed: tables.into_iter().collect(),
        }
    }

    /// Whether the direction of the nonzero vector `x` (on `side`) lies in the cylinder.
    /// The zero vector has no direction and is never contained.
    pub fn contains(&self, side: Side, w: &Weights, x: &[LaurentNum]) -> bool {
        let Some(k) = level(x, side.weights(w)) else {
            return false;
        };
        match self {
            Cylinder::Full => true,
            Cylinder::Empty => false,
            Cylinder::Digits { side: s, depth, allowed } => {
                debug_assert_eq!(*s, side, "cylinder used on the wrong block");
                let top = k.ceil().to_integer();
                allowed.contains(&table_at(x, side.weights(w), top, *depth))
            }
        }
    }

    /// Checks the tables fit the block shape and field.
    pub fn validate(&self, side: Side, w: &Weights, q: u32) -> Result<(), DiophantineError> {
        if let Cylinder::Digits { side: s, depth, allowed } = self {
            let coords = side.weights(w).len();
            let ok = *s == side
                && allowed.iter().all(|t| {
                    t.len() == coords
                        && t.iter().all(|c| c.len() == *depth as usize && c.iter().all(|&d| d < q))
                });
            if !ok {
                return Err(DiophantineError::Parse(format!(
                    "cylinder {self} does not fit side {} of {w} over F_{q}",
                    side.name()
                )));
            }
        }
        Ok(())
    }

    /// The depth-1 cylinders on a one-coordinate block, one per nonzero leading digit.
    pub fn leading_digit_partition(side: Side, q: u32) -> Vec<Cylinder> {
        (1..q).map(|d| Cylinder::digits(side, 1, [vec![vec![d]]])).collect()
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cylinder::Full => f.write_str("full"),
            Cylinder::Empty => f.write_str("empty"),
            Cylinder::Digits { side, depth, allowed } => {
                let tables: Vec<String> = allowed
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(":"))
                            .collect::<Vec<_>>()
                            .join("/")
                    })
                    .collect();
                write!(f, "side={},depth={depth},allow=[{}]", side.name(), tables.join(","))
            }
        }
    }
}

impl FromStr for Cylinder {
    type Err = DiophantineError;

    /// `full`, `empty`, or `side=beta,depth=1,allow=[1,2]`. A table lists coordinates
    /// separated by `/`, each as `depth` digits separated by `:`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DiophantineError::Parse(format!("bad cylinder {s:?}"));
        match s {
            "full" => return Ok(Cylinder::Full),
            "empty" => return Ok(Cylinder::Empty),
            _ => {}
        }
        let (head, list) = s.split_once("allow=[").ok_or_else(bad)?;
        let list = list.strip_suffix(']').ok_or_else(bad)?;
        let mut side = None;
        let mut depth = None;
        for kv in head.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match kv.split_once('=').ok_or_else(bad)? {
                ("side", "alpha") => side = Some(Side::Alpha),
                ("side", "beta") => side = Some(Side::Beta),
                ("depth", d) => depth = Some(d.parse::<u32>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let (side, depth) = (side.ok_or_else(bad)?, depth.ok_or_else(bad)?);
        let mut allowed = BTreeSet::new();
        for table in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let t: DigitTable = table
                .split('/')
                .map(|c| {
                    let digits: Vec<u32> = if c.contains(':') || depth == 1 {
                        c.split(':').map(|d| d.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
                    } else {
                        // compact form for single-character digits, e.g. "10" for depth 2
                        c.chars().map(|ch| ch.to_digit(10).ok_or_else(bad)).collect::<Result<_, _>>()?
                    };
                    if digits.len() != depth as usize {
                        return Err(bad());
                    }
                    Ok(digits)
                })
                .collect::<Result<_, _>>()?;
            allowed.insert(t);
        }
        Ok(Cylinder::Digits { side, depth, allowed })
    }
}

/// The regions whose lattice points are counted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RegionSpec {
    /// `1 <= ||y|| <= q^T`, `||x|| ||y|| < q^R`.
    E { t: u32, r: i64 },
    /// `1 <= ||x|| <= q^S`, `||x|| ||y|| < q^R`.
    F { s: u32, r: i64 },
    /// Open sup-norm ball `||v|| < q^r`.
    Ball { r: i64 },
    /// `E` with `x != 0` and both directions restricted to cylinders.
    EDir { t: u32, r: i64, c1: Cylinder, c2: Cylinder },
}

fn sum_below(kx: Option<Exponent>, ky: Option<Exponent>, r: i64) -> bool {
    match (kx, ky) {
        (Some(a), Some(b)) => a + b < Exponent::from_integer(r),
        _ => true,
    }
}

fn in_levels(k: Option<Exponent>, top: u32) -> bool {
    k.is_some_and(|k| k >= Exponent::from_integer(0) && k <= Exponent::from_integer(top as i64))
}

impl RegionSpec {
    pub fn contains(&self, w: &Weights, v: &[LaurentNum]) -> bool {
        debug_assert_eq!(v.len(), w.d());
        let (x, y) = v.split_at(w.m());
        match self {
            RegionSpec::Ball { r } => v.iter().all(|c| c.top_degree().is_none_or(|d| d < *r)),
            RegionSpec::E { t, r } => {
                let ky = level(y, w.beta());
                in_levels(ky, *t) && sum_below(level(x, w.alpha()), ky, *r)
            }
            RegionSpec::F { s, r } => {
                let kx = level(x, w.alpha());
                in_levels(kx, *s) && sum_below(kx, level(y, w.beta()), *r)
            }
            RegionSpec::EDir { t, r, c1, c2 } => {
                let ky = level(y, w.beta());
                let kx = level(x, w.alpha());
                kx.is_some()
                    && in_levels(ky, *t)
                    && sum_below(kx, ky, *r)
                    && c1.contains(Side::Alpha, w, x)
                    && c2.contains(Side::Beta, w, y)
            }
        }
    }

    /// Per coordinate, the largest degree any point of the region can have.
    pub fn top_degrees(&self, w: &Weights) -> Vec<i64> {
        // ||x|| < q^(R - k) with k >= 0 forces deg x_i < R a_i
        let strict = |r: i64, a: u32| r * a as i64 - 1;
        let upto = |t: u32, a: u32| t as i64 * a as i64;
        match self {
            RegionSpec::Ball { r } => vec![r - 1; w.d()],
            RegionSpec::E { t, r } | RegionSpec::EDir { t, r, .. } => w
                .alpha()
                .iter()
                .map(|&a| strict(*r, a))
                .chain(w.beta().iter().map(|&b| upto(*t, b)))
                .collect(),
            RegionSpec::F { s, r } => w
                .alpha()
                .iter()
                .map(|&a| upto(*s, a))
                .chain(w.beta().iter().map(|&b| strict(*r, b)))
                .collect(),
        }
    }

    pub fn validate(&self, w: &Weights, q: u32) -> Result<(), DiophantineError> {
        if let RegionSpec::EDir { c1, c2, .. } = self {
            c1.validate(Side::Alpha, w, q)?;
            c2.validate(Side::Beta, w, q)?;
        }
        Ok(())
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::E { t, r } => write!(f, "E:T={t},R={r}"),
            RegionSpec::F { s, r } => write!(f, "F:S={s},R={r}"),
            RegionSpec::Ball { r } => write!(f, "ball:r={r}"),
            RegionSpec::EDir { t, r, c1, c2 } => write!(f, "EDir:T={t},R={r};C1={c1};C2={c2}"),
        }
    }
}

impl FromStr for RegionSpec {
    type Err = DiophantineError;

    /// `E:T=12,R=0`, `F:S=8,R=0`, `ball:r=3`, `EDir:T=4,R=1;C1=<cylinder>;C2=<cylinder>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DiophantineError::Parse(format!("bad region {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut parts = rest.split(';');
        let params = parts.next().unwrap_or("");
        let get = |key: &str| -> Result<i64, DiophantineError> {
            params
                .split(',')
                .filter_map(|kv| kv.split_once('='))
                .find(|(k, _)| k.trim() == key)
                .ok_or_else(bad)?
                .1
                .trim()
                .parse()
                .map_err(|_| bad())
        };
        let nonneg = |v: i64| u32::try_from(v).map_err(|_| bad());
        let region = match kind.trim().to_ascii_lowercase().as_str() {
            "e" => RegionSpec::E { t: nonneg(get("T")?)?, r: get("R")? },
            "f" => RegionSpec::F { s: nonneg(get("S")?)?, r: get("R")? },
            "ball" => RegionSpec::Ball { r: get("r")? },
            "edir" => {
                let mut c1 = Cylinder::Full;
                let mut c2 = Cylinder::Full;
                for part in parts.by_ref() {
                    match part.trim().split_once('=').ok_or_else(bad)? {
                        ("C1", c) => c1 = c.parse()?,
                        ("C2", c) => c2 = c.parse()?,
                        _ => return Err(bad()),
                    }
                }
                RegionSpec::EDir { t: nonneg(get("T")?)?, r: get("R")?, c1, c2 }
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(region)
    }
}
