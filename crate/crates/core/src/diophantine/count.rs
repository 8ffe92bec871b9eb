//! Exact solution counts `N_R(T, A)` of `||Aq - p||_alpha < q^R / ||q||_beta`,
//! `1 <= ||q||_beta <= q^T`.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{Fq, FqElem, FqPoly, LaurentNum};
use crate::dynamics::Weights;

use super::norm::Side;
use super::region::Cylinder;
use super::DiophantineError;

/// Default cap on the number of candidate denominators scanned.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

/// An `m x n` matrix over `K` together with the number of fractional digits that are
/// known. `precision = None` marks an exact matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxMatrix {
    field: Fq,
    m: usize,
    n: usize,
    entries: Vec<LaurentNum>,
    precision: Option<u32>,
}

impl ApproxMatrix {
    pub fn new(
        field: Fq,
        m: usize,
        n: usize,
        entries: Vec<LaurentNum>,
        precision: Option<u32>,
    ) -> Result<Self, DiophantineError> {
        if entries.len() != m * n {
            return Err(DiophantineError::DimensionMismatch {
                expected: m * n,
                got: entries.len(),
            });
        }
        Ok(ApproxMatrix { field, m, n, entries, precision })
    }

    pub fn zero(field: Fq, m: usize, n: usize) -> Self {
        ApproxMatrix {
            field,
            m,
            n,
            entries: vec![LaurentNum::zero(field); m * n],
            precision: None,
        }
    }

    /// Rows separated by newlines or `|`, entries by `;`.
    pub fn parse(field: Fq, text: &str, precision: Option<u32>) -> Result<Self, DiophantineError> {
        let rows: Vec<Vec<LaurentNum>> = text
            .split(['\n', '|'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split(';').map(|e| LaurentNum::parse(field, e.trim())).collect())
            .collect::<Result<_, _>>()?;
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(DiophantineError::Parse(format!("bad matrix {text:?}")));
        }
        Self::new(field, m, n, rows.into_iter().flatten().collect(), precision)
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentNum {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[LaurentNum] {
        &self.entries
    }

    /// `(A y)_i` for polynomial `y`.
    pub fn apply(&self, y: &[FqPoly]) -> Vec<LaurentNum> {
        (0..self.m)
            .map(|i| {
                (0..self.n).fold(LaurentNum::zero(self.field), |acc, j| {
                    &acc + &self.get(i, j).mul_poly(&y[j])
                })
            })
            .collect()
    }
}

impl fmt::Display for ApproxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            if i > 0 {
                f.write_str("|")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            f.write_str(&row.join(";"))?;
        }
        Ok(())
    }
}

/// Number of fractional digits of `A` that decide every predicate of a count:
/// `T max b + max(0, (T - R) max a) + 1`.
pub fn precision_required(w: &Weights, r: i64, t: u32) -> u32 {
    let t = t as i64;
    let need = t * w.max_beta() as i64 + ((t - r) * w.max_alpha() as i64).max(0) + 1;
    need as u32
}

/// A solution count with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    /// Solutions with `Aq - p = 0`; only populated by the directional counter.
    pub degenerate: u64,
    pub q: u32,
    pub weights: Weights,
    pub r: i64,
    pub t: u32,
    pub depth_used: u32,
}

/// One nonzero denominator `y` together with its threshold exponents.
pub(crate) struct Candidate<'a> {
    /// Coefficient digits of `y`, in the kernel's position order.
    pub digits: &'a [u32],
    /// Number of valid `p` for this `y`.
    pub multiplicity: u64,
    /// Per row, `ceil((R - level(y)) a_i)`.
    pub thresholds: &'a [i64],
}

/// Scans every nonzero `y` with `deg y_j <= floor(T b_j)` as a mixed-radix odometer.
///
/// Only the fractional digits of `Ay` that thresholds can probe are tracked; each
/// coefficient position contributes a fixed digit vector, added mod `q` per step.
pub(crate) struct Kernel<'a> {
    w: &'a Weights,
    q: u32,
    r: i64,
    /// `(j, e)`: coefficient of `t^e` in `y_j`.
    positions: Vec<(usize, i64)>,
    row_off: Vec<usize>,
    width: usize,
    contrib: Vec<Vec<u32>>,
}

impl<'a> Kernel<'a> {
    pub fn new(
        a: &ApproxMatrix,
        w: &'a Weights,
        r: i64,
        t: u32,
        budget: u64,
    ) -> Result<Self, DiophantineError> {
        if a.m() != w.m() || a.n() != w.n() {
            return Err(DiophantineError::DimensionMismatch {
                expected: w.m() * w.n(),
                got: a.m() * a.n(),
            });
        }
        let needed = precision_required(w, r, t);
        if let Some(have) = a.precision() {
            if have < needed {
                return Err(DiophantineError::InsufficientPrecision { needed, have });
            }
        }
        let q = a.field().order();
        let positions: Vec<(usize, i64)> = w
            .beta()
            .iter()
            .enumerate()
            .flat_map(|(j, &b)| (0..=t as i64 * b as i64).map(move |e| (j, e)))
            .collect();
        let candidates = (q as u64).checked_pow(positions.len() as u32);
        if candidates.is_none_or(|c| c > budget) {
            return Err(DiophantineError::BudgetExceeded { budget });
        }
        let max_mult: u32 = w
            .alpha()
            .iter()
            .map(|&ai| (r * ai as i64).max(0) as u32)
            .sum();
        if (q as u64)
            .checked_pow(max_mult)
            .and_then(|mm| mm.checked_mul(candidates.unwrap()))
            .is_none()
        {
            return Err(DiophantineError::BudgetExceeded { budget });
        }

        // row i needs fractional digits at degrees -1 .. -floor((T - R) a_i)
        let row_len: Vec<usize> = w
            .alpha()
            .iter()
            .map(|&ai| ((t as i64 - r) * ai as i64).max(0) as usize)
            .collect();
        let mut row_off = Vec::with_capacity(row_len.len());
        let mut width = 0;
        for &l in &row_len {
            row_off.push(width);
            width += l;
        }
        let contrib = positions
            .iter()
            .map(|&(j, e)| {
                (0..w.m())
                    .flat_map(|i| {
                        let entry = a.get(i, j);
                        (1..=row_len[i] as i64).map(move |l| entry.coeff(-l - e).value())
                    })
                    .collect()
            })
            .collect();
        Ok(Kernel { w, q, r, positions, row_off, width, contrib })
    }

    /// Polynomials `y_j` from candidate digits.
    pub fn polys(&self, field: Fq, digits: &[u32]) -> Vec<FqPoly> {
        let mut coeffs: Vec<Vec<FqElem>> = vec![Vec::new(); self.w.n()];
        for (&(j, e), &d) in self.positions.iter().zip(digits) {
            let c = &mut coeffs[j];
            if c.len() <= e as usize {
                c.resize(e as usize + 1, FqElem::ZERO);
            }
            c[e as usize] = field.elem_unchecked(d);
        }
        coeffs.into_iter().map(|c| FqPoly::from_elems(field, c)).collect()
    }

    pub fn scan(&self, mut visit: impl FnMut(&Candidate)) {
        let q = self.q;
        let n = self.w.n();
        let alpha = self.w.alpha();
        let beta = self.w.beta();
        let mut digits = vec![0u32; self.positions.len()];
        let mut cur = vec![0u32; self.width];
        let mut degs: Vec<Option<i64>> = vec![None; n];
        let mut thresholds = vec![0i64; alpha.len()];
        let add = |cur: &mut [u32], c: &[u32]| {
            for (x, &y) in cur.iter_mut().zip(c) {
                let s = *x + y;
                *x = if s >= q { s - q } else { s };
            }
        };
        loop {
            let Some(p) = digits.iter().position(|&x| x + 1 < q) else {
                return;
            };
            for i in 0..p {
                digits[i] = 0;
                add(&mut cur, &self.contrib[i]);
            }
            digits[p] += 1;
            add(&mut cur, &self.contrib[p]);

            degs.iter_mut().for_each(|d| *d = None);
            for (&(j, e), &d) in self.positions.iter().zip(&digits) {
                if d != 0 {
                    degs[j] = Some(e);
                }
            }
            // level(y) = num / den as the largest deg_j / b_j
            let (mut num, mut den) = (-1i64, 0i64);
            for (d, &b) in degs.iter().zip(beta) {
                if let Some(d) = *d {
                    if den == 0 || d * den > num * b as i64 {
                        num = d;
                        den = b as i64;
                    }
                }
            }
            let mut multiplicity = 1u64;
            for (i, &ai) in alpha.iter().enumerate() {
                let e = Integer::div_ceil(&((self.r * den - num) * ai as i64), &den);
                thresholds[i] = e;
                if e >= 1 {
                    multiplicity *= (q as u64).pow(e as u32);
                } else {
                    let off = self.row_off[i];
                    if cur[off..off + (-e) as usize].iter().any(|&x| x != 0) {
                        multiplicity = 0;
                    }
                }
            }
            visit(&Candidate {
                digits: &digits,
                multiplicity,
                thresholds: &thresholds,
            });
        }
    }
}

/// `N_R(T, A)` with the default budget.
pub fn count_solutions(a: &ApproxMatrix, w: &Weights, r: i64, t: u32) -> Result<CountResult, DiophantineError> {
    count_solutions_budgeted(a, w, r, t, DEFAULT_BUDGET)
}

/// Number of nonzero `(p, q)` with `||Aq - p||_alpha < q^R / ||q||_beta` and
/// `1 <= ||q||_beta <= q^T`.
///
/// For each `q` the admissible `p` are `[Aq] + g` with `deg g_i < ceil((R - k) a_i)`,
/// so they are counted in closed form rather than enumerated.
pub fn count_solutions_budgeted(
    a: &ApproxMatrix,
    w: &Weights,
    r: i64,
    t: u32,
    budget: u64,
) -> Result<CountResult, DiophantineError> {
    let kernel = Kernel::new(a, w, r, t, budget)?;
    let mut count = 0u64;
    kernel.scan(|c| count += c.multiplicity);
    Ok(CountResult {
        count,
        degenerate: 0,
        q: a.field().order(),
        weights: w.clone(),
        r,
        t,
        depth_used: precision_required(w, r, t),
    })
}

/// Solutions whose directions satisfy `pi_alpha(Aq - p) in c1` and `pi_beta(q) in c2`.
///
/// Solutions with `Aq - p = 0` have no direction; they are tallied in
/// `CountResult::degenerate` whatever the cylinders are.
pub fn count_solutions_directional(
    a: &ApproxMatrix,
    w: &Weights,
    r: i64,
    t: u32,
    c1: &Cylinder,
    c2: &Cylinder,
) -> Result<CountResult, DiophantineError> {
    let q = a.field().order();
    c1.validate(Side::Alpha, w, q)?;
    c2.validate(Side::Beta, w, q)?;
    let kernel = Kernel::new(a, w, r, t, DEFAULT_BUDGET)?;
    let field = a.field();
    let (mut count, mut degenerate) = (0u64, 0u64);
    kernel.scan(|c| {
        if c.multiplicity == 0 {
            return;
        }
        let y = kernel.polys(field, c.digits);
        let frac: Vec<LaurentNum> = a.apply(&y).iter().map(|z| z.split().1).collect();
        // x = 0 needs a zero fractional part and g = 0
        let zero_here = frac.iter().all(LaurentNum::is_zero) as u64;
        degenerate += zero_here;
        let y_vec: Vec<LaurentNum> = y.iter().map(LaurentNum::from_poly).collect();
        if !c2.contains(Side::Beta, w, &y_vec) {
            return;
        }
        if *c1 == Cylinder::Full {
            count += c.multiplicity - zero_here;
            return;
        }
        // enumerate the p-box: g_i of degree < threshold_i
        let widths: Vec<usize> = c.thresholds.iter().map(|&e| e.max(0) as usize).collect();
        let total: usize = widths.iter().sum();
        let mut g = vec![0u32; total];
        loop {
            let mut off = 0;
            let x: Vec<LaurentNum> = frac
                .iter()
                .zip(&widths)
                .map(|(f, &wd)| {
                    let terms: Vec<(i64, i64)> =
                        (0..wd).map(|e| (e as i64, g[off + e] as i64)).collect();
                    off += wd;
                    f - &LaurentNum::from_terms(field, &terms)
                })
                .collect();
            if !x.iter().all(LaurentNum::is_zero) && c1.contains(Side::Alpha, w, &x) {
                count += 1;
            }
            let Some(p) = g.iter().position(|&d| d + 1 < q) else {
                break;
            };
            g[..p].iter_mut().for_each(|d| *d = 0);
            g[p] += 1;
        }
    });
    Ok(CountResult {
        count,
        degenerate,
        q,
        weights: w.clone(),
        r,
        t,
        depth_used: precision_required(w, r, t),
    })
}
