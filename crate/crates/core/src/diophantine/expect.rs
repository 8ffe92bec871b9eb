//! Exact expectations of solution counts over uniformly random `A`.

use crate::algebra::{Exponent, FqElem, FqPoly, fq_matrix_rank};
use crate::dynamics::Weights;
use crate::scalar::{sum, Scalar};
use crate::Rational;

use super::measure::{shell_levels, sum_ceil, sum_floor};
use super::norm::level_of_degrees;
use super::DiophantineError;

/// Per row, `ceil((R - level(y)) a_i)`: row `i` needs `deg(Aq - p)_i` below this.
fn thresholds(y: &[FqPoly], w: &Weights, r: i64) -> Result<Vec<i64>, DiophantineError> {
    if y.len() != w.n() {
        return Err(DiophantineError::DimensionMismatch { expected: w.n(), got: y.len() });
    }
    let degs: Vec<Option<i64>> = y.iter().map(|p| p.degree().map(|d| d as i64)).collect();
    let k = level_of_degrees(&degs, w.beta()).ok_or(DiophantineError::ZeroVector)?;
    Ok(w.alpha()
        .iter()
        .map(|&a| ((Exponent::from_integer(r) - k) * a as i64).ceil().to_integer())
        .collect())
}

/// Probability over `A` with uniform fractional digits that some `p` solves the
/// inequality for the denominator `y`.
///
/// Row `i` with threshold `e_i < 0` requires the fractional digits of `(Ay)_i` at
/// degrees `-1..=e_i` to vanish: a linear system in the digits of row `i` of `A`,
/// holding with probability `q^-rank`. Rows involve disjoint digits, so the
/// probabilities multiply.
pub fn solution_probability(y: &[FqPoly], w: &Weights, r: i64) -> Result<Rational, DiophantineError> {
    let field = y.first().ok_or(DiophantineError::ZeroVector)?.field();
    let q = field.order();
    let mut rank_total = 0i64;
    for e in thresholds(y, w, r)? {
        if e >= 0 {
            continue;
        }
        let rows = (-e) as usize;
        let max_deg = y.iter().filter_map(FqPoly::degree).max().unwrap_or(0);
        let depth = rows + max_deg;
        // row l, column (j, u): coefficient of digit A_ij[-u] in digit -l of (Ay)_i
        let system: Vec<Vec<FqElem>> = (1..=rows)
            .map(|l| {
                y.iter()
                    .flat_map(|yj| {
                        (1..=depth).map(move |u| if u >= l { yj.coeff(u - l) } else { FqElem::ZERO })
                    })
                    .collect()
            })
            .collect();
        rank_total += fq_matrix_rank(field, &system) as i64;
    }
    Ok(Rational::int_pow(q, -rank_total))
}

/// Expected number of `p` solving the inequality for `y`: `q^(sum_i e_i)`. Agrees with
/// [`solution_probability`] when every threshold is at most 1.
pub fn expected_multiplicity(y: &[FqPoly], w: &Weights, r: i64) -> Result<Rational, DiophantineError> {
    let q = y.first().ok_or(DiophantineError::ZeroVector)?.field().order();
    Ok(Rational::int_pow(q, thresholds(y, w, r)?.iter().sum()))
}

/// `E[N_R(T, A)]`: the expected multiplicity summed over all nonzero `y` with
/// `||y||_beta <= q^T`, grouped by exact level.
pub fn expected_count<S: Scalar>(q: u32, w: &Weights, r: i64, t: u32) -> S {
    sum(shell_levels(w.beta(), t).into_iter().map(|k| {
        let n = w.n() as i64;
        // polynomials y with level exactly k
        let on_level = S::int_pow(q, sum_floor(k, w.beta()) + n) - S::int_pow(q, sum_ceil(k, w.beta()));
        on_level * S::int_pow(q, sum_ceil(Exponent::from_integer(r) - k, w.alpha()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fq;
    use crate::diophantine::measure_e;

    fn w(s: &str) -> Weights {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn probability_examples() {
        let f = Fq::new(2).unwrap();
        let ws = w("(1;1)");
        let y = |s: &str| vec![FqPoly::parse(f, s).unwrap()];
        assert_eq!(solution_probability(&y("1"), &ws, 0).unwrap(), rat(1, 1));
        assert_eq!(solution_probability(&y("t"), &ws, 0).unwrap(), rat(1, 2));
        assert_eq!(solution_probability(&y("t^3+t"), &ws, 0).unwrap(), rat(1, 8));
        assert_eq!(solution_probability(&y("1"), &ws, 2).unwrap(), rat(1, 1));
        assert_eq!(expected_multiplicity(&y("1"), &ws, 2).unwrap(), rat(4, 1));
        assert!(solution_probability(&y("0"), &ws, 0).is_err());
    }

    #[test]
    fn probability_matches_exhaustive_average() {
        // every digit pattern of A deep enough to decide the k constrained digits
        let f = Fq::new(2).unwrap();
        let ws = w("(1;1)");
        for k in 0..4u32 {
            let y = vec![FqPoly::monomial(f, FqElem::ONE, k as usize)];
            let depth = 2 * k + 1;
            let mut hits = 0u64;
            for pattern in 0..(1u64 << depth) {
                let terms: Vec<(i64, i64)> =
                    (0..depth as i64).map(|l| (-1 - l, ((pattern >> l) & 1) as i64)).collect();
                let a = crate::algebra::LaurentNum::from_terms(f, &terms);
                let frac = a.mul_poly(&y[0]).split().1;
                hits += frac.top_degree().is_none_or(|d| d < -(k as i64)) as u64;
            }
            assert_eq!(
                solution_probability(&y, &ws, 0).unwrap(),
                rat(hits as i64, 1i64 << depth)
            );
            assert_eq!(solution_probability(&y, &ws, 0).unwrap(), Rational::int_pow(2, -(k as i64)));
        }
    }

    #[test]
    fn expected_count_examples() {
        let ws = w("(1;1)");
        assert_eq!(expected_count::<Rational>(2, &ws, 0, 3), rat(4, 1));
        assert_eq!(expected_count::<Rational>(2, &ws, 0, 0), rat(1, 1));
    }

    #[test]
    fn expected_count_is_the_sum_over_denominators() {
        for (q, ws) in [(2, "(1;1)"), (3, "(1;1)"), (2, "(2;1,1)"), (2, "(1,1;2)")] {
            let ws = w(ws);
            let f = Fq::new(q).unwrap();
            for r in -1..=1 {
                for t in 0..=2u32 {
                    let lens: Vec<usize> = ws.beta().iter().map(|&b| (t * b) as usize + 1).collect();
                    let total: usize = lens.iter().sum();
                    let mut mult = Rational::from_integer(0.into());
                    let mut prob = Rational::from_integer(0.into());
                    for idx in 1..(q as u64).pow(total as u32) {
                        let mut v = idx;
                        let y: Vec<FqPoly> = lens
                            .iter()
                            .map(|&len| {
                                let c: Vec<i64> = (0..len)
                                    .map(|_| {
                                        let d = v % q as u64;
                                        v /= q as u64;
                                        d as i64
                                    })
                                    .collect();
                                FqPoly::from_coeffs(f, &c)
                            })
                            .collect();
                        mult += expected_multiplicity(&y, &ws, r).unwrap();
                        prob += solution_probability(&y, &ws, r).unwrap();
                    }
                    let e = expected_count::<Rational>(q, &ws, r, t);
                    assert_eq!(mult, e);
                    if r <= 0 {
                        assert_eq!(prob, e);
                    }
                    let scale = Rational::int_pow(q, ws.d() as i64);
                    assert_eq!(e, scale * measure_e::<Rational>(q, &ws, r, t));
                }
            }
        }
    }
}
