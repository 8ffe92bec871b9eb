//! Weak Popov reduction and the invariants read off a reduced basis.

use crate::algebra::{Exponent, Fq, LaurentNum, LogNorm};

use super::basis::LatticeBasis;
use super::LatticeError;

/// A basis in weak Popov form: the pivot columns (rightmost column attaining the row
/// degree) are pairwise distinct. Rows are sorted by degree, ties broken by pivot.
///
/// For any coefficient polynomials `f_i` this gives the orthogonality relation
/// `deg ||sum f_i b_i|| = max_i (deg f_i + d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    basis: LatticeBasis,
    row_degrees: Vec<i64>,
    pivot_cols: Vec<usize>,
}

impl ReducedBasis {
    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn field(&self) -> Fq {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `d_1 <= ... <= d_d`.
    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// `deg |det|` of the lattice.
    pub fn log_covolume(&self) -> i64 {
        self.row_degrees.iter().sum()
    }
}

/// Row degree and pivot column; `None` for a zero row.
fn leading_position(row: &[LaurentNum]) -> Option<(i64, usize)> {
    let mut best: Option<(i64, usize)> = None;
    for (j, x) in row.iter().enumerate() {
        if let Some(d) = x.top_degree() {
            if best.is_none_or(|(bd, _)| d >= bd) {
                best = Some((d, j));
            }
        }
    }
    best
}

/// Reduces `b` to weak Popov form with unimodular `F_q[t]` row operations.
///
/// Works directly on Laurent rows, which is the same computation as reducing
/// `t^W b` (`W = b.scale_hint()`) and shifting the degrees back by `-W`.
pub fn weak_popov_reduce(b: &LatticeBasis) -> Result<ReducedBasis, LatticeError> {
    reduce_rows(b.field(), b.rows().to_vec())
}

pub(crate) fn reduce_rows(
    field: Fq,
    mut rows: Vec<Vec<LaurentNum>>,
) -> Result<ReducedBasis, LatticeError> {
    let d = rows.len();
    let mut lead: Vec<(i64, usize)> = rows
        .iter()
        .map(|r| leading_position(r).ok_or(LatticeError::SingularBasis))
        .collect::<Result<_, _>>()?;

    // owner[c] = row currently holding pivot column c
    let mut owner: Vec<Option<usize>> = vec![None; d];
    let mut pending: Vec<usize> = (0..d).rev().collect();
    while let Some(i) = pending.pop() {
        let (deg_i, piv) = lead[i];
        match owner[piv] {
            None => owner[piv] = Some(i),
            Some(j) if j == i => {}
            Some(j) => {
                // the row with the larger degree is the one that gets reduced
                let (hi, lo) = if deg_i >= lead[j].0 { (i, j) } else { (j, i) };
                owner[piv] = Some(lo);
                let (deg_hi, _) = lead[hi];
                let (deg_lo, _) = lead[lo];
                let c = field.mul(
                    rows[hi][piv].coeff(deg_hi),
                    field.inv(rows[lo][piv].coeff(deg_lo)).expect("pivot coefficient"),
                );
                let shift = deg_hi - deg_lo;
                let sub: Vec<LaurentNum> =
                    rows[lo].iter().map(|x| x.shift(shift).scale(c)).collect();
                for (x, s) in rows[hi].iter_mut().zip(&sub) {
                    *x = &*x - s;
                }
                lead[hi] = leading_position(&rows[hi]).ok_or(LatticeError::SingularBasis)?;
                pending.push(hi);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| lead[i]);
    let row_degrees = order.iter().map(|&i| lead[i].0).collect();
    let pivot_cols = order.iter().map(|&i| lead[i].1).collect();
    let mut slots: Vec<Option<Vec<LaurentNum>>> = rows.into_iter().map(Some).collect();
    let sorted = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    Ok(ReducedBasis {
        basis: LatticeBasis::new(field, sorted)?,
        row_degrees,
        pivot_cols,
    })
}

/// Length of a shortest nonzero vector, `q^(d_1)`.
pub fn delta_shortest(r: &ReducedBasis) -> LogNorm {
    LogNorm::from_degree(r.row_degrees[0])
}

/// `alpha(L) = max over submodules D of covol(D)^(-1)`, which for a reduced basis is
/// `q^(-(sum of the negative row degrees))`.
pub fn alpha_value(r: &ReducedBasis) -> Result<LogNorm, LatticeError> {
    if r.log_covolume() != 0 {
        return Err(LatticeError::NonUnimodular(r.log_covolume()));
    }
    let neg: i64 = r.row_degrees.iter().filter(|&&d| d < 0).sum();
    Ok(LogNorm::Exp(Exponent::from_integer(-neg)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqPoly;
    use crate::lattice::basis::sup_norm;
    use rand::{Rng, SeedableRng};

    fn basis(q: u32, text: &str) -> LatticeBasis {
        LatticeBasis::parse(Fq::new(q).unwrap(), text).unwrap()
    }

    #[test]
    fn single_transformation_example() {
        let r = weak_popov_reduce(&basis(2, "1;t\n0;1")).unwrap();
        assert_eq!(r.row_degrees(), &[0, 0]);
        let mut pivots = r.pivot_cols().to_vec();
        pivots.sort();
        assert_eq!(pivots, vec![0, 1]);
        let rows: Vec<String> = r.basis().rows().iter().map(|v| format!("{};{}", v[0], v[1])).collect();
        assert!(rows.contains(&"1;0".to_string()));
        assert!(rows.contains(&"0;1".to_string()));
    }

    #[test]
    fn swapped_pivot_example() {
        let r = weak_popov_reduce(&basis(2, "t;1\n1;0")).unwrap();
        assert_eq!(r.row_degrees(), &[0, 0]);
        let mut pivots = r.pivot_cols().to_vec();
        pivots.sort();
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn identity_is_already_reduced() {
        let b = LatticeBasis::identity(Fq::new(3).unwrap(), 3);
        let r = weak_popov_reduce(&b).unwrap();
        assert_eq!(r.row_degrees(), &[0, 0, 0]);
        assert_eq!(r.basis(), &b);
    }

    #[test]
    fn dependent_rows_are_rejected() {
        assert_eq!(
            weak_popov_reduce(&basis(2, "1;t\nt;t^2")),
            Err(LatticeError::SingularBasis)
        );
        assert_eq!(
            weak_popov_reduce(&basis(2, "0;0\n0;1")),
            Err(LatticeError::SingularBasis)
        );
    }

    #[test]
    fn delta_and_alpha_on_diagonal_lattices() {
        let f = Fq::new(2).unwrap();
        let z2 = weak_popov_reduce(&LatticeBasis::identity(f, 2)).unwrap();
        assert_eq!(delta_shortest(&z2), LogNorm::one());
        assert_eq!(alpha_value(&z2).unwrap(), LogNorm::one());

        let g = weak_popov_reduce(&LatticeBasis::diagonal(f, &[1, -1])).unwrap();
        assert_eq!(delta_shortest(&g), LogNorm::from_degree(-1));
        assert_eq!(alpha_value(&g).unwrap(), LogNorm::from_degree(1));

        let h = weak_popov_reduce(&LatticeBasis::diagonal(f, &[2, -1, -1])).unwrap();
        assert_eq!(alpha_value(&h).unwrap(), LogNorm::from_degree(2));

        let bad = weak_popov_reduce(&LatticeBasis::diagonal(f, &[1, 0])).unwrap();
        assert_eq!(alpha_value(&bad), Err(LatticeError::NonUnimodular(1)));
    }

    fn random_basis(rng: &mut impl Rng, f: Fq, d: usize, deg: usize) -> LatticeBasis {
        loop {
            let rows = (0..d)
                .map(|_| {
                    (0..d)
                        .map(|_| {
                            let lo = rng.gen_range(-2i64..=0);
                            let c = (lo..=deg as i64)
                                .map(|e| (e, rng.gen_range(0..f.order()) as i64))
                                .collect::<Vec<_>>();
                            LaurentNum::from_terms(f, &c)
                        })
                        .collect()
                })
                .collect();
            let b = LatticeBasis::new(f, rows).unwrap();
            if !b.det().is_zero() {
                return b;
            }
        }
    }

    #[test]
    fn degrees_sum_to_log_det_and_pivots_are_distinct() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3, 5] {
            let f = Fq::new(q).unwrap();
            for d in 1..=4 {
                for _ in 0..25 {
                    let b = random_basis(&mut rng, f, d, 2);
                    let r = weak_popov_reduce(&b).unwrap();
                    assert_eq!(r.log_covolume(), b.det().top_degree().unwrap());
                    let mut p = r.pivot_cols().to_vec();
                    p.sort();
                    p.dedup();
                    assert_eq!(p.len(), d);
                    assert!(r.row_degrees().windows(2).all(|w| w[0] <= w[1]));
                }
            }
        }
    }

    #[test]
    fn orthogonality_on_random_combinations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for q in [2, 3] {
            let f = Fq::new(q).unwrap();
            for d in 2..=4 {
                let r = weak_popov_reduce(&random_basis(&mut rng, f, d, 2)).unwrap();
                for _ in 0..100 {
                    let coeffs: Vec<FqPoly> = (0..d)
                        .map(|_| {
                            let len = rng.gen_range(0..5);
                            let c: Vec<i64> = (0..len).map(|_| rng.gen_range(0..q as i64)).collect();
                            FqPoly::from_coeffs(f, &c)
                        })
                        .collect();
                    let v = r.basis().combination(&coeffs);
                    let expect = coeffs
                        .iter()
                        .zip(r.row_degrees())
                        .filter_map(|(c, &d)| c.degree().map(|k| LogNorm::from_degree(k as i64 + d)))
                        .max()
                        .unwrap_or(LogNorm::Zero);
                    assert_eq!(sup_norm(&v), expect);
                }
            }
        }
    }
}
