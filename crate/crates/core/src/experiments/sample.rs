use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Fq, FqElem, LaurentNum};
use crate::diophantine::ApproxMatrix;

/// Seed of trial `trial`: the first word of the ChaCha stream `trial` under `master`.
/// Independent of the order in which trials run.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial);
    rng.next_u64()
}

/// An `m x n` matrix with zero integral parts and `depth` uniform fractional digits per
/// entry, at degrees `-1..=-depth`.
pub fn sample_matrix(field: Fq, m: usize, n: usize, depth: u32, seed: u64) -> ApproxMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let entries = (0..m * n)
        .map(|_| {
            // from_window takes digits from the lowest degree up
            let digits: Vec<FqElem> = (0..depth).map(|_| field.elem_unchecked(rng.gen_range(0..q))).collect();
            LaurentNum::from_window(field, -(depth as i64), digits)
        })
        .collect();
    ApproxMatrix::new(field, m, n, entries, Some(depth)).expect("m * n entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_fractional() {
        let f = Fq::new(3).unwrap();
        let a = sample_matrix(f, 2, 1, 9, 42);
        assert_eq!(a, sample_matrix(f, 2, 1, 9, 42));
        assert_ne!(a, sample_matrix(f, 2, 1, 9, 43));
        for e in a.entries() {
            assert!(e.top_degree().is_none_or(|d| d <= -1));
            assert!(e.bottom_degree().is_none_or(|d| d >= -9));
        }
        assert_eq!(a.precision(), Some(9));
        assert_ne!(trial_seed(7, 0), trial_seed(7, 1));
        assert_eq!(trial_seed(7, 5), trial_seed(7, 5));
    }

    #[test]
    fn digit_frequencies_look_uniform() {
        let f = Fq::new(3).unwrap();
        let mut counts = [0u64; 3];
        for s in 0..10_000 {
            let a = sample_matrix(f, 1, 1, 4, trial_seed(1, s));
            for l in 1..=4 {
                counts[a.get(0, 0).coeff(-l).value() as usize] += 1;
            }
        }
        let expected = 40_000.0 / 3.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 2 degrees of freedom: mean 2, sd 2
        assert!(chi2 < 8.0, "chi2 = {chi2}, counts {counts:?}");
    }
}
