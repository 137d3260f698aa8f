//! The generator behind every seeded command, fixed so that runs are
//! reproducible across implementations:
//!
//! ```text
//! state_0     = seed
//! state_{i+1} = state_i * 6364136223846793005 + 1442695040888963407  (mod 2^64)
//! output_i    = state_{i+1} >> 33                                    (31 bits)
//! ```
//!
//! A draw in `[lo, hi]` is `lo + output % (hi - lo + 1)`.

use hyperpfaffian::combinat::{critical_degree, Permutation};
use hyperpfaffian::hpf::spec_keys;
use hyperpfaffian::poly::{ratio, rational, Rational};
use hyperpfaffian::{Composition, Polynomial, SkewFunction, SkewSpec};

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 33) as u32
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + i64::from(self.next_u32()) % (hi - lo + 1)
    }

    /// Uniform over `[-9, 9] \ {0}`.
    pub fn nonzero_digit(&mut self) -> i64 {
        let v = self.range(0, 17);
        if v < 9 {
            v - 9
        } else {
            v - 8
        }
    }

    /// `p/q` with `p` a nonzero digit and `q` in `[1, 4]`.
    pub fn small_rational(&mut self) -> Rational {
        let p = self.nonzero_digit();
        let q = self.range(1, 4);
        ratio(p, q)
    }

    /// Fisher-Yates shuffle of `[m]`.
    pub fn permutation(&mut self, m: u32) -> Permutation {
        let mut images: Vec<u32> = (1..=m).collect();
        for i in (1..images.len()).rev() {
            let j = self.range(0, i as i64) as usize;
            images.swap(i, j);
        }
        Permutation::new(images).expect("shuffle of [m]")
    }
}

/// A spec of the given degree with a nonzero digit on every increasing key,
/// keys taken in lex order.
pub fn random_spec(n: u32, k: u32, degree: u32, rng: &mut Lcg) -> SkewSpec {
    let coeffs: Vec<(Composition, Rational)> = spec_keys(k, degree)
        .into_iter()
        .map(|r| (r, rational(rng.nonzero_digit())))
        .collect();
    SkewSpec::new(n, k, degree, coeffs).expect("keys are valid by construction")
}

/// A random spec of the critical degree `k/2 (n-1)`.
pub fn random_critical_spec(n: u32, k: u32, rng: &mut Lcg) -> SkewSpec {
    random_spec(n, k, critical_degree(n, k), rng)
}

/// Rational values on every sorted `k`-subset of `[n]`, subsets in lex order.
pub fn random_skew_function(n: u32, k: u32, rng: &mut Lcg) -> SkewFunction {
    SkewFunction::from_fn(n, k, |_| Polynomial::constant(rng.small_rational()))
        .expect("caller checks the shape")
}

/// `n` integers in `[-50, 50]`.
pub fn random_point(n: u32, rng: &mut Lcg) -> Vec<Rational> {
    (0..n).map(|_| rational(rng.range(-50, 50))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_is_fixed() {
        let mut rng = Lcg::new(1);
        let first: Vec<u32> = (0..3).map(|_| rng.next_u32()).collect();
        let state1 = 6364136223846793005u64.wrapping_add(1442695040888963407);
        assert_eq!(first[0], (state1 >> 33) as u32);
        let mut again = Lcg::new(1);
        assert_eq!(first, (0..3).map(|_| again.next_u32()).collect::<Vec<_>>());
    }

    #[test]
    fn digits_cover_the_range_without_zero() {
        let mut rng = Lcg::new(42);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..2000 {
            let d = rng.nonzero_digit();
            assert!(d != 0 && (-9..=9).contains(&d));
            seen.insert(d);
        }
        assert_eq!(seen.len(), 18);
    }

    #[test]
    fn permutations_are_valid() {
        let mut rng = Lcg::new(5);
        for _ in 0..20 {
            let p = rng.permutation(6);
            let mut v = p.images().to_vec();
            v.sort_unstable();
            assert_eq!(v, vec![1, 2, 3, 4, 5, 6]);
        }
    }
}
