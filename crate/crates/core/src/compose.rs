//! Composition of hyperpfaffians: the order-`p` hyperpfaffian of the function
//! `g(B) = Pf(f|_B)` (order-`n` hyperpfaffians of `f` on `n`-subsets `B`) is a
//! fixed rational multiple of the order-`p` hyperpfaffian of `f`.

use rayon::prelude::*;
use thiserror::Error;

use crate::hpf::{factorial, pf_definition, HpfError, SkewFunction};
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("need even k, n, p with k | n and n | p (got k={k}, n={n}, p={p})")]
    Divisibility { k: u32, n: u32, p: u32 },
    #[error("function has arity {actual} on [{order}], expected arity {k} on [{p}]")]
    FunctionShape {
        actual: u32,
        order: u32,
        k: u32,
        p: u32,
    },
    #[error(transparent)]
    Hpf(#[from] HpfError),
}

fn check(k: u32, n: u32, p: u32) -> Result<(), ComposeError> {
    let even = |v: u32| v > 0 && v.is_multiple_of(2);
    if !(even(k) && even(n) && even(p)) || !n.is_multiple_of(k) || !p.is_multiple_of(n) {
        return Err(ComposeError::Divisibility { k, n, p });
    }
    Ok(())
}

/// `g(B) = Pf(f restricted to B)` for every sorted `n`-subset `B` of `[p]`,
/// where `p` is the order of `f`.
pub fn build_g(f: &SkewFunction, n: u32) -> Result<SkewFunction, ComposeError> {
    use itertools::Itertools;
    let (k, p) = (f.k(), f.n());
    check(k, n, p)?;
    let subsets: Vec<Vec<u32>> = (1..=p).combinations(n as usize).collect();
    let values: Vec<Polynomial> = subsets
        .par_iter()
        .map(|b| pf_definition(&f.restrict(b)?))
        .collect::<Result<_, HpfError>>()?;
    let mut values = values.into_iter();
    Ok(SkewFunction::from_fn(p, n, |_| {
        values.next().expect("one value per subset, same order")
    })?)
}

/// `(1/(p/n)!) · (p/k)! / ((n/k)!)^{p/n}`, the multinomial with `p/n` parts
/// equal to `n/k`, divided by `(p/n)!`.
pub fn composition_constant(k: u32, n: u32, p: u32) -> Result<Rational, ComposeError> {
    check(k, n, p)?;
    let parts = p / n;
    let multinomial = factorial(p / k) / num_traits::pow(factorial(n / k), parts as usize);
    Ok(Rational::new(multinomial, factorial(parts)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub k: u32,
    pub n: u32,
    pub p: u32,
    pub constant: Rational,
    /// `Pf(g)`.
    pub lhs: Polynomial,
    /// `constant · Pf(f)`.
    pub rhs: Polynomial,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Computes both sides of the composition identity for `f` of arity `k` on
/// `[p]` and inner order `n`.
pub fn verify_composition(
    f: &SkewFunction,
    k: u32,
    n: u32,
    p: u32,
) -> Result<CompositionReport, ComposeError> {
    if f.k() != k || f.n() != p {
        return Err(ComposeError::FunctionShape {
            actual: f.k(),
            order: f.n(),
            k,
            p,
        });
    }
    let constant = composition_constant(k, n, p)?;
    let g = build_g(f, n)?;
    let lhs = pf_definition(&g)?;
    let rhs = pf_definition(f)?.scale(&constant);
    Ok(CompositionReport {
        k,
        n,
        p,
        constant,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, rational};

    fn symbolic(n: u32, k: u32) -> SkewFunction {
        let mut next = 0;
        SkewFunction::from_fn(n, k, |_| {
            next += 1;
            Polynomial::var(next)
        })
        .unwrap()
    }

    fn random(p: u32, k: u32, mut seed: u64) -> SkewFunction {
        SkewFunction::from_fn(p, k, |_| {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            Polynomial::constant(ratio(
                ((seed >> 33) % 19) as i64 - 9,
                ((seed >> 40) % 5) as i64 + 1,
            ))
        })
        .unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(composition_constant(2, 2, 4).unwrap(), rational(1));
        assert_eq!(composition_constant(2, 4, 8).unwrap(), rational(3));
        assert_eq!(composition_constant(2, 4, 4).unwrap(), rational(1));
        assert_eq!(composition_constant(4, 4, 8).unwrap(), rational(1));
        assert_eq!(composition_constant(2, 2, 6).unwrap(), rational(1));
        assert_eq!(composition_constant(2, 4, 12).unwrap(), rational(15));
        assert!(matches!(
            composition_constant(2, 3, 6),
            Err(ComposeError::Divisibility { .. })
        ));
        assert!(matches!(
            composition_constant(2, 4, 6),
            Err(ComposeError::Divisibility { .. })
        ));
        assert!(matches!(
            composition_constant(4, 2, 8),
            Err(ComposeError::Divisibility { .. })
        ));
    }

    #[test]
    fn g_examples() {
        let f = symbolic(4, 2);
        assert_eq!(build_g(&f, 2).unwrap(), f);
        let g = build_g(&f, 4).unwrap();
        // y1..y6 are f(12), f(13), f(14), f(23), f(24), f(34).
        let y = Polynomial::var;
        let expected = &(&(&y(1) * &y(6)) - &(&y(2) * &y(5))) + &(&y(3) * &y(4));
        assert_eq!(g.value(&[1, 2, 3, 4]), expected);

        let f = symbolic(8, 2);
        let g = build_g(&f, 4).unwrap();
        let pair = |a, b| f.value(&[a, b]);
        let expected = &(&(&pair(1, 2) * &pair(4, 7)) - &(&pair(1, 4) * &pair(2, 7)))
            + &(&pair(1, 7) * &pair(2, 4));
        assert_eq!(g.value(&[1, 2, 4, 7]), expected);
    }

    #[test]
    fn g_is_skew() {
        let g = build_g(&random(8, 2, 3), 4).unwrap();
        for args in [[1, 2, 3, 4], [2, 5, 7, 8], [1, 3, 6, 8]] {
            for i in 0..3 {
                let mut swapped = args;
                swapped.swap(i, i + 1);
                assert_eq!(g.value(&swapped), -g.value(&args));
            }
        }
    }

    #[test]
    fn identity_holds() {
        for (k, n, p) in [
            (2, 2, 4),
            (2, 2, 6),
            (2, 4, 4),
            (2, 4, 8),
            (2, 2, 8),
            (4, 4, 8),
        ] {
            let r = verify_composition(&random(p, k, u64::from(k * 100 + n * 10 + p)), k, n, p)
                .unwrap();
            assert!(r.holds(), "k={k} n={n} p={p}");
        }
        let r = verify_composition(&symbolic(4, 2), 2, 2, 4).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn shape_mismatch() {
        assert!(matches!(
            verify_composition(&symbolic(4, 2), 2, 4, 8),
            Err(ComposeError::FunctionShape { .. })
        ));
    }
}
