//! Weighted oriented partitions and the sign-reversing involution that
//! cancels every term with a repeated weight.
//!
//! A weighted oriented partition assigns to each block `(c_1, ..., c_k)` an
//! increasing composition `(w_1 < ... < w_k)` of `k/2 (n-1)`; element `c_j`
//! gets weight `w_j`. Its term in the expanded hyperpfaffian is
//! `sign · Π a_{w_i} · Π x_{c_j}^{w_j}`.
//!
//! When two elements share a weight, swapping them keeps the coefficient and
//! the monomial but flips the sign. When all weights differ they are exactly
//! `0..n-1` and the element splits into a permutation and a composition set.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinat::{
    check_shape, critical_degree, enumerate_gamma, enumerate_oriented, enumerate_r, CombinatError,
    Composition, CompositionSet, OrientedPartition, Permutation, Sign,
};
use crate::hpf::{factorial, SkewSpec};
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error(transparent)]
    Shape(#[from] CombinatError),
    #[error("weight vector ({0}) is not an increasing composition of the critical degree")]
    BadWeight(Composition),
    #[error("expected {expected} weight vectors, got {actual}")]
    WeightCount { expected: usize, actual: usize },
    #[error("all weights are distinct; the involution is undefined here")]
    DistinctWeights,
    #[error("weights repeat; no permutation/composition-set decomposition")]
    RepeatedWeights,
    #[error("enumerating W for n={n}, k={k} visits {size} elements; pass force to proceed")]
    TooLarge { n: u32, k: u32, size: BigInt },
    #[error("spec degree {actual} differs from the critical degree {expected}")]
    WrongDegree { expected: u32, actual: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightClass {
    Repeated,
    Distinct,
}

/// Which part of the weighted sum to accumulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightFilter {
    All,
    Repeated,
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedOrientedPartition {
    rho: OrientedPartition,
    weights: Vec<Composition>,
}

impl WeightedOrientedPartition {
    /// `weights[i]` is assigned to block `i` of `rho` in its canonical order.
    pub fn new(rho: OrientedPartition, weights: Vec<Composition>) -> Result<Self, InvolutionError> {
        let (n, k) = (rho.n(), rho.k());
        if weights.len() != rho.blocks().len() {
            return Err(InvolutionError::WeightCount {
                expected: rho.blocks().len(),
                actual: weights.len(),
            });
        }
        let degree = critical_degree(n, k);
        if let Some(w) = weights.iter().find(|w| {
            w.parts().len() as u32 != k || !w.is_strictly_increasing() || w.sum() != degree
        }) {
            return Err(InvolutionError::BadWeight(w.clone()));
        }
        Ok(Self { rho, weights })
    }

    /// Builds from blocks listed in any order, each paired with its weight.
    pub fn from_blocks(
        n: u32,
        k: u32,
        blocks: Vec<(Vec<u32>, Vec<u32>)>,
    ) -> Result<Self, InvolutionError> {
        let mut blocks = blocks;
        blocks.sort_by_key(|(b, _)| b.iter().min().copied());
        let (tuples, weights): (Vec<_>, Vec<_>) =
            blocks.into_iter().map(|(b, w)| (b, Composition(w))).unzip();
        Self::new(OrientedPartition::new(n, k, tuples)?, weights)
    }

    pub fn oriented(&self) -> &OrientedPartition {
        &self.rho
    }

    pub fn weights(&self) -> &[Composition] {
        &self.weights
    }

    pub fn n(&self) -> u32 {
        self.rho.n()
    }

    pub fn k(&self) -> u32 {
        self.rho.k()
    }

    pub fn sign(&self) -> Sign {
        self.rho.sign()
    }

    /// `(element, weight)` pairs in block order.
    pub fn element_weights(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.rho
            .blocks()
            .iter()
            .zip(&self.weights)
            .flat_map(|(b, w)| b.iter().copied().zip(w.parts().iter().copied()))
    }

    /// `w(e)` indexed by element: `result[e - 1]`.
    pub fn weight_table(&self) -> Vec<u32> {
        let mut table = vec![0; self.n() as usize];
        for (e, w) in self.element_weights() {
            table[(e - 1) as usize] = w;
        }
        table
    }

    /// `Π_i Π_j x_{c_{i,j}}^{w_{i,j}}`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs(self.element_weights())
    }

    /// `Π_i a_{w_i}` under the given spec.
    pub fn coefficient(&self, spec: &SkewSpec) -> Rational {
        self.weights
            .iter()
            .fold(Rational::one(), |acc, w| acc * spec.coeff(w))
    }

    /// The weight vectors as a sorted list, i.e. the symbolic coefficient.
    pub fn coefficient_key(&self) -> Vec<Composition> {
        let mut key = self.weights.clone();
        key.sort();
        key
    }

    /// Monomial in block order with explicit exponents, blocks separated by
    /// ` · `, e.g. `x9^1 x1^4 · x5^0 x3^1`.
    pub fn monomial_caption(&self) -> String {
        self.rho
            .blocks()
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| {
                b.iter()
                    .zip(w.parts())
                    .map(|(e, p)| format!("x{e}^{p}"))
                    .join(" ")
            })
            .join(" · ")
    }

    /// e.g. `a_{1,4,5,12} · a_{0,1,7,14}`.
    pub fn coefficient_caption(&self) -> String {
        self.weights
            .iter()
            .map(|w| format!("a_{{{w}}}"))
            .join(" · ")
    }

    /// Lexicographically smallest pair of elements `i < j` with equal weight.
    pub fn smallest_repeated_pair(&self) -> Option<(u32, u32)> {
        let table = self.weight_table();
        let n = table.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i] == table[j])
            .map(|(i, j)| (i as u32 + 1, j as u32 + 1))
    }

    pub fn classify(&self) -> WeightClass {
        classify(self)
    }
}

impl fmt::Display for WeightedOrientedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with weights ", self.rho)?;
        let ws = self.weights.iter().map(|w| format!("({w})")).join(",");
        write!(f, "{ws}")
    }
}

pub fn classify(rw: &WeightedOrientedPartition) -> WeightClass {
    let mut seen = std::collections::HashSet::new();
    if rw.element_weights().all(|(_, w)| seen.insert(w)) {
        WeightClass::Distinct
    } else {
        WeightClass::Repeated
    }
}

/// Swaps the smallest pair of equally weighted elements, leaving every block
/// orientation slot and weight vector in place.
pub fn phi(rw: &WeightedOrientedPartition) -> Result<WeightedOrientedPartition, InvolutionError> {
    let (i, j) = rw
        .smallest_repeated_pair()
        .ok_or(InvolutionError::DistinctWeights)?;
    let mut blocks: Vec<(Vec<u32>, Vec<u32>)> = rw
        .rho
        .blocks()
        .iter()
        .zip(&rw.weights)
        .map(|(b, w)| {
            let swapped = b
                .iter()
                .map(|&e| {
                    if e == i {
                        j
                    } else if e == j {
                        i
                    } else {
                        e
                    }
                })
                .collect();
            (swapped, w.0.clone())
        })
        .collect();
    // The swap may change which block holds the smallest element.
    blocks.sort_by_key(|(b, _)| b.iter().min().copied());
    let (tuples, weights): (Vec<_>, Vec<_>) =
        blocks.into_iter().map(|(b, w)| (b, Composition(w))).unzip();
    Ok(WeightedOrientedPartition {
        rho: OrientedPartition::from_canonical(rw.n(), rw.k(), tuples),
        weights,
    })
}

/// Splits a distinct-weight element into `σ` with `σ(m) = w(m) + 1` and the
/// set `β` of its weight vectors.
pub fn decompose_distinct(
    rw: &WeightedOrientedPartition,
) -> Result<(Permutation, CompositionSet), InvolutionError> {
    if classify(rw) == WeightClass::Repeated {
        return Err(InvolutionError::RepeatedWeights);
    }
    let sigma = Permutation::new(rw.weight_table().iter().map(|&w| w + 1).collect())
        .map_err(|_| InvolutionError::RepeatedWeights)?;
    let beta = CompositionSet::new(rw.n(), rw.k(), rw.weights.clone())?;
    Ok((sigma, beta))
}

/// Inverse of [`decompose_distinct`]: the element of weight `r_j` in the block
/// for `r` is `σ^{-1}(r_j + 1)`.
pub fn compose_distinct(
    sigma: &Permutation,
    beta: &CompositionSet,
) -> Result<WeightedOrientedPartition, InvolutionError> {
    let inv = sigma.inverse();
    let blocks = beta
        .compositions()
        .iter()
        .map(|r| {
            let tuple = r.parts().iter().map(|&p| inv.apply(p + 1)).collect();
            (tuple, r.0.clone())
        })
        .collect();
    WeightedOrientedPartition::from_blocks(beta.n(), beta.k(), blocks)
}

/// `|T_{n,k}| · |Γ_{n,k}|^{n/k}`.
pub fn w_size(n: u32, k: u32) -> Result<BigInt, InvolutionError> {
    check_shape(n, k)?;
    let gamma = enumerate_gamma(n, k)?.count();
    let oriented = factorial(n) / factorial(n / k);
    Ok(oriented * num_traits::pow(BigInt::from(gamma), (n / k) as usize))
}

/// Default enumeration limits: `n <= 6` for `k = 2`, `n <= 8` for `k >= 4`.
pub fn within_default_limit(n: u32, k: u32) -> bool {
    if k == 2 {
        n <= 6
    } else {
        n <= 8
    }
}

/// All weighted oriented partitions, oriented partitions in lex order with the
/// weight assignments varying fastest. Refuses shapes beyond the default
/// limits unless `force` is set.
pub fn enumerate_w(
    n: u32,
    k: u32,
    force: bool,
) -> Result<impl Iterator<Item = WeightedOrientedPartition>, InvolutionError> {
    check_shape(n, k)?;
    if !force && !within_default_limit(n, k) {
        return Err(InvolutionError::TooLarge {
            n,
            k,
            size: w_size(n, k)?,
        });
    }
    let gamma: Vec<Composition> = enumerate_gamma(n, k)?.collect();
    let blocks = (n / k) as usize;
    Ok(enumerate_oriented(n, k)?.flat_map(move |rho| {
        let gamma = gamma.clone();
        std::iter::repeat_n(gamma, blocks)
            .multi_cartesian_product()
            .map(move |weights| WeightedOrientedPartition {
                rho: rho.clone(),
                weights,
            })
    }))
}

/// `Σ sign(ρ) c(ρ) w(ρ)` over the chosen part of `W_{n,k}`.
pub fn signed_weighted_sum(
    spec: &SkewSpec,
    filter: WeightFilter,
    force: bool,
) -> Result<Polynomial, InvolutionError> {
    let expected = critical_degree(spec.n(), spec.k());
    if spec.degree() != expected {
        return Err(InvolutionError::WrongDegree {
            expected,
            actual: spec.degree(),
        });
    }
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for rw in enumerate_w(spec.n(), spec.k(), force)? {
        let keep = match filter {
            WeightFilter::All => true,
            WeightFilter::Repeated => classify(&rw) == WeightClass::Repeated,
            WeightFilter::Distinct => classify(&rw) == WeightClass::Distinct,
        };
        if !keep {
            continue;
        }
        let c = rw.coefficient(spec);
        if c.is_zero() {
            continue;
        }
        let term = rw.sign().to_rational() * c;
        *acc.entry(rw.monomial()).or_insert_with(Rational::zero) += term;
    }
    Ok(Polynomial::from_terms(acc))
}

/// Outcome of checking every involution property over all of `W_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport {
    pub n: u32,
    pub k: u32,
    pub total: usize,
    pub repeated: usize,
    pub distinct: usize,
    pub composition_sets: usize,
    /// `φ` is defined on every repeated element, is never the identity, stays
    /// in the repeated part and squares to the identity.
    pub involution_ok: bool,
    /// `φ` preserves coefficient and monomial and flips the sign.
    pub sign_reversing_ok: bool,
    /// With symbolic coefficients, the signed repeated-weight terms cancel.
    pub repeated_sum_zero: bool,
    /// `|W^d| = n! · |R_{n,k}|`.
    pub distinct_count_ok: bool,
    /// Every distinct element satisfies `sign(ρ) = sign(β) sign(σ)` and
    /// round-trips through its decomposition.
    pub factorization_ok: bool,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.involution_ok
            && self.sign_reversing_ok
            && self.repeated_sum_zero
            && self.distinct_count_ok
            && self.factorization_ok
    }
}

/// Exhaustively checks the involution and the distinct-weight factorization.
pub fn check_involution(n: u32, k: u32, force: bool) -> Result<InvolutionReport, InvolutionError> {
    let mut report = InvolutionReport {
        n,
        k,
        total: 0,
        repeated: 0,
        distinct: 0,
        composition_sets: enumerate_r(n, k)?.count(),
        involution_ok: true,
        sign_reversing_ok: true,
        repeated_sum_zero: true,
        distinct_count_ok: true,
        factorization_ok: true,
    };
    let mut cancellation: HashMap<(Vec<Composition>, Monomial), i64> = HashMap::new();
    for rw in enumerate_w(n, k, force)? {
        report.total += 1;
        match classify(&rw) {
            WeightClass::Repeated => {
                report.repeated += 1;
                *cancellation
                    .entry((rw.coefficient_key(), rw.monomial()))
                    .or_default() += i64::from(rw.sign().to_i32());
                let Ok(image) = phi(&rw) else {
                    report.involution_ok = false;
                    continue;
                };
                if image == rw
                    || classify(&image) != WeightClass::Repeated
                    || phi(&image).as_ref() != Ok(&rw)
                {
                    report.involution_ok = false;
                }
                if image.sign() != -rw.sign()
                    || image.monomial() != rw.monomial()
                    || image.coefficient_key() != rw.coefficient_key()
                {
                    report.sign_reversing_ok = false;
                }
            }
            WeightClass::Distinct => {
                report.distinct += 1;
                match decompose_distinct(&rw) {
                    Ok((sigma, beta)) => {
                        if rw.sign() != beta.sign() * sigma.sign()
                            || compose_distinct(&sigma, &beta).as_ref() != Ok(&rw)
                        {
                            report.factorization_ok = false;
                        }
                    }
                    Err(_) => report.factorization_ok = false,
                }
            }
        }
    }
    report.repeated_sum_zero = cancellation.values().all(|&c| c == 0);
    let expected = factorial(n) * BigInt::from(report.composition_sets);
    report.distinct_count_ok = expected.to_usize() == Some(report.distinct);
    Ok(report)
}
