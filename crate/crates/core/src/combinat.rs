//! Permutations, equal-block set partitions, oriented partitions, increasing
//! compositions and composition sets, each with its sign.
//!
//! Every enumerator returns its objects in lexicographic order of their
//! canonical representation, so printed listings are reproducible.

use std::fmt;
use std::ops::{Mul, Neg};

use itertools::Itertools;
use num_traits::One;
use thiserror::Error;

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("invalid shape n={n}, k={k}: k must be positive and even and divide n")]
    InvalidShape { n: u32, k: u32 },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Sign of a sequence of distinct values relative to its sorted order, that is
/// `(-1)^inversions`.
pub fn sequence_sign<T: Ord>(seq: &[T]) -> Sign {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    Sign::from_parity(inversions % 2 == 1)
}

/// Checks `k > 0`, `k` even and `k | n`.
pub fn check_shape(n: u32, k: u32) -> Result<(), CombinatError> {
    if k == 0 || !k.is_multiple_of(2) || n == 0 || !n.is_multiple_of(k) {
        return Err(CombinatError::InvalidShape { n, k });
    }
    Ok(())
}

/// A bijection on `{1, ..., m}` stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, CombinatError> {
        let m = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v < 1 || v > m || seen[(v - 1) as usize] {
                return Err(CombinatError::NotAPermutation(images));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Self { images })
    }

    /// Accepts a bijection on `{0, ..., m-1}` and shifts it to `{1, ..., m}`.
    pub fn from_zero_based(images: &[u32]) -> Result<Self, CombinatError> {
        Self::new(images.iter().map(|&v| v + 1).collect())
    }

    pub fn identity(m: u32) -> Self {
        Self {
            images: (1..=m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> Sign {
        sequence_sign(&self.images)
    }
}

/// `(-1)^{inversions}` of a permutation.
pub fn perm_sign(p: &Permutation) -> Sign {
    p.sign()
}

/// An element of the set of partitions of `[n]` into blocks of size `k`.
/// Blocks are sorted and ordered by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqualBlockPartition {
    n: u32,
    k: u32,
    blocks: Vec<Vec<u32>>,
}

impl EqualBlockPartition {
    pub fn new(n: u32, k: u32, blocks: Vec<Vec<u32>>) -> Result<Self, CombinatError> {
        check_shape(n, k)?;
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        check_cover(n, k, &blocks)?;
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { n, k, blocks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Sign of the concatenation of the sorted blocks in canonical order.
    pub fn sign(&self) -> Sign {
        sequence_sign(&self.blocks.concat())
    }
}

pub fn partition_sign(tau: &EqualBlockPartition) -> Sign {
    tau.sign()
}

/// A partition of `[n]` into size-`k` blocks, each carrying a linear order.
/// Blocks are ordered by the minimum of their underlying set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedPartition {
    n: u32,
    k: u32,
    blocks: Vec<Vec<u32>>,
}

impl OrientedPartition {
    pub fn new(n: u32, k: u32, mut blocks: Vec<Vec<u32>>) -> Result<Self, CombinatError> {
        check_shape(n, k)?;
        check_cover(n, k, &blocks)?;
        blocks.sort_by_key(|b| *b.iter().min().expect("blocks are nonempty"));
        Ok(Self { n, k, blocks })
    }

    pub(crate) fn from_canonical(n: u32, k: u32, blocks: Vec<Vec<u32>>) -> Self {
        Self { n, k, blocks }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// The concatenation of all blocks, a permutation of `[n]`.
    pub fn concatenation(&self) -> Vec<u32> {
        self.blocks.concat()
    }

    /// Sign of the concatenated blocks. Since `k` is even, moving a whole
    /// block past another is an even permutation, so block order is irrelevant.
    pub fn sign(&self) -> Sign {
        sequence_sign(&self.concatenation())
    }

    /// Forgets the orientation of every block.
    pub fn underlying(&self) -> EqualBlockPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable();
                s
            })
            .collect();
        EqualBlockPartition {
            n: self.n,
            k: self.k,
            blocks,
        }
    }

    /// Signs of the permutations that sort each block.
    pub fn block_sort_signs(&self) -> Vec<Sign> {
        self.blocks.iter().map(|b| sequence_sign(b)).collect()
    }

    /// Position of element `e` as `(block, slot)`.
    pub fn position(&self, e: u32) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .find_map(|(bi, b)| b.iter().position(|&x| x == e).map(|slot| (bi, slot)))
    }
}

impl fmt::Display for OrientedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({})", b.iter().join(","))?;
        }
        write!(f, "}}")
    }
}

pub fn oriented_sign(rho: &OrientedPartition) -> Sign {
    rho.sign()
}

fn check_cover(n: u32, k: u32, blocks: &[Vec<u32>]) -> Result<(), CombinatError> {
    let mut seen = vec![false; n as usize];
    if blocks.len() as u32 != n / k {
        return Err(CombinatError::InvalidPartition(format!(
            "expected {} blocks, got {}",
            n / k,
            blocks.len()
        )));
    }
    for b in blocks {
        if b.len() as u32 != k {
            return Err(CombinatError::InvalidPartition(format!(
                "block {b:?} does not have size {k}"
            )));
        }
        for &e in b {
            if e < 1 || e > n || seen[(e - 1) as usize] {
                return Err(CombinatError::InvalidPartition(format!(
                    "element {e} out of range or repeated"
                )));
            }
            seen[(e - 1) as usize] = true;
        }
    }
    Ok(())
}

/// Enumerates all partitions of `[n]` into blocks of size `k`, in lex order.
pub fn enumerate_partitions(
    n: u32,
    k: u32,
) -> Result<impl Iterator<Item = EqualBlockPartition>, CombinatError> {
    check_shape(n, k)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_rec((1..=n).collect(), k, &mut current, &mut |blocks| {
        out.push(EqualBlockPartition {
            n,
            k,
            blocks: blocks.to_vec(),
        })
    });
    Ok(out.into_iter())
}

fn partitions_rec(
    remaining: Vec<u32>,
    k: u32,
    current: &mut Vec<Vec<u32>>,
    emit: &mut dyn FnMut(&[Vec<u32>]),
) {
    let Some((&first, rest)) = remaining.split_first() else {
        emit(current);
        return;
    };
    for others in rest.iter().copied().combinations(k as usize - 1) {
        let mut block = Vec::with_capacity(k as usize);
        block.push(first);
        block.extend_from_slice(&others);
        let left: Vec<u32> = rest
            .iter()
            .copied()
            .filter(|e| !others.contains(e))
            .collect();
        current.push(block);
        partitions_rec(left, k, current, emit);
        current.pop();
    }
}

/// Enumerates all oriented partitions of `[n]` into blocks of size `k`, in lex
/// order of the block tuples.
pub fn enumerate_oriented(
    n: u32,
    k: u32,
) -> Result<impl Iterator<Item = OrientedPartition>, CombinatError> {
    check_shape(n, k)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    oriented_rec((1..=n).collect(), k, &mut current, &mut |blocks| {
        out.push(OrientedPartition {
            n,
            k,
            blocks: blocks.to_vec(),
        })
    });
    Ok(out.into_iter())
}

fn oriented_rec(
    remaining: Vec<u32>,
    k: u32,
    current: &mut Vec<Vec<u32>>,
    emit: &mut dyn FnMut(&[Vec<u32>]),
) {
    let Some((&first, rest)) = remaining.split_first() else {
        emit(current);
        return;
    };
    let mut candidates: Vec<Vec<u32>> = rest
        .iter()
        .copied()
        .combinations(k as usize - 1)
        .flat_map(|others| {
            std::iter::once(first)
                .chain(others)
                .permutations(k as usize)
        })
        .collect();
    candidates.sort_unstable();
    for block in candidates {
        let left: Vec<u32> = rest
            .iter()
            .copied()
            .filter(|e| !block.contains(e))
            .collect();
        current.push(block);
        oriented_rec(left, k, current, emit);
        current.pop();
    }
}

/// A composition into `k` parts. Members of the increasing family used for
/// coefficients are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

/// Total degree `k/2 * (n-1)` of the polynomials whose hyperpfaffian is a
/// multiple of the Vandermonde product.
pub fn critical_degree(n: u32, k: u32) -> u32 {
    k / 2 * (n - 1)
}

/// All strictly increasing `k`-tuples of nonnegative integers summing to
/// `total`, in lex order.
pub fn increasing_compositions(k: u32, total: u32) -> Vec<Composition> {
    fn rec(k: u32, total: u32, min: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if k == 0 {
            if total == 0 {
                out.push(Composition(current.clone()));
            }
            return;
        }
        // The smallest completion from `v` is v + (v+1) + ... + (v+k-1).
        let mut v = min;
        while k * v + k * (k - 1) / 2 <= total {
            current.push(v);
            rec(k - 1, total - v, v + 1, current, out);
            current.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, total, 0, &mut Vec::new(), &mut out);
    out
}

/// The increasing compositions of `k/2 * (n-1)` into `k` distinct parts.
pub fn enumerate_gamma(n: u32, k: u32) -> Result<impl Iterator<Item = Composition>, CombinatError> {
    if k == 0 || !k.is_multiple_of(2) || n == 0 {
        return Err(CombinatError::InvalidShape { n, k });
    }
    Ok(increasing_compositions(k, critical_degree(n, k)).into_iter())
}

/// A set of `n/k` compositions whose parts are exactly `{0, ..., n-1}`,
/// ordered by smallest part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionSet {
    n: u32,
    k: u32,
    compositions: Vec<Composition>,
}

impl CompositionSet {
    pub fn new(n: u32, k: u32, mut compositions: Vec<Composition>) -> Result<Self, CombinatError> {
        check_shape(n, k)?;
        let target = critical_degree(n, k);
        for c in &compositions {
            if c.0.len() as u32 != k || !c.is_strictly_increasing() || c.sum() != target {
                return Err(CombinatError::InvalidPartition(format!(
                    "composition ({c}) is not in the increasing family for n={n}, k={k}"
                )));
            }
        }
        let blocks: Vec<Vec<u32>> = compositions
            .iter()
            .map(|c| c.0.iter().map(|&p| p + 1).collect())
            .collect();
        check_cover(n, k, &blocks)?;
        compositions.sort_by_key(|c| c.0[0]);
        Ok(Self { n, k, compositions })
    }

    pub(crate) fn from_canonical(n: u32, k: u32, compositions: Vec<Composition>) -> Self {
        Self { n, k, compositions }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    /// Sign of the concatenated compositions, a permutation of `{0..n-1}`.
    pub fn sign(&self) -> Sign {
        let seq: Vec<u32> = self
            .compositions
            .iter()
            .flat_map(|c| c.0.iter().copied())
            .collect();
        sequence_sign(&seq)
    }
}

impl fmt::Display for CompositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .compositions
            .iter()
            .map(|c| format!("a_{{{c}}}"))
            .join(" ");
        write!(f, "{parts}")
    }
}

pub fn beta_sign(beta: &CompositionSet) -> Sign {
    beta.sign()
}

/// Enumerates all composition sets for `(n, k)` in lex order.
pub fn enumerate_r(n: u32, k: u32) -> Result<impl Iterator<Item = CompositionSet>, CombinatError> {
    check_shape(n, k)?;
    // Only compositions with every part below n can take part.
    let gamma: Vec<Composition> = enumerate_gamma(n, k)?
        .filter(|c| c.0.iter().all(|&p| p < n))
        .collect();
    let mut out = Vec::new();
    let mut used = vec![false; n as usize];
    let mut current = Vec::new();
    r_rec(n, k, &gamma, &mut used, &mut current, &mut out);
    Ok(out.into_iter())
}

fn r_rec(
    n: u32,
    k: u32,
    gamma: &[Composition],
    used: &mut [bool],
    current: &mut Vec<Composition>,
    out: &mut Vec<CompositionSet>,
) {
    let Some(smallest) = used.iter().position(|&u| !u) else {
        out.push(CompositionSet::from_canonical(n, k, current.clone()));
        return;
    };
    for c in gamma {
        if c.0[0] as usize != smallest || c.0.iter().any(|&p| used[p as usize]) {
            continue;
        }
        for &p in &c.0 {
            used[p as usize] = true;
        }
        current.push(c.clone());
        r_rec(n, k, gamma, used, current, out);
        current.pop();
        for &p in &c.0 {
            used[p as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn factorial(n: u32) -> usize {
        (1..=n as usize).product()
    }

    /// Sign via cycle decomposition, independent of inversion counting.
    fn cycle_sign(p: &Permutation) -> Sign {
        let m = p.len();
        let mut seen = vec![false; m];
        let mut odd = false;
        for start in 0..m {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = (p.images()[i] - 1) as usize;
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                odd = !odd;
            }
        }
        Sign::from_parity(odd)
    }

    fn shapes() -> Vec<(u32, u32)> {
        vec![
            (2, 2),
            (4, 2),
            (6, 2),
            (8, 2),
            (4, 4),
            (8, 4),
            (6, 6),
            (8, 8),
        ]
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(Permutation::identity(5).sign(), Sign::Plus);
        assert_eq!(Permutation::new(vec![2, 1]).unwrap().sign(), Sign::Minus);
        assert_eq!(
            Permutation::from_zero_based(&[0, 3, 1, 2]).unwrap().sign(),
            Sign::Plus
        );
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(enumerate_partitions(3, 2).is_err());
        assert!(enumerate_partitions(6, 3).is_err());
        assert!(enumerate_oriented(6, 4).is_err());
        assert!(enumerate_r(0, 2).is_err());
        assert!(enumerate_gamma(4, 3).is_err());
    }

    #[test]
    fn small_partitions() {
        let p: Vec<_> = enumerate_partitions(2, 2).unwrap().collect();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].blocks(), &[vec![1, 2]]);
        let p: Vec<_> = enumerate_partitions(4, 2).unwrap().collect();
        let blocks: Vec<_> = p.iter().map(|t| t.blocks().to_vec()).collect();
        assert_eq!(
            blocks,
            vec![
                vec![vec![1, 2], vec![3, 4]],
                vec![vec![1, 3], vec![2, 4]],
                vec![vec![1, 4], vec![2, 3]],
            ]
        );
        let signs: Vec<_> = p.iter().map(partition_sign).collect();
        assert_eq!(signs, vec![Sign::Plus, Sign::Minus, Sign::Plus]);
        assert_eq!(enumerate_partitions(12, 4).unwrap().count(), 5775);
    }

    #[test]
    fn small_oriented() {
        assert_eq!(enumerate_oriented(2, 2).unwrap().count(), 2);
        assert_eq!(enumerate_oriented(4, 2).unwrap().count(), 12);
        assert_eq!(enumerate_oriented(4, 4).unwrap().count(), 24);
        let rho = OrientedPartition::new(4, 2, vec![vec![3, 4], vec![1, 2]]).unwrap();
        assert_eq!(rho.sign(), Sign::Plus);
        let rho = OrientedPartition::new(4, 2, vec![vec![2, 1], vec![3, 4]]).unwrap();
        assert_eq!(rho.sign(), Sign::Minus);
    }

    #[test]
    fn three_block_partition_is_negative() {
        let rho = OrientedPartition::new(
            12,
            4,
            vec![vec![9, 1, 2, 4], vec![5, 3, 8, 10], vec![11, 12, 7, 6]],
        )
        .unwrap();
        assert_eq!(oriented_sign(&rho), Sign::Minus);
    }

    #[test]
    fn enumeration_counts_match_closed_forms() {
        for (n, k) in shapes() {
            let blocks = n / k;
            let pi = factorial(n) / (factorial(blocks) * factorial(k).pow(blocks));
            assert_eq!(
                enumerate_partitions(n, k).unwrap().count(),
                pi,
                "Pi {n},{k}"
            );
            let t = factorial(n) / factorial(blocks);
            assert_eq!(enumerate_oriented(n, k).unwrap().count(), t, "T {n},{k}");
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        for (n, k) in [(6, 2), (8, 4)] {
            let p: Vec<_> = enumerate_partitions(n, k).unwrap().collect();
            assert!(p.windows(2).all(|w| w[0].blocks() < w[1].blocks()));
            let t: Vec<_> = enumerate_oriented(n, k).unwrap().collect();
            assert!(t.windows(2).all(|w| w[0].blocks() < w[1].blocks()));
        }
    }

    #[test]
    fn forgetting_orientation_is_uniform() {
        for (n, k) in [(4, 2), (6, 2), (4, 4), (8, 4)] {
            let mut fibres: HashMap<EqualBlockPartition, usize> = HashMap::new();
            for rho in enumerate_oriented(n, k).unwrap() {
                *fibres.entry(rho.underlying()).or_default() += 1;
            }
            let expected = factorial(k).pow(n / k);
            assert_eq!(fibres.len(), enumerate_partitions(n, k).unwrap().count());
            assert!(fibres.values().all(|&c| c == expected));
        }
    }

    #[test]
    fn oriented_sign_factors_through_block_sorts() {
        for (n, k) in [(2, 2), (4, 2), (6, 2), (4, 4)] {
            for rho in enumerate_oriented(n, k).unwrap() {
                let product = rho
                    .block_sort_signs()
                    .into_iter()
                    .fold(rho.underlying().sign(), |acc, s| acc * s);
                assert_eq!(rho.sign(), product, "{rho}");
            }
        }
    }

    #[test]
    fn gamma_small() {
        let g: Vec<_> = enumerate_gamma(4, 2).unwrap().collect();
        assert_eq!(g, vec![Composition(vec![0, 3]), Composition(vec![1, 2])]);
        let g: Vec<_> = enumerate_gamma(2, 2).unwrap().collect();
        assert_eq!(g, vec![Composition(vec![0, 1])]);
        let g: Vec<_> = enumerate_gamma(4, 4).unwrap().collect();
        assert_eq!(g, vec![Composition(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn gamma_matches_brute_force() {
        for (n, k) in [(6, 2), (8, 4), (12, 4), (6, 6)] {
            let d = critical_degree(n, k);
            let brute: Vec<Composition> = (0..=d)
                .combinations(k as usize)
                .filter(|c| c.iter().sum::<u32>() == d)
                .map(Composition)
                .collect();
            let g: Vec<_> = enumerate_gamma(n, k).unwrap().collect();
            assert_eq!(g, brute);
        }
    }

    #[test]
    fn composition_sets_small() {
        let r: Vec<_> = enumerate_r(4, 2).unwrap().collect();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r[0].compositions(),
            &[Composition(vec![0, 3]), Composition(vec![1, 2])]
        );
        assert_eq!(r[0].sign(), Sign::Plus);
        let r: Vec<_> = enumerate_r(2, 2).unwrap().collect();
        assert_eq!(r.len(), 1);
        assert_eq!(beta_sign(&r[0]), Sign::Plus);
        for n in [2u32, 4, 6, 8, 10] {
            let r: Vec<_> = enumerate_r(n, 2).unwrap().collect();
            let expected: Vec<_> = (0..n / 2)
                .map(|i| Composition(vec![i, n - 1 - i]))
                .collect();
            assert_eq!(r.len(), 1);
            assert_eq!(r[0].compositions(), expected.as_slice());
            assert_eq!(r[0].sign(), Sign::Plus);
        }
        let r: Vec<_> = enumerate_r(12, 4).unwrap().collect();
        assert_eq!(r.len(), 32);
        assert_eq!(
            r[0].compositions(),
            &[
                Composition(vec![0, 1, 10, 11]),
                Composition(vec![2, 3, 8, 9]),
                Composition(vec![4, 5, 6, 7])
            ]
        );
        assert_eq!(r[0].sign(), Sign::Plus);
    }

    #[test]
    fn composition_sets_cover_all_parts() {
        for (n, k) in [(8, 2), (8, 4), (12, 4), (12, 6), (6, 6)] {
            for beta in enumerate_r(n, k).unwrap() {
                let mut parts: Vec<u32> = beta
                    .compositions()
                    .iter()
                    .flat_map(|c| c.0.clone())
                    .collect();
                parts.sort_unstable();
                assert_eq!(parts, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn composition_set_validation() {
        assert!(
            CompositionSet::new(4, 2, vec![Composition(vec![0, 3]), Composition(vec![0, 3])])
                .is_err()
        );
        assert!(
            CompositionSet::new(4, 2, vec![Composition(vec![3, 0]), Composition(vec![1, 2])])
                .is_err()
        );
        let b = CompositionSet::new(4, 2, vec![Composition(vec![1, 2]), Composition(vec![0, 3])])
            .unwrap();
        assert_eq!(b.compositions()[0], Composition(vec![0, 3]));
    }

    proptest! {
        #[test]
        fn inversion_sign_matches_cycle_sign(p in Just((1..=9u32).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::new(p).unwrap();
            prop_assert_eq!(p.sign(), cycle_sign(&p));
            prop_assert_eq!(p.inverse().sign(), p.sign());
        }

        #[test]
        fn oriented_sign_ignores_block_order(
            idx in 0usize..20160,
            order in Just(vec![0usize, 1]).prop_shuffle(),
        ) {
            let rho = enumerate_oriented(8, 4).unwrap().nth(idx).unwrap();
            let shuffled: Vec<Vec<u32>> = order.iter().map(|&i| rho.blocks()[i].clone()).collect();
            prop_assert_eq!(sequence_sign(&shuffled.concat()), rho.sign());
        }

        #[test]
        fn beta_sign_ignores_block_order(
            idx in 0usize..32,
            order in Just(vec![0usize, 1, 2]).prop_shuffle(),
        ) {
            let beta = enumerate_r(12, 4).unwrap().nth(idx).unwrap();
            let seq: Vec<u32> = order.iter().flat_map(|&i| beta.compositions()[i].0.clone()).collect();
            prop_assert_eq!(sequence_sign(&seq), beta.sign());
        }
    }
}
