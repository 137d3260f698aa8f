//! Exterior algebra on generators `t_1, ..., t_n` with polynomial
//! coefficients.
//!
//! A basis element `t_S` is keyed by the bitmask of `S` (bit `i - 1` for
//! generator `t_i`), which gives the subsets a total order and makes the
//! disjointness test and the reordering sign a few word operations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::Sign;
use crate::poly::{sum_of_products, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("mismatched number of generators: {0} vs {1}")]
    MismatchedN(u32, u32),
    #[error("subset element {elem} outside [1, {n}]")]
    OutOfRange { elem: u32, n: u32 },
}

/// Largest supported number of generators.
pub const MAX_GENERATORS: u32 = 64;

pub fn subset_mask(elems: &[u32]) -> u64 {
    elems.iter().fold(0u64, |m, &e| m | (1u64 << (e - 1)))
}

pub fn mask_elements(mask: u64) -> Vec<u32> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Sign of reordering `t_S ∧ t_T` into `t_{S ∪ T}` for disjoint `S`, `T`:
/// one transposition per pair `(s, t)` with `s > t`.
pub fn merge_sign(s: u64, t: u64) -> Sign {
    let mut crossings = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        crossings += (s >> bit >> 1).count_ones();
        rest &= rest - 1;
    }
    Sign::from_parity(crossings % 2 == 1)
}

/// `Σ_S c_S · t_S` over subsets `S` of `[n]`; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    n: u32,
    table: BTreeMap<u64, Polynomial>,
}

impl ExteriorElement {
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Self {
            n,
            table: BTreeMap::new(),
        }
    }

    /// The scalar `c` (coefficient on the empty subset).
    pub fn scalar(n: u32, c: Polynomial) -> Self {
        let mut e = Self::zero(n);
        e.add_mask(0, c);
        e
    }

    pub fn generator(n: u32, i: u32) -> Result<Self, ExteriorError> {
        Self::basis(n, &[i], Polynomial::one())
    }

    /// `c · t_S` for the subset given by `elems` (any order; the sign of
    /// sorting them is applied).
    pub fn basis(n: u32, elems: &[u32], c: Polynomial) -> Result<Self, ExteriorError> {
        let mut e = Self::zero(n);
        e.add_term(elems, c)?;
        Ok(e)
    }

    /// Adds `c · t_{e_1} ∧ ... ∧ t_{e_m}`; repeated generators give zero.
    pub fn add_term(&mut self, elems: &[u32], c: Polynomial) -> Result<(), ExteriorError> {
        if let Some(&elem) = elems.iter().find(|&&e| e < 1 || e > self.n) {
            return Err(ExteriorError::OutOfRange { elem, n: self.n });
        }
        let mask = subset_mask(elems);
        if mask.count_ones() as usize != elems.len() {
            return Ok(());
        }
        match crate::combinat::sequence_sign(elems) {
            Sign::Plus => self.add_mask(mask, c),
            Sign::Minus => self.add_mask(mask, -c),
        }
        Ok(())
    }

    fn add_mask(&mut self, mask: u64, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.table.entry(mask) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_ref(&c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Coefficient of `t_S`, with `S` given as sorted elements.
    pub fn coeff(&self, elems: &[u32]) -> Polynomial {
        self.table
            .get(&subset_mask(elems))
            .cloned()
            .unwrap_or_default()
    }

    /// `(subset, coefficient)` pairs in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u32>, &Polynomial)> {
        self.table.iter().map(|(&m, c)| (mask_elements(m), c))
    }

    /// All stored subsets have the same size; `None` for mixed grades or zero.
    pub fn grade(&self) -> Option<u32> {
        let mut grades = self.table.keys().map(|m| m.count_ones());
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> ExteriorElement {
        let mut out = Self::zero(self.n);
        for (&m, p) in &self.table {
            out.add_mask(m, p.scale(c));
        }
        out
    }

    pub fn add(&self, other: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::MismatchedN(self.n, other.n));
        }
        let mut out = self.clone();
        for (&m, p) in &other.table {
            out.add_mask(m, p.clone());
        }
        Ok(out)
    }

    /// Coefficient of `t_{[n]}`.
    pub fn top_coefficient(&self) -> Polynomial {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.table.get(&full).cloned().unwrap_or_default()
    }
}

/// The exterior product. Pairs with overlapping subsets vanish; the others are
/// reordered into `t_{S ∪ T}` with `merge_sign`.
pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, ExteriorError> {
    if a.n != b.n {
        return Err(ExteriorError::MismatchedN(a.n, b.n));
    }
    let mut groups: BTreeMap<u64, Vec<(Rational, Vec<&Polynomial>)>> = BTreeMap::new();
    for (&s, f) in &a.table {
        for (&t, g) in &b.table {
            if s & t == 0 {
                groups
                    .entry(s | t)
                    .or_default()
                    .push((merge_sign(s, t).to_rational(), vec![f, g]));
            }
        }
    }
    let table = groups
        .into_par_iter()
        .map(|(mask, items)| (mask, sum_of_products(&items)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    Ok(ExteriorElement { n: a.n, table })
}

/// `a ∧ a ∧ ... ∧ a` with `m` factors by repeated squaring; `m = 0` is the
/// scalar 1.
pub fn wedge_power(a: &ExteriorElement, m: u32) -> ExteriorElement {
    let mut result = ExteriorElement::scalar(a.n, Polynomial::one());
    if m == 0 {
        return result;
    }
    let mut base = a.clone();
    let mut e = m;
    let mut first = true;
    loop {
        if e & 1 == 1 {
            result = if first {
                first = false;
                base.clone()
            } else {
                wedge(&result, &base).expect("same generator count")
            };
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = wedge(&base, &base).expect("same generator count");
        if base.is_zero() {
            return ExteriorElement::zero(a.n);
        }
    }
    result
}

/// `a ∧ a ∧ ... ∧ a` as a left fold; the reference against which
/// `wedge_power` is checked.
pub fn wedge_power_fold(a: &ExteriorElement, m: u32) -> ExteriorElement {
    (0..m).fold(ExteriorElement::scalar(a.n, Polynomial::one()), |acc, _| {
        wedge(&acc, a).expect("same generator count")
    })
}

pub fn top_coefficient(a: &ExteriorElement) -> Polynomial {
    a.top_coefficient()
}
