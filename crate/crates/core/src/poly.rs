//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are addressed by 1-based index, so `x1, x2, ...` in rendered
//! output line up with the `x_1, ..., x_n` used throughout the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// 1-based variable index.
pub type Var = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable x{0}")]
    UnassignedVariable(Var),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A monomial `x_{v1}^{e1} x_{v2}^{e2} ...`, stored as `(var, exponent)` pairs
/// sorted by variable. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        assert!(v >= 1, "variables are 1-based");
        if e == 0 {
            Self::one()
        } else {
            Self { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs. Repeated
    /// variables have their exponents added.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            assert!(v >= 1, "variables are 1-based");
            *map.entry(v).or_insert(0u32) += e;
        }
        Self {
            exps: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `(var, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.exps.last().map(|&(v, _)| v)
    }

    fn mul_ref(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// Applies a variable substitution `x_v -> x_{map(v)}`.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (map(v), e)))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        self.mul_ref(rhs)
    }
}

/// Graded order: total degree first, ties broken by comparing exponents from
/// the highest-index variable downwards. Under this order `x2 > x1`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let va = if i > 0 { a[i - 1].0 } else { 0 };
            let vb = if j > 0 { b[j - 1].0 } else { 0 };
            let (ea, eb) = match va.cmp(&vb) {
                Ordering::Greater => (a[i - 1].1, 0),
                Ordering::Less => (0, b[j - 1].1),
                Ordering::Equal => (a[i - 1].1, b[j - 1].1),
            };
            match ea.cmp(&eb) {
                Ordering::Equal => {}
                ord => return ord,
            }
            if va >= vb && i > 0 {
                i -= 1;
            }
            if vb >= va && j > 0 {
                j -= 1;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (idx, &(v, e)) in self.exps.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial: a map from monomials to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Returns the constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// `Some(d)` if every term has total degree `d`; the zero polynomial is
    /// reported as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            add_term(&mut self.terms, m.clone(), c.clone());
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            add_term(&mut self.terms, m.clone(), a * c);
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variables via `x_v -> x_{map(v)}`; coinciding images merge.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&map), c.clone())))
    }

    /// Sets `x_from = x_to`.
    pub fn identify(&self, from: Var, to: Var) -> Polynomial {
        self.rename(|v| if v == from { to } else { v })
    }

    /// Exact evaluation at a point given as a variable -> value map.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational, PolyError> {
        self.eval_with(|v| point.get(&v))
    }

    /// Exact evaluation with `values[i - 1]` assigned to `x_i`.
    pub fn eval_at(&self, values: &[Rational]) -> Result<Rational, PolyError> {
        self.eval_with(|v| values.get(v as usize - 1))
    }

    fn eval_with<'a>(
        &self,
        lookup: impl Fn(Var) -> Option<&'a Rational>,
    ) -> Result<Rational, PolyError> {
        let integral = self
            .terms
            .keys()
            .flat_map(Monomial::iter)
            .all(|(v, _)| lookup(v).is_some_and(Rational::is_integer));
        if integral {
            // Integer point: clear denominators once and reuse powers.
            let (terms, denom) = integer_form(self);
            let mut powers: HashMap<(Var, u32), BigInt> = HashMap::new();
            let mut total = BigInt::zero();
            for (m, c) in terms {
                let mut t = c;
                for (v, e) in m.iter() {
                    let x = lookup(v).expect("checked above").numer();
                    t *= &*powers
                        .entry((v, e))
                        .or_insert_with(|| num_traits::pow(x.clone(), e as usize));
                }
                total += t;
            }
            return Ok(Rational::new(total, denom));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = lookup(v).ok_or(PolyError::UnassignedVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// True when swapping any two of the variables `x_1..x_k` negates the
    /// polynomial. Adjacent transpositions generate the symmetric group, so
    /// only those are checked.
    pub fn is_skew_symmetric(&self, k: u32) -> bool {
        (1..k).all(|i| {
            let swapped = self.rename(|v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            });
            swapped == -self
        })
    }

    fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let Some(product) = packed_sum(&[(Rational::one(), vec![self, other])]) {
            return product;
        }
        // Clear denominators, multiply over the integers, then divide once.
        let (p, dp) = integer_form(self);
        let (q, dq) = integer_form(other);
        let denom = dp * dq;
        let numer = mul_small(&p, &q).unwrap_or_else(|| mul_big(&p, &q));
        Polynomial {
            terms: numer
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Rational::new(c, denom.clone())))
                .collect(),
        }
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

fn integer_form(p: &Polynomial) -> (Vec<(&Monomial, BigInt)>, BigInt) {
    let denom = p
        .terms
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| (m, c.numer() * (&denom / c.denom())))
        .collect();
    (terms, denom)
}

fn mul_small(
    p: &[(&Monomial, BigInt)],
    q: &[(&Monomial, BigInt)],
) -> Option<Vec<(Monomial, BigInt)>> {
    let p: Vec<(&Monomial, i128)> = p
        .iter()
        .map(|(m, c)| c.to_i128().map(|c| (*m, c)))
        .collect::<Option<_>>()?;
    let q: Vec<(&Monomial, i128)> = q
        .iter()
        .map(|(m, c)| c.to_i128().map(|c| (*m, c)))
        .collect::<Option<_>>()?;
    let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(p.len() * q.len() / 2 + 1);
    for &(ma, ca) in &p {
        for &(mb, cb) in &q {
            let prod = ca.checked_mul(cb)?;
            let slot = acc.entry(ma * mb).or_insert(0);
            *slot = slot.checked_add(prod)?;
        }
    }
    Some(acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

fn mul_big(p: &[(&Monomial, BigInt)], q: &[(&Monomial, BigInt)]) -> Vec<(Monomial, BigInt)> {
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(p.len() * q.len() / 2 + 1);
    for (ma, ca) in p {
        for (mb, cb) in q {
            *acc.entry(*ma * *mb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    acc.into_iter().collect()
}

/// Exponent field width in the packed monomial encoding.
const PACK_BITS: u32 = 8;
const PACK_VARS: Var = 128 / PACK_BITS;
const PACK_MAX: u32 = (1 << PACK_BITS) - 1;

/// Exponent of `x_v` occupies bits `8(v-1) .. 8v`.
fn pack(m: &Monomial) -> u128 {
    m.exps.iter().fold(0, |acc, &(v, e)| {
        acc | (u128::from(e) << (PACK_BITS * (v - 1)))
    })
}

fn unpack(mut key: u128) -> Monomial {
    let mut exps = Vec::new();
    let mut v = 1;
    while key != 0 {
        let e = (key & u128::from(PACK_MAX)) as u32;
        if e != 0 {
            exps.push((v, e));
        }
        key >>= PACK_BITS;
        v += 1;
    }
    Monomial { exps }
}

fn max_exponent(p: &Polynomial) -> u32 {
    p.terms
        .keys()
        .flat_map(|m| m.exps.iter().map(|&(_, e)| e))
        .max()
        .unwrap_or(0)
}

type Packed = Vec<(u128, i128)>;

/// Integer coefficients on packed monomials, and the denominator cleared.
fn packed_form(p: &Polynomial) -> Option<(Packed, BigInt)> {
    if p.max_var().is_some_and(|v| v > PACK_VARS) {
        return None;
    }
    let (terms, denom) = integer_form(p);
    let terms = terms
        .into_iter()
        .map(|(m, c)| c.to_i128().map(|c| (pack(m), c)))
        .collect::<Option<_>>()?;
    Some((terms, denom))
}

/// Adds `z · Π factors` into `acc`. Exponent fields never carry because
/// callers bound the summed exponents by `PACK_MAX`.
fn accumulate_product(acc: &mut FxHashMap<u128, i128>, factors: &[Packed], z: i128) -> Option<()> {
    let Some((last, init)) = factors.split_last() else {
        let slot = acc.entry(0).or_insert(0);
        *slot = slot.checked_add(z)?;
        return Some(());
    };
    let mut current: Packed = vec![(0, z)];
    for f in init {
        let mut next =
            FxHashMap::with_capacity_and_hasher(current.len() * f.len(), Default::default());
        for &(ka, ca) in &current {
            for &(kb, cb) in f {
                let slot = next.entry(ka + kb).or_insert(0i128);
                *slot = slot.checked_add(ca.checked_mul(cb)?)?;
            }
        }
        current = next.into_iter().filter(|&(_, c)| c != 0).collect();
    }
    acc.reserve(current.len() * last.len());
    for &(ka, ca) in &current {
        for &(kb, cb) in last {
            let slot = acc.entry(ka + kb).or_insert(0);
            *slot = slot.checked_add(ca.checked_mul(cb)?)?;
        }
    }
    Some(())
}

fn packed_sum(items: &[(Rational, Vec<&Polynomial>)]) -> Option<Polynomial> {
    if items
        .iter()
        .any(|(_, fs)| fs.iter().map(|f| max_exponent(f)).sum::<u32>() > PACK_MAX)
    {
        return None;
    }
    let packed: Vec<(Rational, Vec<Packed>)> = items
        .iter()
        .map(|(c, fs)| {
            let mut scale = c.clone();
            let mut factors = Vec::with_capacity(fs.len());
            for f in fs {
                let (terms, d) = packed_form(f)?;
                scale /= Rational::from_integer(d);
                factors.push(terms);
            }
            Some((scale, factors))
        })
        .collect::<Option<_>>()?;
    let denom = packed
        .iter()
        .fold(BigInt::one(), |acc, (s, _)| acc.lcm(s.denom()));
    let multipliers: Vec<i128> = packed
        .iter()
        .map(|(s, _)| (s.numer() * (&denom / s.denom())).to_i128())
        .collect::<Option<_>>()?;
    let acc = packed
        .par_iter()
        .zip(multipliers.par_iter())
        .try_fold(
            FxHashMap::<u128, i128>::default,
            |mut acc, ((_, factors), &z)| {
                if z != 0 {
                    accumulate_product(&mut acc, factors, z)?;
                }
                Some(acc)
            },
        )
        .try_reduce(FxHashMap::default, |x, y| {
            if x.len() < y.len() {
                merge_counts(y, x)
            } else {
                merge_counts(x, y)
            }
        })?;
    Some(Polynomial {
        terms: acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(key, c)| (unpack(key), Rational::new(BigInt::from(c), denom.clone())))
            .collect(),
    })
}

fn merge_counts(
    mut x: FxHashMap<u128, i128>,
    y: FxHashMap<u128, i128>,
) -> Option<FxHashMap<u128, i128>> {
    for (key, c) in y {
        let slot = x.entry(key).or_insert(0);
        *slot = slot.checked_add(c)?;
    }
    Some(x)
}

/// `Σ_i c_i Π_j p_ij`.
///
/// Runs on packed exponents with `i128` coefficients when every variable is
/// at most `x16`, every per-product exponent fits in 8 bits and no
/// intermediate overflows; otherwise falls back to exact `BigRational`
/// arithmetic. Both routes give the same polynomial.
pub fn sum_of_products(items: &[(Rational, Vec<&Polynomial>)]) -> Polynomial {
    packed_sum(items).unwrap_or_else(|| exact_sum_of_products(items))
}

fn exact_sum_of_products(items: &[(Rational, Vec<&Polynomial>)]) -> Polynomial {
    items
        .par_iter()
        .map(|(c, fs)| {
            fs.iter()
                .fold(Polynomial::one(), |acc, f| acc.mul_ref(f))
                .scale(c)
        })
        .reduce(Polynomial::zero, |a, b| a + b)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_ref(&rhs)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(rational(c))
    }
}

/// The Vandermonde product `prod_{1 <= i < j <= n} (x_j - x_i)`.
pub fn vandermonde(n: u32) -> Polynomial {
    assert!(n >= 1, "vandermonde needs n >= 1");
    let mut acc = Polynomial::one();
    for j in 2..=n {
        for i in 1..j {
            acc = &acc * &(Polynomial::var(j) - Polynomial::var(i));
        }
    }
    acc
}

/// Evaluates the Vandermonde product directly at `values` (x_i = values[i-1])
/// without expanding it; usable for n where the n! expansion is out of reach.
pub fn vandermonde_eval(values: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for j in 1..values.len() {
        for i in 0..j {
            acc *= &values[j] - &values[i];
        }
    }
    acc
}

/// Renders terms from the leading (largest) monomial down, e.g. `x2 - x1`,
/// `-3*x1^2*x2 + 1/2`, or `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the rendering produced by `Display`. Whitespace is ignored.
impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ if terms.is_empty() => (false, rest),
                _ => return Err(PolyError::Parse(format!("expected sign before `{rest}`"))),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (coeff, mono) = parse_term(&body[..end])?;
            terms.push((mono, if negative { -coeff } else { coeff }));
            rest = &body[end..];
        }
        Ok(Polynomial::from_terms(terms))
    }
}

fn parse_term(term: &str) -> Result<(Rational, Monomial), PolyError> {
    if term.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut coeff = Rational::one();
    let mut pairs = Vec::new();
    for factor in term.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (v, e) = match var.split_once('^') {
                Some((v, e)) => (v, e),
                None => (var, "1"),
            };
            let v: Var = v
                .parse()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| PolyError::Parse(format!("bad variable `{factor}`")))?;
            let e: u32 = e
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?;
            pairs.push((v, e));
        } else {
            coeff *= parse_rational(factor).map_err(PolyError::Parse)?;
        }
    }
    Ok((coeff, Monomial::from_pairs(pairs)))
}

/// Parses `p/q` or an integer, allowing a leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("bad rational `{s}`"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("bad rational `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(num, den))
}
