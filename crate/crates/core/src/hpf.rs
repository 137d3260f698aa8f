//! Hyperpfaffians of skew-symmetric `k`-ary functions.
//!
//! Three independent evaluation routes are provided:
//!
//! * [`pf_definition`]: the signed sum over all partitions of `[n]` into
//!   blocks of size `k` of the products of block values;
//! * [`pf_exterior`]: the top coefficient of `(Σ_S f(S) t_S)^{n/k}` in the
//!   exterior algebra, divided by `(n/k)!`;
//! * [`pf_closed_form`]: for polynomial `f` of degree `k/2 (n-1)` given by
//!   its coefficients, a signed sum over composition sets times the
//!   Vandermonde product.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::{
    check_shape, critical_degree, enumerate_partitions, enumerate_r, increasing_compositions,
    sequence_sign, CombinatError, Composition, Permutation, Sign,
};
use crate::exterior::{self, ExteriorElement};
use crate::poly::{self, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HpfError {
    #[error(transparent)]
    Shape(#[from] CombinatError),
    #[error("closed form needs degree {expected}, spec has degree {actual}")]
    WrongDegree { expected: u32, actual: u32 },
    #[error("invalid skew spec: {0}")]
    InvalidSpec(String),
    #[error("subset {subset:?} does not have size {k}")]
    WrongSubsetSize { subset: Vec<u32>, k: u32 },
    #[error("order {0} must be even")]
    OddOrder(u32),
    #[error("values are not skew-symmetric at {0:?}")]
    NotSkew(Vec<u32>),
    #[error("{0}")]
    Poly(#[from] poly::PolyError),
}

/// A homogeneous skew-symmetric polynomial in `x_1..x_k`, described by the
/// coefficients `a_r` of `x^r` for strictly increasing exponent tuples `r`.
/// Coefficients of the other monomials follow by skew-symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSpec {
    n: u32,
    k: u32,
    degree: u32,
    coeffs: BTreeMap<Composition, Rational>,
}

impl SkewSpec {
    pub fn new(
        n: u32,
        k: u32,
        degree: u32,
        coeffs: impl IntoIterator<Item = (Composition, Rational)>,
    ) -> Result<Self, HpfError> {
        check_shape(n, k)?;
        let mut map = BTreeMap::new();
        for (r, a) in coeffs {
            if r.parts().len() as u32 != k {
                return Err(HpfError::InvalidSpec(format!(
                    "({r}) does not have {k} parts"
                )));
            }
            if !r.is_strictly_increasing() {
                return Err(HpfError::InvalidSpec(format!(
                    "({r}) is not strictly increasing"
                )));
            }
            if r.sum() != degree {
                return Err(HpfError::InvalidSpec(format!(
                    "({r}) sums to {}, expected degree {degree}",
                    r.sum()
                )));
            }
            if a.is_zero() {
                return Err(HpfError::InvalidSpec(format!("zero coefficient for ({r})")));
            }
            if map.insert(r.clone(), a).is_some() {
                return Err(HpfError::InvalidSpec(format!("duplicate key ({r})")));
            }
        }
        Ok(Self {
            n,
            k,
            degree,
            coeffs: map,
        })
    }

    /// The spec of `f(x, y) = (y - x)^{n-1}`: `a_(i, n-1-i) = (-1)^i C(n-1, i)`.
    pub fn torelli(n: u32) -> Result<Self, HpfError> {
        if !n.is_multiple_of(2) {
            return Err(HpfError::OddOrder(n));
        }
        let coeffs = (0..n / 2).map(|i| {
            let c = Rational::from_integer(binomial(n - 1, i));
            let a = if i % 2 == 0 { c } else { -c };
            (Composition(vec![i, n - 1 - i]), a)
        });
        Self::new(n, 2, n - 1, coeffs)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Composition, Rational> {
        &self.coeffs
    }

    /// `a_r`, zero when `r` is not listed.
    pub fn coeff(&self, r: &Composition) -> Rational {
        self.coeffs.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_critical_degree(&self) -> bool {
        self.degree == critical_degree(self.n, self.k)
    }

    /// The full polynomial in `x_1..x_k`.
    pub fn expand(&self) -> Polynomial {
        skew_expand(self)
    }

    /// `f(x_{b_1}, ..., x_{b_k})` for a block of `k` indices.
    pub fn instantiate(&self, block: &[u32]) -> Result<Polynomial, HpfError> {
        if block.len() as u32 != self.k {
            return Err(HpfError::WrongSubsetSize {
                subset: block.to_vec(),
                k: self.k,
            });
        }
        instantiate(&self.expand(), block)
    }

    pub fn to_skew_function(&self) -> SkewFunction {
        SkewFunction::from_polynomial(self.n, self.k, &self.expand())
            .expect("spec shape already validated")
    }
}

/// `Σ_r Σ_σ sign(σ) a_r x^{σ∘r}`. Parts of each `r` are distinct, so the `k!`
/// permuted monomials never collide.
pub fn skew_expand(spec: &SkewSpec) -> Polynomial {
    use itertools::Itertools;
    let k = spec.k as usize;
    let mut terms = Vec::with_capacity(spec.coeffs.len() * (1..=k).product::<usize>());
    for (r, a) in &spec.coeffs {
        for perm in (0..k).permutations(k) {
            let mono = Monomial::from_pairs(
                perm.iter()
                    .enumerate()
                    .map(|(slot, &src)| (slot as u32 + 1, r.0[src])),
            );
            let sign = sequence_sign(&perm);
            terms.push((mono, sign.to_rational() * a));
        }
    }
    Polynomial::from_terms(terms)
}

/// Substitutes `x_j -> x_{block[j-1]}`. The polynomial may only use the
/// variables `x_1..x_{block.len()}`.
pub fn instantiate(f: &Polynomial, block: &[u32]) -> Result<Polynomial, HpfError> {
    if let Some(v) = f.max_var() {
        if v as usize > block.len() {
            return Err(HpfError::WrongSubsetSize {
                subset: block.to_vec(),
                k: v,
            });
        }
    }
    Ok(f.rename(|v| block[v as usize - 1]))
}

/// A skew-symmetric function on `[n]^k`, stored by its values on sorted
/// `k`-subsets. Values at other arguments follow by sign, and vanish when an
/// argument repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFunction {
    n: u32,
    k: u32,
    values: HashMap<u64, Polynomial>,
}

impl SkewFunction {
    /// Builds the function from its values on sorted subsets.
    pub fn from_fn(
        n: u32,
        k: u32,
        mut value: impl FnMut(&[u32]) -> Polynomial,
    ) -> Result<Self, HpfError> {
        use itertools::Itertools;
        if k == 0 || k > n || n > exterior::MAX_GENERATORS {
            return Err(CombinatError::InvalidShape { n, k }.into());
        }
        let values = (1..=n)
            .combinations(k as usize)
            .map(|b| (exterior::subset_mask(&b), value(&b)))
            .collect();
        Ok(Self { n, k, values })
    }

    /// `f(B) = p(x_{b_1}, ..., x_{b_k})` for a polynomial `p` in `x_1..x_k`.
    pub fn from_polynomial(n: u32, k: u32, p: &Polynomial) -> Result<Self, HpfError> {
        if p.max_var().is_some_and(|v| v > k) {
            return Err(HpfError::InvalidSpec(format!(
                "polynomial uses variables beyond x{k}"
            )));
        }
        Self::from_fn(n, k, |b| p.rename(|v| b[v as usize - 1]))
    }

    /// Builds the function from values given on every ordered tuple of
    /// distinct arguments, checking skew-symmetry along the way.
    pub fn from_all_orders(
        n: u32,
        k: u32,
        values: &BTreeMap<Vec<u32>, Polynomial>,
    ) -> Result<Self, HpfError> {
        use itertools::Itertools;
        let f = Self::from_fn(n, k, |b| values.get(b).cloned().unwrap_or_default())?;
        for b in (1..=n).combinations(k as usize) {
            let base = f.value(&b);
            for tuple in b.iter().copied().permutations(k as usize) {
                let given = values.get(&tuple).cloned().unwrap_or_default();
                let expected = match sequence_sign(&tuple) {
                    Sign::Plus => base.clone(),
                    Sign::Minus => -&base,
                };
                if given != expected {
                    return Err(HpfError::NotSkew(tuple));
                }
            }
        }
        Ok(f)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `f(i_1, ..., i_k)` for arguments in any order.
    pub fn value(&self, args: &[u32]) -> Polynomial {
        assert_eq!(args.len() as u32, self.k, "expected {} arguments", self.k);
        let mask = exterior::subset_mask(args);
        if mask.count_ones() != self.k {
            return Polynomial::zero();
        }
        let v = self.values.get(&mask).cloned().unwrap_or_default();
        match sequence_sign(args) {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    /// Borrowed value on a sorted subset; `None` where the value is zero.
    fn sorted_value(&self, block: &[u32]) -> Option<&Polynomial> {
        self.values.get(&exterior::subset_mask(block))
    }

    /// Values on sorted subsets, in lex order of the subsets.
    pub fn sorted_values(&self) -> Vec<(Vec<u32>, &Polynomial)> {
        let mut out: Vec<_> = self
            .values
            .iter()
            .map(|(&m, p)| (exterior::mask_elements(m), p))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The function restricted to the index set `subset` and relabelled to
    /// `[subset.len()]` preserving order.
    pub fn restrict(&self, subset: &[u32]) -> Result<SkewFunction, HpfError> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        SkewFunction::from_fn(sorted.len() as u32, self.k, |b| {
            let mapped: Vec<u32> = b.iter().map(|&i| sorted[i as usize - 1]).collect();
            self.value(&mapped)
        })
    }

    /// Evaluates every value at `x_i = point[i-1]`.
    pub fn eval_at(&self, point: &[Rational]) -> Result<SkewFunction, HpfError> {
        let values = self
            .values
            .iter()
            .map(|(&m, p)| Ok((m, Polynomial::constant(p.eval_at(point)?))))
            .collect::<Result<_, HpfError>>()?;
        Ok(SkewFunction {
            n: self.n,
            k: self.k,
            values,
        })
    }

    fn all_integral(&self) -> bool {
        self.values
            .values()
            .all(|p| p.terms().all(|(_, c)| c.is_integer()))
    }
}

impl fmt::Display for SkewFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, v) in self.sorted_values() {
            let args: Vec<String> = b.iter().map(u32::to_string).collect();
            writeln!(f, "f({}) = {v}", args.join(","))?;
        }
        Ok(())
    }
}

/// Signed sum over all equal-block partitions of the products of block values.
pub fn pf_definition(f: &SkewFunction) -> Result<Polynomial, HpfError> {
    let partitions: Vec<_> = enumerate_partitions(f.n, f.k)?.collect();
    let items: Vec<(Rational, Vec<&Polynomial>)> = partitions
        .iter()
        .filter_map(|tau| {
            let values = tau
                .blocks()
                .iter()
                .map(|b| f.sorted_value(b))
                .collect::<Option<_>>()?;
            Some((tau.sign().to_rational(), values))
        })
        .collect();
    Ok(poly::sum_of_products(&items))
}

/// The element `Σ_S f(S) t_S` over all `k`-subsets `S`.
pub fn exterior_form(f: &SkewFunction) -> ExteriorElement {
    let mut a = ExteriorElement::zero(f.n);
    for (b, v) in f.sorted_values() {
        a.add_term(&b, v.clone()).expect("subsets lie in [n]");
    }
    a
}

/// Top coefficient of `(Σ_S f(S) t_S)^{n/k}` divided by `(n/k)!`.
pub fn pf_exterior(f: &SkewFunction) -> Result<Polynomial, HpfError> {
    check_shape(f.n, f.k)?;
    let m = f.n / f.k;
    let top = exterior::wedge_power(&exterior_form(f), m).top_coefficient();
    let fact = factorial(m);
    if f.all_integral() {
        // Each partition is counted once per ordering of its blocks, so the
        // integer top coefficient must be divisible by (n/k)!.
        assert!(
            top.terms().all(|(_, c)| (c.numer() % &fact).is_zero()),
            "top coefficient not divisible by {fact}"
        );
    }
    Ok(top.scale(&Rational::new(BigInt::one(), fact)))
}

/// `Σ_β sign(β) Π_i a_{r_i}` over all composition sets `β`.
pub fn theorem_coefficient(spec: &SkewSpec) -> Result<Rational, HpfError> {
    let expected = critical_degree(spec.n, spec.k);
    if spec.degree != expected {
        return Err(HpfError::WrongDegree {
            expected,
            actual: spec.degree,
        });
    }
    let mut total = Rational::zero();
    for beta in enumerate_r(spec.n, spec.k)? {
        let product = beta
            .compositions()
            .iter()
            .fold(Rational::one(), |acc, r| acc * spec.coeff(r));
        total += beta.sign().to_rational() * product;
    }
    Ok(total)
}

/// `theorem_coefficient(spec) · Π_{i<j} (x_j - x_i)`.
pub fn pf_closed_form(spec: &SkewSpec) -> Result<Polynomial, HpfError> {
    let c = theorem_coefficient(spec)?;
    Ok(poly::vandermonde(spec.n).scale(&c))
}

/// `(-1)^{C(n/2, 2)} Π_{i < n/2} C(n-1, i)`.
pub fn torelli_constant(n: u32) -> Result<Rational, HpfError> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(HpfError::OddOrder(n));
    }
    let half = n / 2;
    let product = (0..half).fold(BigInt::one(), |acc, i| acc * binomial(n - 1, i));
    let pairs = half * (half.saturating_sub(1)) / 2;
    let c = Rational::from_integer(product);
    Ok(if pairs.is_multiple_of(2) { c } else { -c })
}

/// `g(i_1, ..., i_k) = f(σ(i_1), ..., σ(i_k))`.
pub fn relabel(f: &SkewFunction, sigma: &Permutation) -> Result<SkewFunction, HpfError> {
    if sigma.len() as u32 != f.n {
        return Err(HpfError::InvalidSpec(format!(
            "permutation of length {} applied to a function on [{}]",
            sigma.len(),
            f.n
        )));
    }
    SkewFunction::from_fn(f.n, f.k, |b| {
        let image: Vec<u32> = b.iter().map(|&i| sigma.apply(i)).collect();
        f.value(&image)
    })
}

/// The three routes evaluated at the integer point `x_i = point[i-1]`:
/// `[definition, exterior, closed form]`. Block values are evaluated before
/// any product is formed, so this stays cheap where the symbolic expansion
/// does not.
pub fn evaluate_three_ways(spec: &SkewSpec, point: &[Rational]) -> Result<[Rational; 3], HpfError> {
    let expanded = spec.expand();
    let f = SkewFunction::from_fn(spec.n, spec.k, |b| {
        let args: Vec<Rational> = b.iter().map(|&i| point[i as usize - 1].clone()).collect();
        Polynomial::constant(expanded.eval_at(&args).expect("k arguments"))
    })?;
    let as_scalar = |p: Polynomial| p.as_constant().expect("constant values give a constant");
    let def = as_scalar(pf_definition(&f)?);
    let ext = as_scalar(pf_exterior(&f)?);
    let closed = theorem_coefficient(spec)? * poly::vandermonde_eval(&point[..spec.n as usize]);
    Ok([def, ext, closed])
}

/// All strictly increasing `k`-tuples summing to `degree`, i.e. the possible
/// keys of a spec of that degree.
pub fn spec_keys(k: u32, degree: u32) -> Vec<Composition> {
    increasing_compositions(k, degree)
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, r: u32) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
