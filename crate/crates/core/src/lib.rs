//! Exact hyperpfaffians of skew-symmetric `k`-ary functions.
//!
//! The hyperpfaffian of a skew-symmetric `f` on `[n]^k` (`k` even, `k | n`)
//! is the signed sum, over all partitions of `[n]` into blocks of size `k`, of
//! the products of `f` on the blocks. This crate computes it three ways and
//! checks the identities that connect them:
//!
//! * [`poly`]: sparse multivariate polynomials over the rationals;
//! * [`combinat`]: partitions, oriented partitions, compositions and signs;
//! * [`exterior`]: the exterior algebra with polynomial coefficients;
//! * [`hpf`]: the three hyperpfaffian algorithms;
//! * [`involution`]: weighted oriented partitions and the cancelling involution;
//! * [`compose`]: hyperpfaffians of hyperpfaffians.

pub mod combinat;
pub mod compose;
pub mod exterior;
pub mod hpf;
pub mod involution;
pub mod poly;

pub use combinat::{Composition, CompositionSet, OrientedPartition, Permutation, Sign};
pub use hpf::{
    pf_closed_form, pf_definition, pf_exterior, theorem_coefficient, torelli_constant, HpfError,
    SkewFunction, SkewSpec,
};
pub use poly::{Monomial, Polynomial, Rational};
