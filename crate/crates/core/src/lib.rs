//! Classification of finite-codimension ideals in monomial curve rings.
//!
//! The ambient ring is `k[[t^S]]` for a numerical semigroup `S`: the complete
//! local ring spanned by the monomials `t^s`, `s` in the semigroup. Every
//! ideal of fixed codimension `r` is sorted by its *order set* (the set of
//! orders of its elements), and each order set carries a parametric family of
//! ideals given by monic generators whose tail coefficients may satisfy
//! polynomial conditions. This crate computes all of it exactly:
//!
//! - [`semigroup`]: numerical semigroups, gaps, conductor, membership.
//! - [`gamma`]: order sets (semigroup modules) in canonical gap-set form,
//!   minimal generators, gap-block decomposition.
//! - [`enumerate`]: all order sets of codimension `r`, by successive
//!   generator removal and by an independent brute-force search.
//! - [`symbolic`]: exact multivariate polynomials and rational functions
//!   over arbitrary-precision rationals, in named tail-coefficient and
//!   reducer parameters.
//! - [`series`]: truncated power series in `t` with rational-function
//!   coefficients, and the S-polynomial-style reduction operator.
//! - [`families`]: normal-form generators per order set, condition
//!   extraction, triangular solving, pruning — one stratum per order set.
//! - [`oracle`]: independent verification by exact linear algebra on
//!   instantiated ideals.
//!
//! The crate is `no_std` (an allocator is required); all arithmetic is
//! exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enumerate;
pub mod families;
pub mod gamma;
pub mod oracle;
pub mod semigroup;
pub mod series;
pub mod symbolic;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

pub use enumerate::{brute_force_ordersets, enumerate_up_to, extend_family, OrderSetFamily};
pub use families::{build_family, classify_ideals, ConditionSet, IdealFamily};
pub use gamma::{GammaModule, GapBlocks};
pub use oracle::{
    colength, ideal_order_set, instantiate, verify_family, ConcreteSeries, VerifyReport,
};
pub use semigroup::Semigroup;
pub use series::ParametricSeries;
pub use symbolic::{Polynomial, RationalFunction, Variable};

/// Shorthand for building an exact rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
