//! Truncated power series in `t` with rational-function coefficients.
//!
//! A series stores only exponents strictly below its truncation; nothing is
//! ever reported about higher terms. Coefficients are kept sparse and no
//! stored coefficient is identically zero, so the order of a series is the
//! smallest stored exponent (the generic-parameter convention: a symbolic
//! coefficient counts as nonzero unless it is identically zero).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::semigroup::Semigroup;
use crate::symbolic::{RationalFunction, SubstMap, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricSeries {
    terms: BTreeMap<u64, RationalFunction>,
    truncation: u64,
}

impl ParametricSeries {
    pub fn zero(truncation: u64) -> Self {
        ParametricSeries {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn monomial(exp: u64, coeff: RationalFunction, truncation: u64) -> Self {
        let mut s = ParametricSeries::zero(truncation);
        s.set(exp, coeff);
        s
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&u64, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: u64) -> Option<&RationalFunction> {
        self.terms.get(&exp)
    }

    pub fn set(&mut self, exp: u64, coeff: RationalFunction) {
        if exp >= self.truncation || coeff.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, coeff);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent with a coefficient that is not identically zero;
    /// `None` for the (truncated) zero series.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient at the order. `None` on the zero series, where the
    /// leading coefficient is undefined.
    pub fn leading_coeff(&self) -> Option<&RationalFunction> {
        self.terms.values().next()
    }

    pub fn add(&self, other: &ParametricSeries) -> ParametricSeries {
        let truncation = self.truncation.min(other.truncation);
        let mut out = ParametricSeries::zero(truncation);
        for (&e, c) in self.terms.iter().chain(other.terms.iter()) {
            let sum = match out.terms.get(&e) {
                Some(prev) => prev.add(c),
                None => c.clone(),
            };
            out.set(e, sum);
        }
        out
    }

    pub fn neg(&self) -> ParametricSeries {
        ParametricSeries {
            terms: self.terms.iter().map(|(&e, c)| (e, c.neg())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn sub(&self, other: &ParametricSeries) -> ParametricSeries {
        self.add(&other.neg())
    }

    /// Shifts every exponent up by `shift` and scales by `scale`; terms
    /// pushed to or past the truncation are dropped. This is multiplication
    /// by `scale * t^shift`.
    pub fn monomial_mul(&self, shift: u64, scale: &RationalFunction) -> ParametricSeries {
        let mut out = ParametricSeries::zero(self.truncation);
        if scale.is_zero() {
            return out;
        }
        for (&e, c) in &self.terms {
            let exp = e + shift;
            if exp < self.truncation {
                out.set(exp, c.mul(scale));
            }
        }
        out
    }

    /// Re-truncates to `truncation` (dropping terms if it shrinks).
    pub fn truncate_to(&self, truncation: u64) -> ParametricSeries {
        let mut out = ParametricSeries::zero(truncation);
        for (&e, c) in &self.terms {
            if e < truncation {
                out.set(e, c.clone());
            }
        }
        out
    }

    /// Applies a polynomial substitution to every coefficient, dropping
    /// coefficients that become zero.
    pub fn substitute(&self, map: &SubstMap) -> ParametricSeries {
        let mut out = ParametricSeries::zero(self.truncation);
        for (&e, c) in &self.terms {
            out.set(e, c.substitute_unchecked(map));
        }
        out
    }

    /// Drops the lowest-order term.
    pub fn without_leading_term(&self) -> ParametricSeries {
        let mut out = self.clone();
        if let Some(o) = out.order() {
            out.terms.remove(&o);
        }
        out
    }

    pub fn to_string_with(&self, names: &dyn Fn(Variable) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let (sign, body) = render_coeff_times_power(c, e, names);
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else if sign {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

/// Renders `c * t^e` without its sign; returns (is_negative, body). A
/// one-term polynomial coefficient is inlined (`a*t^7`, `2*t^3`, `-t^8`),
/// anything else is parenthesized (`(b - a^2)*t^11`).
fn render_coeff_times_power(
    c: &RationalFunction,
    e: u64,
    names: &dyn Fn(Variable) -> String,
) -> (bool, String) {
    use num_traits::{One, Signed};

    let power = if e == 0 {
        String::new()
    } else if e == 1 {
        "t".to_string()
    } else {
        alloc::format!("t^{e}")
    };
    if let Some(p) = c.as_polynomial() {
        if p.num_terms() == 1 {
            let (m, k) = p.terms().next().unwrap();
            let negative = k.is_negative();
            let abs = k.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (m.is_one() && e == 0) {
                factors.push(abs.to_string());
            }
            for &(v, exp) in m.factors() {
                if exp == 1 {
                    factors.push(names(v));
                } else {
                    factors.push(alloc::format!("{}^{}", names(v), exp));
                }
            }
            if !power.is_empty() {
                factors.push(power);
            }
            return (negative, factors.join("*"));
        }
    }
    let body = alloc::format!("({})", c.to_string_with(names));
    if power.is_empty() {
        (false, body)
    } else {
        (false, alloc::format!("{body}*{power}"))
    }
}

impl fmt::Display for ParametricSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&|v: Variable| v.to_string()))
    }
}

/// The S-polynomial-style reduction of two series over a semigroup: both are
/// scaled by monomials into the least common reachable order, normalized to
/// leading coefficient one, and subtracted. The result has order strictly
/// above the matched order (or is zero below truncation).
///
/// Both leading coefficients must be invertible, which holds for any nonzero
/// rational function under the generic-parameter convention.
pub fn reduction(
    h1: &ParametricSeries,
    h2: &ParametricSeries,
    semigroup: &Semigroup,
) -> ParametricSeries {
    let o1 = h1
        .order()
        .expect("reduction requires a nonzero first series");
    let o2 = h2
        .order()
        .expect("reduction requires a nonzero second series");
    let m = common_order(o1, o2, semigroup);
    let lc1 = h1.leading_coeff().unwrap().clone();
    let lc2 = h2.leading_coeff().unwrap().clone();
    let left = h1.monomial_mul(m - o1, &lc1.recip());
    let right = h2.monomial_mul(m - o2, &lc2.recip());
    let out = left.sub(&right);
    debug_assert!(out.order().is_none_or(|o| o > m));
    out
}

/// Least `m` reachable from both orders by semigroup shifts. Always exists
/// at or below `max(o1, o2) + conductor`.
pub fn common_order(o1: u64, o2: u64, semigroup: &Semigroup) -> u64 {
    let lo = o1.max(o2);
    (lo..=lo + semigroup.conductor())
        .find(|&m| semigroup.contains((m - o1) as i64) && semigroup.contains((m - o2) as i64))
        .expect("a common shifted order exists within one conductor of the larger order")
}
