//! Exact symbolic kernel: multivariate polynomials and rational functions
//! over arbitrary-precision rationals.
//!
//! Variables come in two kinds. *Coefficient* variables are the tail
//! coefficients of normal-form generators, identified by the generator's
//! order and the tail exponent (displayed `a6_7` for the `t^7` tail of the
//! order-6 generator). *Reducer* variables are the auxiliary scalars
//! introduced when a remainder is reduced by a combination of generators
//! (displayed `b1`, `b2`, ...); conditions are extracted as the coefficients
//! of a remainder with respect to reducer monomials, so reducers never
//! survive into a condition set.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::Rat;

/// A named parameter.
///
/// Coefficient variables order before reducer variables; coefficient
/// variables sort by (generator order, tail exponent), reducers by serial.
/// This total order fixes every canonical form in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// Tail coefficient of the order-`gen` generator at exponent `exp`.
    Coeff { gen: u64, exp: u64 },
    /// Auxiliary reducer scalar.
    Reducer { serial: u32 },
}

impl Variable {
    pub fn coeff(gen: u64, exp: u64) -> Self {
        Variable::Coeff { gen, exp }
    }

    pub fn reducer(serial: u32) -> Self {
        Variable::Reducer { serial }
    }

    pub fn is_reducer(&self) -> bool {
        matches!(self, Variable::Reducer { .. })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Coeff { gen, exp } => write!(f, "a{gen}_{exp}"),
            Variable::Reducer { serial } => write!(f, "b{serial}"),
        }
    }
}

/// A power product of variables. Exponents are positive; the factor list is
/// sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial {
            factors: alloc::vec![(v, 1)],
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, v: Variable) -> u32 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Variable, u32> = self.factors.iter().copied().collect();
        for &(v, e) in &other.factors {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: out.into_iter().collect(),
        }
    }

    /// Componentwise quotient, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: BTreeMap<Variable, u32> = self.factors.iter().copied().collect();
        for &(v, e) in &other.factors {
            match out.get_mut(&v) {
                Some(have) if *have >= e => {
                    *have -= e;
                    if *have == 0 {
                        out.remove(&v);
                    }
                }
                _ => return None,
            }
        }
        Some(Monomial {
            factors: out.into_iter().collect(),
        })
    }

    /// Split into (part over `pred`-variables, part over the rest).
    fn split(&self, pred: impl Fn(&Variable) -> bool) -> (Monomial, Monomial) {
        let (yes, no) = self.factors.iter().partition(|(v, _)| pred(v));
        (Monomial { factors: yes }, Monomial { factors: no })
    }
}

// Later variables weigh more, higher exponents sort higher. Iterating a
// polynomial's term map in reverse therefore yields the display order used
// by the textual grammar: `a*d - b`, `b - a^2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.factors.iter().rev();
        let mut b = other.factors.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // The larger variable present only on one side dominates.
                    match va.cmp(&vb) {
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Less => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Substitution target: variable images are polynomials (the solved
/// conditions produced by this crate are always polynomial).
pub type SubstMap = BTreeMap<Variable, Polynomial>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicError {
    /// A substitution image mentions a variable of the substitution domain.
    CyclicSubstitution(Variable),
}

impl fmt::Display for SymbolicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicError::CyclicSubstitution(v) => {
                write!(f, "substitution is not triangular: {v} appears in an image")
            }
        }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is semantic
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn var(v: Variable) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// All variables occurring in the polynomial, ascending.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> = Vec::new();
        for m in self.terms.keys() {
            for &(v, _) in m.factors() {
                if let Err(pos) = out.binary_search(&v) {
                    out.insert(pos, v);
                }
            }
        }
        out
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exponent_of(v) > 0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The coefficient of the largest monomial under the canonical order.
    pub fn leading_rat(&self) -> Option<&Rat> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    /// Exact substitution with polynomial images. The map must be
    /// triangular: no domain variable may occur in an image.
    pub fn substitute(&self, map: &SubstMap) -> Result<Polynomial, SymbolicError> {
        validate_triangular(map)?;
        Ok(self.substitute_unchecked(map))
    }

    pub(crate) fn substitute_unchecked(&self, map: &SubstMap) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                let factor = match map.get(&v) {
                    Some(img) => img.pow(e),
                    None => Polynomial::var(v).pow(e),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitution with rational-function images; the result is a rational
    /// function even when `self` is polynomial.
    pub fn substitute_rf(
        &self,
        map: &BTreeMap<Variable, RationalFunction>,
    ) -> Result<RationalFunction, SymbolicError> {
        for (v, img) in map {
            if img.numerator().contains_var(*v) || img.denominator().contains_var(*v) {
                return Err(SymbolicError::CyclicSubstitution(*v));
            }
        }
        let mut out = RationalFunction::zero();
        for (m, c) in &self.terms {
            let mut term = RationalFunction::from_polynomial(Polynomial::constant(c.clone()));
            for &(v, e) in m.factors() {
                let base = match map.get(&v) {
                    Some(img) => img.clone(),
                    None => RationalFunction::from_polynomial(Polynomial::var(v)),
                };
                for _ in 0..e {
                    term = term.mul(&base);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Total evaluation; every variable of the polynomial must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<Variable, Rat>) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in m.factors() {
                let x = assignment.get(&v)?;
                for _ in 0..e {
                    val *= x;
                }
            }
            acc += val;
        }
        Some(acc)
    }

    /// Divide out the rational content and make the leading coefficient
    /// positive. Used to put conditions in a stable shape for deduplication.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        // Content of a set of rationals: gcd of numerators / lcm of
        // denominators, signed so the canonical leading coefficient is +1
        // when possible.
        let mut content: Option<Rat> = None;
        for c in self.terms.values() {
            let c = c.abs();
            content = Some(match content {
                None => c,
                Some(g) => {
                    use num_integer::Integer;
                    let num = g.numer().gcd(c.numer());
                    let den = g.denom().lcm(c.denom());
                    Rat::new(num, den)
                }
            });
        }
        let mut content = content.unwrap();
        if self.leading_rat().unwrap().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        self.scale(&inv)
    }

    /// Collects `self` as a polynomial in the given reducer variables: the
    /// returned list holds the coefficient polynomial of each distinct
    /// reducer monomial present (including the reducer-free constant part),
    /// ordered by descending reducer monomial.
    pub fn coefficients_wrt(&self, reducers: &[Variable]) -> Vec<Polynomial> {
        let is_reducer = |v: &Variable| reducers.contains(v);
        let mut buckets: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (red, rest) = m.split(is_reducer);
            buckets
                .entry(red)
                .or_insert_with(Polynomial::zero)
                .add_term(rest, c.clone());
        }
        buckets.into_values().rev().collect()
    }

    /// If `self` = c1*v + c0 with `c1` a nonzero rational constant and `c0`
    /// free of `v`, returns `-c0/c1`. Anything else is not linear in the
    /// required sense.
    pub fn solve_linear(&self, v: Variable) -> Option<Polynomial> {
        let mut c1 = Rat::zero();
        let mut c0 = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.exponent_of(v) {
                0 => c0.add_term(m.clone(), c.clone()),
                1 if m.factors().len() == 1 => c1 += c,
                _ => return None,
            }
        }
        if c1.is_zero() {
            return None;
        }
        let inv = -c1.recip();
        Some(c0.scale(&inv))
    }

    /// Writes `self` = q*v + r with `q` and `r` free of `v`; `None` when
    /// `v` occurs to a power above one or not at all.
    pub fn linear_parts(&self, v: Variable) -> Option<(Polynomial, Polynomial)> {
        let mut q = Polynomial::zero();
        let mut r = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.exponent_of(v) {
                0 => r.add_term(m.clone(), c.clone()),
                1 => q.add_term(m.div(&Monomial::var(v)).unwrap(), c.clone()),
                _ => return None,
            }
        }
        if q.is_zero() {
            return None;
        }
        Some((q, r))
    }

    /// Exact polynomial quotient `self / divisor`, or `None` when the
    /// division leaves a remainder. Leading terms are cancelled greedily,
    /// which finds the quotient whenever one exists.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next_back().unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero();
        while !rest.is_zero() {
            let (rm, rc) = rest.terms.iter().next_back().unwrap();
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            let mut step = Polynomial::zero();
            step.add_term(m, c);
            rest = rest.sub(&step.mul(divisor));
            quotient = quotient.add(&step);
        }
        Some(quotient)
    }

    /// Renders with a custom variable naming.
    pub fn to_string_with(&self, names: &dyn Fn(Variable) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.factors() {
                if e == 1 {
                    factors.push(names(v));
                } else {
                    factors.push(alloc::format!("{}^{}", names(v), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&|v: Variable| v.to_string()))
    }
}

/// Quotient of two polynomials.
///
/// Normalization keeps the denominator's leading coefficient at one, folds
/// constant denominators into the numerator and collapses `p/p` to 1. Full
/// multivariate gcd is not attempted; zero tests go through the numerator,
/// which is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den` in normal form. Panics if `den` is zero: a zero
    /// denominator is a programming error everywhere this type is used.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::one())
    }

    pub fn var(v: Variable) -> Self {
        RationalFunction::from_polynomial(Polynomial::var(v))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The polynomial value when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den == Polynomial::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        if self.num == self.den {
            self.num = Polynomial::one();
            self.den = Polynomial::one();
            return;
        }
        if let Some(c) = self.den.as_constant() {
            let inv = c.recip();
            self.num = self.num.scale(&inv);
            self.den = Polynomial::one();
            return;
        }
        let lead = self.den.leading_rat().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.num == self.den {
            self.num = Polynomial::one();
            self.den = Polynomial::one();
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(self.num.add(&other.num), self.den.clone());
        }
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Panics if `other` is zero.
    pub fn div(&self, other: &RationalFunction) -> RationalFunction {
        assert!(!other.is_zero(), "division of rational functions by zero");
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> RationalFunction {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Semantic equality via cross multiplication; structural equality on
    /// the normal form can miss equal fractions with uncancelled factors.
    pub fn equivalent(&self, other: &RationalFunction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn substitute(&self, map: &SubstMap) -> Result<RationalFunction, SymbolicError> {
        validate_triangular(map)?;
        Ok(self.substitute_unchecked(map))
    }

    pub(crate) fn substitute_unchecked(&self, map: &SubstMap) -> RationalFunction {
        RationalFunction::new(
            self.num.substitute_unchecked(map),
            self.den.substitute_unchecked(map),
        )
    }

    /// Evaluates at a point; `None` if a variable is missing or the
    /// denominator vanishes there.
    pub fn eval(&self, assignment: &BTreeMap<Variable, Rat>) -> Option<Rat> {
        let den = self.den.eval(assignment)?;
        if den.is_zero() {
            return None;
        }
        let num = self.num.eval(assignment)?;
        Some(num / den)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den == Polynomial::one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn to_string_with(&self, names: &dyn Fn(Variable) -> String) -> String {
        if let Some(p) = self.as_polynomial() {
            return p.to_string_with(names);
        }
        let num = self.num.to_string_with(names);
        let den = self.den.to_string_with(names);
        let num = if self.num.num_terms() > 1 {
            alloc::format!("({num})")
        } else {
            num
        };
        let den = if self.den.num_terms() > 1 {
            alloc::format!("({den})")
        } else {
            den
        };
        alloc::format!("{num}/{den}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&|v: Variable| v.to_string()))
    }
}

fn validate_triangular(map: &SubstMap) -> Result<(), SymbolicError> {
    for (v, img) in map {
        if img.contains_var(*v) {
            return Err(SymbolicError::CyclicSubstitution(*v));
        }
        for w in map.keys() {
            if img.contains_var(*w) {
                return Err(SymbolicError::CyclicSubstitution(*w));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn a() -> Variable {
        Variable::coeff(6, 7)
    }
    fn b() -> Variable {
        Variable::coeff(6, 8)
    }
    fn d() -> Variable {
        Variable::coeff(9, 11)
    }
    fn e() -> Variable {
        Variable::coeff(10, 11)
    }

    fn pvar(v: Variable) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn ring_identities() {
        // (b - d - a^2) + (d - b + a^2) = 0
        let a2 = pvar(a()).mul(&pvar(a()));
        let p = pvar(b()).sub(&pvar(d())).sub(&a2);
        let q = pvar(d()).sub(&pvar(b())).add(&a2);
        assert!(p.add(&q).is_zero());
        // a * a = a^2
        assert_eq!(pvar(a()).mul(&pvar(a())), pvar(a()).pow(2));
        // (b - d) - (-a^2) = b - d + a^2
        let lhs = pvar(b()).sub(&pvar(d())).sub(&a2.neg());
        let rhs = pvar(b()).sub(&pvar(d())).add(&a2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_solves_conditions() {
        // b - d - a^2 with d -> b - a^2 gives 0
        let a2 = pvar(a()).pow(2);
        let p = pvar(b()).sub(&pvar(d())).sub(&a2);
        let mut map = SubstMap::new();
        map.insert(d(), pvar(b()).sub(&a2));
        assert!(p.substitute(&map).unwrap().is_zero());
        // identity substitution
        assert_eq!(pvar(a()).substitute(&SubstMap::new()).unwrap(), pvar(a()));
        // e - a with e -> a gives 0
        let mut map = SubstMap::new();
        map.insert(e(), pvar(a()));
        assert!(pvar(e())
            .sub(&pvar(a()))
            .substitute(&map)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn substitution_rejects_cycles() {
        let mut map = SubstMap::new();
        map.insert(d(), pvar(d()).add(&Polynomial::one()));
        assert_eq!(
            pvar(d()).substitute(&map),
            Err(SymbolicError::CyclicSubstitution(d()))
        );
        let mut map = SubstMap::new();
        map.insert(d(), pvar(e()));
        map.insert(e(), pvar(a()));
        assert!(pvar(d()).substitute(&map).is_err());
    }

    #[test]
    fn coefficients_wrt_reducers() {
        let b1 = Variable::reducer(1);
        let b2 = Variable::reducer(2);
        // b1*a + (b - d) -> [a, b - d]
        let p = pvar(b1).mul(&pvar(a())).add(&pvar(b()).sub(&pvar(d())));
        assert_eq!(
            p.coefficients_wrt(&[b1]),
            alloc::vec![pvar(a()), pvar(b()).sub(&pvar(d()))]
        );
        // a^2 -> [a^2]
        assert_eq!(
            pvar(a()).pow(2).coefficients_wrt(&[b1]),
            alloc::vec![pvar(a()).pow(2)]
        );
        // b1*b2 + b1 + 1 -> [1, 1, 1]
        let p = pvar(b1)
            .mul(&pvar(b2))
            .add(&pvar(b1))
            .add(&Polynomial::one());
        assert_eq!(
            p.coefficients_wrt(&[b1, b2]),
            alloc::vec![Polynomial::one(), Polynomial::one(), Polynomial::one()]
        );
    }

    #[test]
    fn coefficients_reassemble() {
        let b1 = Variable::reducer(1);
        let p = pvar(b1)
            .mul(&pvar(a()).add(&pvar(b())))
            .add(&pvar(d()).pow(2));
        let coeffs = p.coefficients_wrt(&[b1]);
        // descending reducer monomials: [coeff of b1, constant part]
        let rebuilt = coeffs[0].mul(&pvar(b1)).add(&coeffs[1]);
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn solve_linear_cases() {
        let a2 = pvar(a()).pow(2);
        // d - b + a^2, solve for d: b - a^2
        let p = pvar(d()).sub(&pvar(b())).add(&a2);
        assert_eq!(p.solve_linear(d()), Some(pvar(b()).sub(&a2)));
        // e - a, solve for e: a
        let p = pvar(e()).sub(&pvar(a()));
        assert_eq!(p.solve_linear(e()), Some(pvar(a())));
        // a*d - b is not linear in d (non-constant coefficient)
        let p = pvar(a()).mul(&pvar(d())).sub(&pvar(b()));
        assert_eq!(p.solve_linear(d()), None);
        // absent variable
        assert_eq!(pvar(a()).solve_linear(d()), None);
    }

    #[test]
    fn display_matches_grammar() {
        let a2 = pvar(a()).pow(2);
        let p = pvar(b()).sub(&a2);
        let names = |v: Variable| -> String {
            if v == a() {
                "a".into()
            } else if v == b() {
                "b".into()
            } else if v == d() {
                "d".into()
            } else {
                v.to_string()
            }
        };
        assert_eq!(p.to_string_with(&names), "b - a^2");
        let q = pvar(a()).mul(&pvar(d())).sub(&pvar(b()));
        assert_eq!(q.to_string_with(&names), "a*d - b");
        assert_eq!(Polynomial::zero().to_string_with(&names), "0");
        assert_eq!(
            Polynomial::constant(rat(-3) / rat(2)).to_string_with(&names),
            "-3/2"
        );
        assert_eq!(pvar(a()).to_string(), "a6_7");
    }

    #[test]
    fn rational_function_normalization() {
        let p = pvar(a()).add(&pvar(b()));
        // p/p = 1
        assert!(RationalFunction::new(p.clone(), p.clone()).is_one());
        // constant denominators fold away
        let rf = RationalFunction::new(pvar(a()), Polynomial::constant(rat(2)));
        assert_eq!(
            rf.as_polynomial(),
            Some(&pvar(a()).scale(&(rat(1) / rat(2))))
        );
        // idempotence: normalizing twice changes nothing
        let rf = RationalFunction::new(pvar(b()).sub(&pvar(a()).pow(2)), pvar(a()).scale(&rat(3)));
        let again = RationalFunction::new(rf.numerator().clone(), rf.denominator().clone());
        assert_eq!(rf, again);
    }

    #[test]
    fn rational_function_arithmetic() {
        let x = RationalFunction::new(Polynomial::one(), pvar(a()));
        let y = RationalFunction::var(a());
        assert!(x.mul(&y).is_one());
        let diff = x.sub(&x);
        assert!(diff.is_zero());
        // (1/a + a) = (1 + a^2)/a
        let s = x.add(&y);
        assert_eq!(s.numerator(), &Polynomial::one().add(&pvar(a()).pow(2)));
        assert_eq!(s.denominator(), &pvar(a()));
    }
}
