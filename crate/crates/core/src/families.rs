//! Parametric ideal families: one stratum per order set.
//!
//! For a given order set `S` the generators are the monic normal forms
//! `f_g = t^g + sum a_{g,j} t^j` with `g` running over the members of `S`
//! in the window `[min S, min S + conductor - 1]` and the tail exponents `j`
//! over the gaps of `S` above `g`. The tail coefficients must satisfy
//! polynomial conditions for the generated ideal's order set to equal `S`;
//! these are extracted by driving every pair of generators to high order
//! with the reduction operator, recording a vanishing leading coefficient
//! whenever the remainder's order falls outside `S`.
//!
//! Recorded conditions are solved triangularly (each for the latest
//! generator coefficient that occurs linearly with a constant coefficient,
//! iterated to a fixed point), substituted into the generators, and the
//! redundant generators are pruned. Free parameters of the surviving family
//! are displayed as `a, b, c, ...` in tail order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::gamma::GammaModule;
use crate::semigroup::Semigroup;
use crate::series::{reduction, ParametricSeries};
use crate::symbolic::{Polynomial, RationalFunction, SubstMap, Variable};

/// The polynomial conditions attached to one order set's generator family.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConditionSet {
    /// Conditions exactly as recorded (each meaning "= 0"), content-reduced.
    pub raw: Vec<Polynomial>,
    /// Triangular solution: each variable's image is free of every solved
    /// variable.
    pub solved: Vec<(Variable, Polynomial)>,
    /// Conditions not solvable linearly, after substitution of the solved
    /// part; empty in all the worked examples.
    pub residual: Vec<Polynomial>,
    /// Non-constant leading coefficients that were divided by along the way
    /// (the genericity locus); reported, not assumed silently.
    pub assumptions: Vec<Polynomial>,
}

impl ConditionSet {
    pub fn solved_map(&self) -> SubstMap {
        self.solved.iter().map(|(v, p)| (*v, p.clone())).collect()
    }
}

/// One stratum: an order set together with its pruned parametric
/// generators, the surviving free parameters, and the condition data.
#[derive(Clone, Debug)]
pub struct IdealFamily<'a> {
    pub order_set: GammaModule<'a>,
    /// Post-substitution, post-pruning generators, ascending order.
    pub generators: Vec<ParametricSeries>,
    /// Unsolved coefficient variables appearing in the kept generators.
    pub free_params: Vec<Variable>,
    pub conditions: ConditionSet,
    /// Display names: every tail coefficient of the original family, in tail
    /// order, mapped to `a`, `b`, `c`, ...
    names: BTreeMap<Variable, String>,
}

impl<'a> IdealFamily<'a> {
    pub fn name_of(&self, v: Variable) -> String {
        self.names.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn generator_strings(&self) -> Vec<String> {
        let names = |v: Variable| self.name_of(v);
        self.generators
            .iter()
            .map(|g| g.to_string_with(&names))
            .collect()
    }

    /// Solved conditions as `d = b - a^2` lines, in variable order.
    pub fn solved_strings(&self) -> Vec<String> {
        let names = |v: Variable| self.name_of(v);
        self.conditions
            .solved
            .iter()
            .map(|(v, img)| alloc::format!("{} = {}", self.name_of(*v), img.to_string_with(&names)))
            .collect()
    }

    pub fn residual_strings(&self) -> Vec<String> {
        let names = |v: Variable| self.name_of(v);
        self.conditions
            .residual
            .iter()
            .map(|p| p.to_string_with(&names))
            .collect()
    }

    pub fn assumption_strings(&self) -> Vec<String> {
        let names = |v: Variable| self.name_of(v);
        self.conditions
            .assumptions
            .iter()
            .map(|p| p.to_string_with(&names))
            .collect()
    }

    pub fn free_param_names(&self) -> Vec<String> {
        self.free_params.iter().map(|v| self.name_of(*v)).collect()
    }
}

/// The normal-form generators of an order set: one monic series per member
/// of the generator window, tails supported on the gaps above the head.
pub fn normal_form_generators(module: &GammaModule<'_>) -> Vec<ParametricSeries> {
    let semigroup = module.semigroup();
    let min_s = module.min_element();
    let window_len = semigroup.conductor().max(1);
    let truncation = module.conductor().max(min_s + window_len);
    let mut out = Vec::new();
    for g in min_s..min_s + window_len {
        if !module.contains(g as i64) {
            continue;
        }
        let mut f = ParametricSeries::monomial(g, RationalFunction::one(), truncation);
        for &j in module.gaps() {
            if j > g {
                f.set(j, RationalFunction::var(Variable::coeff(g, j)));
            }
        }
        out.push(f);
    }
    out
}

/// Runs the pairwise reduction loop and returns the recorded, solved
/// condition set.
pub fn extract_conditions(
    generators: &[ParametricSeries],
    module: &GammaModule<'_>,
) -> ConditionSet {
    let semigroup = module.semigroup();
    let c_ideal = module.conductor();
    let mut reducer_serial: u32 = 0;
    let mut raw: Vec<Polynomial> = Vec::new();
    let mut assumptions: Vec<Polynomial> = Vec::new();

    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let mut r = reduction(&generators[i], &generators[j], semigroup);
            while let Some(o) = r.order() {
                if o >= c_ideal {
                    break;
                }
                if !module.contains(o as i64) {
                    // The order fell in a gap: the leading coefficient must
                    // vanish for every reducer value.
                    let lc = r.leading_coeff().unwrap();
                    record_conditions(lc.numerator(), &mut raw);
                    r = r.without_leading_term();
                } else {
                    // The order is attainable: reduce by a fresh generic
                    // combination of every generator that can reach it. The
                    // step is taken fraction-free, LC(combo)*r - LC(r)*combo
                    // instead of the normalized difference: scaling by the
                    // never-identically-zero leading coefficients keeps every
                    // later vanishing condition intact while the chain stays
                    // polynomial.
                    let combo =
                        reachable_combination(generators, o, semigroup, &mut reducer_serial);
                    log_assumption(r.leading_coeff().unwrap(), &mut assumptions);
                    let lc_r = r.leading_coeff().unwrap().clone();
                    let lc_combo = combo.leading_coeff().unwrap().clone();

                    r = r
                        .monomial_mul(0, &lc_combo)
                        .sub(&combo.monomial_mul(0, &lc_r));
                }
            }
        }
    }

    let (solved, residual, solve_assumptions) = solve_conditions(&raw);
    for a in solve_assumptions {
        if !assumptions.contains(&a) {
            assumptions.push(a);
        }
    }
    let assumptions = finalize_assumptions(assumptions, &solved);
    ConditionSet {
        raw,
        solved,
        residual,
        assumptions,
    }
}

/// The generic order-`o` element: a fresh reducer times `t^shift` times each
/// generator whose order can be shifted to `o` inside the semigroup.
fn reachable_combination(
    generators: &[ParametricSeries],
    o: u64,
    semigroup: &Semigroup,
    reducer_serial: &mut u32,
) -> ParametricSeries {
    let truncation = generators.iter().map(|g| g.truncation()).min().unwrap_or(0);
    let mut combo = ParametricSeries::zero(truncation);
    for f in generators {
        let ord = f.order().expect("normal-form generators are monic");
        if o >= ord && semigroup.contains((o - ord) as i64) {
            *reducer_serial += 1;
            let b = RationalFunction::var(Variable::reducer(*reducer_serial));
            combo = combo.add(&f.monomial_mul(o - ord, &b));
        }
    }
    debug_assert_eq!(
        combo.order(),
        Some(o),
        "an attainable order must be reachable from some generator"
    );
    combo
}

/// Splits a recorded leading coefficient into reducer-free conditions and
/// stores the new ones.
fn record_conditions(numerator: &Polynomial, raw: &mut Vec<Polynomial>) {
    let reducers: Vec<Variable> = numerator
        .variables()
        .into_iter()
        .filter(Variable::is_reducer)
        .collect();
    for cond in numerator.coefficients_wrt(&reducers) {
        if cond.is_zero() {
            continue;
        }
        let cond = cond.primitive_part();
        if !raw.contains(&cond) {
            raw.push(cond);
        }
    }
}

/// Divisions by a leading coefficient assume its coefficient-variable parts
/// are nonzero; reducer-only and constant factors need no assumption.
fn log_assumption(lc: &RationalFunction, assumptions: &mut Vec<Polynomial>) {
    let numerator = lc.numerator();
    let reducers: Vec<Variable> = numerator
        .variables()
        .into_iter()
        .filter(Variable::is_reducer)
        .collect();
    for part in numerator.coefficients_wrt(&reducers) {
        if part.is_zero() || part.is_constant() {
            continue;
        }
        let part = part.primitive_part();
        if !assumptions.contains(&part) {
            assumptions.push(part);
        }
    }
}

/// Triangular fixed-point solve. Each pass substitutes everything solved so
/// far into each remaining condition and solves for the latest coefficient
/// variable that occurs linearly with a constant coefficient. Only when a
/// full pass makes no progress is a division step allowed: a condition
/// `q*v + r` with `q` dividing `r` exactly solves to `v = -r/q` at the cost
/// of the genericity assumption `q != 0`, which is returned for the log.
/// Whatever still survives is residual.
fn solve_conditions(
    raw: &[Polynomial],
) -> (
    Vec<(Variable, Polynomial)>,
    Vec<Polynomial>,
    Vec<Polynomial>,
) {
    let mut solved: SubstMap = SubstMap::new();
    let mut assumptions: Vec<Polynomial> = Vec::new();
    let mut work: Vec<Polynomial> = raw.to_vec();
    let mut allow_division = false;
    loop {
        let mut progress = false;
        let mut rest: Vec<Polynomial> = Vec::new();
        for cond in &work {
            let c = cond.substitute_unchecked(&solved);
            if c.is_zero() {
                continue;
            }
            match solve_step(&c, allow_division) {
                Some((v, image, assumption)) => {
                    let step: SubstMap = [(v, image.clone())].into_iter().collect();
                    for img in solved.values_mut() {
                        *img = img.substitute_unchecked(&step);
                    }
                    solved.insert(v, image);
                    if let Some(a) = assumption {
                        if !assumptions.contains(&a) {
                            assumptions.push(a);
                        }
                    }
                    progress = true;
                }
                None => rest.push(cond.clone()),
            }
        }
        if progress {
            allow_division = false;
        } else if !allow_division && !rest.is_empty() {
            allow_division = true;
        } else {
            let mut residual: Vec<Polynomial> = Vec::new();
            for cond in rest {
                let c = cond.substitute_unchecked(&solved).primitive_part();
                if !c.is_zero() && !residual.contains(&c) {
                    residual.push(c);
                }
            }
            return (solved.into_iter().collect(), residual, assumptions);
        }
        work = rest;
    }
}

/// One solving attempt on a fully substituted condition: the latest
/// coefficient variable solvable with a constant coefficient wins; with
/// `allow_division`, the latest variable whose polynomial coefficient
/// divides the remainder exactly is accepted instead.
fn solve_step(
    c: &Polynomial,
    allow_division: bool,
) -> Option<(Variable, Polynomial, Option<Polynomial>)> {
    let candidates: Vec<Variable> = c
        .variables()
        .into_iter()
        .filter(|v| !v.is_reducer())
        .collect();
    if let Some(v) = candidates
        .iter()
        .copied()
        .filter(|v| c.solve_linear(*v).is_some())
        .max()
    {
        return Some((v, c.solve_linear(v).unwrap(), None));
    }
    if !allow_division {
        return None;
    }
    for v in candidates.into_iter().rev() {
        let Some((q, r)) = c.linear_parts(v) else {
            continue;
        };
        if q.contains_var(v) {
            continue;
        }
        if let Some(quotient) = r.div_exact(&q) {
            return Some((v, quotient.neg(), Some(q.primitive_part())));
        }
    }
    None
}

/// Rewrites assumptions modulo the solved conditions, dropping the ones that
/// collapse to constants (a vanished assumption guarded a term that is
/// itself zero on the stratum).
fn finalize_assumptions(
    assumptions: Vec<Polynomial>,
    solved: &[(Variable, Polynomial)],
) -> Vec<Polynomial> {
    let map: SubstMap = solved.iter().map(|(v, p)| (*v, p.clone())).collect();
    let mut out: Vec<Polynomial> = Vec::new();
    for a in assumptions {
        let a = a.substitute_unchecked(&map);
        if a.is_constant() {
            continue;
        }
        let a = a.primitive_part();
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort_by_key(|p| p.to_string());
    out
}

/// Substitutes the solved conditions into every generator.
pub fn substitute_family(
    generators: &[ParametricSeries],
    conditions: &ConditionSet,
) -> Vec<ParametricSeries> {
    let map = conditions.solved_map();
    generators.iter().map(|g| g.substitute(&map)).collect()
}

/// Removes redundant generators from a substituted family.
///
/// Any subfamily whose orders still generate the order set presents the same
/// ideal, so everything outside the minimal generating orders is droppable;
/// a redundant generator is nevertheless kept when some tail coefficient
/// carries a nontrivial solved expression (more than a bare renaming of a
/// parameter), matching the worked normal forms.
pub fn prune_generators(
    substituted: &[ParametricSeries],
    module: &GammaModule<'_>,
) -> Vec<ParametricSeries> {
    let min_gens = module.minimal_generators();
    substituted
        .iter()
        .filter(|f| {
            let ord = f.order().expect("generators are monic");
            min_gens.contains(&ord) || f.terms().skip(1).any(|(_, c)| !is_trivial_tail(c))
        })
        .cloned()
        .collect()
}

/// A tail coefficient is trivial when it is plus or minus a single
/// parameter (a solved renaming) or a constant.
fn is_trivial_tail(c: &RationalFunction) -> bool {
    let Some(p) = c.as_polynomial() else {
        return false;
    };
    if p.is_constant() {
        return true;
    }
    if p.num_terms() != 1 {
        return false;
    }
    let (m, k) = p.terms().next().unwrap();
    m.total_degree() == 1 && k.abs().is_one()
}

/// Classifies every ideal of codimension `r`: one family per order set, in
/// canonical (gap-set lexicographic) order.
pub fn classify_ideals(semigroup: &Semigroup, r: usize) -> Vec<IdealFamily<'_>> {
    let chain = crate::enumerate::enumerate_up_to(semigroup, r);
    let last = chain.into_iter().next_back().unwrap();
    last.members.into_iter().map(build_family).collect()
}

/// The full pipeline for one order set.
pub fn build_family(module: GammaModule<'_>) -> IdealFamily<'_> {
    let full = normal_form_generators(&module);
    let conditions = extract_conditions(&full, &module);
    let substituted = substitute_family(&full, &conditions);
    let generators = prune_generators(&substituted, &module);

    let names = display_names(&full);
    let solved_domain: Vec<Variable> = conditions.solved.iter().map(|(v, _)| *v).collect();
    let mut free_params: Vec<Variable> = Vec::new();
    for g in &generators {
        for (_, c) in g.terms() {
            for v in c
                .numerator()
                .variables()
                .into_iter()
                .chain(c.denominator().variables())
            {
                if !v.is_reducer() && !solved_domain.contains(&v) && !free_params.contains(&v) {
                    free_params.push(v);
                }
            }
        }
    }
    free_params.sort();

    IdealFamily {
        order_set: module,
        generators,
        free_params,
        conditions,
        names,
    }
}

/// Tail coefficients of the unsubstituted family, in (generator order, tail
/// exponent) order, named `a`, `b`, `c`, ... like the worked tables.
fn display_names(full: &[ParametricSeries]) -> BTreeMap<Variable, String> {
    let mut vars: Vec<Variable> = Vec::new();
    for g in full {
        for (_, c) in g.terms() {
            for v in c.numerator().variables() {
                if !v.is_reducer() && !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
    }
    vars.sort();
    vars.into_iter()
        .enumerate()
        .map(|(i, v)| (v, param_letter(i)))
        .collect()
}

fn param_letter(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        alloc::format!("p{i}")
    }
}
