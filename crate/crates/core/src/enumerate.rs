//! Enumeration of all order sets of a given codimension.
//!
//! The forward direction grows codimension one step at a time: every order
//! set of codimension `r` arises from one of codimension `r-1` by moving a
//! minimal generator into the gap set (deleting the largest nonzero gap
//! inverts the step, which is what makes the enumeration complete). An
//! independent brute-force enumerator filters all candidate gap sets inside
//! a provably sufficient window and serves as the oracle.

use alloc::vec::Vec;
use core::fmt;

use crate::gamma::GammaModule;
use crate::semigroup::Semigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    /// The brute-force candidate count exceeds the configured limit.
    WindowTooLarge { candidates: u128, limit: u128 },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::WindowTooLarge { candidates, limit } => write!(
                f,
                "brute-force search space of {candidates} candidate gap sets exceeds limit {limit}"
            ),
        }
    }
}

/// All order sets of one codimension, sorted lexicographically by gap set,
/// with their minimal generating sets alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSetFamily<'a> {
    pub codim: usize,
    pub members: Vec<GammaModule<'a>>,
    pub min_gens: Vec<Vec<u64>>,
}

impl<'a> OrderSetFamily<'a> {
    fn from_members(codim: usize, mut members: Vec<GammaModule<'a>>) -> Self {
        members.sort();
        members.dedup();
        debug_assert!(members.iter().all(|m| m.codimension() == codim));
        let min_gens = members.iter().map(|m| m.minimal_generators()).collect();
        OrderSetFamily {
            codim,
            members,
            min_gens,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One enumeration step: removes each minimal generator of each member and
/// deduplicates by gap set.
pub fn extend_family<'a>(prev: &OrderSetFamily<'a>) -> OrderSetFamily<'a> {
    let mut next = Vec::new();
    for (module, gens) in prev.members.iter().zip(&prev.min_gens) {
        for &alpha in gens {
            let extended = module
                .remove_generator(alpha)
                .expect("minimal generators come from the stored list");
            if !next.contains(&extended) {
                next.push(extended);
            }
        }
    }
    OrderSetFamily::from_members(prev.codim + 1, next)
}

/// Order sets of codimension 1 through `r`: the chain starts at the order
/// set of the maximal ideal (gap set `{0}`) and extends one codimension per
/// step.
pub fn enumerate_up_to(semigroup: &Semigroup, r: usize) -> Vec<OrderSetFamily<'_>> {
    assert!(r >= 1);
    let maximal = GammaModule::from_gaps(semigroup, &[0])
        .expect("the maximal ideal's order set is always valid");
    let mut out = Vec::with_capacity(r);
    out.push(OrderSetFamily::from_members(1, alloc::vec![maximal]));
    for _ in 1..r {
        let next = extend_family(out.last().unwrap());
        out.push(next);
    }
    out
}

/// Independent oracle: enumerates every r-element gap set `{0, d1, ...,
/// d_{r-1}}` drawn from semigroup members in `[0, w]`, keeping those whose
/// complement is a valid order set.
///
/// The window `w` is the r-th successive nonzero member plus the conductor:
/// the least order-set element is at most the r-th nonzero member (only r
/// members are gaps), and every gap lies below that element plus the
/// conductor.
pub fn brute_force_ordersets<'a>(
    semigroup: &'a Semigroup,
    r: usize,
    limit: u128,
) -> Result<OrderSetFamily<'a>, EnumError> {
    assert!(r >= 1);
    let window = semigroup.nth_nonzero_element(r as u64) + semigroup.conductor();
    let pool: Vec<u64> = semigroup
        .elements_up_to(window)
        .into_iter()
        .filter(|&x| x != 0)
        .collect();

    let candidates = binomial(pool.len() as u128, (r - 1) as u128);
    if candidates > limit {
        return Err(EnumError::WindowTooLarge { candidates, limit });
    }

    let mut found = Vec::new();
    let mut gaps = alloc::vec![0u64; r];
    for combo in Combinations::new(pool.len(), r - 1) {
        for (slot, &idx) in gaps[1..].iter_mut().zip(combo.iter()) {
            *slot = pool[idx];
        }
        if let Ok(module) = GammaModule::from_gaps(semigroup, &gaps) {
            if !found.contains(&module) {
                found.push(module);
            }
        }
    }
    Ok(OrderSetFamily::from_members(r, found))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul(n - i) / (i + 1);
    }
    out
}

/// Plain index-combination iterator: all ascending k-subsets of `0..n`.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            indices: (0..k).collect(),
            first: true,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.indices.clone());
        }
        let k = self.indices.len();
        if k == 0 {
            self.done = true;
            return None;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.indices[i] != i + self.n - k {
                break;
            }
        }
        self.indices[i] += 1;
        for j in i + 1..k {
            self.indices[j] = self.indices[j - 1] + 1;
        }
        Some(self.indices.clone())
    }
}
