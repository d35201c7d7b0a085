//! Order sets of ideals, stored canonically by their finite gap set.
//!
//! An order set is a subset `S` of the semigroup closed under adding
//! semigroup elements. Its gap set (semigroup members missing from `S`) is
//! finite, unique, and the size of the gap set is exactly the codimension of
//! any ideal with that order set, which makes the gap set the canonical key
//! for deduplication and ordering throughout the crate.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::semigroup::Semigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleError {
    /// A listed gap is not a member of the ambient semigroup.
    NotInSemigroup { value: u64 },
    /// A nonempty gap set must contain 0 (the order set of a proper ideal
    /// omits the units).
    MissingZero,
    /// The complement is not closed: `witness + step` lands back in the gap
    /// set even though `witness` is in the order set.
    NotClosed { witness: u64, step: u64 },
    /// No generators supplied.
    EmptyGenerators,
    /// `remove_generator` called with a non-minimal element.
    NotMinimalGenerator { value: u64 },
    /// Gap-block decomposition of a gap set without nonzero gaps.
    EmptyG1,
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::NotInSemigroup { value } => {
                write!(f, "{value} is not a member of the semigroup")
            }
            ModuleError::MissingZero => write!(f, "nonempty gap set must contain 0"),
            ModuleError::NotClosed { witness, step } => write!(
                f,
                "not closed: {witness} is in the order set, {step} is in the semigroup, \
                 but {witness}+{step} is a gap"
            ),
            ModuleError::EmptyGenerators => write!(f, "no generators supplied"),
            ModuleError::NotMinimalGenerator { value } => {
                write!(f, "{value} is not a minimal generator")
            }
            ModuleError::EmptyG1 => write!(f, "gap set has no nonzero element"),
        }
    }
}

/// An order set over a fixed semigroup, canonically represented by its gap
/// set. Immutable; equality and ordering compare gap sets.
#[derive(Clone, Debug)]
pub struct GammaModule<'a> {
    semigroup: &'a Semigroup,
    /// Sorted members of the semigroup missing from the order set.
    gaps: Vec<u64>,
    /// max(gaps) + 1, or 0 when there are no gaps.
    conductor: u64,
}

impl<'a> GammaModule<'a> {
    /// Validates `gaps` as the gap set of an order set over `semigroup`.
    pub fn from_gaps(semigroup: &'a Semigroup, gaps: &[u64]) -> Result<Self, ModuleError> {
        let mut gaps: Vec<u64> = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        for &g in &gaps {
            if !semigroup.contains(g as i64) {
                return Err(ModuleError::NotInSemigroup { value: g });
            }
        }
        if !gaps.is_empty() && gaps[0] != 0 {
            return Err(ModuleError::MissingZero);
        }
        let conductor = gaps.last().map_or(0, |&m| m + 1);
        // Closure on the finite window: a violation s + g in gaps forces
        // s < conductor, so members below the module conductor suffice.
        for s in semigroup.elements_up_to(conductor.saturating_sub(1)) {
            if gaps.binary_search(&s).is_ok() {
                continue;
            }
            for &g in semigroup.generators() {
                if gaps.binary_search(&(s + g)).is_ok() {
                    return Err(ModuleError::NotClosed {
                        witness: s,
                        step: g,
                    });
                }
            }
        }
        Ok(GammaModule {
            semigroup,
            gaps,
            conductor,
        })
    }

    /// The order set generated by `gens`: the union of the shifted copies
    /// `g + S` over the ambient semigroup `S`.
    pub fn from_generators(semigroup: &'a Semigroup, gens: &[u64]) -> Result<Self, ModuleError> {
        if gens.is_empty() {
            return Err(ModuleError::EmptyGenerators);
        }
        for &g in gens {
            if !semigroup.contains(g as i64) {
                return Err(ModuleError::NotInSemigroup { value: g });
            }
        }
        let least = *gens.iter().min().unwrap();
        // Every member at or above least + conductor is generated, so gaps
        // live strictly below that bound.
        let bound = least + semigroup.conductor();
        let gaps: Vec<u64> = semigroup
            .elements_up_to(bound.saturating_sub(1))
            .into_iter()
            .filter(|&x| {
                !gens
                    .iter()
                    .any(|&g| x >= g && semigroup.contains((x - g) as i64))
            })
            .collect();
        let conductor = gaps.last().map_or(0, |&m| m + 1);
        Ok(GammaModule {
            semigroup,
            gaps,
            conductor,
        })
    }

    pub fn semigroup(&self) -> &'a Semigroup {
        self.semigroup
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// max(gaps) + 1; every semigroup member at or above it is in the order
    /// set.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Size of the gap set = colength of any ideal with this order set.
    pub fn codimension(&self) -> usize {
        self.gaps.len()
    }

    /// True iff `n` belongs to the order set.
    pub fn contains(&self, n: i64) -> bool {
        self.semigroup.contains(n) && (n < 0 || self.gaps.binary_search(&(n as u64)).is_err())
    }

    /// Smallest member of the order set.
    pub fn min_element(&self) -> u64 {
        let mut n = 0;
        loop {
            if self.contains(n as i64) {
                return n;
            }
            n += 1;
        }
    }

    /// Minimal generating set, ascending: repeatedly take the least
    /// remaining member and delete its shifted copy of the semigroup.
    /// Members at or above `min + conductor` are never minimal, so the
    /// search window is finite.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let least = self.min_element();
        let window = least + self.semigroup.conductor();
        let mut remaining: Vec<u64> = (least..=window)
            .filter(|&n| self.contains(n as i64))
            .collect();
        let mut gens = Vec::new();
        while let Some(&alpha) = remaining.first() {
            gens.push(alpha);
            remaining.retain(|&x| !self.semigroup.contains((x - alpha) as i64));
        }
        gens
    }

    /// The order set with `alpha` (a minimal generator) moved into the gap
    /// set; its codimension is one higher.
    pub fn remove_generator(&self, alpha: u64) -> Result<GammaModule<'a>, ModuleError> {
        if !self.minimal_generators().contains(&alpha) {
            return Err(ModuleError::NotMinimalGenerator { value: alpha });
        }
        let mut gaps = self.gaps.clone();
        let pos = gaps.binary_search(&alpha).unwrap_err();
        gaps.insert(pos, alpha);
        let out = GammaModule::from_gaps(self.semigroup, &gaps)
            .expect("removing a minimal generator keeps the complement closed");
        debug_assert_eq!(out.codimension(), self.codimension() + 1);
        Ok(out)
    }

    /// Decomposes the nonzero gaps into blocks: each block starts at the
    /// least gap not yet covered and collects the remaining gaps reachable
    /// from it inside the semigroup shift.
    pub fn gap_blocks(&self) -> Result<GapBlocks, ModuleError> {
        let mut remaining: Vec<u64> = self.gaps.iter().copied().filter(|&g| g != 0).collect();
        if remaining.is_empty() {
            return Err(ModuleError::EmptyG1);
        }
        let total = remaining.len();
        let mut blocks = Vec::new();
        let mut covered = 0;
        while let Some(&base) = remaining.first() {
            let (members, rest): (Vec<u64>, Vec<u64>) = remaining
                .iter()
                .partition(|&&x| self.semigroup.contains((x - base) as i64));
            covered += members.len();
            let max = *members.last().unwrap();
            blocks.push(GapBlock { base, members, max });
            remaining = rest;
        }
        Ok(GapBlocks {
            blocks,
            coverage_ok: covered == total,
        })
    }

    /// Diagnostic for the reverse direction of the enumeration step: for
    /// each gap block, check whether deleting its maximal element from the
    /// gap set leaves a valid order set. This can fail (the enumeration does
    /// not rely on it); the per-candidate outcome is reported as-is.
    pub fn block_max_removal_diagnostics(&self) -> Vec<RemovalCandidate> {
        let Ok(blocks) = self.gap_blocks() else {
            return Vec::new();
        };
        blocks
            .blocks
            .iter()
            .map(|b| {
                let gaps: Vec<u64> = self.gaps.iter().copied().filter(|&g| g != b.max).collect();
                RemovalCandidate {
                    removed: b.max,
                    result: GammaModule::from_gaps(self.semigroup, &gaps).map(|m| m.gaps),
                }
            })
            .collect()
    }
}

impl PartialEq for GammaModule<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.semigroup == other.semigroup && self.gaps == other.gaps
    }
}

impl Eq for GammaModule<'_> {}

impl PartialOrd for GammaModule<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GammaModule<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps.cmp(&other.gaps)
    }
}

impl fmt::Display for GammaModule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.minimal_generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// One block of the gap decomposition: `members` are the gaps reachable
/// from `base` by semigroup shifts, `max` is the block's largest gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapBlock {
    pub base: u64,
    pub members: Vec<u64>,
    pub max: u64,
}

/// Ordered gap-block decomposition of the nonzero gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapBlocks {
    pub blocks: Vec<GapBlock>,
    /// Whether the blocks cover every nonzero gap (always true; recorded for
    /// the diagnostics output).
    pub coverage_ok: bool,
}

/// Outcome of deleting one block maximum from the gap set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalCandidate {
    pub removed: u64,
    pub result: Result<Vec<u64>, ModuleError>,
}
