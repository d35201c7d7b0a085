//! Numerical semigroups: cofinite additive submonoids of the naturals.
//!
//! A semigroup is given by coprime positive generators. Membership below the
//! conductor is precomputed by dynamic programming; at and above the
//! conductor every integer belongs, so queries are O(1) everywhere.

use alloc::vec::Vec;
use core::fmt;

/// Hard cap on the conductor; inputs driving the membership table past this
/// are rejected instead of exhausting memory.
const MAX_TABLE: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupError {
    /// No generators supplied.
    Empty,
    /// A generator was zero.
    ZeroGenerator,
    /// gcd of the generators is not 1, so the gap set would be infinite.
    NotCoprime { gcd: u64 },
    /// The conductor exceeds the built-in table cap.
    TooLarge,
}

impl fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupError::Empty => write!(f, "no generators supplied"),
            SemigroupError::ZeroGenerator => write!(f, "generators must be positive"),
            SemigroupError::NotCoprime { gcd } => {
                write!(
                    f,
                    "generators are not coprime (gcd {gcd}); no conductor exists"
                )
            }
            SemigroupError::TooLarge => write!(f, "conductor exceeds the supported range"),
        }
    }
}

/// A numerical semigroup with precomputed gaps and conductor.
///
/// Immutable after construction; all queries are pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<u64>,
    /// membership[n] for n < conductor; everything >= conductor belongs.
    membership: Vec<bool>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl Semigroup {
    /// Builds the semigroup generated by `gens` under addition.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();

        let gcd = generators
            .iter()
            .fold(0u64, |acc, g| num_integer::Integer::gcd(&acc, g));
        if gcd != 1 {
            return Err(SemigroupError::NotCoprime { gcd });
        }

        let least = generators[0] as usize;
        // Grow the membership table until a run of `least` consecutive
        // members appears; from the start of such a run onward every integer
        // is a member, so the conductor is found exactly.
        let mut table: Vec<bool> = alloc::vec![false];
        table[0] = true;
        let mut run = 1usize; // current tail run of members
        let mut conductor = 0usize;
        if least == 1 {
            // The full monoid: conductor 0.
        } else {
            loop {
                let n = table.len();
                if n > MAX_TABLE {
                    return Err(SemigroupError::TooLarge);
                }
                let member = generators
                    .iter()
                    .take_while(|&&g| (g as usize) <= n)
                    .any(|&g| table[n - g as usize]);
                table.push(member);
                if member {
                    run += 1;
                    if run == least {
                        conductor = n + 1 - run;
                        break;
                    }
                } else {
                    run = 0;
                }
            }
        }

        let gaps: Vec<u64> = (0..conductor)
            .filter(|&n| !table[n])
            .map(|n| n as u64)
            .collect();
        table.truncate(conductor.max(1));
        Ok(Semigroup {
            generators,
            membership: table,
            gaps,
            conductor: conductor as u64,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The gap sequence: naturals below the conductor that are not members.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Least integer `c` with everything at or above `c` a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps (the genus).
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Smallest nonzero member (the multiplicity).
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        if n >= self.conductor {
            return true;
        }
        self.membership[n as usize]
    }

    /// Members in `[0, bound]`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| self.contains(n as i64)).collect()
    }

    /// The n-th successive nonzero member, 1-indexed.
    pub fn nth_nonzero_element(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        let mut seen = 0;
        let mut x = 1;
        loop {
            if self.contains(x as i64) {
                seen += 1;
                if seen == n {
                    return x;
                }
            }
            x += 1;
        }
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_seven() {
        let s = Semigroup::from_generators(&[2, 7]).unwrap();
        assert_eq!(s.gaps(), &[1, 3, 5]);
        assert_eq!(s.conductor(), 6);
        assert_eq!(s.elements_up_to(8), alloc::vec![0, 2, 4, 6, 7, 8]);
        assert!(!s.contains(5));
        assert_eq!(s.genus(), 3);
    }

    #[test]
    fn three_four() {
        let s = Semigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 5]);
        assert_eq!(s.conductor(), 6);
        assert!(s.contains(0));
        assert!(!s.contains(5));
        assert_eq!(s.genus(), 3);
        // independent cross-check: enumerate n*3 + m*4 directly
        let mut members = alloc::vec![];
        for n in 0..=8u64 {
            let mut found = false;
            for i in 0..=3 {
                for j in 0..=2 {
                    if 3 * i + 4 * j == n {
                        found = true;
                    }
                }
            }
            if found {
                members.push(n);
            }
        }
        assert_eq!(s.elements_up_to(8), members);
    }

    #[test]
    fn full_monoid() {
        let s = Semigroup::from_generators(&[1]).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.elements_up_to(3), alloc::vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_non_coprime() {
        assert_eq!(
            Semigroup::from_generators(&[4, 6]),
            Err(SemigroupError::NotCoprime { gcd: 2 })
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Semigroup::from_generators(&[]), Err(SemigroupError::Empty));
        assert_eq!(
            Semigroup::from_generators(&[0, 3]),
            Err(SemigroupError::ZeroGenerator)
        );
    }

    #[test]
    fn conductor_boundary() {
        for gens in [&[2u64, 7][..], &[3, 4], &[4, 5, 6], &[2, 9], &[3, 5]] {
            let s = Semigroup::from_generators(gens).unwrap();
            let c = s.conductor();
            assert!(s.contains(c as i64));
            if c > 0 {
                assert!(!s.contains(c as i64 - 1));
            }
        }
    }

    #[test]
    fn closed_under_addition_below_2c() {
        for gens in [&[2u64, 7][..], &[3, 4], &[4, 5, 6], &[6, 10, 15]] {
            let s = Semigroup::from_generators(gens).unwrap();
            let bound = 2 * s.conductor();
            let members = s.elements_up_to(bound);
            for &a in &members {
                for &b in &members {
                    assert!(s.contains((a + b) as i64), "{a}+{b} escaped {s}");
                }
            }
        }
    }
}
