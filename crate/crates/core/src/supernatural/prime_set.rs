//! Finite and cofinite sets of primes.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::is_prime;

use super::Error;

/// A finite or cofinite set of prime numbers.
///
/// Membership of every prime not listed in `exceptions` equals
/// `default_member`, so a finite set has `default_member = false` and a
/// cofinite set has `default_member = true`. The class is closed under
/// union, intersection and complement.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeSet {
    default_member: bool,
    exceptions: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet { default_member: false, exceptions: BTreeSet::new() }
    }

    /// The set of all primes.
    pub fn all() -> Self {
        PrimeSet { default_member: true, exceptions: BTreeSet::new() }
    }

    /// The finite set containing exactly the given primes.
    pub fn of(primes: impl IntoIterator<Item = u64>) -> Result<Self, Error> {
        Ok(PrimeSet { default_member: false, exceptions: checked_primes(primes)? })
    }

    /// The cofinite set containing every prime except the given ones.
    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Result<Self, Error> {
        Ok(PrimeSet { default_member: true, exceptions: checked_primes(excluded)? })
    }

    pub(crate) fn from_parts(default_member: bool, exceptions: BTreeSet<u64>) -> Self {
        debug_assert!(exceptions.iter().all(|&p| is_prime(p)));
        PrimeSet { default_member, exceptions }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.default_member != self.exceptions.contains(&p)
    }

    pub fn is_finite(&self) -> bool {
        !self.default_member
    }

    pub fn is_empty(&self) -> bool {
        !self.default_member && self.exceptions.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.default_member && self.exceptions.is_empty()
    }

    /// The listed members of a finite set, or `None` for a cofinite set.
    pub fn finite_members(&self) -> Option<&BTreeSet<u64>> {
        if self.default_member {
            None
        } else {
            Some(&self.exceptions)
        }
    }

    /// The primes whose membership differs from the default.
    pub fn exceptions(&self) -> &BTreeSet<u64> {
        &self.exceptions
    }

    pub fn default_member(&self) -> bool {
        self.default_member
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        PrimeSet { default_member: !self.default_member, exceptions: self.exceptions.clone() }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let default_member = op(self.default_member, other.default_member);
        let exceptions = self
            .exceptions
            .iter()
            .chain(other.exceptions.iter())
            .copied()
            .filter(|&p| op(self.contains(p), other.contains(p)) != default_member)
            .collect();
        PrimeSet { default_member, exceptions }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.default_member {
            write!(f, "~")?;
        }
        write!(f, "{{")?;
        for (i, p) in self.exceptions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

fn checked_primes(primes: impl IntoIterator<Item = u64>) -> Result<BTreeSet<u64>, Error> {
    let mut out = BTreeSet::new();
    for p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        out.insert(p);
    }
    Ok(out)
}
