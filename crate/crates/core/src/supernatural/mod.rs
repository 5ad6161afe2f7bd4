//! Supernatural (Steinitz) numbers as a Heyting algebra.
//!
//! A supernatural number is a formal product `∏ p^{e_p}` over all primes,
//! with exponents in `ℕ ∪ {∞}`. Divisibility (pointwise `≤` on exponents)
//! makes them a bounded distributive lattice with bottom `1` and top `Ω`
//! (every exponent infinite), in which relative pseudocomplements exist.
//! It is a Stone lattice, though not a Boolean algebra.
//!
//! An element is stored as a default exponent (either `0` or `∞`) together
//! with finitely many exceptional primes. This closes all connectives in
//! finite data: the pseudocomplement of a prime `p`, for example, is
//! `Ω(~{p})`, with infinite exponent at every prime other than `p`.

mod group;
mod parse;
mod prime_set;

pub use group::{render_group, GroupDescription, GroupKind};
pub use parse::parse_supernatural;
pub use prime_set::PrimeSet;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error as ThisError;

use crate::arith::{factorize, is_prime};

#[derive(Debug, ThisError, PartialEq, Eq)]
pub enum Error {
    #[error("0 is not a supernatural number")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("default exponent must be 0 or infinite")]
    BadDefault,
    #[error("exception at prime {0} equals the default exponent")]
    RedundantException(u64),
    #[error("cannot parse supernatural literal: {msg} (at byte {pos})")]
    Parse { msg: String, pos: usize },
}

/// An exponent in `ℕ ∪ {∞}`. The derived order puts every finite value
/// below `Infinite`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Exponent::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == Exponent::Infinite
    }

    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// Default exponent of the cofinitely many unexceptional primes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum DefaultExp {
    Zero,
    Infinite,
}

impl DefaultExp {
    fn as_exponent(self) -> Exponent {
        match self {
            DefaultExp::Zero => Exponent::ZERO,
            DefaultExp::Infinite => Exponent::Infinite,
        }
    }

    fn from_exponent(e: Exponent) -> Option<DefaultExp> {
        match e {
            Exponent::Finite(0) => Some(DefaultExp::Zero),
            Exponent::Infinite => Some(DefaultExp::Infinite),
            Exponent::Finite(_) => None,
        }
    }
}

/// A supernatural (Steinitz) number in canonical form.
///
/// Canonical means no stored exception equals the default exponent, so
/// structural equality coincides with equality of exponent functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SupernaturalNumber {
    default: DefaultExp,
    exceptions: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    /// The bottom element `1` (every exponent zero).
    pub fn one() -> Self {
        SupernaturalNumber { default: DefaultExp::Zero, exceptions: BTreeMap::new() }
    }

    /// The top element `Ω` (every exponent infinite).
    pub fn omega() -> Self {
        SupernaturalNumber { default: DefaultExp::Infinite, exceptions: BTreeMap::new() }
    }

    /// The maximal π-number `Ω(π)`: exponent `∞` on `π`, `0` elsewhere.
    pub fn omega_over(primes: &PrimeSet) -> Self {
        let default =
            if primes.default_member() { DefaultExp::Infinite } else { DefaultExp::Zero };
        let flipped = default.as_exponent();
        let exceptions = primes
            .exceptions()
            .iter()
            .map(|&p| {
                (p, if flipped.is_infinite() { Exponent::ZERO } else { Exponent::Infinite })
            })
            .collect();
        SupernaturalNumber { default, exceptions }
    }

    /// Embeds a natural number via its prime factorization.
    pub fn from_natural(n: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let exceptions =
            factorize(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect();
        Ok(SupernaturalNumber { default: DefaultExp::Zero, exceptions })
    }

    /// Builds an element from a default exponent (`0` or `∞`) and finitely
    /// many exceptions. Rejects composite keys, non-canonical entries, and
    /// defaults other than `0`/`∞`.
    pub fn from_parts(
        default: Exponent,
        exceptions: impl IntoIterator<Item = (u64, Exponent)>,
    ) -> Result<Self, Error> {
        let default = DefaultExp::from_exponent(default).ok_or(Error::BadDefault)?;
        let mut map = BTreeMap::new();
        for (p, e) in exceptions {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e == default.as_exponent() {
                return Err(Error::RedundantException(p));
            }
            map.insert(p, e);
        }
        Ok(SupernaturalNumber { default, exceptions: map })
    }

    /// The exponent of prime `p` in this number.
    pub fn exponent(&self, p: u64) -> Exponent {
        self.exceptions.get(&p).copied().unwrap_or(self.default.as_exponent())
    }

    /// The exponent assigned to every prime without an exception.
    pub fn default_exponent(&self) -> Exponent {
        self.default.as_exponent()
    }

    /// The exceptional primes and their exponents, ascending by prime.
    pub fn exceptions(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exceptions.iter().map(|(&p, &e)| (p, e))
    }

    /// True when the number is an ordinary natural number (all exponents
    /// finite and cofinitely many zero).
    pub fn is_natural(&self) -> bool {
        self.default == DefaultExp::Zero
            && self.exceptions.values().all(|e| !e.is_infinite())
    }

    /// The numeric value of a natural number, if it fits in `u128`.
    pub fn natural_value(&self) -> Option<u128> {
        if !self.is_natural() {
            return None;
        }
        let mut acc: u128 = 1;
        for (&p, &e) in &self.exceptions {
            let Exponent::Finite(e) = e else { unreachable!() };
            acc = acc.checked_mul((p as u128).checked_pow(e)?)?;
        }
        Some(acc)
    }

    /// Divisibility: pointwise `e_p(self) ≤ e_p(other)`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.default.as_exponent() > other.default.as_exponent() {
            return false;
        }
        self.union_primes(other).all(|p| self.exponent(p) <= other.exponent(p))
    }

    /// Greatest common divisor: pointwise minimum of exponents.
    pub fn meet(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a.min(b))
    }

    /// Least common multiple: pointwise maximum of exponents.
    pub fn join(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a.max(b))
    }

    /// Relative pseudocomplement: the greatest `x` with `self ∧ x ≼ other`.
    /// Pointwise, the exponent is `∞` where `e_p(other) ≥ e_p(self)` and
    /// `e_p(other)` elsewhere.
    pub fn implies(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| if b >= a { Exponent::Infinite } else { b })
    }

    /// Pseudocomplement `¬a = (a ⇒ 1)`: the maximal number coprime to `a`.
    pub fn neg(&self) -> Self {
        self.implies(&Self::one())
    }

    /// Equivalence `(a ⇒ b) ∧ (b ⇒ a)`.
    pub fn equiv(&self, other: &Self) -> Self {
        self.implies(other).meet(&other.implies(self))
    }

    /// Formal product: pointwise sum of exponents. Not a lattice
    /// operation; used to assemble literals such as `2^inf*3^2`.
    pub fn mul(&self, other: &Self) -> Self {
        self.pointwise(other, Exponent::add)
    }

    /// Meet of any finite family; empty input yields the top element `Ω`.
    pub fn meet_all<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self {
        items.into_iter().fold(Self::omega(), |acc, x| acc.meet(x))
    }

    /// Join of any finite family; empty input yields the bottom element `1`.
    pub fn join_all<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self {
        items.into_iter().fold(Self::one(), |acc, x| acc.join(x))
    }

    /// The support: primes with exponent at least one.
    pub fn support(&self) -> PrimeSet {
        let default_member = self.default == DefaultExp::Infinite;
        let exceptions = self
            .exceptions
            .iter()
            .filter(|(_, e)| !e.is_zero() != default_member)
            .map(|(&p, _)| p)
            .collect();
        PrimeSet::from_parts(default_member, exceptions)
    }

    /// Splits the support into the primes with finite nonzero exponent and
    /// the primes with infinite exponent.
    pub fn support_partition(&self) -> (PrimeSet, PrimeSet) {
        let finite: BTreeSet<u64> = self
            .exceptions
            .iter()
            .filter(|(_, e)| !e.is_zero() && !e.is_infinite())
            .map(|(&p, _)| p)
            .collect();
        let infinite_default = self.default == DefaultExp::Infinite;
        let infinite_exceptions = self
            .exceptions
            .iter()
            .filter(|(_, e)| e.is_infinite() != infinite_default)
            .map(|(&p, _)| p)
            .collect();
        (
            PrimeSet::from_parts(false, finite),
            PrimeSet::from_parts(infinite_default, infinite_exceptions),
        )
    }

    /// True when every exponent is `0` or `∞`, i.e. the number is `Ω(π)`
    /// for some prime set `π`. These are exactly the elements fixed by
    /// double negation.
    pub fn is_omega_form(&self) -> bool {
        self.exceptions.values().all(|e| e.is_zero() || e.is_infinite())
    }

    fn union_primes<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = u64> + 'a {
        let extra: Vec<u64> = other
            .exceptions
            .keys()
            .filter(|p| !self.exceptions.contains_key(p))
            .copied()
            .collect();
        self.exceptions.keys().copied().chain(extra)
    }

    fn pointwise(&self, other: &Self, op: impl Fn(Exponent, Exponent) -> Exponent) -> Self {
        let default_exp = op(self.default.as_exponent(), other.default.as_exponent());
        let default = DefaultExp::from_exponent(default_exp)
            .expect("pointwise connectives map {0, inf} defaults into {0, inf}");
        let mut exceptions = BTreeMap::new();
        for p in self.union_primes(other) {
            let e = op(self.exponent(p), other.exponent(p));
            if e != default.as_exponent() {
                exceptions.insert(p, e);
            }
        }
        SupernaturalNumber { default, exceptions }
    }

    #[cfg(test)]
    pub(crate) fn is_canonical(&self) -> bool {
        self.exceptions
            .iter()
            .all(|(&p, &e)| is_prime(p) && e != self.default.as_exponent())
    }
}

/// Result of comparing two exponent functions prime by prime: the primes
/// where the first is strictly greater, where they agree, and where the
/// second is strictly greater. The three sets partition all primes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentComparison {
    pub greater: PrimeSet,
    pub equal: PrimeSet,
    pub less: PrimeSet,
}

/// Compares `a` and `b` pointwise over all primes.
pub fn compare_exponents(a: &SupernaturalNumber, b: &SupernaturalNumber) -> ExponentComparison {
    let default_order = a.default_exponent().cmp(&b.default_exponent());
    let primes: BTreeSet<u64> = a
        .exceptions()
        .map(|(p, _)| p)
        .chain(b.exceptions().map(|(p, _)| p))
        .collect();
    // The class of every unlisted prime is `default_order`; a listed prime
    // with a different class is an exception both for its own (finite) set
    // and for the cofinite default set.
    let mut sets = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for &p in &primes {
        let order = a.exponent(p).cmp(&b.exponent(p));
        if order != default_order {
            sets[order_index(order)].insert(p);
            sets[order_index(default_order)].insert(p);
        }
    }
    let [greater, equal, less] = sets;
    let build = |idx: usize, exceptions: BTreeSet<u64>| {
        PrimeSet::from_parts(order_index(default_order) == idx, exceptions)
    };
    ExponentComparison {
        greater: build(0, greater),
        equal: build(1, equal),
        less: build(2, less),
    }
}

fn order_index(order: std::cmp::Ordering) -> usize {
    match order {
        std::cmp::Ordering::Greater => 0,
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Less => 2,
    }
}

impl fmt::Display for SupernaturalNumber {
    /// Canonical literal form: naturals print in decimal, everything else
    /// as `p^e` factors times an `Omega(...)` part, e.g. `2^2*Omega({3})`
    /// or `5^1*Omega(~{2,3,5})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_natural() {
            if let Some(v) = self.natural_value() {
                return write!(f, "{v}");
            }
        }
        let (finite, infinite) = self.support_partition();
        let mut first = true;
        for (p, e) in self.exceptions() {
            if let Exponent::Finite(k) = e {
                if k > 0 {
                    if !first {
                        write!(f, "*")?;
                    }
                    write!(f, "{p}^{k}")?;
                    first = false;
                }
            }
        }
        debug_assert_eq!(finite.is_empty(), first);
        if infinite.is_empty() {
            if first {
                write!(f, "1")?;
            }
            return Ok(());
        }
        if !first {
            write!(f, "*")?;
        }
        if infinite.is_all() {
            write!(f, "Omega")
        } else {
            write!(f, "Omega({infinite})")
        }
    }
}

impl std::str::FromStr for SupernaturalNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_supernatural(s)
    }
}

#[cfg(test)]
mod tests;
