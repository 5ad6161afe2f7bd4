//! The finite Heyting algebra of divisors of a fixed modulus.
//!
//! For a natural number `n`, its divisors ordered by divisibility form a
//! finite distributive lattice with meet = GCD and join = LCM, bottom `1`
//! and top `n`. Being finite and distributive it is a Heyting algebra (in
//! fact a Stone lattice); the connectives have closed forms obtained from
//! the supernatural ones by substituting `p^inf -> p^{e_p(n)}`:
//!
//! ```text
//! neg a     = prod_{p | n, p ∤ a} p^{e_p(n)}
//! (a => b)  = prod_{e_p(b) >= e_p(a)} p^{e_p(n)} * prod_{e_p(a) > e_p(b)} p^{e_p(b)}
//! (a <=> b) = (a => b) ^ (b => a)
//! ```
//!
//! The Hall divisors (those with `gcd(m, n/m) = 1`) are exactly the
//! elements satisfying the law of the excluded middle; they form the
//! Boolean subalgebra of the lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error as ThisError;

use crate::arith::{divisors_from_factorization, factorize, gcd, lcm};

/// Default cap on the modulus for lattice-only use.
pub const DEFAULT_MODULUS_CAP: u64 = 1_000_000;

#[derive(Debug, ThisError, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {n} exceeds the cap {cap}")]
    AboveCap { n: u64, cap: u64 },
    #[error("{value} does not divide the modulus {n}")]
    NotADivisor { value: u64, n: u64 },
    #[error("elements belong to different moduli ({a} and {b})")]
    ModulusMismatch { a: u64, b: u64 },
    #[error("unknown connective `{0}` (expected meet, join, implies, or equiv)")]
    UnknownConnective(String),
}

#[derive(Debug)]
struct ModulusData {
    n: u64,
    factorization: BTreeMap<u64, u32>,
    divisors: Vec<u64>,
}

/// A fixed modulus `n` with its factorization and sorted divisor list.
/// Cloning is cheap; clones share the underlying data.
#[derive(Clone, Debug)]
pub struct Modulus {
    data: Arc<ModulusData>,
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.data.n == other.data.n
    }
}

impl Eq for Modulus {}

impl Modulus {
    pub fn new(n: u64) -> Result<Self, Error> {
        Self::with_cap(n, DEFAULT_MODULUS_CAP)
    }

    pub fn with_cap(n: u64, cap: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if n > cap {
            return Err(Error::AboveCap { n, cap });
        }
        let factorization = factorize(n);
        let divisors = divisors_from_factorization(&factorization);
        Ok(Modulus { data: Arc::new(ModulusData { n, factorization, divisors }) })
    }

    pub fn n(&self) -> u64 {
        self.data.n
    }

    pub fn factorization(&self) -> &BTreeMap<u64, u32> {
        &self.data.factorization
    }

    /// All divisors of `n`, sorted ascending.
    pub fn divisors(&self) -> &[u64] {
        &self.data.divisors
    }

    pub fn element(&self, value: u64) -> Result<DivisorElement, Error> {
        if value == 0 || self.data.n % value != 0 {
            return Err(Error::NotADivisor { value, n: self.data.n });
        }
        Ok(DivisorElement::new(value, self.clone()))
    }

    pub fn elements(&self) -> Vec<DivisorElement> {
        self.data.divisors.iter().map(|&d| DivisorElement::new(d, self.clone())).collect()
    }

    /// Bottom of the lattice, the divisor 1.
    pub fn bottom(&self) -> DivisorElement {
        DivisorElement::new(1, self.clone())
    }

    /// Top of the lattice, the modulus itself.
    pub fn top(&self) -> DivisorElement {
        DivisorElement::new(self.data.n, self.clone())
    }

    pub fn is_hall(&self, value: u64) -> bool {
        self.data.n % value == 0 && gcd(value, self.data.n / value) == 1
    }

    /// The Hall divisors of `n`: divisors `m` with `gcd(m, n/m) = 1`. They
    /// form the Boolean subalgebra; there are `2^k` of them where `k` is
    /// the number of distinct primes of `n`.
    pub fn hall_divisors(&self) -> Vec<DivisorElement> {
        self.data
            .divisors
            .iter()
            .filter(|&&d| self.is_hall(d))
            .map(|&d| DivisorElement::new(d, self.clone()))
            .collect()
    }

    /// Number of prime factors of `n` counted with multiplicity.
    pub fn prime_omega(&self) -> u32 {
        self.data.factorization.values().sum()
    }

    /// Every maximal chain `1 = d_0 | d_1 | ... | d_k = n` with prime
    /// covering steps, in lexicographic order of the divisor sequences.
    /// Each chain has `prime_omega() + 1` members.
    pub fn maximal_chains(&self) -> Vec<Vec<DivisorElement>> {
        let primes: Vec<u64> = self.data.factorization.keys().copied().collect();
        let mut chains = Vec::new();
        let mut path = vec![1u64];
        self.extend_chain(&primes, &mut path, &mut chains);
        chains
            .into_iter()
            .map(|chain| chain.into_iter().map(|d| DivisorElement::new(d, self.clone())).collect())
            .collect()
    }

    fn extend_chain(&self, primes: &[u64], path: &mut Vec<u64>, chains: &mut Vec<Vec<u64>>) {
        let current = *path.last().expect("path starts at 1");
        if current == self.data.n {
            chains.push(path.clone());
            return;
        }
        for &p in primes {
            if (self.data.n / current) % p == 0 {
                path.push(current * p);
                self.extend_chain(primes, path, chains);
                path.pop();
            }
        }
    }

    /// Covering relations of the lattice: pairs `(a, b)` with `a | b` and
    /// `b / a` prime, ordered by `(a, b)`.
    pub fn hasse_edges(&self) -> Vec<(DivisorElement, DivisorElement)> {
        let mut edges = Vec::new();
        for &d in &self.data.divisors {
            for &p in self.data.factorization.keys() {
                if (self.data.n / d) % p == 0 {
                    edges.push((d, d * p));
                }
            }
        }
        edges.sort_unstable();
        edges
            .into_iter()
            .map(|(a, b)| (DivisorElement::new(a, self.clone()), DivisorElement::new(b, self.clone())))
            .collect()
    }
}

/// A divisor of a fixed modulus, with its factorization cached.
#[derive(Clone, Debug)]
pub struct DivisorElement {
    value: u64,
    modulus: Modulus,
    factorization: BTreeMap<u64, u32>,
}

impl PartialEq for DivisorElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.modulus == other.modulus
    }
}

impl Eq for DivisorElement {}

impl fmt::Display for DivisorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl DivisorElement {
    fn new(value: u64, modulus: Modulus) -> Self {
        debug_assert!(value >= 1 && modulus.n() % value == 0);
        let factorization = modulus
            .factorization()
            .keys()
            .filter_map(|&p| {
                let mut e = 0;
                let mut v = value;
                while v % p == 0 {
                    v /= p;
                    e += 1;
                }
                (e > 0).then_some((p, e))
            })
            .collect();
        DivisorElement { value, modulus, factorization }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn factorization(&self) -> &BTreeMap<u64, u32> {
        &self.factorization
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factorization.get(&p).copied().unwrap_or(0)
    }

    pub fn is_hall(&self) -> bool {
        self.modulus.is_hall(self.value)
    }

    fn check_same_modulus(&self, other: &Self) -> Result<(), Error> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { a: self.modulus.n(), b: other.modulus.n() });
        }
        Ok(())
    }

    pub fn divides(&self, other: &Self) -> Result<bool, Error> {
        self.check_same_modulus(other)?;
        Ok(other.value % self.value == 0)
    }

    pub fn comparable(&self, other: &Self) -> Result<bool, Error> {
        Ok(self.divides(other)? || other.divides(self)?)
    }

    /// Meet: the greatest common divisor.
    pub fn meet(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_modulus(other)?;
        Ok(Self::new(gcd(self.value, other.value), self.modulus.clone()))
    }

    /// Join: the least common multiple.
    pub fn join(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_modulus(other)?;
        Ok(Self::new(lcm(self.value, other.value), self.modulus.clone()))
    }

    /// Relative pseudocomplement: the greatest `x | n` with
    /// `gcd(a, x) | b`. Closed form: full prime power of `n` where
    /// `e_p(b) >= e_p(a)`, and `p^{e_p(b)}` where `e_p(a) > e_p(b)`.
    pub fn implies(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_modulus(other)?;
        let mut value = 1u64;
        for (&p, &en) in self.modulus.factorization() {
            let ea = self.exponent(p);
            let eb = other.exponent(p);
            value *= p.pow(if eb >= ea { en } else { eb });
        }
        Ok(Self::new(value, self.modulus.clone()))
    }

    /// Pseudocomplement: the Hall divisor of `n` on the primes missing
    /// from this element.
    pub fn neg(&self) -> Self {
        let mut value = 1u64;
        for (&p, &en) in self.modulus.factorization() {
            if self.exponent(p) == 0 {
                value *= p.pow(en);
            }
        }
        Self::new(value, self.modulus.clone())
    }

    /// Equivalence `(a => b) ^ (b => a)`.
    pub fn equiv(&self, other: &Self) -> Result<Self, Error> {
        self.implies(other)?.meet(&other.implies(self)?)
    }
}

/// True when the elements are totally ordered by divisibility.
pub fn is_chain(elements: &[DivisorElement]) -> Result<bool, Error> {
    let mut values = Vec::with_capacity(elements.len());
    for e in elements {
        if let Some(first) = elements.first() {
            first.check_same_modulus(e)?;
        }
        values.push(e.value());
    }
    values.sort_unstable();
    values.dedup();
    Ok(values.windows(2).all(|w| w[1] % w[0] == 0))
}

/// Euler's totient, from the factorization of `m`.
pub fn totient(m: u64) -> u64 {
    assert!(m >= 1, "totient is defined on positive integers");
    factorize(m).into_iter().map(|(p, e)| p.pow(e - 1) * (p - 1)).product()
}

/// The binary Heyting connectives, selectable by name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Connective {
    Meet,
    Join,
    Implies,
    Equiv,
}

impl Connective {
    pub const ALL: [Connective; 4] =
        [Connective::Meet, Connective::Join, Connective::Implies, Connective::Equiv];

    pub fn name(self) -> &'static str {
        match self {
            Connective::Meet => "meet",
            Connective::Join => "join",
            Connective::Implies => "implies",
            Connective::Equiv => "equiv",
        }
    }

    pub fn apply(
        self,
        a: &DivisorElement,
        b: &DivisorElement,
    ) -> Result<DivisorElement, Error> {
        match self {
            Connective::Meet => a.meet(b),
            Connective::Join => a.join(b),
            Connective::Implies => a.implies(b),
            Connective::Equiv => a.equiv(b),
        }
    }
}

impl std::str::FromStr for Connective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "meet" => Ok(Connective::Meet),
            "join" => Ok(Connective::Join),
            "implies" => Ok(Connective::Implies),
            "equiv" => Ok(Connective::Equiv),
            other => Err(Error::UnknownConnective(other.to_string())),
        }
    }
}

/// CSV truth table of all four binary connectives over `D(n) x D(n)`,
/// header `a,b,meet,join,implies,equiv`, rows sorted by `(a, b)`.
pub fn truth_table_csv(modulus: &Modulus) -> String {
    let mut out = String::from("a,b,meet,join,implies,equiv\n");
    for a in modulus.elements() {
        for b in modulus.elements() {
            let cells: Vec<String> = Connective::ALL
                .iter()
                .map(|c| c.apply(&a, &b).expect("same modulus").value().to_string())
                .collect();
            out.push_str(&format!("{},{},{}\n", a.value(), b.value(), cells.join(",")));
        }
    }
    out
}

/// DOT digraph of the covering relations, nodes labelled by divisor value,
/// Hall divisors drawn as boxes.
pub fn hasse_dot(modulus: &Modulus) -> String {
    let mut out = String::from("digraph {\n");
    for &d in modulus.divisors() {
        if modulus.is_hall(d) {
            out.push_str(&format!("  \"{d}\" [shape=box];\n"));
        } else {
            out.push_str(&format!("  \"{d}\";\n"));
        }
    }
    for (a, b) in modulus.hasse_edges() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", a.value(), b.value()));
    }
    out.push_str("}\n");
    out
}
