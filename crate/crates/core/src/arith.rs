//! Integer helpers shared by the lattice and quantum modules.

use std::collections::BTreeMap;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple. Panics on overflow; all callers work below the
/// modulus caps where `lcm(a, b) <= n` holds.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division. `factorize(1)` is the empty map.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    assert!(n >= 1, "cannot factorize 0");
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2;
    while out.len() < k {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// All divisors of the number with the given factorization, sorted ascending.
pub fn divisors_from_factorization(factorization: &BTreeMap<u64, u32>) -> Vec<u64> {
    let mut out = vec![1u64];
    for (&p, &e) in factorization {
        let base = out.clone();
        let mut power = 1u64;
        for _ in 0..e {
            power *= p;
            out.extend(base.iter().map(|d| d * power));
        }
    }
    out.sort_unstable();
    out
}
