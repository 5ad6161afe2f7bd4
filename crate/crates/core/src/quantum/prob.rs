//! Probability functionals attached to the subsystem projectors.

use crate::arith::{divisors_from_factorization, factorize, gcd};

use super::{DensityMatrix, Error, Projector};

/// `tau(m | rho)`: the probability that a von Neumann measurement of the
/// subsystem projector collapses `rho` into the embedded `H(m)`. Equals
/// the sum of diagonal entries of `rho` at indices that are multiples of
/// `n/m`.
pub fn tau(m: u64, rho: &DensityMatrix) -> Result<f64, Error> {
    let n = rho.dim() as u64;
    if m == 0 || n % m != 0 {
        return Err(Error::NotADivisor { m, n });
    }
    let step = (n / m) as usize;
    Ok((0..rho.dim()).step_by(step).map(|i| rho.diagonal_entry(i)).sum())
}

/// `tau~(m | rho) = tau(m | rho) - tau(1 | rho)`: the probability of
/// landing in the subsystem proper (lowest state excluded). Zero at
/// `m = 1`; `tau(n) = 1` makes `tau~(n) = 1 - rho[0,0]`.
pub fn tau_tilde(m: u64, rho: &DensityMatrix) -> Result<f64, Error> {
    Ok(tau(m, rho)? - rho.diagonal_entry(0))
}

/// `sigma(m1, m2 | rho)`: probability of the disjunctions-but-not-
/// superpositions space. Computed from its projector; equals
/// `tau(lcm) - tau(m1) - tau(m2) + tau(gcd)`.
pub fn sigma(m1: u64, m2: u64, rho: &DensityMatrix) -> Result<f64, Error> {
    let n = rho.dim() as u64;
    let projector = Projector::surplus(n, m1, m2)?;
    projector_probability(&projector, rho)
}

pub(super) fn projector_probability(
    projector: &Projector,
    rho: &DensityMatrix,
) -> Result<f64, Error> {
    if projector.dim() != rho.dim() {
        return Err(Error::Format(format!(
            "projector dimension {} does not match state dimension {}",
            projector.dim(),
            rho.dim()
        )));
    }
    Ok(projector
        .mask()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| rho.diagonal_entry(i))
        .sum())
}

/// Splits the position indices of `H(n)` by the reduced denominator of
/// `r/n`: for each `m | n` the set `{ s (n/m) : gcd(s, m) = 1 }`. The
/// sets have sizes `phi(m)`, are pairwise disjoint, and cover `0..n`.
pub fn sector_decomposition(n: u64) -> Vec<(u64, Vec<usize>)> {
    assert!(n >= 1);
    divisors_from_factorization(&factorize(n))
        .into_iter()
        .map(|m| {
            let step = n / m;
            let indices = (0..m)
                .filter(|&s| gcd(s, m) == 1)
                .map(|s| (s * step) as usize)
                .collect();
            (m, indices)
        })
        .collect()
}
