//! The commuting projector family of the subsystem lattice.
//!
//! All five kinds are diagonal 0/1 masks over position indices of `H(n)`,
//! so any two of them commute. An index `r` lies in the subsystem mask of
//! `m | n` exactly when `(n/m) | r`.

use super::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjectorKind {
    /// Onto the embedded subsystem space `H(m)`; rank `m`.
    Subsystem(u64),
    /// Onto `H(m)` with the shared lowest state `|X; 0>` removed; rank
    /// `m - 1`. The associated measurement answers "did the state land in
    /// the subsystem proper?" with a true/false outcome.
    PuncturedSubsystem(u64),
    /// Onto the sector `h(m)`: position states whose index has reduced
    /// denominator exactly `m`; rank `phi(m)`.
    Sector(u64),
    /// Onto the span of `H(m1)` and `H(m2)`, i.e. all superpositions of
    /// states of the two subsystems; rank `m1 + m2 - gcd`.
    Span(u64, u64),
    /// Onto the part of the join space `H(m1 v m2)` orthogonal to the
    /// span: disjunctions that are not superpositions; rank
    /// `lcm + gcd - m1 - m2`.
    Surplus(u64, u64),
}

/// A diagonal projector on `H(n)`, realized as a boolean mask over
/// position indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Projector {
    kind: ProjectorKind,
    dim: usize,
    mask: Vec<bool>,
}

fn check_divisor(n: u64, m: u64) -> Result<(), Error> {
    if m == 0 || n % m != 0 {
        return Err(Error::NotADivisor { m, n });
    }
    Ok(())
}

fn subsystem_mask(n: u64, m: u64) -> Vec<bool> {
    let step = (n / m) as usize;
    let mut mask = vec![false; n as usize];
    for i in (0..n as usize).step_by(step) {
        mask[i] = true;
    }
    mask
}

impl Projector {
    pub fn subsystem(n: u64, m: u64) -> Result<Self, Error> {
        check_divisor(n, m)?;
        Ok(Projector {
            kind: ProjectorKind::Subsystem(m),
            dim: n as usize,
            mask: subsystem_mask(n, m),
        })
    }

    pub fn punctured_subsystem(n: u64, m: u64) -> Result<Self, Error> {
        check_divisor(n, m)?;
        let mut mask = subsystem_mask(n, m);
        mask[0] = false;
        Ok(Projector { kind: ProjectorKind::PuncturedSubsystem(m), dim: n as usize, mask })
    }

    pub fn sector(n: u64, m: u64) -> Result<Self, Error> {
        check_divisor(n, m)?;
        let step = n / m;
        let mut mask = vec![false; n as usize];
        for s in 0..m {
            if crate::arith::gcd(s, m) == 1 {
                mask[(s * step) as usize] = true;
            }
        }
        Ok(Projector { kind: ProjectorKind::Sector(m), dim: n as usize, mask })
    }

    pub fn span(n: u64, m1: u64, m2: u64) -> Result<Self, Error> {
        check_divisor(n, m1)?;
        check_divisor(n, m2)?;
        let a = subsystem_mask(n, m1);
        let b = subsystem_mask(n, m2);
        let mask = a.iter().zip(&b).map(|(&x, &y)| x || y).collect();
        Ok(Projector { kind: ProjectorKind::Span(m1, m2), dim: n as usize, mask })
    }

    pub fn surplus(n: u64, m1: u64, m2: u64) -> Result<Self, Error> {
        check_divisor(n, m1)?;
        check_divisor(n, m2)?;
        let join = subsystem_mask(n, crate::arith::lcm(m1, m2));
        let span = Self::span(n, m1, m2)?;
        let mask = join.iter().zip(&span.mask).map(|(&j, &t)| j && !t).collect();
        Ok(Projector { kind: ProjectorKind::Surplus(m1, m2), dim: n as usize, mask })
    }

    pub fn kind(&self) -> ProjectorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Number of ones in the mask, i.e. the dimension of the image.
    pub fn rank(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    /// Indices covered by the mask, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

/// A two-outcome von Neumann measurement built from a projector. The two
/// eigenvalues label the outcomes and never affect probabilities.
#[derive(Clone, PartialEq, Debug)]
pub struct MeasurementOperator {
    pub projector: Projector,
    pub eigen_true: f64,
    pub eigen_false: f64,
}

impl MeasurementOperator {
    pub fn new(projector: Projector) -> Self {
        MeasurementOperator { projector, eigen_true: 1.0, eigen_false: 0.0 }
    }

    pub fn with_eigenvalues(projector: Projector, eigen_true: f64, eigen_false: f64) -> Self {
        MeasurementOperator { projector, eigen_true, eigen_false }
    }

    /// Expectation value `theta_T * p + theta_F * (1 - p)` where `p` is
    /// the probability of the projector under `rho`.
    pub fn expectation(&self, rho: &super::DensityMatrix) -> Result<f64, Error> {
        let p = super::prob::projector_probability(&self.projector, rho)?;
        Ok(self.eigen_true * p + self.eigen_false * (1.0 - p))
    }
}
