//! Chains as contexts, and the logical Bell inequality they support.
//!
//! Within a chain of divisors the probabilities `tau~` form a valuation:
//! `q(a v b) - q(a) - q(b) + q(a ^ b) = 0`, exactly as classical
//! probabilities do. Off-chain the surplus probability `sigma` breaks the
//! valuation law, and a non-contextual probability assignment would have
//! to obey
//!
//! ```text
//! sum_i tau~(m_i | rho)  <=  l - tau(r | rho) - sum_i f_i
//! ```
//!
//! with `r = neg(m_1 ^ ... ^ m_l)` and Heyting factors
//! `f_i = 1 - tau(m_i v neg m_i | rho)`, which vanish exactly on the Hall
//! divisors. Quantum states violate the inequality, and [`bell_check`]
//! reports by how much.

mod search;

pub use search::{search_rows_csv, search_violation, SearchConfig, SearchOutcome, SearchRow};

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::divisor::{self, is_chain, DivisorElement, Modulus};
use crate::quantum::{self, tau, tau_tilde, DensityMatrix, Projector};

/// Margins above this are reported as violations.
pub const VIOLATION_EPS: f64 = 1e-9;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] divisor::Error),
    #[error(transparent)]
    Quantum(#[from] quantum::Error),
    #[error("tuple must not be empty")]
    EmptyTuple,
    #[error("the divisor 1 cannot be a Bell tuple member")]
    UnitMember,
    #[error("state dimension {dim} does not match the modulus {n}")]
    DimensionMismatch { dim: usize, n: u64 },
    #[error("members do not form a chain")]
    NotAChain,
    #[error("max tuple length must be between 2 and 4, got {0}")]
    BadTupleLength(usize),
    #[error("grid resolution must be at least 1")]
    BadGridResolution,
    #[error("witness state unavailable: {0}")]
    WitnessUnavailable(String),
}

/// A context: a chain of divisors of a fixed modulus. Probabilities
/// restricted to a context satisfy the classical valuation law for every
/// density matrix: the surplus projector of each member pair is
/// structurally zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Context {
    modulus: Modulus,
    members: Vec<DivisorElement>,
}

impl Context {
    /// Builds a context from a set of divisors; fails unless they share a
    /// modulus and are totally ordered by divisibility.
    pub fn new(members: Vec<DivisorElement>) -> Result<Self, Error> {
        let first = members.first().ok_or(Error::EmptyTuple)?;
        let modulus = first.modulus().clone();
        if !is_chain(&members)? {
            return Err(Error::NotAChain);
        }
        let mut members = members;
        members.sort_by_key(|m| m.value());
        members.dedup_by_key(|m| m.value());
        Ok(Context { modulus, members })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Members in ascending divisibility order.
    pub fn members(&self) -> &[DivisorElement] {
        &self.members
    }
}

/// True when the divisors form a chain, equivalently when the surplus
/// space of every pair is zero-dimensional.
pub fn is_context(ms: &[DivisorElement]) -> Result<bool, Error> {
    Ok(is_chain(ms)?)
}

/// The Heyting factor `f = 1 - tau(m v neg m | rho)`: how far the state
/// sees the excluded middle fail at `m`. Zero (within tolerance) exactly
/// when `m` is a Hall divisor.
pub fn heyting_factor(m: &DivisorElement, rho: &DensityMatrix) -> Result<f64, Error> {
    let n = m.modulus().n();
    if rho.dim() as u64 != n {
        return Err(Error::DimensionMismatch { dim: rho.dim(), n });
    }
    let join_neg = m.join(&m.neg())?;
    Ok(1.0 - tau(join_neg.value(), rho)?)
}

/// Per-member quantities of a Bell check.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MemberReport {
    pub m: u64,
    pub tau_tilde: f64,
    pub tau_join_neg: f64,
    pub f: f64,
}

/// Everything the logical Bell inequality check produces. `lhs` is the
/// sum of the `tau~(m_i)`, `bound` is `l - tau(r) - sum f_i`, and the
/// check reports a violation when `lhs > bound` beyond [`VIOLATION_EPS`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BellReport {
    pub n: u64,
    pub tuple: Vec<u64>,
    pub members: Vec<MemberReport>,
    pub r: u64,
    pub tau_r: f64,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
}

/// Evaluates the logical Bell inequality for the tuple `ms` against the
/// state `rho`. Members must share a modulus, divide it, and differ from 1.
pub fn bell_check(ms: &[DivisorElement], rho: &DensityMatrix) -> Result<BellReport, Error> {
    let first = ms.first().ok_or(Error::EmptyTuple)?;
    let modulus = first.modulus().clone();
    let n = modulus.n();
    if rho.dim() as u64 != n {
        return Err(Error::DimensionMismatch { dim: rho.dim(), n });
    }
    let mut meet = modulus.top();
    let mut members = Vec::with_capacity(ms.len());
    let mut lhs = 0.0;
    let mut f_sum = 0.0;
    for m in ms {
        if m.value() == 1 {
            return Err(Error::UnitMember);
        }
        meet = meet.meet(m)?;
        let tt = tau_tilde(m.value(), rho)?;
        let join_neg = m.join(&m.neg())?;
        let tau_join_neg = tau(join_neg.value(), rho)?;
        let f = 1.0 - tau_join_neg;
        lhs += tt;
        f_sum += f;
        members.push(MemberReport { m: m.value(), tau_tilde: tt, tau_join_neg, f });
    }
    let r = meet.neg();
    let tau_r = tau(r.value(), rho)?;
    let bound = ms.len() as f64 - tau_r - f_sum;
    let margin = lhs - bound;
    Ok(BellReport {
        n,
        tuple: ms.iter().map(|m| m.value()).collect(),
        members,
        r: r.value(),
        tau_r,
        lhs,
        bound,
        margin,
        violated: margin > VIOLATION_EPS,
    })
}

/// The chain pseudo-distance `d(m, k | rho) = tau~(m v k) - tau~(m ^ k)`.
/// It is symmetric, vanishes on the diagonal, and satisfies the triangle
/// inequality along chains.
pub fn pseudo_distance(
    m: &DivisorElement,
    k: &DivisorElement,
    rho: &DensityMatrix,
) -> Result<f64, Error> {
    let n = m.modulus().n();
    if rho.dim() as u64 != n {
        return Err(Error::DimensionMismatch { dim: rho.dim(), n });
    }
    let join = m.join(k)?;
    let meet = m.meet(k)?;
    Ok(tau_tilde(join.value(), rho)? - tau_tilde(meet.value(), rho)?)
}

/// Builds the diagonal two-parameter witness state for a three-member
/// tuple: weight `a` on the sector of `m_1 ^ m_2`, weight `b` on the
/// sector of `m_3`, and the remainder on a spoiler sector that avoids
/// every `m_i v neg m_i` below the top. For the tuple `(10, 75, 36)` at
/// modulus 900 this places `a` at index 180, `b` at index 25 and the rest
/// at index 5.
pub fn witness_diagonal(
    ms: &[DivisorElement],
    a: f64,
    b: f64,
) -> Result<DensityMatrix, Error> {
    if ms.len() != 3 {
        return Err(Error::WitnessUnavailable(format!(
            "need exactly 3 tuple members, got {}",
            ms.len()
        )));
    }
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a + b > 1.0 {
        return Err(Error::WitnessUnavailable(
            "weights must satisfy a, b >= 0 and a + b <= 1".into(),
        ));
    }
    let modulus = ms[0].modulus().clone();
    let n = modulus.n();
    let pair_meet = ms[0].meet(&ms[1])?;
    if pair_meet.value() == 1 {
        return Err(Error::WitnessUnavailable(
            "the first two members must share a prime factor".into(),
        ));
    }
    let mut joins = Vec::new();
    let mut meet = modulus.top();
    for m in ms {
        joins.push(m.join(&m.neg())?.value());
        meet = meet.meet(m)?;
    }
    let r = meet.neg().value();
    let taken = [pair_meet.value(), ms[2].value()];
    let spoiler = search::spoiler_sector(&modulus, &joins, r, &taken)
        .ok_or_else(|| Error::WitnessUnavailable("no spoiler sector exists".into()))?;
    let mut diag = vec![0.0; n as usize];
    diag[(n / pair_meet.value()) as usize] += a;
    diag[(n / ms[2].value()) as usize] += b;
    diag[(n / spoiler) as usize] += 1.0 - a - b;
    Ok(DensityMatrix::from_diagonal(diag)?)
}

/// Exact mask-level identity behind the Bell bound: the subsystem
/// projector of `neg(m_1 ^ ... ^ m_l)` equals the one of
/// `neg m_1 v ... v neg m_l` (second de Morgan law, valid in this Stone
/// lattice).
pub fn demorgan_masks_agree(ms: &[DivisorElement]) -> Result<bool, Error> {
    let first = ms.first().ok_or(Error::EmptyTuple)?;
    let modulus = first.modulus().clone();
    let n = modulus.n();
    let mut meet = modulus.top();
    let mut join_of_negs = modulus.bottom();
    for m in ms {
        meet = meet.meet(m)?;
        join_of_negs = join_of_negs.join(&m.neg())?;
    }
    let lhs = Projector::subsystem(n, meet.neg().value())?;
    let rhs = Projector::subsystem(n, join_of_negs.value())?;
    Ok(lhs.mask() == rhs.mask())
}
