//! Seeded search for Bell-inequality violations.
//!
//! For each candidate tuple (divisors above 1 with at least one
//! incomparable pair, and, where the lattice has any, at least one
//! non-Hall member), the search optimizes the violation margin over
//!
//! 1. a grid of diagonal states supported on sector-representative
//!    indices `n/g`: one per member, one per deep pairwise meet, and one
//!    "spoiler" sector that avoids every `m_i v neg m_i` below the top,
//!    with weights on a `1/resolution` grid; and
//! 2. `samples` random density matrices from a seeded Ginibre
//!    construction `G G* / tr(G G*)`. Only the diagonal enters any of the
//!    probabilities, and the normalized diagonal of `G G*` for an n x n
//!    complex Ginibre `G` is exactly a vector of Gamma(n, 2) draws scaled
//!    by their sum, which is what gets sampled.
//!
//! Identical `(n, seed, config)` inputs yield bit-identical outcomes:
//! enumeration is ordered, sampling is ChaCha-seeded, and ties keep the
//! earliest candidate.

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma};

use crate::arith::gcd;
use crate::divisor::Modulus;
use crate::quantum::{DensityMatrix, DENSE_DIM_CAP};

use super::{bell_check, BellReport, Error, VIOLATION_EPS};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest tuple size to enumerate (2..=4).
    pub max_tuple_len: usize,
    /// Grid steps per unit of probability weight.
    pub grid_resolution: u32,
    /// Number of random density matrices.
    pub samples: u32,
    /// RNG seed; required so searches are reproducible.
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(seed: u64) -> Self {
        SearchConfig { max_tuple_len: 3, grid_resolution: 20, samples: 1000, seed }
    }
}

/// Best result for one tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRow {
    pub tuple: Vec<u64>,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
    /// Which candidate state won: `grid:<sector>=<k>/<resolution>,...` or
    /// `sample:<index>`.
    pub source: String,
}

pub struct SearchOutcome {
    /// Report for the globally best candidate, or `None` when the lattice
    /// admits no tuple with an incomparable pair (chain lattices).
    pub best: Option<BellReport>,
    /// One row per candidate tuple, in enumeration order.
    pub rows: Vec<SearchRow>,
}

/// CSV rendering of search rows: header
/// `tuple,lhs,bound,margin,violated,source`, tuple members joined by `|`.
pub fn search_rows_csv(rows: &[SearchRow]) -> String {
    let mut out = String::from("tuple,lhs,bound,margin,violated,source\n");
    for row in rows {
        let tuple = row.tuple.iter().map(|v| v.to_string()).join("|");
        out.push_str(&format!(
            "{tuple},{},{},{},{},{}\n",
            row.lhs, row.bound, row.margin, row.violated, row.source
        ));
    }
    out
}

enum RhoSource {
    Grid { sectors: Vec<u64>, weights: Vec<u32> },
    Sample { index: usize },
}

pub fn search_violation(n: u64, config: &SearchConfig) -> Result<SearchOutcome, Error> {
    if !(2..=4).contains(&config.max_tuple_len) {
        return Err(Error::BadTupleLength(config.max_tuple_len));
    }
    if config.grid_resolution == 0 {
        return Err(Error::BadGridResolution);
    }
    if n as usize > DENSE_DIM_CAP {
        return Err(Error::Quantum(crate::quantum::Error::DimensionCap {
            dim: n as usize,
            cap: DENSE_DIM_CAP,
        }));
    }

    let modulus = Modulus::new(n)?;
    let divisors: Vec<u64> = modulus.divisors().to_vec();
    let proper: Vec<u64> = divisors.iter().copied().filter(|&d| d > 1).collect();
    let lattice_has_non_hall = proper.iter().any(|&d| !modulus.is_hall(d));

    let mut tuples: Vec<Vec<u64>> = Vec::new();
    for len in 2..=config.max_tuple_len.min(proper.len()) {
        for combo in proper.iter().copied().combinations(len) {
            let incomparable = combo
                .iter()
                .tuple_combinations()
                .any(|(&a, &b)| a % b != 0 && b % a != 0);
            if !incomparable {
                continue;
            }
            if lattice_has_non_hall && combo.iter().all(|&d| modulus.is_hall(d)) {
                continue;
            }
            tuples.push(combo);
        }
    }

    // Random diagonals, sampled once and shared across tuples, with the
    // per-divisor probabilities precomputed.
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let gamma = Gamma::new(n as f64, 2.0).expect("shape and scale are positive");
    let mut sample_diags = Vec::with_capacity(config.samples as usize);
    let mut sample_taus = Vec::with_capacity(config.samples as usize);
    for _ in 0..config.samples {
        let mut diag: Vec<f64> = (0..n).map(|_| gamma.sample(&mut rng)).collect();
        let total: f64 = diag.iter().sum();
        diag.iter_mut().for_each(|x| *x /= total);
        let taus: Vec<f64> = divisors
            .iter()
            .map(|&d| {
                let step = (n / d) as usize;
                (0..n as usize).step_by(step).map(|i| diag[i]).sum()
            })
            .collect();
        sample_diags.push(diag);
        sample_taus.push(taus);
    }
    let tau_of = |taus: &[f64], d: u64| -> f64 {
        let idx = divisors.binary_search(&d).expect("target divides n");
        taus[idx]
    };

    let mut rows = Vec::with_capacity(tuples.len());
    let mut reports = Vec::with_capacity(tuples.len());
    for tuple in &tuples {
        let elements: Vec<_> = tuple
            .iter()
            .map(|&v| modulus.element(v))
            .collect::<Result<_, _>>()?;
        let mut joins = Vec::with_capacity(tuple.len());
        let mut meet = modulus.top();
        for m in &elements {
            joins.push(m.join(&m.neg())?.value());
            meet = meet.meet(m)?;
        }
        let r = meet.neg().value();

        // Grid over the support sectors. The margin is linear in the
        // weights, so track it as a per-sector gain and a dot product.
        let sectors = support_sectors(&modulus, tuple, &joins, r);
        let gains: Vec<f64> = sectors
            .iter()
            .map(|&g| {
                let hits = |target: u64| (target % g == 0) as i64;
                let member_hits: i64 = tuple.iter().map(|&m| hits(m)).sum();
                let join_hits: i64 = joins.iter().map(|&j| hits(j)).sum();
                (member_hits - join_hits + hits(r)) as f64
            })
            .collect();
        let resolution = config.grid_resolution;
        let mut best_scaled = f64::NEG_INFINITY;
        let mut best_weights: Vec<u32> = Vec::new();
        for_each_composition(sectors.len(), resolution, &mut |weights| {
            let scaled: f64 =
                weights.iter().zip(&gains).map(|(&k, &g)| k as f64 * g).sum();
            if scaled > best_scaled {
                best_scaled = scaled;
                best_weights = weights.to_vec();
            }
        });
        let mut best_margin = best_scaled / resolution as f64;
        let mut best_source =
            RhoSource::Grid { sectors: sectors.clone(), weights: best_weights };

        for (index, taus) in sample_taus.iter().enumerate() {
            let tau_one = tau_of(taus, 1);
            let member_sum: f64 = tuple.iter().map(|&m| tau_of(taus, m)).sum();
            let join_sum: f64 = joins.iter().map(|&j| tau_of(taus, j)).sum();
            let margin =
                member_sum - tuple.len() as f64 * tau_one - join_sum + tau_of(taus, r);
            if margin > best_margin {
                best_margin = margin;
                best_source = RhoSource::Sample { index };
            }
        }

        let (rho, source) = match &best_source {
            RhoSource::Grid { sectors, weights } => {
                let mut diag = vec![0.0; n as usize];
                for (&g, &k) in sectors.iter().zip(weights) {
                    diag[(n / g) as usize] += k as f64 / resolution as f64;
                }
                let label = sectors
                    .iter()
                    .zip(weights)
                    .filter(|(_, &k)| k > 0)
                    .map(|(g, k)| format!("{g}={k}/{resolution}"))
                    .join(",");
                (DensityMatrix::from_diagonal(diag)?, format!("grid:{label}"))
            }
            RhoSource::Sample { index } => (
                DensityMatrix::from_diagonal(sample_diags[*index].clone())?,
                format!("sample:{index}"),
            ),
        };
        let report = bell_check(&elements, &rho)?;
        rows.push(SearchRow {
            tuple: tuple.clone(),
            lhs: report.lhs,
            bound: report.bound,
            margin: report.margin,
            violated: report.margin > VIOLATION_EPS,
            source,
        });
        reports.push(report);
    }

    let best = rows
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |acc, (i, row)| match acc {
            Some((_, margin)) if margin >= row.margin => acc,
            _ => Some((i, row.margin)),
        })
        .map(|(i, _)| reports[i].clone());
    Ok(SearchOutcome { best, rows })
}

/// Support sectors for the diagonal grid attached to one tuple: the
/// members themselves, a spoiler sector when one exists, then pairwise
/// meets above 1, deepest and largest first, capped at five sectors. The
/// representative index of sector `g` is `n/g`.
fn support_sectors(modulus: &Modulus, tuple: &[u64], joins: &[u64], r: u64) -> Vec<u64> {
    let mut support: Vec<u64> = tuple.to_vec();
    if let Some(spoiler) = spoiler_sector(modulus, joins, r, &support) {
        support.push(spoiler);
    }
    let mut meets: Vec<(usize, u64)> = Vec::new();
    for (i, &a) in tuple.iter().enumerate() {
        for &b in &tuple[i + 1..] {
            let g = gcd(a, b);
            if g > 1 && !support.contains(&g) && !meets.iter().any(|&(_, v)| v == g) {
                let served = tuple.iter().filter(|&&m| m % g == 0).count();
                meets.push((served, g));
            }
        }
    }
    meets.sort_by(|a, b| b.cmp(a));
    for (_, g) in meets {
        if support.len() >= 5 {
            break;
        }
        support.push(g);
    }
    support
}

/// The smallest divisor of `n` above 1 that does not divide any
/// join-with-negation below the top, nor `r` when `r` is below the top,
/// and is not already taken. Weight parked there contributes to no
/// `tau(m_i v neg m_i)`, keeping the Heyting factors large.
pub(super) fn spoiler_sector(
    modulus: &Modulus,
    joins: &[u64],
    r: u64,
    taken: &[u64],
) -> Option<u64> {
    let n = modulus.n();
    modulus.divisors().iter().copied().find(|&g| {
        g > 1
            && !taken.contains(&g)
            && joins.iter().all(|&j| j == n || j % g != 0)
            && (r == n || r % g != 0)
    })
}

fn for_each_composition(parts: usize, total: u32, f: &mut impl FnMut(&[u32])) {
    assert!(parts >= 1);
    let mut buf = vec![0u32; parts];
    compose_into(&mut buf, 0, total, f);
}

fn compose_into(buf: &mut Vec<u32>, idx: usize, remaining: u32, f: &mut impl FnMut(&[u32])) {
    if idx + 1 == buf.len() {
        buf[idx] = remaining;
        f(buf);
        return;
    }
    for k in 0..=remaining {
        buf[idx] = k;
        compose_into(buf, idx + 1, remaining - k, f);
    }
}
