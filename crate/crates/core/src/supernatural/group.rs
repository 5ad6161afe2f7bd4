//! Symbolic rendering of the groups labelled by supernatural numbers.
//!
//! A supernatural number `n` labels the multiplicative group of `n`-th
//! roots of unity (for finite `n`, the cyclic group `Z(n)`; for `p^inf`,
//! the Prüfer group `Q_p/Z_p`) and, on the dual side, its Pontryagin dual
//! (`Z(n)` again, or the p-adic integers `Z_p`). Groups exist here as
//! labels only; there is no arithmetic inside them.

use std::fmt;

use super::{Exponent, PrimeSet, SupernaturalNumber};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    CyclicFinite,
    Prufer,
    DirectSumPrufer,
    Padic,
    ProductPadic,
    Mixed,
}

/// A symbolic description of the group labelled by a supernatural number.
/// `dual = false` renders the position side (roots of unity), `dual = true`
/// the momentum side (Pontryagin dual).
#[derive(Clone, PartialEq, Debug)]
pub struct GroupDescription {
    pub kind: GroupKind,
    pub finite_part: SupernaturalNumber,
    pub infinite_primes: PrimeSet,
    pub dual: bool,
}

pub fn render_group(a: &SupernaturalNumber, dual: bool) -> GroupDescription {
    let (_, infinite_primes) = a.support_partition();
    let finite_exceptions = a.exceptions().filter(|(_, e)| match e {
        Exponent::Finite(k) => *k > 0,
        Exponent::Infinite => false,
    });
    let finite_part = SupernaturalNumber::from_parts(Exponent::ZERO, finite_exceptions)
        .expect("finite exponents of a canonical number form a natural number");

    let kind = if infinite_primes.is_empty() {
        GroupKind::CyclicFinite
    } else if finite_part == SupernaturalNumber::one() {
        let single = infinite_primes.finite_members().is_some_and(|m| m.len() == 1);
        match (single, dual) {
            (true, false) => GroupKind::Prufer,
            (true, true) => GroupKind::Padic,
            (false, false) => GroupKind::DirectSumPrufer,
            (false, true) => GroupKind::ProductPadic,
        }
    } else {
        GroupKind::Mixed
    };
    GroupDescription { kind, finite_part, infinite_primes, dual }
}

impl GroupDescription {
    fn infinite_text(&self) -> String {
        let set = &self.infinite_primes;
        if set.is_all() {
            return if self.dual { "Zhat".to_string() } else { "Q/Z".to_string() };
        }
        match set.finite_members() {
            Some(members) => {
                let parts: Vec<String> = members
                    .iter()
                    .map(|p| {
                        if self.dual {
                            format!("Z_{p}")
                        } else {
                            format!("Q_{p}/Z_{p}")
                        }
                    })
                    .collect();
                parts.join(if self.dual { " x " } else { " (+) " })
            }
            None => {
                if self.dual {
                    format!("x_[p in {set}] Z_p")
                } else {
                    format!("(+)_[p in {set}] Q_p/Z_p")
                }
            }
        }
    }

    fn infinite_is_single(&self) -> bool {
        self.infinite_primes.finite_members().is_some_and(|m| m.len() == 1)
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::CyclicFinite => write!(f, "Z({})", self.finite_part),
            GroupKind::Prufer | GroupKind::Padic | GroupKind::DirectSumPrufer
            | GroupKind::ProductPadic => write!(f, "{}", self.infinite_text()),
            GroupKind::Mixed => {
                let infinite = self.infinite_text();
                if self.infinite_is_single() {
                    write!(f, "Z({}) x {infinite}", self.finite_part)
                } else {
                    write!(f, "Z({}) x ({infinite})", self.finite_part)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_supernatural;
    use super::*;

    fn rendered(literal: &str, dual: bool) -> String {
        render_group(&parse_supernatural(literal).unwrap(), dual).to_string()
    }

    #[test]
    fn finite_cyclic_renders_both_sides_equal() {
        assert_eq!(rendered("900", false), "Z(900)");
        assert_eq!(rendered("900", true), "Z(900)");
        assert_eq!(rendered("1", false), "Z(1)");
        assert_eq!(rendered("1", true), "Z(1)");
    }

    #[test]
    fn prufer_and_padic() {
        assert_eq!(rendered("2^inf", false), "Q_2/Z_2");
        assert_eq!(rendered("2^inf", true), "Z_2");
    }

    #[test]
    fn omega_sets() {
        assert_eq!(rendered("Omega({2,3})", false), "Q_2/Z_2 (+) Q_3/Z_3");
        assert_eq!(rendered("Omega({2,3})", true), "Z_2 x Z_3");
        assert_eq!(rendered("Omega", false), "Q/Z");
        assert_eq!(rendered("Omega", true), "Zhat");
        assert_eq!(rendered("Omega(~{2})", false), "(+)_[p in ~{2}] Q_p/Z_p");
        assert_eq!(rendered("Omega(~{2})", true), "x_[p in ~{2}] Z_p");
    }

    #[test]
    fn mixed_elements_factor_into_cyclic_times_infinite() {
        assert_eq!(rendered("2^2*Omega({3})", false), "Z(4) x Q_3/Z_3");
        assert_eq!(rendered("2^2*Omega({3})", true), "Z(4) x Z_3");
        assert_eq!(rendered("2^2*Omega({3,5})", true), "Z(4) x (Z_3 x Z_5)");
    }

    #[test]
    fn kinds_follow_structure() {
        assert_eq!(render_group(&parse_supernatural("12").unwrap(), false).kind, GroupKind::CyclicFinite);
        assert_eq!(render_group(&parse_supernatural("3^inf").unwrap(), false).kind, GroupKind::Prufer);
        assert_eq!(render_group(&parse_supernatural("3^inf").unwrap(), true).kind, GroupKind::Padic);
        assert_eq!(render_group(&parse_supernatural("Omega").unwrap(), true).kind, GroupKind::ProductPadic);
        assert_eq!(render_group(&parse_supernatural("2^1*5^inf").unwrap(), true).kind, GroupKind::Mixed);
    }
}
