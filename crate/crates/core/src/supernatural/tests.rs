use proptest::prelude::*;

use super::*;

fn sn(n: u64) -> SupernaturalNumber {
    SupernaturalNumber::from_natural(n).unwrap()
}

fn lit(s: &str) -> SupernaturalNumber {
    parse_supernatural(s).unwrap()
}

/// Independent factorization oracle: strip factors smallest-first.
fn slow_factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut d = 2;
    while n > 1 {
        if n % d == 0 {
            n /= d;
            match out.last_mut() {
                Some((p, e)) if *p == d => *e += 1,
                _ => out.push((d, 1)),
            }
        } else {
            d += 1;
        }
    }
    out
}

#[test]
fn from_natural_matches_factorization_oracle() {
    assert_eq!(sn(1).exceptions().count(), 0);
    assert_eq!(sn(1).default_exponent(), Exponent::ZERO);
    for n in [10u64, 900, 360, 1024, 97] {
        let got: Vec<(u64, Exponent)> = sn(n).exceptions().collect();
        let want: Vec<(u64, Exponent)> = slow_factorize(n)
            .into_iter()
            .map(|(p, e)| (p, Exponent::Finite(e)))
            .collect();
        assert_eq!(got, want, "factorization of {n}");
    }
    assert_eq!(SupernaturalNumber::from_natural(0), Err(Error::Zero));
}

#[test]
fn divisibility_examples() {
    assert!(sn(10).divides(&sn(900)));
    assert!(!sn(900).divides(&sn(10)));
    let omega = SupernaturalNumber::omega();
    for a in [sn(1), sn(900), lit("2^inf"), lit("Omega({3,5})")] {
        assert!(a.divides(&omega), "{a} should divide Omega");
    }
    // infinite exponent at 2 exceeds the finite exponent in 900
    assert!(!lit("Omega({2})").divides(&sn(900)));
}

#[test]
fn meet_join_examples() {
    assert_eq!(sn(10).meet(&sn(75)), sn(5));
    assert_eq!(sn(10).join(&sn(75)), sn(150));
    let omega = SupernaturalNumber::omega();
    assert_eq!(sn(900).meet(&omega), sn(900));
    assert_eq!(sn(900).join(&SupernaturalNumber::one()), sn(900));
    // meet of a natural with a maximal pi-number keeps the pi-part intact
    assert_eq!(sn(12).meet(&lit("Omega({2,5})")), sn(4));
    assert_eq!(sn(12).join(&lit("Omega({2,5})")), lit("3^1*Omega({2,5})"));
}

#[test]
fn implication_examples() {
    let omega = SupernaturalNumber::omega();
    for a in [sn(1), sn(10), lit("2^inf*3^2"), omega.clone()] {
        assert_eq!(a.implies(&a), omega, "(a => a) must be the top element");
    }
    assert_eq!(sn(2).implies(&sn(1)), lit("Omega(~{2})"));
    let expected = SupernaturalNumber::from_parts(
        Exponent::Infinite,
        [(2, Exponent::ZERO)],
    )
    .unwrap();
    assert_eq!(sn(10).implies(&sn(75)), expected);
}

#[test]
fn negation_examples() {
    let one = SupernaturalNumber::one();
    let omega = SupernaturalNumber::omega();
    assert_eq!(one.neg(), omega);
    assert_eq!(omega.neg(), one);
    assert_eq!(sn(7).neg(), lit("Omega(~{7})"));
    assert_eq!(sn(10).neg().neg(), lit("Omega({2,5})"));
    // all powers of p share the same pseudocomplement
    assert_eq!(sn(4).neg(), sn(2).neg());
}

#[test]
fn equivalence_examples() {
    let omega = SupernaturalNumber::omega();
    assert_eq!(sn(10).equiv(&sn(10)), omega);
    assert_eq!(sn(10).equiv(&sn(75)), lit("5^1*Omega(~{2,3,5})"));
    assert_eq!(SupernaturalNumber::one().equiv(&omega), SupernaturalNumber::one());
}

#[test]
fn support_partition_examples() {
    let (f, i) = sn(900).support_partition();
    assert_eq!(f, PrimeSet::of([2, 3, 5]).unwrap());
    assert!(i.is_empty());

    let (f, i) = SupernaturalNumber::omega().support_partition();
    assert!(f.is_empty());
    assert!(i.is_all());

    let (f, i) = lit("2^2*Omega({3})").support_partition();
    assert_eq!(f, PrimeSet::of([2]).unwrap());
    assert_eq!(i, PrimeSet::of([3]).unwrap());
}

#[test]
fn exponent_comparison_examples() {
    let cmp = compare_exponents(&sn(10), &sn(75));
    assert_eq!(cmp.greater, PrimeSet::of([2]).unwrap());
    assert_eq!(cmp.equal, PrimeSet::cofinite([2, 3, 5]).unwrap());
    assert_eq!(cmp.less, PrimeSet::of([3, 5]).unwrap());

    let cmp = compare_exponents(&sn(12), &sn(12));
    assert!(cmp.greater.is_empty() && cmp.less.is_empty() && cmp.equal.is_all());

    let cmp = compare_exponents(&SupernaturalNumber::omega(), &SupernaturalNumber::one());
    assert!(cmp.greater.is_all() && cmp.equal.is_empty() && cmp.less.is_empty());
}

#[test]
fn comparison_partitions_all_primes() {
    let a = lit("2^2*Omega({3})");
    let b = lit("Omega(~{5})");
    let cmp = compare_exponents(&a, &b);
    for p in [2u64, 3, 5, 7, 11, 997] {
        let member_count = [&cmp.greater, &cmp.equal, &cmp.less]
            .iter()
            .filter(|s| s.contains(p))
            .count();
        assert_eq!(member_count, 1, "prime {p} must land in exactly one class");
    }
}

#[test]
fn arbitrary_arity_bounds() {
    let xs = [sn(4), sn(6), sn(10)];
    assert_eq!(SupernaturalNumber::meet_all(&xs), sn(2));
    assert_eq!(SupernaturalNumber::join_all(&xs), sn(60));
    assert_eq!(SupernaturalNumber::meet_all([]), SupernaturalNumber::omega());
    assert_eq!(SupernaturalNumber::join_all([]), SupernaturalNumber::one());
}

#[test]
fn display_canonical_forms() {
    assert_eq!(sn(900).to_string(), "900");
    assert_eq!(SupernaturalNumber::one().to_string(), "1");
    assert_eq!(SupernaturalNumber::omega().to_string(), "Omega");
    assert_eq!(sn(2).neg().to_string(), "Omega(~{2})");
    assert_eq!(sn(10).neg().neg().to_string(), "Omega({2,5})");
    assert_eq!(lit("3^2*2^inf").to_string(), "3^2*Omega({2})");
}

/// Exhaustive single-prime check of the pointwise connective tables.
/// Every law of the algebra is pointwise, so checking all exponent
/// triples at one prime covers the general case.
#[test]
fn pointwise_tables_exhaustive() {
    let exps: Vec<Exponent> = (0..=3)
        .map(Exponent::Finite)
        .chain([Exponent::Infinite])
        .collect();
    let element = |e: Exponent| match e {
        Exponent::Finite(0) => SupernaturalNumber::one(),
        e => SupernaturalNumber::from_parts(Exponent::ZERO, [(2, e)]).unwrap(),
    };
    for &ea in &exps {
        for &eb in &exps {
            let (a, b) = (element(ea), element(eb));
            assert_eq!(a.meet(&b).exponent(2), ea.min(eb));
            assert_eq!(a.join(&b).exponent(2), ea.max(eb));
            let expected_impl =
                if eb >= ea { Exponent::Infinite } else { eb };
            assert_eq!(a.implies(&b).exponent(2), expected_impl);
            let expected_equiv =
                if ea == eb { Exponent::Infinite } else { ea.min(eb) };
            assert_eq!(a.equiv(&b).exponent(2), expected_equiv);
            for &ex in &exps {
                let x = element(ex);
                assert_eq!(
                    a.meet(&x).divides(&b),
                    x.divides(&a.implies(&b)),
                    "adjunction at exponents ({ea}, {eb}, {ex})"
                );
            }
        }
    }
}

/// Small-universe exhaustive oracle: over elements supported on {2, 3}
/// with exponents in {0, 1, 2, inf} and either default, the implication
/// must be the greatest solution x of meet(a, x) | b.
#[test]
fn implication_matches_exhaustive_search_oracle() {
    let exps = [Exponent::ZERO, Exponent::Finite(1), Exponent::Finite(2), Exponent::Infinite];
    let mut universe = Vec::new();
    for default in [Exponent::ZERO, Exponent::Infinite] {
        for &e2 in &exps {
            for &e3 in &exps {
                let entries = [(2u64, e2), (3u64, e3)]
                    .into_iter()
                    .filter(|(_, e)| *e != default);
                universe.push(SupernaturalNumber::from_parts(default, entries).unwrap());
            }
        }
    }
    universe.dedup();
    for a in &universe {
        for b in &universe {
            let solutions = universe.iter().filter(|x| a.meet(x).divides(b));
            let oracle = SupernaturalNumber::join_all(solutions);
            assert_eq!(a.implies(b), oracle, "implies({a}, {b})");
        }
    }
}

const UNIVERSE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn arb_exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![(0u32..=3).prop_map(Exponent::Finite), Just(Exponent::Infinite)]
}

fn arb_supernatural() -> impl Strategy<Value = SupernaturalNumber> {
    (
        any::<bool>(),
        proptest::collection::vec((0usize..UNIVERSE_PRIMES.len(), arb_exponent()), 0..=3),
    )
        .prop_map(|(infinite_default, entries)| {
            let default = if infinite_default { Exponent::Infinite } else { Exponent::ZERO };
            let entries = entries
                .into_iter()
                .map(|(i, e)| (UNIVERSE_PRIMES[i], e))
                .filter(|(_, e)| *e != default);
            SupernaturalNumber::from_parts(default, entries).unwrap()
        })
}

proptest! {
    #[test]
    fn adjunction(a in arb_supernatural(), b in arb_supernatural(), x in arb_supernatural()) {
        prop_assert_eq!(a.meet(&x).divides(&b), x.divides(&a.implies(&b)));
    }

    #[test]
    fn implication_is_top_iff_divides(a in arb_supernatural(), b in arb_supernatural()) {
        prop_assert_eq!(a.implies(&b) == SupernaturalNumber::omega(), a.divides(&b));
    }

    #[test]
    fn stone_law(a in arb_supernatural()) {
        let lhs = a.neg().join(&a.neg().neg());
        prop_assert_eq!(lhs, SupernaturalNumber::omega());
    }

    #[test]
    fn de_morgan_laws(a in arb_supernatural(), b in arb_supernatural()) {
        prop_assert_eq!(a.join(&b).neg(), a.neg().meet(&b.neg()));
        prop_assert_eq!(a.meet(&b).neg(), a.neg().join(&b.neg()));
    }

    #[test]
    fn double_negation_dominates(a in arb_supernatural()) {
        let nn = a.neg().neg();
        prop_assert!(a.divides(&nn));
        prop_assert_eq!(a == nn, a.is_omega_form());
    }

    #[test]
    fn triple_negation_collapses(a in arb_supernatural()) {
        prop_assert_eq!(a.neg(), a.neg().neg().neg());
    }

    #[test]
    fn implication_absorption(a in arb_supernatural(), b in arb_supernatural()) {
        let imp = a.implies(&b);
        prop_assert_eq!(a.meet(&imp), a.meet(&b));
        prop_assert_eq!(b.meet(&imp), b.clone());
    }

    #[test]
    fn implication_distributes_over_meet(
        a in arb_supernatural(),
        b in arb_supernatural(),
        c in arb_supernatural(),
    ) {
        prop_assert_eq!(
            a.implies(&b.meet(&c)),
            a.implies(&b).meet(&a.implies(&c))
        );
    }

    #[test]
    fn boolean_lower_bound_for_implication(a in arb_supernatural(), b in arb_supernatural()) {
        prop_assert!(a.neg().join(&b).divides(&a.implies(&b)));
    }

    #[test]
    fn equivalence_matches_closed_form(a in arb_supernatural(), b in arb_supernatural()) {
        // closed form: omega over the agreement set times p^min(e_a, e_b)
        // at each differing prime; differing primes outside the exception
        // union have min 0 and contribute nothing
        let cmp = compare_exponents(&a, &b);
        let differing: std::collections::BTreeSet<u64> = a
            .exceptions()
            .map(|(p, _)| p)
            .chain(b.exceptions().map(|(p, _)| p))
            .filter(|&p| !cmp.equal.contains(p))
            .collect();
        let mut closed = SupernaturalNumber::omega_over(&cmp.equal);
        for &p in &differing {
            if let Exponent::Finite(k) = a.exponent(p).min(b.exponent(p)) {
                if k > 0 {
                    let factor = SupernaturalNumber::from_parts(
                        Exponent::ZERO,
                        [(p, Exponent::Finite(k))],
                    ).unwrap();
                    closed = closed.mul(&factor);
                }
            }
        }
        prop_assert_eq!(a.equiv(&b), closed);
    }

    #[test]
    fn operations_stay_canonical(a in arb_supernatural(), b in arb_supernatural()) {
        for value in [a.meet(&b), a.join(&b), a.implies(&b), a.equiv(&b), a.neg(), a.mul(&b)] {
            prop_assert!(value.is_canonical());
        }
    }

    #[test]
    fn excluded_middle_exactly_on_omega_forms(a in arb_supernatural()) {
        let lem = a.join(&a.neg()) == SupernaturalNumber::omega();
        prop_assert_eq!(lem, a.is_omega_form());
    }

    #[test]
    fn literal_display_round_trips(a in arb_supernatural()) {
        prop_assert_eq!(parse_supernatural(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn boolean_lower_bound_is_strict_somewhere() {
    let a = sn(2);
    let b = sn(2);
    let lower = a.neg().join(&b);
    let imp = a.implies(&b);
    assert!(lower.divides(&imp));
    assert_ne!(lower, imp, "p v neg p is strictly below (p => p) = Omega");
}
