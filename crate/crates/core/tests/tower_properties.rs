use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tango_core::arith::{gcd, primes_up_to};
use tango_core::cover::{ramified_canonical_i, ramified_canonical_ii};
use tango_core::curve::ArtinSchreierCurve;
use tango_core::scalar::int;
use tango_core::tower::{step_i_base_shift, step_i_section_coeff, step_ii_base_shift, step_ii_section_coeff};
use tango_core::{CanonicalVerdict, DivisionMode, Rational, Structure, TowerClass, TowerError, TowerState};

fn q(n: i64) -> Rational {
    int(n)
}

fn base_class(d: i64) -> TowerClass {
    TowerClass::base(Rational::zero(), q(d))
}

#[test]
fn tango_bases_from_curves() {
    // y³ − y = x⁵: 2g − 2 = 6 = 3·2
    let s = TowerState::tango_base(3, 2, 2).unwrap();
    assert_eq!(*s.canonical().d_coeff(), q(6));
    assert_eq!(*s.polarization().d_coeff(), q(2));
    let curve = ArtinSchreierCurve::raynaud_family(3, 2).unwrap();
    let deg_k = s.base_degree(s.canonical()).unwrap();
    assert_eq!(deg_k, q(curve.canonical_degree()));

    let s = TowerState::tango_base(2, 1, 1).unwrap();
    assert_eq!(*s.canonical(), s.polarization().scale(&q(2)));
    let curve = ArtinSchreierCurve::new(2, vec![0, 0, 0, 0, 0, 1]).unwrap();
    assert_eq!(s.base_degree(s.canonical()).unwrap(), q(curve.canonical_degree()));

    assert!(matches!(
        TowerState::tango_base(3, 2, 3),
        Err(TowerError::NotCoprime { gcd: 3, .. })
    ));
}

#[test]
fn raynaud_family_feeds_tango_bases() {
    for p in primes_up_to(13) {
        for l in 1..=4u64 {
            let Ok(curve) = ArtinSchreierCurve::raynaud_family(p, l) else {
                continue;
            };
            let deg_d = l * (p - 1) - 2;
            assert!(curve.is_tango(deg_d).unwrap().is_some());
            let s = TowerState::tango_base(p, deg_d, 1).unwrap();
            assert_eq!(s.base_degree(s.canonical()).unwrap(), q(curve.canonical_degree()));
        }
    }
}

#[test]
fn step_i_examples() {
    let base = TowerState::tango_base(3, 2, 2).unwrap();
    let s = base.step_i(2, DivisionMode::Integral).unwrap();
    let f = TowerClass::section_unit(1, 1);
    assert_eq!(*s.canonical(), base_class(5).pullback());
    assert_eq!(*s.polarization(), f.add(&base_class(1).pullback()).unwrap());

    let surface = TowerState::hypothetical(2, 2, base_class(1), base_class(3)).unwrap();
    let s = surface.step_i(3, DivisionMode::Integral).unwrap();
    assert_eq!(s.classify_canonical().verdict, CanonicalVerdict::Trivial);

    let base = TowerState::tango_base(5, 2, 2).unwrap();
    let s = base.step_i(2, DivisionMode::Integral).unwrap();
    assert_eq!(s.canonical().top_section_coeff(), Some(&q(2)));
}

#[test]
fn step_ii_examples() {
    assert_eq!(step_ii_section_coeff(3, 1, 1), Some(0));
    assert_eq!(step_ii_base_shift(3, 1, 1), Some(-3));
    assert_eq!(step_ii_section_coeff(2, 2, 1), Some(0));
    // K + (4 - 2·3)D' = 0 needs K = 2D'
    assert_eq!(step_ii_base_shift(2, 2, 1), Some(-2));
    assert_eq!(step_ii_section_coeff(5, 1, 1), Some(2));
}

#[test]
fn mixed_tower_over_a_tango_base_is_not_trivial() {
    let base = TowerState::tango_base(2, 3, 3).unwrap();
    let s = base
        .step_i(3, DivisionMode::Integral)
        .unwrap()
        .step_ii(2, 1, DivisionMode::Rational)
        .unwrap();
    let c = s.classify_canonical();
    assert_eq!(c.verdict, CanonicalVerdict::NonTrivial);
    assert_eq!(s.structure(), Structure::PreTango);
    assert!(s.justification().is_none());
    assert_eq!(c.history.len(), 2);
}

#[test]
fn coefficient_identities_match_the_ramification_formula() {
    for p in primes_up_to(97) {
        for k in 2..=200u64 {
            if gcd(p, k) != 1 {
                continue;
            }
            let (a, shift) = (step_i_section_coeff(p, k).unwrap(), step_i_base_shift(p, k).unwrap());
            let (pi, ki) = (p as i64, k as i64);
            assert_eq!(a, pi * ki - pi - ki - 1);
            assert_eq!(shift, pi * ki - pi - ki);

            let k_x = TowerClass::new(q(1), q(3), vec![]);
            let d_prime = base_class(1);
            let state = TowerState::hypothetical(p, 1, k_x.clone(), d_prime.scale(&q(ki))).unwrap();
            let next = state.step_i(k, DivisionMode::Integral).unwrap();
            assert_eq!(
                *next.canonical(),
                ramified_canonical_i(p, k, &k_x, &d_prime).unwrap(),
                "p={p} k={k}"
            );
        }
    }
}

#[test]
fn construction_ii_identities_match_the_ramification_formula() {
    for p in primes_up_to(31) {
        for l in 1..=3u32 {
            for r in 1..=12u64 {
                if gcd(p, r) != 1 {
                    continue;
                }
                let k = p.pow(l) * r;
                let k_x = TowerClass::new(Rational::zero(), Rational::new(7.into(), 2.into()), vec![]);
                let d_prime = base_class(1);
                let state = TowerState::hypothetical(p, 2, k_x.clone(), d_prime.scale(&q(k as i64))).unwrap();
                let next = state.step_ii(l, r, DivisionMode::Integral).unwrap();
                assert_eq!(
                    *next.canonical(),
                    ramified_canonical_ii(p, k, &k_x, &d_prime).unwrap(),
                    "p={p} l={l} r={r}"
                );
            }
        }
    }
}

#[test]
fn section_coefficient_is_at_least_two_for_p_at_least_five() {
    for p in primes_up_to(97).into_iter().filter(|&p| p >= 5) {
        let (argmin, min) = (2..=10_000u64)
            .filter(|&k| gcd(p, k) == 1)
            .map(|k| (k, step_i_section_coeff(p, k).unwrap()))
            .min_by_key(|&(_, a)| a)
            .unwrap();
        assert_eq!(argmin, 2, "p={p}");
        assert!(min >= 2);
        for l in 1..=3u32 {
            for r in (1..=200u64).filter(|&r| gcd(p, r) == 1) {
                if let Some(a) = step_ii_section_coeff(p, l, r) {
                    assert!(a >= 2, "p={p} l={l} r={r}: {a}");
                }
            }
        }
    }
}

fn coprime_k(p: u64) -> impl Strategy<Value = u64> {
    (2u64..40).prop_filter("coprime", move |k| gcd(p, *k) == 1)
}

fn tango_tower() -> impl Strategy<Value = (u64, TowerState, Vec<u64>)> {
    prop::sample::select(primes_up_to(13))
        .prop_flat_map(|p| {
            (
                Just(p),
                coprime_k(p)
                    .prop_map(|k| k % 7 + 1)
                    .prop_filter("k1 coprime", move |k1| gcd(p, *k1) == 1),
                1u64..5,
                prop::collection::vec(coprime_k(p), 1..4),
            )
        })
        .prop_map(|(p, k1, mult, ks)| (p, TowerState::tango_base(p, k1 * mult, k1).unwrap(), ks))
}

proptest! {
    #[test]
    fn justification_stays_p_times_polarization((p, base, ks) in tango_tower()) {
        let mut s = base;
        for (i, &k) in ks.iter().enumerate() {
            let next = s.step_i(k, DivisionMode::Rational).unwrap();
            prop_assert_eq!(next.dim(), s.dim() + 1);
            prop_assert_eq!(next.canonical().level(), i + 1);
            prop_assert_eq!(next.polarization().level(), i + 1);
            prop_assert_eq!(next.structure(), Structure::Tango);
            let residual = next.justification().unwrap().sub(&next.polarization().scale(&q(p as i64))).unwrap();
            prop_assert!(residual.is_zero());
            prop_assert!(next.invariant_violations().is_empty());
            s = next;
        }
    }

    #[test]
    fn pre_tango_slack_is_pulled_back((p, _, ks) in tango_tower(), slack in 1u64..5) {
        let mut s = TowerState::pre_tango_base(p, 1, 1, slack).unwrap();
        for &k in &ks {
            let before = s.slack().unwrap();
            s = s.step_i(k, DivisionMode::Rational).unwrap();
            prop_assert_eq!(s.slack().unwrap(), before.pullback());
            let after = s.slack().unwrap();
            prop_assert_eq!(after.e_coeff(), &q(slack as i64));
        }
        prop_assert!(s.classify_canonical().report.slack_obstruction);
    }

    #[test]
    fn step_ii_never_yields_trivial_k_for_large_p(p in prop::sample::select(vec![5u64, 7, 11, 13]), l in 1u32..3, r in 1u64..6) {
        prop_assume!(gcd(p, r) == 1);
        let k = p.pow(l) * r;
        let base = TowerState::hypothetical(p, 1, base_class((p * k) as i64), base_class(k as i64)).unwrap();
        let s = base.step_ii(l, r, DivisionMode::Integral).unwrap();
        let top = s.canonical().top_section_coeff().unwrap().clone();
        prop_assert!(top.is_positive());
        prop_assert_eq!(s.classify_canonical().verdict, CanonicalVerdict::NonTrivial);
    }
}

#[test]
fn canonical_minus_p_polarization_is_not_preserved() {
    // (dη) is what stays at p·D; K itself moves away from p·D after one step
    let s = TowerState::tango_base(3, 2, 2)
        .unwrap()
        .step_i(2, DivisionMode::Integral)
        .unwrap();
    let diff = s.canonical().sub(&s.polarization().scale(&q(3))).unwrap();
    assert_eq!(diff.top_section_coeff(), Some(&q(-3)));
    assert_eq!(*diff.d_coeff(), q(2));
    assert!(s
        .justification()
        .unwrap()
        .sub(&s.polarization().scale(&q(3)))
        .unwrap()
        .is_zero());
}

#[test]
fn integral_division_blocks_where_rational_proceeds() {
    let s = TowerState::tango_base(2, 3, 3)
        .unwrap()
        .step_i(3, DivisionMode::Integral)
        .unwrap();
    assert!(matches!(
        s.step_ii(2, 1, DivisionMode::Integral),
        Err(TowerError::Division { k: 4, .. })
    ));
    let t = s.step_ii(2, 1, DivisionMode::Rational).unwrap();
    assert_eq!(
        t.steps()[1].d_prime.top_section_coeff(),
        Some(&Rational::new(1.into(), 2.into()))
    );
    assert!(t.steps().iter().all(|r| !r.formula.is_empty()));
}
