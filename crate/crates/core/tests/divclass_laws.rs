use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tango_core::divclass::TowerClass;
use tango_core::{DivisionMode, ExactScalar, Rational, SmallRational};

fn scalar<S: ExactScalar>() -> impl Strategy<Value = S> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| S::ratio(n, d))
}

fn class_at<S: ExactScalar>(level: usize) -> impl Strategy<Value = TowerClass<S>> {
    (
        scalar::<S>(),
        scalar::<S>(),
        prop::collection::vec(scalar::<S>(), level),
    )
        .prop_map(|(e, d, f)| TowerClass::new(e, d, f))
}

fn triple<S: ExactScalar>() -> impl Strategy<Value = (TowerClass<S>, TowerClass<S>, TowerClass<S>)> {
    (0usize..4).prop_flat_map(|l| (class_at::<S>(l), class_at::<S>(l), class_at::<S>(l)))
}

fn group_laws<S: ExactScalar>(a: &TowerClass<S>, b: &TowerClass<S>, c: &TowerClass<S>, q: &S) {
    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
    assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
    assert_eq!(a.add(&TowerClass::zero(a.level())).unwrap(), *a);
    assert!(a.add(&a.neg()).unwrap().is_zero());
    assert_eq!(a.add(b).unwrap().scale(q), a.scale(q).add(&b.scale(q)).unwrap());
    assert_eq!(a.add(b).unwrap().pullback(), a.pullback().add(&b.pullback()).unwrap());
    assert_eq!(a.scale(q).pullback(), a.pullback().scale(q));
}

proptest! {
    #[test]
    fn abelian_group_big((a, b, c) in triple::<Rational>(), q in scalar::<Rational>()) {
        group_laws(&a, &b, &c, &q);
    }

    #[test]
    fn abelian_group_small((a, b, c) in triple::<SmallRational>(), q in scalar::<SmallRational>()) {
        group_laws(&a, &b, &c, &q);
    }

    #[test]
    fn divide_then_scale_round_trips(c in (0usize..4).prop_flat_map(class_at::<Rational>), k in 1u64..30) {
        let back = c.divide_exact(k, DivisionMode::Rational).unwrap();
        prop_assert_eq!(back.scale(&Rational::from_i64(k as i64)), c.clone());
        if let Ok(q) = c.divide_exact(k, DivisionMode::Integral) {
            prop_assert_eq!(q.scale(&Rational::from_i64(k as i64)), c);
        }
    }

    #[test]
    fn integral_division_fails_exactly_on_non_multiples(d in -50i64..50, k in 2u64..9) {
        let c = TowerClass::<Rational>::base(Rational::zero(), Rational::from_i64(d));
        let ok = c.divide_exact(k, DivisionMode::Integral).is_ok();
        prop_assert_eq!(ok, d % k as i64 == 0);
    }

    #[test]
    fn json_round_trip(c in (0usize..4).prop_flat_map(class_at::<Rational>)) {
        let s = serde_json::to_string(&c).unwrap();
        let back: TowerClass<Rational> = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, c);
    }
}

/// Ten thousand random operations, each recorded with its inverse, then
/// undone in reverse: the class must come back bit for bit, with the
/// intermediate denominators growing as they should rather than drifting.
#[test]
fn ten_thousand_composed_operations_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e);
    let level = 3;
    let start = TowerClass::<Rational>::new(
        Rational::ratio(7, 3),
        Rational::ratio(-7, 2),
        vec![Rational::one(), Rational::ratio(1, 5), Rational::zero()],
    );
    enum Op {
        Add(TowerClass<Rational>),
        Scale(Rational),
    }
    let mut ops = Vec::new();
    let mut c = start.clone();
    let mut max_den = 1u64;
    for _ in 0..10_000 {
        if rng.gen_bool(0.5) {
            let t = TowerClass::new(
                Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                (0..level)
                    .map(|_| Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                    .collect(),
            );
            c = c.add(&t).unwrap();
            ops.push(Op::Add(t));
        } else {
            let mut n = rng.gen_range(-6i64..=6);
            if n == 0 {
                n = 1;
            }
            let q = Rational::ratio(n, rng.gen_range(1..=6));
            c = c.scale(&q);
            ops.push(Op::Scale(q));
        }
        for (_, v) in c.coordinates() {
            let den: u64 = v.denom().try_into().unwrap_or(u64::MAX);
            max_den = max_den.max(den);
        }
    }
    assert!(max_den > 1 << 20, "denominators never grew: {max_den}");
    for op in ops.into_iter().rev() {
        c = match op {
            Op::Add(t) => c.sub(&t).unwrap(),
            Op::Scale(q) => c.scale(&q.recip()),
        };
    }
    assert_eq!(c, start);
    assert!(c.d_coeff().is_negative());
}

#[test]
fn small_rational_agrees_with_big_rational_on_short_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let mut big = TowerClass::<Rational>::base(Rational::zero(), Rational::one());
        let mut small = TowerClass::<SmallRational>::base(SmallRational::zero(), SmallRational::one());
        for _ in 0..6 {
            let (n, d) = (rng.gen_range(-5i64..=5), rng.gen_range(1i64..=5));
            let (a, b) = (rng.gen_range(-5i64..=5), rng.gen_range(1i64..=5));
            big = big
                .scale(&Rational::ratio(n, d))
                .add(&TowerClass::base(Rational::ratio(a, b), Rational::ratio(b, 7)))
                .unwrap();
            small = small
                .scale(&SmallRational::ratio(n, d))
                .add(&TowerClass::base(
                    SmallRational::ratio(a, b),
                    SmallRational::ratio(b, 7),
                ))
                .unwrap();
        }
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            serde_json::to_string(&small).unwrap()
        );
    }
}
