use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tango_core::arith::primes_up_to;
use tango_core::curve::{brute_force_divisor_degree, ArtinSchreierCurve, CurveError, CurveFunction};

fn monomial_curve(p: u64, m: usize) -> ArtinSchreierCurve {
    let mut f = vec![0; m + 1];
    f[m] = 1;
    ArtinSchreierCurve::new(p, f).unwrap()
}

/// Gaps of the numerical semigroup generated by the pole orders of `x` and `y`.
fn semigroup_gaps(p: u64, m: u64) -> u64 {
    let conductor = (p - 1) * (m - 1);
    let mut reachable = vec![false; conductor as usize + 1];
    reachable[0] = true;
    for n in 1..=conductor as usize {
        reachable[n] = (n >= p as usize && reachable[n - p as usize]) || (n >= m as usize && reachable[n - m as usize]);
    }
    reachable.iter().filter(|r| !**r).count() as u64
}

fn random_function(rng: &mut ChaCha8Rng, curve: &ArtinSchreierCurve, weight: u64) -> CurveFunction {
    let terms: Vec<(u64, usize, usize)> = curve
        .monomials_up_to_weight(weight)
        .into_iter()
        .map(|(i, j)| (rng.gen_range(0..curve.p()), i, j))
        .collect();
    CurveFunction::from_terms(curve.p(), &terms)
}

fn pow(curve: &ArtinSchreierCurve, g: &CurveFunction, e: u64) -> CurveFunction {
    (0..e).fold(CurveFunction::constant(curve.p(), 1), |acc, _| curve.mul(&acc, g))
}

#[test]
fn genus_matches_gap_count_and_riemann_hurwitz() {
    for p in primes_up_to(13) {
        for m in 2..=15u64 {
            if m % p == 0 {
                continue;
            }
            let curve = monomial_curve(p, m as usize);
            assert_eq!(curve.genus(), semigroup_gaps(p, m), "p={p} m={m}");
            // one totally (wildly) ramified point over P¹ with different exponent (p−1)(m+1)
            let rh = -2 * p as i64 + ((p - 1) * (m + 1)) as i64;
            assert_eq!(curve.canonical_degree(), rh);
            let dx = curve.infinity_valuation(&CurveFunction::constant(p, 1), true).unwrap();
            assert_eq!(dx, rh);
        }
    }
}

#[test]
fn brute_force_examples() {
    let curve = ArtinSchreierCurve::raynaud_family(3, 2).unwrap();
    let one = CurveFunction::constant(3, 1);
    let r = brute_force_divisor_degree(&curve, &one, 1).unwrap();
    assert_eq!((r.degree, r.expected, r.conclusive), (0, 0, true));

    // x = 0 gives the three points (0, y) with y³ = y
    let r = brute_force_divisor_degree(&curve, &CurveFunction::x(3), 1).unwrap();
    assert_eq!((r.degree, r.expected, r.conclusive), (3, 3, true));

    let r = brute_force_divisor_degree(&curve, &CurveFunction::monomial(3, 2, 4, 0), 1).unwrap();
    assert_eq!((r.degree, r.expected), (12, 12));

    assert!(matches!(
        brute_force_divisor_degree(&curve, &CurveFunction::zero(3), 2),
        Err(CurveError::ZeroFunction)
    ));
    assert!(matches!(
        brute_force_divisor_degree(&curve, &one, 0),
        Err(CurveError::ZeroExtensionBound)
    ));
}

#[test]
fn norm_degree_is_the_pole_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let m = loop {
            let m = rng.gen_range(2..=9u64);
            if m % p != 0 {
                break m;
            }
        };
        let curve = monomial_curve(p, m as usize);
        let h = random_function(&mut rng, &curve, 2 * p * m);
        if h.is_zero() {
            continue;
        }
        let norm = curve.norm(&h).unwrap();
        let v = curve.infinity_valuation(&h, false).unwrap();
        assert_eq!((norm.len() - 1) as i64, -v, "h = {h}");
    }
}

#[test]
fn brute_force_agrees_with_the_valuation_whenever_it_sees_every_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut conclusive = 0;
    for _ in 0..60 {
        let (p, m) = [(2u64, 3usize), (2, 5), (3, 4), (3, 5)][rng.gen_range(0..4)];
        let curve = monomial_curve(p, m);
        let eta = random_function(&mut rng, &curve, p * m as u64);
        let h = curve.differential_of(&eta).unwrap();
        if h.is_zero() {
            continue;
        }
        let v = curve.infinity_valuation(&h, true).unwrap();
        let r = brute_force_divisor_degree(&curve, &h, 2).unwrap();
        assert!(r.degree <= r.expected);
        assert_eq!(v + r.expected as i64, curve.canonical_degree());
        if r.conclusive {
            conclusive += 1;
            assert_eq!(v + r.degree as i64, curve.canonical_degree(), "eta = {eta}");
        }
    }
    assert!(conclusive > 0);
}

#[test]
fn p_th_powers_span_the_kernel_of_d() {
    for (p, m) in [(2u64, 3usize), (3, 2), (3, 5), (5, 2)] {
        let curve = monomial_curve(p, m);
        for (i, j) in curve.monomials_up_to_weight(3 * m as u64) {
            let g = CurveFunction::monomial(p, 1, i, j);
            assert!(curve.differential_of(&pow(&curve, &g, p)).unwrap().is_zero());
        }
        for w in [p * m as u64, 2 * p * m as u64, 3 * p * m as u64] {
            let total = curve.monomials_up_to_weight(w).len();
            let kernel = curve.monomials_up_to_weight(w / p).len();
            assert_eq!(curve.differential_space(w).rank(), total - kernel, "p={p} m={m} w={w}");
        }
    }
}

#[test]
fn tango_bounds_are_consistent_and_tight_on_the_family() {
    for p in primes_up_to(7) {
        for m in 2..=9usize {
            if (m as u64).is_multiple_of(p) {
                continue;
            }
            let curve = monomial_curve(p, m);
            let b = curve.tango_invariant_bounds(2 * p * m as u64);
            let (num, den) = match b.upper.split_once('/') {
                Some((n, d)) => (n.parse::<i64>().unwrap(), d.parse::<i64>().unwrap()),
                None => (b.upper.parse::<i64>().unwrap(), 1),
            };
            assert!(b.lower * den <= num, "p={p} m={m}");
        }
        for l in 1..=3 {
            let Ok(curve) = ArtinSchreierCurve::raynaud_family(p, l) else {
                continue;
            };
            let b = curve.tango_invariant_bounds(2 * p * curve.m() as u64);
            assert!(b.exact);
            assert_eq!(b.lower, (l * (p - 1) - 2) as i64);
        }
    }
    let b = ArtinSchreierCurve::raynaud_family(3, 2)
        .unwrap()
        .tango_invariant_bounds(30);
    assert_eq!((b.lower, b.upper.as_str()), (2, "2"));
    let b = ArtinSchreierCurve::raynaud_family(2, 3)
        .unwrap()
        .tango_invariant_bounds(20);
    assert_eq!((b.lower, b.upper.as_str()), (1, "1"));
}

#[test]
fn tango_and_pre_tango_on_the_family() {
    let curve = ArtinSchreierCurve::raynaud_family(3, 2).unwrap();
    assert_eq!(curve.is_tango(2).unwrap(), Some(CurveFunction::x(3)));
    assert_eq!(curve.is_tango(1).unwrap(), None);
    assert!(curve.pre_tango_search(1, 15).unwrap().is_some());
    assert!(curve.pre_tango_search(3, 15).unwrap().is_none());
    assert!(matches!(curve.is_tango(0), Err(CurveError::ZeroDivisorDegree)));
}
