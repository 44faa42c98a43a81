use rayon::prelude::*;
use serde::Serialize;

use super::{
    q, q_ratio, Branch, Certificate, Claim, CrossCheck, ReplayScript, ReplayStep, SearchRange, Solution, TraceStep,
    Value, Verdict,
};
use crate::arith::{gcd, is_prime, primes_up_to};
use crate::divclass::DivisionMode;
use crate::{Rational, TowerClass};

/// Search grid. Defaults: `p ≤ 97`, `k ≤ 10⁴`, `ℓ ≤ 6`, `r ≤ 100`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub p_max: u64,
    pub k_max: u64,
    pub l_max: u32,
    pub r_max: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            p_max: 97,
            k_max: 10_000,
            l_max: 6,
            r_max: 100,
        }
    }
}

fn curve_class(d: Rational) -> TowerClass {
    TowerClass::base(q(0), d)
}

/// Coprime pairs `(p, k)`, `p ≤ p_max` prime, `2 ≤ k ≤ k_max`, with
/// `pk − p − k − 1 = 0`, from the factorization `(p − 1)(k − 1) = 2`.
pub fn solve_top_step(p_max: u64, k_max: u64) -> Vec<Solution> {
    let mut out: Vec<Solution> = [1u64, 2]
        .iter()
        .map(|&a| (a + 1, 2 / a + 1))
        .filter(|&(p, k)| is_prime(p) && p <= p_max && k <= k_max && gcd(p, k) == 1)
        .map(|(p, k)| Solution { p, k, l: None, r: None })
        .collect();
    out.sort();
    out
}

/// The same set by scanning the whole grid.
pub fn brute_force_top_step(p_max: u64, k_max: u64) -> Vec<Solution> {
    let mut out: Vec<Solution> = primes_up_to(p_max)
        .into_par_iter()
        .flat_map_iter(|p| {
            (2..=k_max)
                .filter(move |&k| {
                    let (pi, ki) = (p as i128, k as i128);
                    pi * ki - pi - ki - 1 == 0 && gcd(p, k) == 1
                })
                .map(move |k| Solution { p, k, l: None, r: None })
        })
        .collect();
    out.sort();
    out
}

/// `(ℓ, r, p)` with `(p, r) = 1` and `pˡr − pˡ⁻¹r − 2 = 0`, i.e.
/// `pˡ⁻¹·r·(p − 1) = 2`.
pub fn solve_construction_ii(p_max: u64, l_max: u32, r_max: u64) -> Vec<Solution> {
    let mut out = Vec::new();
    for a in [1u64, 2] {
        let p = a + 1;
        if !is_prime(p) || p > p_max {
            continue;
        }
        // p^(l-1) * r = 2 / (p - 1)
        let rest = 2 / a;
        let mut pow = 1u64;
        let mut l = 1u32;
        while l <= l_max && rest % pow == 0 {
            let r = rest / pow;
            if r <= r_max && gcd(p, r) == 1 {
                out.push(Solution {
                    p,
                    k: pow * p * r,
                    l: Some(l),
                    r: Some(r),
                });
            }
            pow *= p;
            l += 1;
        }
    }
    out.sort();
    out
}

pub fn brute_force_construction_ii(p_max: u64, l_max: u32, r_max: u64) -> Vec<Solution> {
    let mut out: Vec<Solution> = primes_up_to(p_max)
        .into_par_iter()
        .flat_map_iter(|p| {
            (1..=l_max).flat_map(move |l| {
                (1..=r_max).filter_map(move |r| {
                    if gcd(p, r) != 1 {
                        return None;
                    }
                    let pl = (p as i128).checked_pow(l)?;
                    let k = pl.checked_mul(r as i128)?;
                    let value = k - k / p as i128 - 2;
                    (value == 0).then_some(Solution {
                        p,
                        k: k as u64,
                        l: Some(l),
                        r: Some(r),
                    })
                })
            })
        })
        .collect();
    out.sort();
    out
}

fn top_ranges(p_max: u64, k_max: u64) -> Vec<SearchRange> {
    vec![
        SearchRange {
            name: "p",
            min: 2,
            max: p_max,
        },
        SearchRange {
            name: "k",
            min: 2,
            max: k_max,
        },
    ]
}

fn cross_check(algebraic: Vec<Solution>, brute_force: Vec<Solution>) -> CrossCheck {
    CrossCheck {
        agree: algebraic == brute_force,
        algebraic,
        brute_force,
    }
}

fn top_equation(p: u64, k: u64) -> TraceStep {
    let (p, k) = (p as i64, k as i64);
    TraceStep::equation(
        format!("pk - p - k - 1 = 0 at (p,k)=({p},{k})"),
        Value::Rational(q(p * k - p - k - 1)),
        Value::Rational(q(0)),
    )
}

/// A curve or surface with `K = K·D'`, `D = k·D'`, then the given steps.
fn script(
    p: u64,
    dim: usize,
    k_coeff: Rational,
    d_coeff: Rational,
    steps: Vec<ReplayStep>,
    division: DivisionMode,
) -> ReplayScript {
    ReplayScript {
        p,
        dim,
        canonical: curve_class(k_coeff),
        polarization: curve_class(d_coeff),
        division,
        steps,
    }
}

/// A surface `X̃` obtained by a coprime cover of a pre-Tango curve is not K3.
pub fn surface_k3_search(p_max: u64, k_max: u64) -> Certificate {
    let solutions = solve_top_step(p_max, k_max);
    let cc = cross_check(solutions.clone(), brute_force_top_step(p_max, k_max));
    let branches: Vec<Branch> = solutions
        .iter()
        .map(|s| {
            let (p, k) = (s.p as i64, s.k as i64);
            let c = p * k - p - k;
            Branch {
                solution: s.clone(),
                steps: vec![
                    top_equation(s.p, s.k),
                    TraceStep::coprimality("(p,k)=1", s.p, s.k),
                    TraceStep::equation(
                        "trivial K~ forces K = (pk-p-k)D' = D'",
                        Value::Class(curve_class(q(c))),
                        Value::Class(curve_class(q(1))),
                    ),
                    TraceStep::replay(
                        "curve with K = D', D = kD', one coprime cover of degree k",
                        script(
                            s.p,
                            1,
                            q(1),
                            q(k),
                            vec![ReplayStep::I { k: s.k }],
                            DivisionMode::Integral,
                        ),
                    ),
                    TraceStep::inequality("pre-Tango K >= pD in units of D': 1 >= pk", q(1), q(p * k)),
                ],
            }
        })
        .collect();
    let notes = vec![
        "(p-1)(k-1) = 2, so k = (p+1)/(p-1) is a natural number only for p in {2,3}".to_string(),
        "D' = K >= pD = pkD' is impossible unless pk = 1".to_string(),
    ];
    Certificate {
        claim: Claim::SurfaceNotK3,
        ranges: top_ranges(p_max, k_max),
        equation: "pk - p - k - 1 = 0".into(),
        verdict: Certificate::verdict_from_branches(&branches),
        solutions,
        cross_check: Some(cc),
        branches,
        notes,
    }
}

/// `k₁ = (k(p+1) − 1)/(k(p−1) − 1)`: the degree of the first cover for which
/// the intermediate surface satisfies `K_Y = D_Y / k`.
pub fn threefold_k1(p: u64, k: u64) -> Rational {
    let (p, k) = (p as i64, k as i64);
    q_ratio(k * (p + 1) - 1, k * (p - 1) - 1)
}

/// A threefold from two coprime covers of a pre-Tango curve is not
/// Calabi–Yau.
pub fn threefold_cy_search(p_max: u64, k_max: u64) -> Certificate {
    let solutions = solve_top_step(p_max, k_max);
    let cc = cross_check(solutions.clone(), brute_force_top_step(p_max, k_max));
    let branches: Vec<Branch> = solutions
        .iter()
        .map(|s| {
            let (p, k) = (s.p as i64, s.k as i64);
            let k1 = threefold_k1(s.p, s.k);
            let mut steps = vec![
                top_equation(s.p, s.k),
                TraceStep::coprimality("(p,k)=1", s.p, s.k),
                TraceStep::equation(
                    format!("k1 = (k(p+1)-1)/(k(p-1)-1) = {k1} solves k(pk1-p-k1-1) = k1-1"),
                    Value::Rational(q(k) * (q(p) * &k1 - q(p) - &k1 - q(1))),
                    Value::Rational(&k1 - q(1)),
                ),
                TraceStep::integrality("k1 is an integer", k1.clone()),
            ];
            if k1.is_integer() {
                let k1_int = k1.to_integer().try_into().unwrap_or(0u64);
                let k1_i = k1_int as i64;
                // K_C - (pk1 - p - k1)D'_1 = D'_1 / k
                let k_curve = q(p * k1_i - p - k1_i) + q_ratio(1, k);
                steps.push(TraceStep::coprimality("(p,k1)=1", s.p, k1_int));
                steps.push(TraceStep::replay(
                    format!("curve with K = {k_curve} D'_1, D = k1 D'_1, covers of degree k1 then k"),
                    script(
                        s.p,
                        1,
                        k_curve,
                        q(k1_i),
                        vec![ReplayStep::I { k: k1_int }, ReplayStep::I { k: s.k }],
                        DivisionMode::Rational,
                    ),
                ));
            }
            Branch {
                solution: s.clone(),
                steps,
            }
        })
        .collect();
    let notes = vec![
        "the top cover needs pk - p - k - 1 = 0; for p >= 5 and k >= 2 this is at least 2, so k1 is never reached"
            .to_string(),
        "the values of k1 found are not allowed".to_string(),
    ];
    Certificate {
        claim: Claim::ThreefoldNotCalabiYau,
        ranges: top_ranges(p_max, k_max),
        equation: "pk - p - k - 1 = 0, then k1 = (k(p+1)-1)/(k(p-1)-1)".into(),
        verdict: Certificate::verdict_from_branches(&branches),
        solutions,
        cross_check: Some(cc),
        branches,
        notes,
    }
}

/// What a surface must satisfy for a coprime cover of it to have trivial
/// canonical class.
pub fn required_surface_conditions() -> Certificate {
    let solutions = solve_top_step(3, 3);
    let branches: Vec<Branch> = solutions
        .iter()
        .map(|s| Branch {
            solution: s.clone(),
            steps: vec![
                top_equation(s.p, s.k),
                TraceStep::coprimality("(p,k)=1", s.p, s.k),
                TraceStep::replay(
                    "surface with K = D', D = kD', one coprime cover of degree k",
                    script(
                        s.p,
                        2,
                        q(1),
                        q(s.k as i64),
                        vec![ReplayStep::I { k: s.k }],
                        DivisionMode::Integral,
                    ),
                ),
            ],
        })
        .collect();
    let conditions = vec![
        "(p,k) in {(2,3),(3,2)}".to_string(),
        "D = kD' for some ample D'".to_string(),
        "K_X ~ D'".to_string(),
    ];
    let notes = vec![
        "K_X ~ D' is ample, so such a surface is of general type".to_string(),
        "it does not arise from a pre-Tango curve by a coprime cover: the threefold certificate rejects every k1"
            .to_string(),
        "no such surface is constructed here".to_string(),
    ];
    let verdict = if branches.iter().all(|b| !b.contradicted()) {
        Verdict::ConditionallyPossible { conditions }
    } else {
        Certificate::verdict_from_branches(&branches)
    };
    Certificate {
        claim: Claim::SurfaceConditions,
        ranges: Vec::new(),
        equation: "pk - p - k - 1 = 0 with K = (pk-p-k)D'".into(),
        solutions,
        cross_check: None,
        branches,
        notes,
        verdict,
    }
}

/// Construction II over a surface obtained from a pre-Tango curve does not
/// give a Calabi–Yau threefold.
pub fn construction_ii_search(p_max: u64, l_max: u32, r_max: u64) -> Certificate {
    let solutions = solve_construction_ii(p_max, l_max, r_max);
    let cc = cross_check(solutions.clone(), brute_force_construction_ii(p_max, l_max, r_max));
    let branches: Vec<Branch> = solutions.iter().map(construction_ii_branch).collect();
    Certificate {
        claim: Claim::ConstructionIINotCalabiYau,
        ranges: vec![
            SearchRange {
                name: "p",
                min: 2,
                max: p_max,
            },
            SearchRange {
                name: "l",
                min: 1,
                max: l_max as u64,
            },
            SearchRange {
                name: "r",
                min: 1,
                max: r_max,
            },
        ],
        equation: "p^l r - p^(l-1) r - 2 = 0 with (p,r)=1".into(),
        verdict: Certificate::verdict_from_branches(&branches),
        solutions,
        cross_check: Some(cc),
        branches,
        notes: vec!["the surface is a coprime cover of degree k1 of a pre-Tango curve with D_1 = k1 D'_1".into()],
    }
}

fn construction_ii_branch(s: &Solution) -> Branch {
    let (p, k) = (s.p as i64, s.k as i64);
    let (l, r) = (
        s.l.expect("construction II solution"),
        s.r.expect("construction II solution"),
    );
    let c = p * k - p - k;
    // K_X = c·D' = lambda·D_X
    let lambda = q_ratio(c, k);
    let k1 = (q(p + 1) - &lambda) / (q(p - 1) - &lambda);
    let mut steps = vec![
        TraceStep::equation(
            format!("p^l r - p^(l-1) r - 2 = 0 at (l,r,p)=({l},{r},{p})"),
            Value::Rational(q(p * k - k / p - 2)),
            Value::Rational(q(0)),
        ),
        TraceStep::coprimality("(p,r)=1", s.p, r),
        TraceStep::replay(
            format!("surface with K = {c}D', D = kD', construction II with l={l}, r={r}"),
            script(
                s.p,
                2,
                q(c),
                q(k),
                vec![ReplayStep::Ii { l, r }],
                DivisionMode::Integral,
            ),
        ),
        TraceStep::equation(
            format!("k1 = {k1} solves pk1 - p - k1 - 1 = ({lambda})(k1 - 1)"),
            Value::Rational(q(p) * &k1 - q(p) - &k1 - q(1)),
            Value::Rational(&lambda * (&k1 - q(1))),
        ),
        TraceStep::integrality("k1 is an integer", k1.clone()),
    ];
    if k1.is_integer() {
        let k1_int: u64 = k1.to_integer().try_into().unwrap_or(0);
        let k_curve = q(p) * &k1 - q(p) - &k1 + &lambda;
        steps.push(TraceStep::coprimality("(p,k1)=1", s.p, k1_int));
        steps.push(TraceStep::replay(
            format!("curve with K = {k_curve} D'_1, D = k1 D'_1, cover of degree k1 then construction II"),
            script(
                s.p,
                1,
                k_curve.clone(),
                k1.clone(),
                vec![ReplayStep::I { k: k1_int }, ReplayStep::Ii { l, r }],
                DivisionMode::Rational,
            ),
        ));
        let bound_pk = q(p * k);
        let bound_pk1 = q(p) * &k1;
        steps.push(TraceStep::inequality(
            format!("pre-Tango K_X1 >= pD_1 with the bound read as p*k: {k_curve} >= {bound_pk}"),
            k_curve.clone(),
            bound_pk.clone(),
        ));
        if bound_pk1 != bound_pk {
            steps.push(TraceStep::inequality(
                format!("pre-Tango K_X1 >= pD_1 with D_1 = k1 D'_1: {k_curve} >= {bound_pk1}"),
                k_curve,
                bound_pk1.clone(),
            ));
            steps.push(TraceStep::note(format!(
                "the bound is stated as p*k = {bound_pk} while p*k1 = {bound_pk1}; the contradiction holds under either reading"
            )));
        }
    }
    Branch {
        solution: s.clone(),
        steps,
    }
}

/// Expected outcome of one claim and whether the run reproduced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub expected: String,
    pub reproduced: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryRun {
    pub bounds: Bounds,
    pub checks: Vec<ClaimCheck>,
    pub certificates: Vec<Certificate>,
    pub all_reproduced: bool,
}

/// Runs the four searches and compares each with its expected verdict and
/// numbers, restricted to what the bounds can reach.
pub fn run_all(bounds: Bounds) -> CorollaryRun {
    let certificates = vec![
        surface_k3_search(bounds.p_max, bounds.k_max),
        threefold_cy_search(bounds.p_max, bounds.k_max),
        required_surface_conditions(),
        construction_ii_search(bounds.p_max, bounds.l_max, bounds.r_max),
    ];
    let checks: Vec<ClaimCheck> = certificates.iter().map(|c| check(c, &bounds)).collect();
    CorollaryRun {
        bounds,
        all_reproduced: checks.iter().all(|c| c.reproduced),
        checks,
        certificates,
    }
}

fn within(s: &Solution, b: &Bounds, top: bool) -> bool {
    if top {
        s.p <= b.p_max && s.k <= b.k_max
    } else {
        s.p <= b.p_max && s.l.unwrap_or(0) <= b.l_max && s.r.unwrap_or(0) <= b.r_max
    }
}

fn pair(p: u64, k: u64) -> Solution {
    Solution { p, k, l: None, r: None }
}

fn inequality_values(b: &Branch) -> Vec<(Rational, Rational, bool)> {
    b.steps
        .iter()
        .filter_map(|s| match s {
            TraceStep::Inequality { lhs, rhs, holds, .. } => Some((lhs.clone(), rhs.clone(), *holds)),
            _ => None,
        })
        .collect()
}

fn failing(b: &Branch, pred: impl Fn(&TraceStep) -> bool) -> bool {
    b.steps.iter().any(|s| s.holds() == Some(false) && pred(s))
}

fn check(cert: &Certificate, bounds: &Bounds) -> ClaimCheck {
    let mut problems = Vec::new();
    if let Err(e) = cert.replay() {
        problems.push(format!("replay: {e}"));
    }
    if cert.cross_check.as_ref().is_some_and(|c| !c.agree) {
        problems.push("algebraic and brute-force solution sets differ".into());
    }
    let expect_solutions = |expected: Vec<Solution>, top: bool, problems: &mut Vec<String>| {
        let expected: Vec<Solution> = expected.into_iter().filter(|s| within(s, bounds, top)).collect();
        if cert.solutions != expected {
            problems.push(format!("solutions {:?}, expected {:?}", cert.solutions, expected));
        }
    };
    let expected = match cert.claim {
        Claim::SurfaceNotK3 => {
            expect_solutions(vec![pair(2, 3), pair(3, 2)], true, &mut problems);
            for b in &cert.branches {
                let want = (q(1), q((b.solution.p * b.solution.k) as i64), false);
                if !inequality_values(b).contains(&want) {
                    problems.push(format!("{}: missing contradiction 1 >= pk", b.solution));
                }
            }
            "impossible; solutions {(2,3),(3,2)}; 1 >= pk fails for both"
        }
        Claim::ThreefoldNotCalabiYau => {
            expect_solutions(vec![pair(2, 3), pair(3, 2)], true, &mut problems);
            for b in &cert.branches {
                let ok = match (b.solution.p, b.solution.k) {
                    (2, 3) => {
                        threefold_k1(2, 3) == q(4)
                            && failing(b, |s| matches!(s, TraceStep::Coprimality { a: 2, b: 4, .. }))
                    }
                    (3, 2) => {
                        threefold_k1(3, 2) == q_ratio(7, 3)
                            && failing(b, |s| matches!(s, TraceStep::Integrality { .. }))
                    }
                    _ => false,
                };
                if !ok {
                    problems.push(format!("{}: k1 rejection not reproduced", b.solution));
                }
            }
            "impossible; k1 = 4 fails (k1,p)=1 at (2,3), k1 = 7/3 is not an integer at (3,2)"
        }
        Claim::SurfaceConditions => {
            if cert.solutions != vec![pair(2, 3), pair(3, 2)] {
                problems.push(format!("pairs {:?}", cert.solutions));
            }
            match &cert.verdict {
                Verdict::ConditionallyPossible { conditions } if conditions.iter().any(|c| c == "K_X ~ D'") => {}
                v => problems.push(format!("verdict {v:?}")),
            }
            "conditionally possible: (p,k) in {(2,3),(3,2)}, D = kD', K_X ~ D'"
        }
        Claim::ConstructionIINotCalabiYau => {
            let sol = |l, r, p, k| Solution {
                p,
                k,
                l: Some(l),
                r: Some(r),
            };
            expect_solutions(vec![sol(2, 1, 2, 4), sol(1, 1, 3, 3)], false, &mut problems);
            for b in &cert.branches {
                let want = match (b.solution.p, b.solution.k) {
                    (2, 4) => (q_ratio(7, 2), q(8), false),
                    (3, 3) => (q(4), q(9), false),
                    _ => continue,
                };
                if !inequality_values(b).contains(&want) {
                    problems.push(format!(
                        "{}: missing contradiction {} >= {}",
                        b.solution, want.0, want.1
                    ));
                }
            }
            "impossible; solutions {(1,1,3,3),(2,1,2,4)}; 7/2 < 8 and 4 < 9"
        }
    };
    let verdict_ok = match cert.claim {
        Claim::SurfaceConditions => matches!(cert.verdict, Verdict::ConditionallyPossible { .. }),
        _ => cert.verdict == Verdict::Impossible,
    };
    if !verdict_ok {
        problems.push(format!("verdict {:?}", cert.verdict));
    }
    ClaimCheck {
        claim: cert.claim,
        expected: expected.into(),
        reproduced: problems.is_empty(),
        problems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_step_solutions() {
        assert_eq!(solve_top_step(97, 10_000), vec![pair(2, 3), pair(3, 2)]);
        assert_eq!(brute_force_top_step(97, 10_000), vec![pair(2, 3), pair(3, 2)]);
        assert!(solve_top_step(3, 1).is_empty());
        assert!(brute_force_top_step(3, 1).is_empty());
        assert_eq!(solve_top_step(2, 10), vec![pair(2, 3)]);
    }

    #[test]
    fn construction_ii_solutions() {
        let want = vec![
            Solution {
                p: 2,
                k: 4,
                l: Some(2),
                r: Some(1),
            },
            Solution {
                p: 3,
                k: 3,
                l: Some(1),
                r: Some(1),
            },
        ];
        assert_eq!(solve_construction_ii(97, 6, 100), want);
        assert_eq!(brute_force_construction_ii(97, 6, 100), want);
        assert_eq!(solve_construction_ii(97, 1, 100), want[1..]);
        assert_eq!(brute_force_construction_ii(97, 1, 100), want[1..]);
    }

    #[test]
    fn k3_certificate() {
        let c = surface_k3_search(97, 10_000);
        assert_eq!(c.verdict, Verdict::Impossible);
        c.replay().unwrap();
        assert!(c.branches.iter().all(|b| b
            .steps
            .iter()
            .any(|s| matches!(s, TraceStep::Replay { holds: true, .. }))));
        let empty = surface_k3_search(3, 1);
        assert!(empty.solutions.is_empty());
        assert_eq!(empty.verdict, Verdict::Impossible);
    }

    #[test]
    fn threefold_k1_values() {
        assert_eq!(threefold_k1(2, 3), q(4));
        assert_eq!(threefold_k1(3, 2), q_ratio(7, 3));
        let c = threefold_cy_search(97, 10_000);
        assert_eq!(c.verdict, Verdict::Impossible);
        c.replay().unwrap();
    }

    #[test]
    fn construction_ii_branches() {
        let c = construction_ii_search(97, 6, 100);
        c.replay().unwrap();
        assert_eq!(c.verdict, Verdict::Impossible);
        let b24 = &c.branches[0];
        let ineqs = inequality_values(b24);
        assert!(ineqs.contains(&(q_ratio(7, 2), q(8), false)));
        assert!(ineqs.contains(&(q_ratio(7, 2), q(10), false)));
        // the full chain replays to a trivial class; only the inequality fails
        assert!(b24
            .steps
            .iter()
            .filter(|s| matches!(s, TraceStep::Replay { .. }))
            .all(|s| s.holds() == Some(true)));
        let b33 = &c.branches[1];
        assert!(inequality_values(b33).contains(&(q(4), q(9), false)));
        assert!(failing(b33, |s| matches!(s, TraceStep::Coprimality { a: 3, b: 3, .. })));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = surface_k3_search(97, 100);
        if let TraceStep::Inequality { holds, .. } = &mut c.branches[0].steps[4] {
            *holds = true;
        }
        assert!(c.replay().is_err());
        let mut c = surface_k3_search(97, 100);
        c.branches[0]
            .steps
            .retain(|s| !matches!(s, TraceStep::Inequality { .. }));
        assert!(c.replay().is_err());
    }

    #[test]
    fn default_run_reproduces() {
        let run = run_all(Bounds::default());
        for c in &run.checks {
            assert!(c.reproduced, "{:?}", c);
        }
    }
}
