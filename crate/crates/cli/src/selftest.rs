//! Seeded randomized checks. Identical seeds give identical reports.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tango_core::arith::gcd;
use tango_core::cover::{least_m, ramified_canonical_i, BranchDivisor, CyclicCover};
use tango_core::curve::{brute_force_divisor_degree, ArtinSchreierCurve, CurveFunction};
use tango_core::cysearch::{run_all, Bounds};
use tango_core::{DivisionMode, Structure, TowerClass, TowerState};

use crate::Report;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, result: Result<(), String>) {
        self.cases += 1;
        if let Err(e) = result {
            self.failures += 1;
            self.first_failure.get_or_insert(e);
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub sections: Vec<Section>,
    pub passed: bool,
}

fn coprime_in(rng: &mut ChaCha8Rng, p: u64, lo: u64, hi: u64) -> u64 {
    loop {
        let k = rng.gen_range(lo..=hi);
        if gcd(p, k) == 1 {
            return k;
        }
    }
}

/// A random Tango tower of one to three coprime steps.
pub fn random_tango_tower(rng: &mut ChaCha8Rng) -> Result<Vec<TowerState>, String> {
    let p = *PRIMES.choose(rng).expect("nonempty");
    let k1 = coprime_in(rng, p, 1, 6);
    let deg_d = k1 * rng.gen_range(1..=4);
    let mut states = vec![TowerState::tango_base(p, deg_d, k1).map_err(|e| e.to_string())?];
    for _ in 0..rng.gen_range(1..=3) {
        let k = coprime_in(rng, p, 2, 12);
        let next = states
            .last()
            .expect("nonempty")
            .step_i(k, DivisionMode::Rational)
            .map_err(|e| e.to_string())?;
        states.push(next);
    }
    Ok(states)
}

/// `(dη) = p·D + pullback of the slack`, with zero slack for Tango states.
pub fn justification_residual(state: &TowerState) -> Option<TowerClass> {
    let j = state.justification()?;
    let pd = state.polarization().scale(&tango_core::scalar::int(state.p() as i64));
    j.sub(&pd).ok()
}

fn tower_section(rng: &mut ChaCha8Rng, cases: usize) -> Section {
    let mut s = Section::new("tower_step_i");
    for _ in 0..cases {
        let result = random_tango_tower(rng).and_then(|states| {
            for pair in states.windows(2) {
                let (prev, next) = (&pair[0], &pair[1]);
                let rec = next.steps().last().expect("one step");
                let formula =
                    ramified_canonical_i(next.p(), rec.k, prev.canonical(), &rec.d_prime).map_err(|e| e.to_string())?;
                if &formula != next.canonical() {
                    return Err(format!("step k={} disagrees with the ramification formula", rec.k));
                }
                if next.structure() != Structure::Tango {
                    return Err("Tango structure lost".into());
                }
                match justification_residual(next) {
                    Some(r) if r.is_zero() => {}
                    other => return Err(format!("nonzero residual {other:?}")),
                }
                let v = next.invariant_violations();
                if !v.is_empty() {
                    return Err(v.join("; "));
                }
            }
            Ok(())
        });
        s.record(result);
    }
    s
}

fn cover_section(rng: &mut ChaCha8Rng, cases: usize) -> Section {
    let mut s = Section::new("cover_relations");
    for _ in 0..cases {
        let p = *PRIMES.choose(rng).expect("nonempty");
        let k = coprime_in(rng, p, 1, 20);
        let m = least_m(p, k) + k * rng.gen_range(0..3);
        let cover = match CyclicCover::new(p, k, m, TowerClass::base_unit(0)) {
            Ok(c) => c,
            Err(e) => {
                s.record(Err(e.to_string()));
                continue;
            }
        };
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        let result = (|| {
            if let Err(r) = cover.verify_mk_relation() {
                return Err(format!("(p,k,m)=({p},{k},{m}) M^k residual {r:?}"));
            }
            // summand(i) + summand(j) = summand((i+j) mod k) − carry, carry effective
            let n = i + j;
            let carry = BranchDivisor {
                f: ((n * m) / k - (i * m) / k - (j * m) / k) as i64,
                g: (n / k) as i64,
            };
            let lhs = cover
                .summand(i)
                .add(&cover.summand(j))
                .and_then(|c| c.add(&carry.class(p, &cover.polarization())))
                .map_err(|e| e.to_string())?;
            if lhs != cover.summand(n % k) {
                return Err(format!("carry relation fails at (p,k,m,i,j)=({p},{k},{m},{i},{j})"));
            }
            Ok(())
        })();
        s.record(result);
    }
    s
}

fn random_eta(rng: &mut ChaCha8Rng, curve: &ArtinSchreierCurve, weight: u64) -> CurveFunction {
    let p = curve.p();
    let terms: Vec<(u64, usize, usize)> = curve
        .monomials_up_to_weight(weight)
        .into_iter()
        .map(|(i, j)| (rng.gen_range(0..p), i, j))
        .collect();
    CurveFunction::from_terms(p, &terms)
}

fn curve_section(rng: &mut ChaCha8Rng, cases: usize) -> Section {
    let mut s = Section::new("curve_degree");
    let mut conclusive = 0;
    for _ in 0..cases {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let m = loop {
            let m = rng.gen_range(2..=7u64);
            if m % p != 0 {
                break m;
            }
        };
        let mut f = vec![0; m as usize + 1];
        f[m as usize] = 1;
        let curve = ArtinSchreierCurve::new(p, f).expect("valid curve");
        let eta = random_eta(rng, &curve, p * m);
        let result = (|| {
            let h = curve.differential_of(&eta).map_err(|e| e.to_string())?;
            if h.is_zero() {
                return Ok(());
            }
            let v = curve.infinity_valuation(&h, true).map_err(|e| e.to_string())?;
            let brute = brute_force_divisor_degree(&curve, &h, 2).map_err(|e| e.to_string())?;
            if v + brute.expected as i64 != curve.canonical_degree() {
                return Err(format!("eta = {eta}: {v} + {} != 2g-2", brute.expected));
            }
            if brute.conclusive {
                conclusive += 1;
            }
            Ok(())
        })();
        s.record(result);
    }
    s.notes.push(format!(
        "{conclusive} of {} cases had every zero over F_p or F_(p^2)",
        s.cases
    ));
    s
}

fn certificate_section() -> Section {
    let mut s = Section::new("certificates");
    let run = run_all(Bounds::default());
    for (check, cert) in run.checks.iter().zip(&run.certificates) {
        s.record(cert.replay().map_err(|e| format!("{}: {e}", cert.claim)));
        s.record(if check.reproduced {
            Ok(())
        } else {
            Err(format!("{}: {}", check.claim, check.problems.join("; ")))
        });
    }
    s
}

pub fn selftest(seed: u64, cases: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sections = vec![
        tower_section(&mut rng, cases),
        cover_section(&mut rng, cases),
        curve_section(&mut rng, cases),
        certificate_section(),
    ];
    SelftestReport {
        seed,
        passed: sections.iter().all(|s| s.failures == 0),
        sections,
    }
}

pub(crate) fn run(seed: u64, cases: usize) -> Report<SelftestReport> {
    let report = selftest(seed, cases);
    let mut text = String::new();
    let _ = writeln!(text, "seed {seed}");
    for s in &report.sections {
        let _ = writeln!(text, "{}: {}/{} passed", s.name, s.cases - s.failures, s.cases);
        if let Some(f) = &s.first_failure {
            let _ = writeln!(text, "  first failure: {f}");
        }
        for n in &s.notes {
            let _ = writeln!(text, "  {n}");
        }
    }
    Report {
        ok: report.passed,
        body: report,
        text,
    }
}
