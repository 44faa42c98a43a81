//! Picard arithmetic on the `P¹`-bundle `π: P = P(E) → X`.
//!
//! `Pic P = Z·F ⊕ π*Pic X`, where `F` is the canonical section. The
//! inseparable divisor `G` is never a generator: `G ~ pF − pπ*D`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, is_prime};
use crate::divclass::{DivClassError, TowerClass};
use crate::scalar::{int, serialize_scalar, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("cover degree must be positive")]
    ZeroDegree,
    #[error("k = {k} does not divide p + m = {p_plus_m}")]
    NotDivisible { k: u64, p_plus_m: u64 },
    #[error("gcd(p, k) = gcd({p}, {k}) != 1; the cyclic cover needs (p,k)=1")]
    NotCoprime { p: u64, k: u64 },
    #[error("summand {index} has positive F-twist {a}; pushforward of Sym powers is not supported")]
    PositiveTwist { index: usize, a: String },
    #[error(transparent)]
    Class(#[from] DivClassError),
}

/// `a·F + π*(base)` on `P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(bound = "")]
pub struct PBundleClass<S: ExactScalar> {
    #[serde(serialize_with = "serialize_scalar")]
    pub a: S,
    pub base: TowerClass<S>,
}

impl<S: ExactScalar> PBundleClass<S> {
    pub fn new(a: S, base: TowerClass<S>) -> Self {
        PBundleClass { a, base }
    }

    pub fn zero(level: usize) -> Self {
        PBundleClass::new(S::zero(), TowerClass::zero(level))
    }

    /// The canonical section `F`.
    pub fn section(level: usize) -> Self {
        PBundleClass::new(S::one(), TowerClass::zero(level))
    }

    /// `π*c`.
    pub fn pullback(c: TowerClass<S>) -> Self {
        PBundleClass::new(S::zero(), c)
    }

    pub fn level(&self) -> usize {
        self.base.level()
    }

    pub fn add(&self, other: &Self) -> Result<Self, DivClassError> {
        Ok(PBundleClass::new(
            self.a.clone() + other.a.clone(),
            self.base.add(&other.base)?,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DivClassError> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, q: &S) -> Self {
        PBundleClass::new(q.clone() * self.a.clone(), self.base.scale(q))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.base.is_zero()
    }

    /// Pullback along a cover `φ` of `P` with `φ*F = mult·F̃`: lands one
    /// level up, with the new `F̃` coordinate `a·mult`.
    pub fn pull_to_cover(&self, f_mult: &S) -> TowerClass<S> {
        let level = self.level() + 1;
        TowerClass::section_unit(level, level)
            .scale(&(self.a.clone() * f_mult.clone()))
            .add(&self.base.pullback())
            .expect("same level")
    }
}

/// Class of `G`: `pF − pπ*D`.
pub fn g_class<S: ExactScalar>(p: u64, d: &TowerClass<S>) -> PBundleClass<S> {
    let p: S = int(p as i64);
    PBundleClass::new(p.clone(), d.scale(&-p))
}

/// An integral combination `f·F + g·G` of the two branch components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchDivisor {
    pub f: i64,
    pub g: i64,
}

impl BranchDivisor {
    /// Linear-equivalence class with `G` eliminated.
    pub fn class<S: ExactScalar>(&self, p: u64, d: &TowerClass<S>) -> PBundleClass<S> {
        PBundleClass::section(d.level())
            .scale(&int(self.f))
            .add(&g_class(p, d).scale(&int(self.g)))
            .expect("same level")
    }
}

/// The summands `Mⁱ ⊗ O_P([i(mF+G)/k])`, `i = 0..k−1`, of the normalized
/// cyclic cover algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandList<S: ExactScalar> {
    k: u64,
    summands: Vec<PBundleClass<S>>,
}

impl<S: ExactScalar> SummandList<S> {
    pub fn new(summands: Vec<PBundleClass<S>>) -> Self {
        SummandList {
            k: summands.len() as u64,
            summands,
        }
    }

    pub fn degree(&self) -> u64 {
        self.k
    }

    pub fn as_slice(&self) -> &[PBundleClass<S>] {
        &self.summands
    }
}

impl<S: ExactScalar> Serialize for SummandList<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.summands.serialize(s)
    }
}

/// Parameters of the explicit cyclic cover of degree `k` branched along
/// `mF + G`, for `D = kD'`.
#[derive(Clone, Debug)]
pub struct CyclicCover<S: ExactScalar> {
    p: u64,
    k: u64,
    m: u64,
    d_prime: TowerClass<S>,
}

impl<S: ExactScalar> CyclicCover<S> {
    pub fn new(p: u64, k: u64, m: u64, d_prime: TowerClass<S>) -> Result<Self, CoverError> {
        if !is_prime(p) {
            return Err(CoverError::NotPrime(p));
        }
        if k == 0 {
            return Err(CoverError::ZeroDegree);
        }
        if gcd(p, k) != 1 {
            return Err(CoverError::NotCoprime { p, k });
        }
        if !(p + m).is_multiple_of(k) || m == 0 {
            return Err(CoverError::NotDivisible { k, p_plus_m: p + m });
        }
        Ok(CyclicCover { p, k, m, d_prime })
    }

    /// Uses the least `m ≥ 1` with `k | p + m`.
    pub fn with_least_m(p: u64, k: u64, d_prime: TowerClass<S>) -> Result<Self, CoverError> {
        if k == 0 {
            return Err(CoverError::ZeroDegree);
        }
        let m = least_m(p, k);
        Self::new(p, k, m, d_prime)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `D = kD'`.
    pub fn polarization(&self) -> TowerClass<S> {
        self.d_prime.scale(&int(self.k as i64))
    }

    /// `M = O_P(−((p+m)/k)F) ⊗ π*O_X(pD')`.
    pub fn line_bundle(&self) -> PBundleClass<S> {
        let a = -int::<S>(((self.p + self.m) / self.k) as i64);
        PBundleClass::new(a, self.d_prime.scale(&int(self.p as i64)))
    }

    /// The branch divisor `mF + G`.
    pub fn branch(&self) -> BranchDivisor {
        BranchDivisor { f: self.m as i64, g: 1 }
    }

    /// Integer part of `n(mF+G)/k`, taken componentwise.
    pub fn rounding(&self, n: u64) -> BranchDivisor {
        let k = self.k as i64;
        let n = n as i64;
        let b = self.branch();
        BranchDivisor {
            f: (n * b.f).div_euclid(k),
            g: (n * b.g).div_euclid(k),
        }
    }

    /// `Mⁿ ⊗ O_P([n(mF+G)/k])` for any `n ≥ 0`; periodic in `n` with period `k`.
    pub fn summand(&self, n: u64) -> PBundleClass<S> {
        let round = self.rounding(n).class(self.p, &self.polarization());
        self.line_bundle()
            .scale(&int(n as i64))
            .add(&round)
            .expect("same level")
    }

    pub fn summands(&self) -> SummandList<S> {
        SummandList::new((0..self.k).map(|i| self.summand(i)).collect())
    }

    /// `k·M − (−mF − G)`; zero exactly when `M^k = O_P(−mF − G)`.
    pub fn mk_residual(&self, line_bundle: &PBundleClass<S>) -> PBundleClass<S> {
        let target = BranchDivisor {
            f: -(self.m as i64),
            g: -1,
        }
        .class(self.p, &self.polarization());
        line_bundle.scale(&int(self.k as i64)).sub(&target).expect("same level")
    }

    pub fn verify_mk_relation(&self) -> Result<(), PBundleClass<S>> {
        let r = self.mk_residual(&self.line_bundle());
        if r.is_zero() {
            Ok(())
        } else {
            Err(r)
        }
    }
}

/// Least `m ≥ 1` with `k | p + m`.
pub fn least_m(p: u64, k: u64) -> u64 {
    let r = (k - p % k) % k;
    if r == 0 {
        k
    } else {
        r
    }
}

/// `K_P ~ −2F + π*(K + kD')` for `E` an extension of `O_X(kD')` by `O_X`.
pub fn canonical_of_p<S: ExactScalar>(
    k_x: &TowerClass<S>,
    k: u64,
    d_prime: &TowerClass<S>,
) -> Result<PBundleClass<S>, DivClassError> {
    Ok(PBundleClass::new(int(-2), k_x.add(&d_prime.scale(&int(k as i64)))?))
}

/// Applies `π*O_P = O_X` and `π*O_P(−i) = 0` for `i > 0` to each summand,
/// returning the surviving classes on `X`.
pub fn pushforward_structure<S: ExactScalar>(summands: &[PBundleClass<S>]) -> Result<Vec<TowerClass<S>>, CoverError> {
    let mut out = Vec::new();
    for (index, s) in summands.iter().enumerate() {
        if s.a.is_positive() {
            return Err(CoverError::PositiveTwist {
                index,
                a: s.a.to_canonical(),
            });
        }
        if s.a.is_zero() {
            out.push(s.base.clone());
        }
    }
    Ok(out)
}

/// `K̃` of the coprime cyclic cover computed by the ramification formula
/// `K̃ = φ*K_P + (k−1)(F̃ + G̃)` with `φ*F = kF̃` and `G̃ ~ pF̃ − pf*D'`.
pub fn ramified_canonical_i<S: ExactScalar>(
    p: u64,
    k: u64,
    k_x: &TowerClass<S>,
    d_prime: &TowerClass<S>,
) -> Result<TowerClass<S>, DivClassError> {
    let level = k_x.level() + 1;
    let f_tilde = TowerClass::section_unit(level, level);
    let g_tilde = f_tilde.combine(&int(p as i64), &d_prime.pullback(), &int(-(p as i64)))?;
    let pulled = canonical_of_p(k_x, k, d_prime)?.pull_to_cover(&int(k as i64));
    pulled.add(&f_tilde.add(&g_tilde)?.scale(&int(k as i64 - 1)))
}

/// `K̃` for construction II (`k = pˡr`), from
/// `K̃ = φ*K_P + (k−1)G̃ + (k/p − 1)F̃` with `φ*F = (k/p)F̃` and
/// `G̃ ~ F̃ − pf*D'`.
pub fn ramified_canonical_ii<S: ExactScalar>(
    p: u64,
    k: u64,
    k_x: &TowerClass<S>,
    d_prime: &TowerClass<S>,
) -> Result<TowerClass<S>, DivClassError> {
    let level = k_x.level() + 1;
    let f_tilde = TowerClass::section_unit(level, level);
    let k_over_p = S::ratio(k as i64, p as i64);
    let g_tilde = f_tilde.combine(&S::one(), &d_prime.pullback(), &int(-(p as i64)))?;
    let pulled = canonical_of_p(k_x, k, d_prime)?.pull_to_cover(&k_over_p);
    pulled
        .add(&g_tilde.scale(&int(k as i64 - 1)))?
        .add(&f_tilde.scale(&(k_over_p - S::one())))
}
