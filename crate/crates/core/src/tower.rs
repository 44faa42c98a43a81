//! Inductive cover steps on polarized varieties.
//!
//! A [`TowerState`] records the canonical class `K`, the polarization `D` and
//! (when known) the class of the justification differential `(dη)` of a
//! variety obtained from a base curve by repeated cyclic covers of
//! `P¹`-bundles. [`TowerState::step_i`] is the coprime construction,
//! [`TowerState::step_ii`] the variant with `k = pˡ·r`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{checked_pow, gcd, is_prime};
use crate::divclass::{DivClassError, DivisionFailure, DivisionMode, TowerClass, TrivialityReport};
use crate::scalar::{int, serialize_scalar, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("k1 = {k1} does not divide deg D = {deg_d}")]
    DegreeNotDivisible { deg_d: u64, k1: u64 },
    #[error("gcd(p, {name}) = gcd({p}, {value}) = {gcd}; the cover degree must satisfy (p,{name})=1")]
    NotCoprime {
        p: u64,
        name: &'static str,
        value: u64,
        gcd: u64,
    },
    #[error("cover degree k = {0} must be at least 2")]
    DegreeTooSmall(u64),
    #[error("p-exponent l must be at least 1")]
    ZeroExponent,
    #[error("D = {k}D' has no solution: {source}")]
    Division {
        k: u64,
        #[source]
        source: DivisionFailure,
    },
    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("polarization surrogate violated: {0}")]
    Polarization(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Class(#[from] DivClassError),
}

/// What the justification is known to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    /// `(dη) = pD`.
    Tango,
    /// `(dη) ≥ pD`.
    PreTango,
    /// A synthetic state supplied by hand; no justification is claimed.
    Hypothetical,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Tango => "Tango",
            Structure::PreTango => "pre-Tango",
            Structure::Hypothetical => "hypothetical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    I,
    II,
}

/// Provenance of one cover step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct StepRecord<S: ExactScalar> {
    pub kind: StepKind,
    pub k: u64,
    /// `ℓ` in `k = pˡ·r` (construction II only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    /// `r` in `k = pˡ·r` (construction II only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    pub division: DivisionMode,
    /// The `D'` with `D = kD'`, on the variety before the step.
    pub d_prime: TowerClass<S>,
    /// Coefficient of the new `F̃` in `K̃`.
    #[serde(serialize_with = "serialize_scalar")]
    pub section_coeff: S,
    /// `c` in `K̃ = (…)F̃ + f*(K + c·D')`.
    #[serde(serialize_with = "serialize_scalar")]
    pub base_shift: S,
    /// Class of `G̃` after the step.
    pub g_tilde: TowerClass<S>,
    /// The canonical-class formula with this step's numbers substituted.
    pub formula: String,
}

/// `pk − p − k − 1`, the `F̃`-coefficient of `K̃` for a coprime step.
pub fn step_i_section_coeff(p: u64, k: u64) -> Option<i64> {
    let (p, k) = (i64::try_from(p).ok()?, i64::try_from(k).ok()?);
    p.checked_mul(k)?.checked_sub(p)?.checked_sub(k)?.checked_sub(1)
}

/// `pk − p − k`; the coprime step subtracts this multiple of `D'` from `K`.
pub fn step_i_base_shift(p: u64, k: u64) -> Option<i64> {
    step_i_section_coeff(p, k)?.checked_add(1)
}

/// `pˡr − pˡ⁻¹r − 2`, the `F̃`-coefficient of `K̃` in construction II.
pub fn step_ii_section_coeff(p: u64, l: u32, r: u64) -> Option<i64> {
    let k = i64::try_from(checked_pow(p, l)?.checked_mul(r)?).ok()?;
    let k_over_p = i64::try_from(checked_pow(p, l.checked_sub(1)?)?.checked_mul(r)?).ok()?;
    k.checked_sub(k_over_p)?.checked_sub(2)
}

/// `pˡr − p(pˡr − 1)`, added to `K` as a multiple of `D'` in construction II.
pub fn step_ii_base_shift(p: u64, l: u32, r: u64) -> Option<i64> {
    let k = i64::try_from(checked_pow(p, l)?.checked_mul(r)?).ok()?;
    let p = i64::try_from(p).ok()?;
    k.checked_sub(p.checked_mul(k.checked_sub(1)?)?)
}

/// A polarized variety in the inductive construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct TowerState<S: ExactScalar> {
    p: u64,
    base_dim: usize,
    /// Degree of `D'₁` when the base is a curve.
    #[serde(skip_serializing_if = "Option::is_none")]
    base_unit_degree: Option<u64>,
    canonical: TowerClass<S>,
    polarization: TowerClass<S>,
    /// Class of `(dη)` for the current justification, if one is tracked.
    justification: Option<TowerClass<S>>,
    structure: Structure,
    steps: Vec<StepRecord<S>>,
}

impl<S: ExactScalar> TowerState<S> {
    /// A Tango curve with `deg D = deg_d`, written `D = k1·D'₁`.
    ///
    /// On a curve the justification differential is a canonical divisor, so
    /// `(dη) = pD` gives `K = p·D` exactly.
    pub fn tango_base(p: u64, deg_d: u64, k1: u64) -> Result<Self, TowerError> {
        Self::curve_base(p, deg_d, k1, 0, Structure::Tango)
    }

    /// A pre-Tango curve whose justification exceeds `pD` by `slack·E`.
    pub fn pre_tango_base(p: u64, deg_d: u64, k1: u64, slack: u64) -> Result<Self, TowerError> {
        Self::curve_base(p, deg_d, k1, slack, Structure::PreTango)
    }

    fn curve_base(p: u64, deg_d: u64, k1: u64, slack: u64, structure: Structure) -> Result<Self, TowerError> {
        if !is_prime(p) {
            return Err(TowerError::NotPrime(p));
        }
        let g = gcd(p, k1);
        if g != 1 {
            return Err(TowerError::NotCoprime {
                p,
                name: "k1",
                value: k1,
                gcd: g,
            });
        }
        if k1 == 0 || deg_d == 0 || !deg_d.is_multiple_of(k1) {
            return Err(TowerError::DegreeNotDivisible { deg_d, k1 });
        }
        let k1_s: S = int(i64::try_from(k1).map_err(|_| TowerError::Overflow("k1"))?);
        let p_s: S = int(i64::try_from(p).map_err(|_| TowerError::Overflow("p"))?);
        let slack_s: S = int(i64::try_from(slack).map_err(|_| TowerError::Overflow("slack"))?);
        let polarization = TowerClass::base(S::zero(), k1_s);
        let canonical = polarization
            .scale(&p_s)
            .add(&TowerClass::slack_unit(0).scale(&slack_s))?;
        Ok(TowerState {
            p,
            base_dim: 1,
            base_unit_degree: Some(deg_d / k1),
            justification: Some(canonical.clone()),
            canonical,
            polarization,
            structure,
            steps: Vec::new(),
        })
    }

    /// A synthetic polarized variety of dimension `dim` given by its classes
    /// at level 0, e.g. a surface with `K = D'` and `D = kD'`.
    pub fn hypothetical(
        p: u64,
        dim: usize,
        canonical: TowerClass<S>,
        polarization: TowerClass<S>,
    ) -> Result<Self, TowerError> {
        if !is_prime(p) {
            return Err(TowerError::NotPrime(p));
        }
        if dim == 0 {
            return Err(TowerError::ZeroDimension);
        }
        if canonical.level() != 0 || polarization.level() != 0 {
            return Err(DivClassError::LevelMismatch {
                left: canonical.level(),
                right: polarization.level(),
            }
            .into());
        }
        let s = TowerState {
            p,
            base_dim: dim,
            base_unit_degree: None,
            canonical,
            polarization,
            justification: None,
            structure: Structure::Hypothetical,
            steps: Vec::new(),
        };
        s.check_polarization()?;
        Ok(s)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.steps.len()
    }

    pub fn base_unit_degree(&self) -> Option<u64> {
        self.base_unit_degree
    }

    pub fn canonical(&self) -> &TowerClass<S> {
        &self.canonical
    }

    pub fn polarization(&self) -> &TowerClass<S> {
        &self.polarization
    }

    pub fn justification(&self) -> Option<&TowerClass<S>> {
        self.justification.as_ref()
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn steps(&self) -> &[StepRecord<S>] {
        &self.steps
    }

    fn p_scalar(&self) -> S {
        int(self.p as i64)
    }

    /// `(dη) − pD`, the excess of the justification over `pD`.
    pub fn slack(&self) -> Option<TowerClass<S>> {
        let j = self.justification.as_ref()?;
        Some(
            j.sub(&self.polarization.scale(&self.p_scalar()))
                .expect("justification and polarization share a level"),
        )
    }

    /// Degree of a level-0 class on the base curve (the slack symbol is
    /// excluded; it is interpreted separately as an effective divisor).
    pub fn base_degree(&self, c: &TowerClass<S>) -> Option<S> {
        let unit = self.base_unit_degree?;
        (c.level() == 0).then(|| c.d_coeff().clone() * int::<S>(unit as i64))
    }

    /// The ampleness surrogate: `d > 0` and every `F̃` coefficient `≥ 0`.
    /// This is bookkeeping only; ampleness itself is not decided here.
    pub fn check_polarization(&self) -> Result<(), TowerError> {
        let d = &self.polarization;
        if !d.d_coeff().is_positive() {
            return Err(TowerError::Polarization(format!(
                "d-coefficient {} is not positive",
                d.d_coeff()
            )));
        }
        if let Some(neg) = d.f_coeffs().iter().find(|v| v.is_negative()) {
            return Err(TowerError::Polarization(format!(
                "section coefficient {neg} is negative"
            )));
        }
        Ok(())
    }

    /// Every structural invariant of the state, as a list of violations.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let level = self.steps.len();
        if self.canonical.level() != level || self.polarization.level() != level {
            out.push(format!(
                "class levels ({}, {}) differ from step count {level}",
                self.canonical.level(),
                self.polarization.level()
            ));
        }
        if let Err(e) = self.check_polarization() {
            out.push(e.to_string());
        }
        match (self.structure, self.slack()) {
            (Structure::Tango, Some(slack)) if !slack.is_zero() => {
                out.push(format!("Tango state has nonzero slack {}", slack.render()))
            }
            (Structure::Tango, None) => out.push("Tango state without justification".into()),
            (Structure::PreTango, Some(slack)) if slack.e_coeff().is_negative() => {
                out.push("pre-Tango slack has negative E coefficient".into())
            }
            _ => {}
        }
        if self.structure == Structure::Tango && level == 0 {
            let pd = self.polarization.scale(&self.p_scalar());
            if self.canonical != pd {
                out.push("Tango curve does not satisfy K = pD".into());
            }
        }
        out
    }

    fn divide_polarization(&self, k: u64, mode: DivisionMode) -> Result<TowerClass<S>, TowerError> {
        self.polarization
            .divide_exact(k, mode)
            .map_err(|source| TowerError::Division { k, source })
    }

    /// The coprime cyclic cover step of degree `k`.
    ///
    /// `K̃ = (pk−p−k−1)F̃ + f*(K − (pk−p−k)D')` and `D̃ = (k−1)F̃ + f*D'`. The
    /// justification `η̃ = R^{1/k}` satisfies `(dη̃) = pD̃ + f*((dη) − pD)`, so
    /// Tango states stay Tango.
    pub fn step_i(&self, k: u64, mode: DivisionMode) -> Result<Self, TowerError> {
        if k < 2 {
            return Err(TowerError::DegreeTooSmall(k));
        }
        let g = gcd(self.p, k);
        if g != 1 {
            return Err(TowerError::NotCoprime {
                p: self.p,
                name: "k",
                value: k,
                gcd: g,
            });
        }
        let d_prime = self.divide_polarization(k, mode)?;
        let a = step_i_section_coeff(self.p, k).ok_or(TowerError::Overflow("pk-p-k-1"))?;
        let shift = -step_i_base_shift(self.p, k).ok_or(TowerError::Overflow("pk-p-k"))?;
        let level = self.steps.len() + 1;
        let f_new = TowerClass::section_unit(level, level);
        let k_s: S = int(k as i64);
        let p_s = self.p_scalar();

        let canonical = f_new
            .scale(&int(a))
            .add(&self.canonical.combine(&S::one(), &d_prime, &int(shift))?.pullback())?;
        let polarization = f_new.scale(&(k_s - S::one())).add(&d_prime.pullback())?;
        let justification = match &self.slack() {
            Some(slack) => Some(polarization.scale(&p_s).add(&slack.pullback())?),
            None => None,
        };
        let g_tilde = f_new.combine(&p_s, &d_prime.pullback(), &-p_s.clone())?;
        let formula = format!(
            "K~ = (pk-p-k-1)F~ + f*(K - (pk-p-k)D') with p={}, k={k}: {a}*F~ + f*(K {} {}*D')",
            self.p,
            if shift < 0 { "-" } else { "+" },
            shift.abs()
        );
        let record = StepRecord {
            kind: StepKind::I,
            k,
            l: None,
            r: None,
            division: mode,
            d_prime,
            section_coeff: int(a),
            base_shift: int(shift),
            g_tilde,
            formula,
        };
        let mut steps = self.steps.clone();
        steps.push(record);
        Ok(TowerState {
            p: self.p,
            base_dim: self.base_dim,
            base_unit_degree: self.base_unit_degree,
            canonical,
            polarization,
            justification,
            structure: self.structure,
            steps,
        })
    }

    /// Construction II: normalization of the `P¹`-bundle in `k(P)(R^{1/k})`
    /// with `k = pˡ·r`, `ℓ ≥ 1`, `(p,r)=1`.
    ///
    /// `K̃ = (pˡr − pˡ⁻¹r − 2)F̃ + f*(K + (pˡr − p(pˡr − 1))D')`. No Tango
    /// statement is available for this step: the result is recorded as
    /// pre-Tango without a tracked justification, and the polarization
    /// `(k−1)F̃ + f*D'` is kept only as a bookkeeping surrogate.
    pub fn step_ii(&self, l: u32, r: u64, mode: DivisionMode) -> Result<Self, TowerError> {
        if l == 0 {
            return Err(TowerError::ZeroExponent);
        }
        let g = gcd(self.p, r);
        if r == 0 || g != 1 {
            return Err(TowerError::NotCoprime {
                p: self.p,
                name: "r",
                value: r,
                gcd: g,
            });
        }
        let k = checked_pow(self.p, l)
            .and_then(|q| q.checked_mul(r))
            .ok_or(TowerError::Overflow("p^l r"))?;
        let d_prime = self.divide_polarization(k, mode)?;
        let a = step_ii_section_coeff(self.p, l, r).ok_or(TowerError::Overflow("p^l r - p^(l-1) r - 2"))?;
        let shift = step_ii_base_shift(self.p, l, r).ok_or(TowerError::Overflow("p^l r - p(p^l r - 1)"))?;
        let level = self.steps.len() + 1;
        let f_new = TowerClass::section_unit(level, level);
        let p_s = self.p_scalar();

        let canonical = f_new
            .scale(&int(a))
            .add(&self.canonical.combine(&S::one(), &d_prime, &int(shift))?.pullback())?;
        let polarization = f_new.scale(&int(k as i64 - 1)).add(&d_prime.pullback())?;
        let g_tilde = f_new.combine(&S::one(), &d_prime.pullback(), &-p_s)?;
        let formula = format!(
            "K~ = (p^l r - p^(l-1) r - 2)F~ + f*(K + (p^l r - p(p^l r - 1))D') with p={}, l={l}, r={r}, k={k}: {a}*F~ + f*(K {} {}*D')",
            self.p,
            if shift < 0 { "-" } else { "+" },
            shift.abs()
        );
        let record = StepRecord {
            kind: StepKind::II,
            k,
            l: Some(l),
            r: Some(r),
            division: mode,
            d_prime,
            section_coeff: int(a),
            base_shift: int(shift),
            g_tilde,
            formula,
        };
        let mut steps = self.steps.clone();
        steps.push(record);
        Ok(TowerState {
            p: self.p,
            base_dim: self.base_dim,
            base_unit_degree: self.base_unit_degree,
            canonical,
            polarization,
            justification: None,
            structure: match self.structure {
                Structure::Hypothetical => Structure::Hypothetical,
                _ => Structure::PreTango,
            },
            steps,
        })
    }

    /// Whether `K` is trivial in the tracked lattice, with the step history.
    pub fn classify_canonical(&self) -> Classification<S> {
        let report = self.canonical.is_trivial();
        Classification {
            verdict: if report.trivial {
                CanonicalVerdict::Trivial
            } else {
                CanonicalVerdict::NonTrivial
            },
            report,
            history: self.steps.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CanonicalVerdict {
    Trivial,
    NonTrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Classification<S: ExactScalar> {
    pub verdict: CanonicalVerdict,
    pub report: TrivialityReport,
    pub history: Vec<StepRecord<S>>,
}
