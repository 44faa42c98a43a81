//! Divisor classes on a tower of cyclic covers.
//!
//! After `n` cover steps over a base curve, the classes tracked here live in
//! the lattice
//!
//! ```text
//!   Q·E  ⊕  Q·D'₁  ⊕  Q·F̃₁ ⊕ … ⊕ Q·F̃ₙ
//! ```
//!
//! where `D'₁` is the degree-normalized generator on the base curve, `F̃ᵢ` is
//! the reduced preimage of the canonical section introduced at step `i`, and
//! `E` is a formal effective symbol standing for the excess `(dη) − pD` of a
//! pre-Tango justification. Each step splits the Picard group as
//! `Z·F̃ ⊕ f*Pic`, so pulling back a class just appends a zero `F̃` coordinate.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::ExactScalar;

/// A coordinate of a [`TowerClass`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coordinate {
    /// The effective slack symbol `E`.
    Slack,
    /// The base generator `D'₁`.
    Base,
    /// `F̃ᵢ`, numbered from 1.
    Section(usize),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Slack => write!(f, "e"),
            Coordinate::Base => write!(f, "d"),
            Coordinate::Section(i) => write!(f, "f[{i}]"),
        }
    }
}

impl Serialize for Coordinate {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivClassError {
    #[error("level mismatch: left class has level {left}, right class has level {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error(transparent)]
    Division(#[from] DivisionFailure),
}

/// `D = kD'` has no integral solution in the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{coordinate}-coefficient {value} is not an integer divisible by {divisor}")]
pub struct DivisionFailure {
    pub coordinate: Coordinate,
    pub value: String,
    pub divisor: u64,
}

/// How [`TowerClass::divide_exact`] treats non-integral quotients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisionMode {
    /// Every coefficient must be an integer divisible by `k`.
    #[default]
    Integral,
    /// Divide unconditionally over Q.
    Rational,
}

/// Coordinates of a divisor class after `level` cover steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerClass<S> {
    e: S,
    d: S,
    f: Vec<S>,
}

impl<S: ExactScalar> TowerClass<S> {
    /// Builds a class; the level is `f.len()`.
    pub fn new(e: S, d: S, f: Vec<S>) -> Self {
        TowerClass { e, d, f }
    }

    pub fn zero(level: usize) -> Self {
        TowerClass {
            e: S::zero(),
            d: S::zero(),
            f: vec![S::zero(); level],
        }
    }

    /// `d·D'₁ + e·E` at level 0.
    pub fn base(e: S, d: S) -> Self {
        TowerClass { e, d, f: Vec::new() }
    }

    /// The base generator `D'₁` pulled up to `level`.
    pub fn base_unit(level: usize) -> Self {
        let mut c = Self::zero(level);
        c.d = S::one();
        c
    }

    /// The slack symbol `E` at `level`.
    pub fn slack_unit(level: usize) -> Self {
        let mut c = Self::zero(level);
        c.e = S::one();
        c
    }

    /// `F̃ᵢ` (1-based) at `level`. Panics unless `1 <= i <= level`.
    pub fn section_unit(level: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= level, "section index {i} outside 1..={level}");
        let mut c = Self::zero(level);
        c.f[i - 1] = S::one();
        c
    }

    pub fn level(&self) -> usize {
        self.f.len()
    }

    pub fn e_coeff(&self) -> &S {
        &self.e
    }

    pub fn d_coeff(&self) -> &S {
        &self.d
    }

    pub fn f_coeffs(&self) -> &[S] {
        &self.f
    }

    /// Coefficient of the newest `F̃`, if any.
    pub fn top_section_coeff(&self) -> Option<&S> {
        self.f.last()
    }

    pub fn coeff(&self, c: Coordinate) -> Option<&S> {
        match c {
            Coordinate::Slack => Some(&self.e),
            Coordinate::Base => Some(&self.d),
            Coordinate::Section(i) if i >= 1 => self.f.get(i - 1),
            Coordinate::Section(_) => None,
        }
    }

    /// All coordinates in `e, d, f[1..]` order.
    pub fn coordinates(&self) -> impl Iterator<Item = (Coordinate, &S)> {
        [(Coordinate::Slack, &self.e), (Coordinate::Base, &self.d)]
            .into_iter()
            .chain(self.f.iter().enumerate().map(|(i, v)| (Coordinate::Section(i + 1), v)))
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().all(|(_, v)| v.is_zero())
    }

    fn check_level(&self, other: &Self) -> Result<(), DivClassError> {
        if self.level() == other.level() {
            Ok(())
        } else {
            Err(DivClassError::LevelMismatch {
                left: self.level(),
                right: other.level(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, DivClassError> {
        self.check_level(other)?;
        Ok(TowerClass {
            e: self.e.clone() + other.e.clone(),
            d: self.d.clone() + other.d.clone(),
            f: self
                .f
                .iter()
                .zip(&other.f)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DivClassError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, q: &S) -> Self {
        TowerClass {
            e: q.clone() * self.e.clone(),
            d: q.clone() * self.d.clone(),
            f: self.f.iter().map(|v| q.clone() * v.clone()).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Result<Self, DivClassError> {
        self.scale(a).add(&other.scale(b))
    }

    /// Pullback along one more cover step: the new `F̃` coordinate is zero.
    pub fn pullback(&self) -> Self {
        let mut f = self.f.clone();
        f.push(S::zero());
        TowerClass {
            e: self.e.clone(),
            d: self.d.clone(),
            f,
        }
    }

    /// Solves `self = k·D'` for `D'`.
    pub fn divide_exact(&self, k: u64, mode: DivisionMode) -> Result<Self, DivisionFailure> {
        assert!(k >= 1, "divide_exact needs k >= 1");
        if mode == DivisionMode::Integral {
            if let Some((coordinate, value)) = self.coordinates().find(|(_, v)| !v.divisible_by(k)) {
                return Err(DivisionFailure {
                    coordinate,
                    value: value.to_canonical(),
                    divisor: k,
                });
            }
        }
        let k = i64::try_from(k).expect("division factor fits in i64");
        Ok(self.scale(&S::ratio(1, k)))
    }

    pub fn is_trivial(&self) -> TrivialityReport {
        let witnesses: Vec<Witness> = self
            .coordinates()
            .filter(|(_, v)| !v.is_zero())
            .map(|(coordinate, v)| Witness {
                coordinate,
                value: v.to_canonical(),
            })
            .collect();
        TrivialityReport {
            trivial: witnesses.is_empty(),
            slack_obstruction: !self.e.is_zero(),
            witnesses,
        }
    }

    /// `e·E + d·D'₁ + Σ fᵢ·F̃ᵢ`, skipping zero terms.
    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for (c, v) in self.coordinates() {
            if v.is_zero() {
                continue;
            }
            let sym = match c {
                Coordinate::Slack => "E".to_string(),
                Coordinate::Base => "D'".to_string(),
                Coordinate::Section(i) => format!("F~{i}"),
            };
            terms.push(format!("{}*{sym}", v.to_canonical()));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// One nonzero coordinate of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coordinate: Coordinate,
    pub value: String,
}

/// Outcome of [`TowerClass::is_trivial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub trivial: bool,
    pub witnesses: Vec<Witness>,
    /// The slack coordinate is nonzero. Triviality would then also need the
    /// effective symbol `E` to be numerically trivial, which a strict
    /// pre-Tango excess never is.
    pub slack_obstruction: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerClassWire {
    level: usize,
    e: String,
    d: String,
    f: Vec<String>,
}

impl<S: ExactScalar> Serialize for TowerClass<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        TowerClassWire {
            level: self.level(),
            e: self.e.to_canonical(),
            d: self.d.to_canonical(),
            f: self.f.iter().map(|v| v.to_canonical()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: ExactScalar> Deserialize<'de> for TowerClass<S> {
    fn deserialize<De: Deserializer<'de>>(de: De) -> Result<Self, De::Error> {
        let wire = TowerClassWire::deserialize(de)?;
        if wire.f.len() != wire.level {
            return Err(De::Error::custom(format!(
                "class declares level {} but has {} f-coefficients",
                wire.level,
                wire.f.len()
            )));
        }
        let parse = |s: &str| S::parse_canonical(s).ok_or_else(|| De::Error::custom(format!("bad rational {s:?}")));
        Ok(TowerClass {
            e: parse(&wire.e)?,
            d: parse(&wire.d)?,
            f: wire.f.iter().map(|s| parse(s)).collect::<Result<_, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_rational::BigRational;

    type Q = BigRational;
    type C = TowerClass<Q>;

    fn cls(e: i64, d: i64, f: &[i64]) -> C {
        C::new(int(e), int(d), f.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn add_componentwise() {
        let a = cls(0, 2, &[1]);
        let b = cls(0, 3, &[-1]);
        assert_eq!(a.add(&b).unwrap(), cls(0, 5, &[0]));
        assert_eq!(a.add(&C::zero(1)).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_level_mismatch() {
        let err = cls(0, 1, &[]).add(&cls(0, 1, &[0, 0])).unwrap_err();
        assert_eq!(err, DivClassError::LevelMismatch { left: 0, right: 2 });
        assert!(err.to_string().contains("level 0") && err.to_string().contains("level 2"));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(cls(0, 2, &[1]).scale(&int(3)), cls(0, 6, &[3]));
        let half = cls(0, 7, &[5]).scale(&Q::ratio(1, 2));
        assert_eq!(half.d_coeff(), &Q::ratio(7, 2));
        assert_eq!(half.f_coeffs()[0], Q::ratio(5, 2));
        assert!(cls(3, 4, &[5, 6]).scale(&int(0)).is_zero());
    }

    #[test]
    fn pullback_appends_zero_section() {
        let c = cls(0, 5, &[]);
        let up = c.pullback();
        assert_eq!(up, cls(0, 5, &[0]));
        assert_eq!(C::zero(2).pullback(), C::zero(3));
    }

    #[test]
    fn divide_exact_examples() {
        let m = DivisionMode::Integral;
        assert_eq!(cls(0, 6, &[]).divide_exact(3, m).unwrap(), cls(0, 2, &[]));
        let err = cls(0, 2, &[]).divide_exact(4, m).unwrap_err();
        assert_eq!(err.coordinate, Coordinate::Base);
        assert_eq!(err.value, "2");
        assert_eq!(cls(0, 2, &[4]).divide_exact(2, m).unwrap(), cls(0, 1, &[2]));
        let q = cls(0, 2, &[]).divide_exact(4, DivisionMode::Rational).unwrap();
        assert_eq!(q.d_coeff(), &Q::ratio(1, 2));
    }

    #[test]
    fn division_failure_names_first_bad_coordinate() {
        let err = cls(2, 4, &[4, 3]).divide_exact(2, DivisionMode::Integral).unwrap_err();
        assert_eq!(err.coordinate, Coordinate::Section(2));
        let err = C::new(Q::ratio(1, 2), int(0), vec![])
            .divide_exact(1, DivisionMode::Integral)
            .unwrap_err();
        assert_eq!(err.coordinate, Coordinate::Slack);
    }

    #[test]
    fn triviality_reports_witnesses() {
        assert!(C::zero(3).is_trivial().trivial);
        let r = cls(0, 1, &[0]).is_trivial();
        assert!(!r.trivial);
        assert_eq!(
            r.witnesses,
            vec![Witness {
                coordinate: Coordinate::Base,
                value: "1".into()
            }]
        );
        assert!(!r.slack_obstruction);
        assert!(cls(2, 0, &[]).is_trivial().slack_obstruction);
    }

    #[test]
    fn json_shape() {
        let c = C::new(int(0), Q::ratio(7, 2), vec![Q::ratio(-2, 4)]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"level":1,"e":"0","d":"7/2","f":["-1/2"]}"#);
        let back: C = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(serde_json::from_str::<C>(r#"{"level":2,"e":"0","d":"1","f":["1"]}"#).is_err());
        assert!(serde_json::from_str::<C>(r#"{"level":0,"e":"0","d":"1/0","f":[]}"#).is_err());
        assert!(serde_json::from_str::<C>(r#"{"level":0,"e":"0","d":"1","f":[],"x":1}"#).is_err());
    }

    #[test]
    fn render_skips_zeros() {
        assert_eq!(cls(0, 5, &[0]).render(), "5*D'");
        assert_eq!(C::zero(1).render(), "0");
        assert_eq!(cls(1, 0, &[2]).render(), "1*E + 2*F~1");
    }
}
