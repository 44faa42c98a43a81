//! Exhaustive searches for trivial canonical classes in the inductive
//! construction, returned as replayable certificates.
//!
//! Inequalities are compared on degrees measured in units of the relevant
//! `D'`, and ampleness enters only as positivity of degree. The pre-Tango
//! condition `K ≥ pD` is read as `deg K ≥ p·deg D`.

mod searches;

use std::fmt;

use serde::Serialize;

use crate::arith::gcd;
use crate::divclass::DivisionMode;
use crate::scalar::serialize_scalar;
use crate::tower::CanonicalVerdict;
use crate::{Rational, TowerClass, TowerState};

pub use searches::{
    brute_force_construction_ii, brute_force_top_step, construction_ii_search, required_surface_conditions, run_all,
    solve_construction_ii, solve_top_step, surface_k3_search, threefold_cy_search, threefold_k1, Bounds, ClaimCheck,
    CorollaryRun,
};

/// The four reproduced statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// A surface from a coprime cover of a pre-Tango curve is never K3.
    SurfaceNotK3,
    /// A threefold from two coprime covers is never Calabi–Yau.
    ThreefoldNotCalabiYau,
    /// Conditions a surface must meet for one coprime cover to have trivial `K`.
    SurfaceConditions,
    /// Construction II over such a surface never has trivial `K`.
    ConstructionIINotCalabiYau,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::SurfaceNotK3 => "surface_not_k3",
            Claim::ThreefoldNotCalabiYau => "threefold_not_calabi_yau",
            Claim::SurfaceConditions => "surface_conditions",
            Claim::ConstructionIINotCalabiYau => "construction_ii_not_calabi_yau",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRange {
    pub name: &'static str,
    pub min: u64,
    pub max: u64,
}

/// A parameter tuple satisfying the search equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Solution {
    pub p: u64,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.l, self.r) {
            (Some(l), Some(r)) => write!(f, "(l,r,p,k)=({l},{r},{},{})", self.p, self.k),
            _ => write!(f, "(p,k)=({},{})", self.p, self.k),
        }
    }
}

/// One side of an equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Rational(#[serde(serialize_with = "serialize_scalar")] Rational),
    Class(TowerClass),
}

impl Value {
    fn equals(&self, other: &Value) -> Option<bool> {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Some(a == b),
            (Value::Class(a), Value::Class(b)) => a.sub(b).ok().map(|d| d.is_zero()),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReplayStep {
    I { k: u64 },
    Ii { l: u32, r: u64 },
}

/// A tower built from a synthetic base by explicit steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayScript {
    pub p: u64,
    pub dim: usize,
    pub canonical: TowerClass,
    pub polarization: TowerClass,
    pub division: DivisionMode,
    pub steps: Vec<ReplayStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ReplayOutcome {
    Trivial,
    NonTrivial { canonical: TowerClass },
    Rejected { step: usize, reason: String },
}

impl ReplayScript {
    pub fn run(&self) -> ReplayOutcome {
        let mut state =
            match TowerState::hypothetical(self.p, self.dim, self.canonical.clone(), self.polarization.clone()) {
                Ok(s) => s,
                Err(e) => {
                    return ReplayOutcome::Rejected {
                        step: 0,
                        reason: e.to_string(),
                    }
                }
            };
        for (i, step) in self.steps.iter().enumerate() {
            let next = match *step {
                ReplayStep::I { k } => state.step_i(k, self.division),
                ReplayStep::Ii { l, r } => state.step_ii(l, r, self.division),
            };
            state = match next {
                Ok(s) => s,
                Err(e) => {
                    return ReplayOutcome::Rejected {
                        step: i + 1,
                        reason: e.to_string(),
                    }
                }
            };
        }
        match state.classify_canonical().verdict {
            CanonicalVerdict::Trivial => ReplayOutcome::Trivial,
            CanonicalVerdict::NonTrivial => ReplayOutcome::NonTrivial {
                canonical: state.canonical().clone(),
            },
        }
    }
}

/// A re-checkable record. `holds` is the recorded truth value of the stated
/// relation; [`Certificate::replay`] recomputes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStep {
    /// `lhs = rhs`.
    Equation {
        label: String,
        lhs: Value,
        rhs: Value,
        holds: bool,
    },
    /// `lhs ≥ rhs`.
    Inequality {
        label: String,
        #[serde(serialize_with = "serialize_scalar")]
        lhs: Rational,
        #[serde(serialize_with = "serialize_scalar")]
        rhs: Rational,
        holds: bool,
    },
    /// `value ∈ Z`.
    Integrality {
        label: String,
        #[serde(serialize_with = "serialize_scalar")]
        value: Rational,
        holds: bool,
    },
    /// `gcd(a, b) = 1`.
    Coprimality {
        label: String,
        a: u64,
        b: u64,
        gcd: u64,
        holds: bool,
    },
    /// The script's final canonical class is trivial.
    Replay {
        label: String,
        script: ReplayScript,
        result: ReplayOutcome,
        holds: bool,
    },
    /// A free-text remark; carries no truth value.
    Note { label: String },
}

impl TraceStep {
    pub fn equation(label: impl Into<String>, lhs: Value, rhs: Value) -> Self {
        let holds = lhs.equals(&rhs).unwrap_or(false);
        TraceStep::Equation {
            label: label.into(),
            lhs,
            rhs,
            holds,
        }
    }

    pub fn inequality(label: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        TraceStep::Inequality {
            label: label.into(),
            holds: lhs >= rhs,
            lhs,
            rhs,
        }
    }

    pub fn integrality(label: impl Into<String>, value: Rational) -> Self {
        TraceStep::Integrality {
            label: label.into(),
            holds: value.is_integer(),
            value,
        }
    }

    pub fn coprimality(label: impl Into<String>, a: u64, b: u64) -> Self {
        let g = gcd(a, b);
        TraceStep::Coprimality {
            label: label.into(),
            a,
            b,
            gcd: g,
            holds: g == 1,
        }
    }

    pub fn replay(label: impl Into<String>, script: ReplayScript) -> Self {
        let result = script.run();
        TraceStep::Replay {
            label: label.into(),
            holds: result == ReplayOutcome::Trivial,
            script,
            result,
        }
    }

    pub fn note(label: impl Into<String>) -> Self {
        TraceStep::Note { label: label.into() }
    }

    /// The recorded truth value, `None` for notes.
    pub fn holds(&self) -> Option<bool> {
        match self {
            TraceStep::Equation { holds, .. }
            | TraceStep::Inequality { holds, .. }
            | TraceStep::Integrality { holds, .. }
            | TraceStep::Coprimality { holds, .. }
            | TraceStep::Replay { holds, .. } => Some(*holds),
            TraceStep::Note { .. } => None,
        }
    }

    /// Recomputes the step from its recorded inputs.
    pub fn recheck(&self) -> Result<(), String> {
        let fresh = match self {
            TraceStep::Equation { label, lhs, rhs, .. } => {
                if lhs.equals(rhs).is_none() {
                    return Err(format!("{label}: sides are not comparable"));
                }
                TraceStep::equation(label.clone(), lhs.clone(), rhs.clone())
            }
            TraceStep::Inequality { label, lhs, rhs, .. } => {
                TraceStep::inequality(label.clone(), lhs.clone(), rhs.clone())
            }
            TraceStep::Integrality { label, value, .. } => TraceStep::integrality(label.clone(), value.clone()),
            TraceStep::Coprimality { label, a, b, .. } => TraceStep::coprimality(label.clone(), *a, *b),
            TraceStep::Replay { label, script, .. } => TraceStep::replay(label.clone(), script.clone()),
            TraceStep::Note { .. } => return Ok(()),
        };
        if &fresh == self {
            Ok(())
        } else {
            Err(format!("step does not replay: recorded {self:?}, recomputed {fresh:?}"))
        }
    }
}

/// The trace of one solution: how it is derived and where it breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub solution: Solution,
    pub steps: Vec<TraceStep>,
}

impl Branch {
    /// Whether some recorded relation fails.
    pub fn contradicted(&self) -> bool {
        self.steps.iter().any(|s| s.holds() == Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Impossible,
    ConditionallyPossible { conditions: Vec<String> },
    SolutionsFound { solutions: Vec<Solution> },
}

/// Agreement between the closed-form solve and a direct scan of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub algebraic: Vec<Solution>,
    pub brute_force: Vec<Solution>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub claim: Claim,
    pub ranges: Vec<SearchRange>,
    pub equation: String,
    pub solutions: Vec<Solution>,
    pub cross_check: Option<CrossCheck>,
    pub branches: Vec<Branch>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl Certificate {
    /// Verdict implied by the branches: impossible when every solution is
    /// contradicted, otherwise the surviving solutions.
    pub(crate) fn verdict_from_branches(branches: &[Branch]) -> Verdict {
        let open: Vec<Solution> = branches
            .iter()
            .filter(|b| !b.contradicted())
            .map(|b| b.solution.clone())
            .collect();
        if open.is_empty() {
            Verdict::Impossible
        } else {
            Verdict::SolutionsFound { solutions: open }
        }
    }

    /// Re-verifies every trace step and the consistency of the verdict.
    pub fn replay(&self) -> Result<(), String> {
        for b in &self.branches {
            for s in &b.steps {
                s.recheck().map_err(|e| format!("{}: {e}", b.solution))?;
            }
        }
        if let Some(cc) = &self.cross_check {
            if cc.agree != (cc.algebraic == cc.brute_force) {
                return Err("cross-check flag disagrees with its solution lists".into());
            }
            if cc.algebraic != self.solutions {
                return Err("solution list differs from the algebraic solve".into());
            }
        }
        let listed: Vec<&Solution> = self.branches.iter().map(|b| &b.solution).collect();
        if listed != self.solutions.iter().collect::<Vec<_>>() {
            return Err("branches do not cover the solution list".into());
        }
        match &self.verdict {
            Verdict::Impossible => {
                if let Some(b) = self.branches.iter().find(|b| !b.contradicted()) {
                    return Err(format!("{} has no violated step", b.solution));
                }
                if self.cross_check.as_ref().is_some_and(|c| !c.agree) {
                    return Err("impossibility over an unconfirmed solution set".into());
                }
            }
            Verdict::SolutionsFound { .. } => {
                if self.verdict != Self::verdict_from_branches(&self.branches) {
                    return Err("listed surviving solutions differ from the branches".into());
                }
            }
            Verdict::ConditionallyPossible { .. } => {
                if self.branches.iter().any(|b| b.contradicted()) {
                    return Err("a required condition fails its replay".into());
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn q_ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
