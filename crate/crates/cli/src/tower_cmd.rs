use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tango_core::cover::{pushforward_structure, ramified_canonical_i, ramified_canonical_ii, CyclicCover};
use tango_core::curve::ArtinSchreierCurve;
use tango_core::tower::{Classification, StepKind};
use tango_core::{DivisionMode, Rational, StepRecord, SummandList, TowerClass, TowerState};

use crate::input::read_json;
use crate::{CliError, Report, TowerArgs};

/// `{"p": 3, "base": {...}, "steps": [{"kind": "I", "k": 2}], "division": "integral", "pushforward": false}`
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerScript {
    pub p: u64,
    pub base: BaseSpec,
    #[serde(default)]
    pub steps: Vec<StepSpec>,
    #[serde(default)]
    pub division: DivisionMode,
    /// Report the cover-algebra summands and their pushforward per coprime step.
    #[serde(default)]
    pub pushforward: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSpec {
    /// A Tango curve with `deg D = deg_d`, `D = k1·D'₁`.
    Tango { deg_d: u64, k1: u64 },
    /// A pre-Tango curve with `(dη) = pD + slack·E`.
    PreTango { deg_d: u64, k1: u64, slack: u64 },
    /// The curve `yᵖ − y = x^{ℓp−1}` with its Tango structure, checked on the curve.
    Raynaud { l: u64, k1: u64 },
    /// A synthetic variety given by its classes.
    Hypothetical {
        dim: usize,
        canonical: Box<TowerClass>,
        polarization: Box<TowerClass>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum StepSpec {
    I {
        k: u64,
        #[serde(default)]
        division: Option<DivisionMode>,
    },
    II {
        l: u32,
        r: u64,
        #[serde(default)]
        division: Option<DivisionMode>,
    },
}

#[derive(Serialize)]
pub(crate) struct TowerReport {
    p: u64,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    realization: Option<String>,
    levels: Vec<LevelReport>,
    classification: Classification<Rational>,
}

#[derive(Serialize)]
struct LevelReport {
    level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<StepRecord>,
    structure: String,
    canonical: TowerClass,
    polarization: TowerClass,
    justification: Option<TowerClass>,
    /// The ampleness surrogate and structure invariants; empty when all hold.
    invariant_violations: Vec<String>,
    /// The step's canonical class recomputed by the ramification formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    ramification_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pushforward: Option<PushforwardReport>,
}

#[derive(Serialize)]
struct PushforwardReport {
    m: u64,
    summands: SummandList,
    mk_relation: bool,
    surviving: Vec<TowerClass>,
    structure_sheaf_only: bool,
}

fn base_state(script: &TowerScript) -> Result<(TowerState, Option<String>), CliError> {
    let p = script.p;
    Ok(match &script.base {
        BaseSpec::Tango { deg_d, k1 } => (TowerState::tango_base(p, *deg_d, *k1).map_err(CliError::input)?, None),
        BaseSpec::PreTango { deg_d, k1, slack } => (
            TowerState::pre_tango_base(p, *deg_d, *k1, *slack).map_err(CliError::input)?,
            None,
        ),
        BaseSpec::Raynaud { l, k1 } => {
            let curve = ArtinSchreierCurve::raynaud_family(p, *l).map_err(CliError::input)?;
            let deg_d = l * (p - 1) - 2;
            if curve.is_tango(deg_d).map_err(CliError::input)?.is_none() {
                return Err(CliError::input(format!(
                    "y^{p} - y = x^{} carries no Tango structure of degree {deg_d}",
                    curve.m()
                )));
            }
            (
                TowerState::tango_base(p, deg_d, *k1).map_err(CliError::input)?,
                Some(format!(
                    "base curve y^p - y = x^(lp-1) with p={p}, l={l}, g={}, D = {deg_d}·P_inf, eta = x",
                    curve.genus()
                )),
            )
        }
        BaseSpec::Hypothetical {
            dim,
            canonical,
            polarization,
        } => (
            TowerState::hypothetical(p, *dim, (**canonical).clone(), (**polarization).clone())
                .map_err(CliError::input)?,
            None,
        ),
    })
}

fn level_report(state: &TowerState, prev: Option<&TowerState>, pushforward: bool) -> LevelReport {
    let step = state.steps().last().cloned();
    let (ramification_check, push) = match (prev, &step) {
        (Some(prev), Some(rec)) => {
            let recomputed = match rec.kind {
                StepKind::I => ramified_canonical_i(state.p(), rec.k, prev.canonical(), &rec.d_prime),
                StepKind::II => ramified_canonical_ii(state.p(), rec.k, prev.canonical(), &rec.d_prime),
            };
            let check = recomputed.map(|c| &c == state.canonical()).unwrap_or(false);
            let push = (pushforward && rec.kind == StepKind::I)
                .then(|| CyclicCover::with_least_m(state.p(), rec.k, rec.d_prime.clone()).ok())
                .flatten()
                .map(|cover| {
                    let summands = cover.summands();
                    let surviving = pushforward_structure(summands.as_slice()).unwrap_or_default();
                    PushforwardReport {
                        m: cover.m(),
                        mk_relation: cover.verify_mk_relation().is_ok(),
                        structure_sheaf_only: surviving.len() == 1 && surviving[0].is_zero(),
                        surviving,
                        summands,
                    }
                });
            (Some(check), push)
        }
        _ => (None, None),
    };
    LevelReport {
        level: state.steps().len(),
        step,
        structure: state.structure().to_string(),
        canonical: state.canonical().clone(),
        polarization: state.polarization().clone(),
        justification: state.justification().cloned(),
        invariant_violations: state.invariant_violations(),
        ramification_check,
        pushforward: push,
    }
}

pub(crate) fn build(args: &TowerArgs) -> Result<Report<TowerReport>, CliError> {
    let script: TowerScript = read_json(&args.input)?;
    let (mut state, realization) = base_state(&script)?;
    let mut levels = vec![level_report(&state, None, false)];
    for (i, step) in script.steps.iter().enumerate() {
        let next = match *step {
            StepSpec::I { k, division } => state.step_i(k, division.unwrap_or(script.division)),
            StepSpec::II { l, r, division } => state.step_ii(l, r, division.unwrap_or(script.division)),
        }
        .map_err(|e| CliError::input(format!("step {}: {e}", i + 1)))?;
        levels.push(level_report(&next, Some(&state), script.pushforward));
        state = next;
    }
    let ok = levels.iter().all(|l| l.ramification_check != Some(false));
    let report = TowerReport {
        p: script.p,
        dim: state.dim(),
        realization,
        classification: state.classify_canonical(),
        levels,
    };
    let text = render_text(&report);
    Ok(Report { body: report, text, ok })
}

fn render_text(r: &TowerReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p = {}, final dimension {}", r.p, r.dim);
    if let Some(real) = &r.realization {
        let _ = writeln!(s, "{real}");
    }
    for l in &r.levels {
        let _ = writeln!(s, "level {} ({})", l.level, l.structure);
        if let Some(step) = &l.step {
            let _ = writeln!(s, "  {}", step.formula);
        }
        let _ = writeln!(s, "  K = {}", l.canonical.render());
        let _ = writeln!(s, "  D = {}", l.polarization.render());
        if let Some(j) = &l.justification {
            let _ = writeln!(s, "  (d eta) = {}", j.render());
        }
        if let Some(c) = l.ramification_check {
            let _ = writeln!(s, "  ramification formula agrees: {c}");
        }
        if let Some(p) = &l.pushforward {
            let _ = writeln!(
                s,
                "  cover algebra (m = {}): M^k relation {}, pushforward {}",
                p.m,
                p.mk_relation,
                if p.structure_sheaf_only {
                    "is the structure sheaf"
                } else {
                    "has extra summands"
                }
            );
        }
        for v in &l.invariant_violations {
            let _ = writeln!(s, "  invariant violated: {v}");
        }
    }
    let c = &r.classification;
    let _ = writeln!(s, "canonical class: {:?}", c.verdict);
    for w in &c.report.witnesses {
        let _ = writeln!(s, "  nonzero {} = {}", w.coordinate, w.value);
    }
    s
}
