use std::fmt::Write as _;

use serde::Serialize;
use tango_core::curve::{ArtinSchreierCurve, CurveSpec, TangoBounds};

use crate::input::read_json;
use crate::{CliError, CurveArgs, Report};

#[derive(Serialize)]
pub(crate) struct CurveReport {
    curve: CurveSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    realization: Option<String>,
    m: usize,
    genus: u64,
    canonical_degree: i64,
    weight_bound: u64,
    divisors: Vec<DivisorVerdict>,
    tango_invariant: TangoBounds,
}

#[derive(Serialize)]
struct DivisorVerdict {
    d: u64,
    tango: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tango_witness: Option<String>,
    pre_tango: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pre_tango_witness: Option<String>,
    /// `v∞(dη)` of the pre-Tango witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_valuation: Option<i64>,
}

pub(crate) fn analyze(args: &CurveArgs) -> Result<Report<CurveReport>, CliError> {
    let (curve, realization) = match (&args.input, args.raynaud) {
        (_, Some((p, l))) => (
            ArtinSchreierCurve::raynaud_family(p, l).map_err(CliError::input)?,
            Some(format!(
                "external realization y^p - y = x^(lp-1) with p={p}, l={l}; D = {}·P_inf",
                l * (p - 1) - 2
            )),
        ),
        (Some(input), None) => {
            let spec: CurveSpec = read_json(input)?;
            (ArtinSchreierCurve::from_spec(&spec).map_err(CliError::input)?, None)
        }
        (None, None) => return Err(CliError::input("no curve given")),
    };
    let p = curve.p();
    let weight_bound = args.weight_bound.unwrap_or(2 * p * curve.m() as u64);
    let degrees: Vec<u64> = if args.degrees.is_empty() {
        let top = curve.canonical_degree().max(0) as u64 / p + 1;
        (1..=top).collect()
    } else {
        args.degrees.clone()
    };
    let mut divisors = Vec::new();
    for &d in &degrees {
        let tango = curve.is_tango(d).map_err(CliError::input)?;
        let pre = curve.pre_tango_search(d, weight_bound).map_err(CliError::input)?;
        let witness_valuation = match &pre {
            Some(eta) => Some(curve.differential_report(eta).map_err(CliError::input)?.v_infinity),
            None => None,
        };
        divisors.push(DivisorVerdict {
            d,
            tango: tango.is_some(),
            tango_witness: tango.map(|e| e.to_string()),
            pre_tango: pre.is_some(),
            pre_tango_witness: pre.map(|e| e.to_string()),
            witness_valuation,
        });
    }
    let report = CurveReport {
        curve: curve.spec(),
        realization,
        m: curve.m(),
        genus: curve.genus(),
        canonical_degree: curve.canonical_degree(),
        weight_bound,
        divisors,
        tango_invariant: curve.tango_invariant_bounds(weight_bound),
    };
    let text = render_text(&report);
    Ok(Report {
        body: report,
        text,
        ok: true,
    })
}

fn render_text(r: &CurveReport) -> String {
    let mut s = String::new();
    let f: Vec<String> = r.curve.f.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "curve: p = {}, f = [{}] (m = {})", r.curve.p, f.join(","), r.m);
    if let Some(real) = &r.realization {
        let _ = writeln!(s, "realization: {real}");
    }
    let _ = writeln!(s, "genus: {}", r.genus);
    let _ = writeln!(s, "2g-2: {}", r.canonical_degree);
    for d in &r.divisors {
        let _ = writeln!(
            s,
            "d = {}: tango {}{}, pre-tango {}{}",
            d.d,
            d.tango,
            d.tango_witness
                .as_ref()
                .map(|w| format!(" (eta = {w})"))
                .unwrap_or_default(),
            d.pre_tango,
            d.pre_tango_witness
                .as_ref()
                .map(|w| format!(" (eta = {w})"))
                .unwrap_or_default(),
        );
    }
    let t = &r.tango_invariant;
    let _ = writeln!(
        s,
        "tango invariant: {} <= n(C) <= {}{} (weight bound {})",
        t.lower,
        t.upper,
        if t.exact { ", exact" } else { "" },
        r.weight_bound
    );
    s
}
