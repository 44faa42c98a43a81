use std::fmt::Write as _;

use serde::Serialize;
use tango_core::cover::{g_class, least_m, pushforward_structure, CyclicCover};
use tango_core::{PBundleClass, SummandList, TowerClass};

use crate::{CliError, CoverArgs, Report};

#[derive(Serialize)]
pub(crate) struct CoverReport {
    p: u64,
    k: u64,
    m: u64,
    /// `D'` is the unit class on the base; `D = kD'`.
    d_prime: TowerClass,
    g_class: PBundleClass,
    line_bundle: PBundleClass,
    summands: SummandList,
    mk_relation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mk_residual: Option<PBundleClass>,
    pushforward: Vec<TowerClass>,
    structure_sheaf_only: bool,
}

pub(crate) fn check(args: &CoverArgs) -> Result<Report<CoverReport>, CliError> {
    if args.k == 0 {
        return Err(CliError::input("k must be positive"));
    }
    let m = args.m.unwrap_or_else(|| least_m(args.p, args.k));
    let d_prime = TowerClass::base_unit(0);
    let cover = CyclicCover::new(args.p, args.k, m, d_prime.clone()).map_err(CliError::input)?;
    let summands = cover.summands();
    let pushforward = pushforward_structure(summands.as_slice()).map_err(CliError::input)?;
    let residual = cover.verify_mk_relation().err();
    let report = CoverReport {
        p: args.p,
        k: args.k,
        m,
        g_class: g_class(args.p, &cover.polarization()),
        line_bundle: cover.line_bundle(),
        mk_relation: residual.is_none(),
        mk_residual: residual,
        structure_sheaf_only: pushforward.len() == 1 && pushforward[0].is_zero(),
        pushforward,
        summands,
        d_prime,
    };
    let mut text = String::new();
    let _ = writeln!(text, "p = {}, k = {}, m = {}", report.p, report.k, report.m);
    let _ = writeln!(
        text,
        "M = {}F + pi*({})",
        report.line_bundle.a,
        report.line_bundle.base.render()
    );
    for (i, s) in report.summands.as_slice().iter().enumerate() {
        let _ = writeln!(text, "summand {i}: {}F + pi*({})", s.a, s.base.render());
    }
    let _ = writeln!(text, "M^k relation: {}", report.mk_relation);
    let _ = writeln!(
        text,
        "pushforward: {}",
        if report.structure_sheaf_only {
            "structure sheaf only"
        } else {
            "extra summands survive"
        }
    );
    Ok(Report {
        ok: report.mk_relation,
        body: report,
        text,
    })
}
