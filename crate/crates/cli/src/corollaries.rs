use std::fmt::Write as _;

use tango_core::cysearch::{run_all, Bounds, CorollaryRun, Verdict};

use crate::{CliError, CorollaryArgs, Report};

pub(crate) fn verify(args: &CorollaryArgs) -> Result<Report<CorollaryRun>, CliError> {
    if args.p_max < 2 || args.k_max < 1 || args.l_max < 1 || args.r_max < 1 {
        return Err(CliError::input(
            "bounds must satisfy p-max >= 2 and k-max, l-max, r-max >= 1",
        ));
    }
    let run = run_all(Bounds {
        p_max: args.p_max,
        k_max: args.k_max,
        l_max: args.l_max,
        r_max: args.r_max,
    });
    if let Some(path) = &args.json {
        let mut s = serde_json::to_string_pretty(&run).expect("certificates serialize");
        s.push('\n');
        std::fs::write(path, s)?;
    }
    let mut text = String::new();
    for (check, cert) in run.checks.iter().zip(&run.certificates) {
        let verdict = match &cert.verdict {
            Verdict::Impossible => "impossible".to_string(),
            Verdict::ConditionallyPossible { conditions } => {
                format!("conditionally possible: {}", conditions.join("; "))
            }
            Verdict::SolutionsFound { solutions } => format!("{} open solutions", solutions.len()),
        };
        let sols: Vec<String> = cert.solutions.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(
            text,
            "[{}] {}: {} (solutions {})",
            if check.reproduced { "ok" } else { "MISMATCH" },
            check.claim,
            verdict,
            if sols.is_empty() {
                "none".into()
            } else {
                sols.join(", ")
            }
        );
        for p in &check.problems {
            let _ = writeln!(text, "  {p}");
        }
    }
    let n = run.checks.iter().filter(|c| c.reproduced).count();
    let _ = writeln!(text, "{n}/{} reproduced", run.checks.len());
    Ok(Report {
        ok: run.all_reproduced,
        body: run,
        text,
    })
}
