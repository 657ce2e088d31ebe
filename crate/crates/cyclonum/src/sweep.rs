//! Parallel driver for the consistency sweep.

use rayon::prelude::*;

use cyclonum_core::consistency::{run_sweep, sweep_context, ContextReport, SweepConfig};

/// Same reports as [`run_sweep`], with contexts evaluated in parallel and
/// returned in configuration order.
pub fn run_parallel(config: &SweepConfig) -> Vec<ContextReport> {
    if config.methods.is_empty() {
        return run_sweep(config);
    }
    config
        .triples
        .par_iter()
        .map(|&(p, n, r)| sweep_context(config, p, n, r))
        .collect()
}

/// Description of the first failing check, scanning in report order.
pub fn first_counterexample(reports: &[ContextReport]) -> Option<String> {
    for rep in reports {
        let id = &rep.context;
        let tag = format!("(p={}, n={}, r={})", id.p, id.n, id.r);
        if let Some(err) = &rep.error {
            return Some(format!("{} context: {}", tag, err));
        }
        for cell in &rep.cells {
            let bad = !cell.agreement || cell.errors().next().is_some();
            if bad {
                let values: Vec<String> = cell
                    .values
                    .iter()
                    .map(|v| match &v.outcome {
                        Ok(x) => format!("{}={}", v.method.name(), x),
                        Err(e) => format!("{}: {}", v.method.name(), e),
                    })
                    .collect();
                return Some(format!(
                    "{} cell (a={}, b={}): {}",
                    tag,
                    cell.params.a,
                    cell.params.b,
                    values.join(", ")
                ));
            }
        }
        if let Some(Err(e)) = &rep.theorem {
            return Some(format!("{} theorem: {}", tag, e));
        }
        if let Some(p) = rep.properties.iter().find(|p| !p.passed()) {
            return Some(format!(
                "{} property `{}`: {}",
                tag,
                p.name,
                p.counterexample.as_deref().unwrap_or("")
            ));
        }
    }
    None
}
