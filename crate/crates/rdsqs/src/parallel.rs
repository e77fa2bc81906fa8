//! Per-point work fanned out over rayon. Results are always gathered in point
//! order, so the worker count never changes an output.

use rayon::prelude::*;

use rdsqs_core::construction::{QuadrupleAssembly, Quadrupler};
use rdsqs_core::resolver::{find_resolution, ResolveOutcome, ResolveResult};
use rdsqs_core::star::{star_frame, verify_star_point_with, StarCertificate};
use rdsqs_core::verify::verify_resolution_with;
use rdsqs_core::{
    derived_design_at, verify_steiner, Design, DesignError, Label, Resolution, VerifyReport,
};

use crate::format::Companion;

/// Runs `f` on a pool of `jobs` threads, or on the global pool for `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Verifies each listed resolution against the derived design of the
/// companion at its point.
pub fn verify_point_resolutions(
    companion: Companion<'_>,
    points: &[(Label, Resolution)],
    limit: usize,
) -> Vec<(Label, VerifyReport)> {
    points
        .par_iter()
        .map(|(p, r)| {
            let report = match companion.derived(p) {
                Ok(dd) => verify_resolution_with(&dd, r, limit),
                Err(e) => {
                    let mut rep = VerifyReport::new(limit);
                    rep.push(rdsqs_core::ViolationKind::LabelMismatch, vec![*p], e.to_string());
                    rep
                }
            };
            (*p, report)
        })
        .collect()
}

/// Parallel counterpart of `verify_star_with`, with the same report.
pub fn verify_star(c: &StarCertificate, limit: usize) -> VerifyReport {
    let mut report = star_frame(c, limit);
    let subs: Vec<VerifyReport> = c
        .points
        .par_iter()
        .map(|pc| verify_star_point_with(&c.design, pc, limit))
        .collect();
    for (pc, sub) in c.points.iter().zip(subs) {
        if report.is_full() {
            break;
        }
        report.absorb(sub, &format!("point {}", pc.point));
    }
    report
}

/// Builds the SQS(4v) and every derived resolution, verifying each one.
pub fn construct(cert: &StarCertificate) -> Result<QuadrupleAssembly, DesignError> {
    let q = Quadrupler::new(cert)?;
    let design = q.design()?;
    let report = verify_steiner(&design);
    if !report.passed() {
        return Err(DesignError::ConstructionIntegrity(format!("assembled design: {report}")));
    }
    let resolutions = (0..design.v() as u32)
        .into_par_iter()
        .map(|p| {
            let res = q.point_resolution(p)?;
            let report = verify_resolution_with(&derived_design_at(&design, p)?, &res, 16);
            if report.passed() {
                Ok(res)
            } else {
                Err(DesignError::ConstructionIntegrity(format!(
                    "resolution at {}: {report}",
                    design.labels().label(p)
                )))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuadrupleAssembly { design, resolutions })
}

/// Resolver run on the derived design at every point.
pub fn confirm_rds(d: &Design, budget: u64) -> Vec<(Label, ResolveResult)> {
    (0..d.v() as u32)
        .into_par_iter()
        .map(|x| {
            let result = match derived_design_at(d, x) {
                Ok(dd) => find_resolution(&dd, budget),
                Err(_) => ResolveResult {
                    outcome: ResolveOutcome::NotResolvable,
                    nodes: 0,
                },
            };
            (d.labels().label(x), result)
        })
        .collect()
}
