use rectadd_core::rectfn::liminf_quotient_probe;
use rectadd_core::{ProbeParams, RectFunction};

use crate::report::{Finding, Report};
use crate::HarnessError;

/// Liminf-quotient probe. Every finding is `evidence-only`: a finite sample
/// neither proves nor refutes a liminf.
pub fn cmd_probe(f: &RectFunction, params: &ProbeParams) -> Result<Report, HarnessError> {
    let (px, py) = &params.point;
    let mut report = Report::new("probe")
        .input("function", f)
        .input("point", format!("{px},{py}"))
        .input("alpha", rectadd_core::numeric::rational_literal(&params.alpha))
        .input("depth", params.depth)
        .input("offsets", params.offsets_per_scale);
    if let Some(region) = &params.region {
        report = report.input("region", region);
    }
    let probe = liminf_quotient_probe(f, params)?;

    let mut claim = format!(
        "minimum of F(Q)/|Q|^alpha per scale, squares of side 2^-j containing ({px}, {py}), j = 1..={}",
        params.depth
    );
    if probe.scales.iter().any(|s| !s.min_quotient.is_exact()) {
        claim.push_str(" (flagged: some quotients are decimal approximations)");
    }
    let exact: Vec<_> = probe
        .scales
        .iter()
        .filter_map(|s| s.min_quotient.exact_value())
        .collect();
    let mut finding = Finding::evidence(claim).with_values(exact.iter().copied());
    if exact.len() < probe.scales.len() {
        finding = finding.with_approximations(
            probe
                .scales
                .iter()
                .filter(|s| !s.min_quotient.is_exact())
                .map(|s| s.min_quotient.to_f64().to_string()),
        );
    }
    report.push(finding);

    let negative = probe.samples().filter(|s| s.value.is_negative()).count();
    report.push(Finding::evidence(format!(
        "{negative} of {} sampled squares have F(Q) < 0",
        probe.samples().count()
    )));
    if params.region.is_some() {
        let inside = probe.samples().filter(|s| s.inside_region == Some(true)).count();
        report.push(Finding::evidence(format!(
            "{inside} of {} sampled squares lie inside the region",
            probe.samples().count()
        )));
    }
    report.set_details(&probe);
    Ok(report)
}
