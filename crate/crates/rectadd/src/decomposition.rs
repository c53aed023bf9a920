use std::path::Path;

use num_bigint::BigUint;
use rectadd_core::decompose::{check_geometric_decay, continued_fraction_counts};
use rectadd_core::{decompose, telescope, Decomposition, QNum, Rect, RectFunction};
use serde::Serialize;

use crate::report::{Finding, Report, DISPLAY_DIGITS};
use crate::svg::render_svg;
use crate::HarnessError;

#[derive(Debug, Serialize)]
pub struct StepSummary {
    pub side: QNum,
    pub side_approx: String,
    pub count: u64,
}

/// JSON view of a decomposition: exact literals plus display decimals.
#[derive(Debug, Serialize)]
pub struct DecompositionSummary {
    pub original: Rect,
    pub terminated: bool,
    pub square_count: u64,
    pub steps: Vec<StepSummary>,
    pub sides: Vec<QNum>,
    pub sides_approx: Vec<String>,
    pub remainder: Option<Rect>,
}

impl From<&Decomposition> for DecompositionSummary {
    fn from(d: &Decomposition) -> Self {
        DecompositionSummary {
            original: d.original.clone(),
            terminated: d.terminated,
            square_count: d.square_count(),
            steps: d
                .steps
                .iter()
                .map(|s| StepSummary {
                    side: s.side.clone(),
                    side_approx: s.side.approximate(DISPLAY_DIGITS),
                    count: s.count,
                })
                .collect(),
            sides: d.sides.clone(),
            sides_approx: d.sides.iter().map(|s| s.approximate(DISPLAY_DIGITS)).collect(),
            remainder: d.remainder.clone(),
        }
    }
}

pub fn cmd_decompose(rect: &Rect, max_steps: usize, svg_path: Option<&Path>) -> Result<Report, HarnessError> {
    let mut report = Report::new("decompose")
        .input("rect", rect)
        .input("max_steps", max_steps);
    if let Some(p) = svg_path {
        report = report.input("svg", p.display());
    }

    let d = decompose(rect, max_steps);
    let n = d.steps.len();
    if d.terminated {
        report.push(Finding::check(
            format!(
                "greedy packing terminates after {n} steps with {} squares",
                d.square_count()
            ),
            true,
        ));
    } else {
        report.push(
            Finding::check(
                format!(
                    "remainder persists after {n} steps ({} squares packed)",
                    d.square_count()
                ),
                d.remainder.is_some(),
            )
            .with_values(d.remainder.as_ref().map(Rect::area).iter()),
        );
    }

    let tiling = d.check_tiling();
    report.push(
        Finding::check(
            "squares and remainder tile the rectangle: contained, interior-disjoint, zero area discrepancy",
            tiling.holds(),
        )
        .with_values([&tiling.area_discrepancy]),
    );

    let halving = d.verify_halving();
    report.push(
        Finding::check(
            "side trace halves every two steps: l[n+2] <= l[n]/2 and l[n+1] <= l[n]",
            halving.holds,
        )
        .with_values(d.sides.iter()),
    );
    let strictly_decreasing = d.sides[1..].windows(2).all(|w| w[1] < w[0]);
    report.push(Finding::check(
        "side trace strictly decreasing from l[1]",
        strictly_decreasing,
    ));
    report.push(Finding::check(
        "geometric decay: l[n] <= l[1] * 2^-floor((n-1)/2)",
        check_geometric_decay(&d.sides),
    ));
    report.push(Finding::check(
        "remainder diameter bound: diameter^2(R_n) <= 2 l[n]^2",
        d.remainder_within_side_bound(),
    ));

    let counts: Vec<BigUint> = d.counts().into_iter().map(BigUint::from).collect();
    let cf = continued_fraction_counts(rect, n.max(1));
    report.push(
        Finding::check(
            "per-step counts equal the continued-fraction coefficients of the aspect ratio",
            counts == cf,
        )
        .with_approximations(counts.iter().map(|c| c.to_string())),
    );

    for f in [RectFunction::counterexample(), RectFunction::product()] {
        let total = telescope(&f, &d);
        let direct = f.evaluate(rect);
        report.push(
            Finding::check(
                format!(
                    "telescoping: sum of {} over all pieces equals {}(rect)",
                    f.label(),
                    f.label()
                ),
                total == direct,
            )
            .with_values([&total, &direct]),
        );
    }

    if let Some(path) = svg_path {
        std::fs::write(path, render_svg(&d)).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    report.set_details(&DecompositionSummary::from(&d));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(s: &str) -> Rect {
        s.parse().unwrap()
    }

    #[test]
    fn euclid_eight_by_five() {
        let report = cmd_decompose(&rect("[0,8]x[0,5]"), 20, None).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert!(report.findings[0]
            .claim
            .contains("terminates after 4 steps with 5 squares"));
        let details = report.details.unwrap();
        assert_eq!(details["square_count"], 5);
        assert_eq!(details["terminated"], true);
    }

    #[test]
    fn unit_square() {
        let report = cmd_decompose(&rect("[0,1]x[0,1]"), 20, None).unwrap();
        assert!(report.passed());
        let details = report.details.unwrap();
        assert_eq!(details["square_count"], 1);
        assert!(details["remainder"].is_null());
    }

    #[test]
    fn silver_rectangle_does_not_terminate() {
        let report = cmd_decompose(&rect("[0,1+1*sqrt2]x[0,1]"), 12, None).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        let details = report.details.unwrap();
        assert_eq!(details["terminated"], false);
        assert_eq!(details["sides"][3], "3-2*sqrt2");
    }
}
