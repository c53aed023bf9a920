//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use rectadd::dyadic::dyadic_rows;
use rectadd::report::Status;
use rectadd::suites::{cmd_proptest, oracle, Suite};
use rectadd::{cmd_counterexample, cmd_probe, CounterexampleParams};
use rectadd_core::rectfn::{liminf_quotient_probe, strong_continuity_witness};
use rectadd_core::{decompose, ProbeParams, QNum, Rational, Rect, RectFunction};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let pass = result.ok && in_time;
    println!(
        "{} [{id}] {name}: {} ({:.2}s, limit {}s{})",
        if pass { "PASS" } else { "FAIL" },
        result.detail,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", too slow" }
    );
    pass
}

fn i0() -> Rect {
    "[0,1]x[1,sqrt2]".parse().unwrap()
}

fn dyadic_positivity() -> Outcome {
    let report = cmd_counterexample(&CounterexampleParams {
        orders: 0..=12,
        samples: 1000,
        seed: 7,
        ..Default::default()
    });
    let positivity = report.finding("F(Q_d) = |Q_d| > 0 on 1000").map(|f| f.status);
    let value = RectFunction::counterexample().evaluate(&i0());
    // (x1 - x2) * y1 with x1 = 0, x2 = 1, y1 = 1
    let predicted = QNum::from_integer(0 - 1);
    let ok = report.passed() && positivity == Some(Status::Verified) && value == predicted;
    outcome(
        ok,
        format!("1000 dyadic squares verified, F([0,1]x[1,sqrt2]) = {value}"),
    )
}

fn strong_witness() -> Outcome {
    let family = strong_continuity_witness(&RectFunction::counterexample(), 20);
    let all_minus_one = family.len() == 20 && family.iter().all(|(_, v)| *v == QNum::from_integer(-1));
    let shrinking = family.windows(2).all(|w| w[1].0.area() < w[0].0.area());
    let last_area = family.last().map(|(r, _)| r.area()).unwrap_or_else(QNum::one);
    let ok = all_minus_one && shrinking && last_area < QNum::frac(1, 100_000);
    outcome(
        ok,
        format!("F = -1 on all 20, final area {}", last_area.approximate(12)),
    )
}

fn integer_oracle() -> Outcome {
    let (checked, result) = oracle();
    match result {
        Ok(()) => outcome(
            checked == 1770,
            format!("{checked} rectangles match continued fractions"),
        ),
        Err(e) => outcome(false, e),
    }
}

fn silver_trace() -> Outcome {
    let r: Rect = "[0,1+sqrt2]x[0,1]".parse().unwrap();
    let d = decompose(&r, 40);
    let counts_ok = d.counts().len() == 40 && d.counts().iter().all(|&c| c == 2) && !d.terminated;
    let silver = QNum::sqrt2() - QNum::one();
    let trace_ok = (1..d.sides.len()).all(|j| d.sides[j] == silver.pow((j - 1) as u32));
    let ratio = QNum::from_integer(3) - QNum::from_integer(2) * QNum::sqrt2();
    let ratio_ok = ratio < QNum::frac(1, 2)
        && d.sides
            .windows(3)
            .all(|w| w[2].checked_div(&w[0]).is_ok_and(|q| q == ratio));
    let ok = counts_ok && trace_ok && ratio_ok && d.verify_halving().holds;
    outcome(
        ok,
        format!("40 steps of 2 squares, sides[40] = {}, ratio 3-2*sqrt2", d.sides[40]),
    )
}

fn telescoping_and_additivity() -> Outcome {
    let telescope = cmd_proptest(Suite::Telescope, 500, 1);
    let additivity = cmd_proptest(Suite::Additivity, 10_000, 1);
    let claims: Vec<&str> = [&telescope, &additivity]
        .iter()
        .map(|r| r.findings[0].claim.as_str())
        .collect();
    outcome(telescope.passed() && additivity.passed(), claims.join("; "))
}

fn dyadic_remark() -> Outcome {
    let r = i0();
    let product = dyadic_rows(&RectFunction::product(), &r, 1..=10);
    let product_ok = product.iter().all(|row| !row.gap.is_negative() && row.gap <= row.bound);

    let counter = dyadic_rows(&RectFunction::counterexample(), &r, 1..=10);
    let threshold = QNum::frac(-139, 100);
    let below_one = counter
        .iter()
        .filter(|row| row.order >= 2)
        .all(|row| row.gap <= QNum::from_integer(-1));
    let below_threshold = counter
        .iter()
        .filter(|row| row.order >= 5)
        .all(|row| row.gap <= threshold);
    let never_shrinks = counter.windows(2).all(|w| w[1].gap <= w[0].gap);
    // limit -1 - (sqrt2 - 1) = -sqrt2, approached from above within the inner bound
    let limit = -QNum::sqrt2();
    let converges = counter
        .iter()
        .all(|row| row.gap >= limit && &row.gap - &limit <= row.bound);
    let ok = product_ok && below_one && below_threshold && never_shrinks && converges;
    let last = counter.last().unwrap();
    outcome(
        ok,
        format!(
            "PRODUCT gap within bound for n=1..10; COUNTEREXAMPLE gap <= -1 for n>=2, <= -1.39 for n>=5, nonincreasing, gap(10) = {}",
            last.gap_approx
        ),
    )
}

fn probe_product() -> Outcome {
    let f = RectFunction::product();
    let mut ok = true;
    for point in [(QNum::frac(1, 2), QNum::frac(1, 2)), (QNum::frac(1, 3), QNum::sqrt2())] {
        let params = ProbeParams {
            point,
            alpha: Rational::one(),
            depth: 12,
            offsets_per_scale: 4,
            region: None,
        };
        let probe = liminf_quotient_probe(&f, &params).unwrap();
        ok &= probe.samples().all(|s| s.quotient.exact_value() == Some(&QNum::one()));
        let report = cmd_probe(&f, &params).unwrap();
        ok &= report.findings.iter().all(|x| x.status == Status::EvidenceOnly);
    }
    outcome(ok, "quotient exactly 1 on 96 squares, all findings evidence-only")
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(
            1,
            "dyadic positivity with a negative rectangle",
            secs(5),
            dyadic_positivity,
        ),
        criterion(2, "strong-continuity witness", secs(1), strong_witness),
        criterion(
            3,
            "integer rectangles against continued fractions",
            secs(30),
            integer_oracle,
        ),
        criterion(4, "silver rectangle side trace", secs(5), silver_trace),
        criterion(
            5,
            "telescoping and split additivity",
            secs(60),
            telescoping_and_additivity,
        ),
        criterion(6, "inner dyadic approximation gaps", secs(30), dyadic_remark),
        criterion(7, "liminf quotient probe on the product", secs(5), probe_product),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
