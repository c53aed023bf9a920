//! Dyadic positivity versus a negative rectangle.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectadd_core::rectfn::{strong_continuity_witness, weak_continuity_probe};
use rectadd_core::{DyadicSquare, QNum, Rect, RectFunction};

use crate::report::{Finding, Report};

#[derive(Debug, Clone)]
pub struct CounterexampleParams {
    pub function: RectFunction,
    pub orders: RangeInclusive<u32>,
    pub samples: usize,
    pub seed: u64,
    /// Mesh indices `k`, `m` are drawn from `-index_bound..=index_bound`.
    pub index_bound: i64,
    /// Number of thin rectangles in the strong-continuity family.
    pub witness_depth: u32,
}

impl Default for CounterexampleParams {
    fn default() -> Self {
        CounterexampleParams {
            function: RectFunction::counterexample(),
            orders: 0..=12,
            samples: 1000,
            seed: 7,
            index_bound: 1 << 15,
            witness_depth: 20,
        }
    }
}

/// The rectangle `[0,1] x [1,sqrt2]`: rational bottom edge, irrational top.
pub fn negative_witness_rect() -> Rect {
    Rect::new(QNum::zero(), QNum::one(), QNum::one(), QNum::sqrt2()).expect("1 < sqrt2")
}

/// Draws `samples` mesh squares. Each draw takes, in order, the order
/// uniformly from `orders`, then `k` and `m` uniformly from
/// `-index_bound..=index_bound`, all from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn sample_dyadic_squares(
    orders: &RangeInclusive<u32>,
    samples: usize,
    seed: u64,
    index_bound: i64,
) -> Vec<DyadicSquare> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let order = rng.random_range(orders.clone());
            let k = rng.random_range(-index_bound..=index_bound);
            let m = rng.random_range(-index_bound..=index_bound);
            DyadicSquare::new(order, BigInt::from(k), BigInt::from(m))
        })
        .collect()
}

pub fn cmd_counterexample(params: &CounterexampleParams) -> Report {
    let f = &params.function;
    let mut report = Report::new("counterexample")
        .input("function", f)
        .input("orders", format!("{}..={}", params.orders.start(), params.orders.end()))
        .input("samples", params.samples)
        .input("seed", params.seed)
        .input("index_bound", params.index_bound)
        .input("witness_depth", params.witness_depth);

    let squares = sample_dyadic_squares(&params.orders, params.samples, params.seed, params.index_bound);
    let mut first_failure = None;
    let mut min_value: Option<QNum> = None;
    for sq in &squares {
        let r = sq.to_rect();
        let value = f.evaluate(&r);
        if first_failure.is_none() && !(value.is_positive() && value == r.area()) {
            first_failure = Some((r.clone(), value.clone()));
        }
        if min_value.as_ref().is_none_or(|m| value < *m) {
            min_value = Some(value);
        }
    }
    let mut claim = format!(
        "F(Q_d) = |Q_d| > 0 on {} sampled dyadic squares of orders {}..={}",
        squares.len(),
        params.orders.start(),
        params.orders.end()
    );
    if let Some((r, v)) = &first_failure {
        claim.push_str(&format!("; fails on {r} with F = {v}"));
    }
    report.push(Finding::check(claim, first_failure.is_none()).with_values(min_value.iter()));

    let i0 = negative_witness_rect();
    let value = f.evaluate(&i0);
    report.push(Finding::check(format!("F(I_0) < 0 for I_0 = {i0}"), value.is_negative()).with_values([&value]));
    let predicted = (i0.x1() - i0.x2()) * i0.y1();
    report.push(
        Finding::check(
            format!("F(I_0) = (x1 - x2)*y1 = {predicted} exactly"),
            value == predicted,
        )
        .with_values([&value, &predicted]),
    );

    let family = strong_continuity_witness(f, params.witness_depth);
    let fails_strong = !family.is_empty() && family.iter().all(|(_, v)| *v == QNum::from_integer(-1));
    let smallest_area = family.last().map(|(r, _)| r.area());
    report.push(
        Finding::check(
            format!(
                "not strongly continuous: F = -1 on [0,1]x[1,1+(sqrt2-1)/2^j] for j = 1..={} while the area shrinks",
                params.witness_depth
            ),
            fails_strong,
        )
        .with_values(smallest_area.iter()),
    );

    for (cx, cy) in [(QNum::frac(1, 2), QNum::frac(1, 2)), (QNum::frac(1, 3), QNum::sqrt2())] {
        let values: Vec<QNum> = weak_continuity_probe(f, (&cx, &cy), 8)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        report.push(
            Finding::evidence(format!(
                "F(Q) along squares of side 2^-j centered at ({cx}, {cy}), j = 1..=8"
            ))
            .with_values(values.iter()),
        );
    }
    report
}
