//! Inner dyadic approximation of a rectangle, order by order.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rectadd_core::{DyadicCover, QNum, Rect, RectFunction};
use serde::Serialize;

use crate::report::{Finding, Report, DISPLAY_DIGITS};

/// Above this many squares the sum is taken on the block's bounding
/// rectangle instead of square by square.
pub const EXPLICIT_SUM_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumMethod {
    /// Every mesh square evaluated, corners cached on the grid.
    Explicit,
    /// `F` of the block's bounding rectangle, by additivity.
    Block,
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderRow {
    pub order: u32,
    pub count: String,
    pub covered_area: QNum,
    pub sum: QNum,
    pub gap: QNum,
    pub gap_approx: String,
    /// `2^(1-n) (w + h) + 4 * 2^(-2n)`.
    pub bound: QNum,
    pub method: SumMethod,
}

pub fn inner_bound(rect: &Rect, order: u32) -> QNum {
    let n = i64::from(order);
    QNum::pow2(1 - n) * (rect.width() + rect.height()) + QNum::from_integer(4) * QNum::pow2(-2 * n)
}

/// `sum F(Q)` over the cover, evaluating the point function once per grid node.
fn explicit_sum(f: &RectFunction, cover: &DyadicCover) -> QNum {
    let side = QNum::pow2(-i64::from(cover.order));
    let coords = |start: &BigInt, end: &BigInt| -> Vec<QNum> {
        let n = (end - start).to_usize().expect("cover below the explicit limit");
        (0..=n).map(|i| QNum::from_integer(start + i) * &side).collect()
    };
    let xs = coords(&cover.k_start, &cover.k_end);
    let ys = coords(&cover.m_start, &cover.m_end);
    let point = f.point_function();
    let mut below: Vec<QNum> = xs.iter().map(|x| point.evaluate(x, &ys[0])).collect();
    let mut total = QNum::zero();
    for y in &ys[1..] {
        let above: Vec<QNum> = xs.iter().map(|x| point.evaluate(x, y)).collect();
        for i in 0..xs.len() - 1 {
            total += &above[i + 1];
            total += &below[i];
            total -= &above[i];
            total -= &below[i + 1];
        }
        below = above;
    }
    total
}

pub fn order_row(f: &RectFunction, rect: &Rect, order: u32) -> OrderRow {
    let cover = rect.dyadic_inner_cover(order);
    let count = cover.len();
    let (sum, method) = match cover.bounding_rect() {
        None => (QNum::zero(), SumMethod::Empty),
        Some(_) if count <= BigInt::from(EXPLICIT_SUM_LIMIT) => (explicit_sum(f, &cover), SumMethod::Explicit),
        Some(block) => (f.evaluate(&block), SumMethod::Block),
    };
    let gap = f.evaluate(rect) - &sum;
    OrderRow {
        order,
        count: count.to_string(),
        covered_area: cover.covered_area(),
        gap_approx: gap.approximate(DISPLAY_DIGITS),
        sum,
        gap,
        bound: inner_bound(rect, order),
        method,
    }
}

pub fn dyadic_rows(f: &RectFunction, rect: &Rect, orders: std::ops::RangeInclusive<u32>) -> Vec<OrderRow> {
    orders.map(|n| order_row(f, rect, n)).collect()
}

pub fn cmd_dyadic_approx(rect: &Rect, f: &RectFunction, min_order: u32, max_order: u32) -> Report {
    let mut report = Report::new("dyadic-approx")
        .input("rect", rect)
        .input("function", f)
        .input("min_order", min_order)
        .input("max_order", max_order);
    let rows = dyadic_rows(f, rect, min_order..=max_order);
    let range = format!("n = {min_order}..={max_order}");

    let area_mismatch = rows.iter().find(|r| r.sum != r.covered_area);
    let mut claim = format!("S_n equals the covered area for {range}");
    if let Some(r) = area_mismatch {
        claim.push_str(&format!("; differs at n = {}", r.order));
    }
    report.push(Finding::check(claim, area_mismatch.is_none()).with_values(rows.iter().map(|r| &r.sum)));

    let outside = rows.iter().find(|r| r.gap.is_negative() || r.gap > r.bound);
    let mut claim = format!("0 <= F(rect) - S_n <= 2^(1-n)(w+h) + 4*2^(-2n) for {range}");
    if let Some(r) = outside {
        claim.push_str(&format!("; fails at n = {} with gap {}", r.order, r.gap_approx));
    }
    report.push(Finding::check(claim, outside.is_none()).with_values(rows.iter().map(|r| &r.bound)));

    // With S_n equal to the covered area, the gap splits into the vanishing
    // inner error |rect| - covered and the fixed offset F(rect) - |rect|.
    let offset = f.evaluate(rect) - rect.area();
    let steady = rows.iter().all(|r| &r.gap - &(rect.area() - &r.covered_area) == offset);
    report.push(
        Finding::check(
            format!("F(rect) - S_n - (|rect| - covered_area(n)) = F(rect) - |rect| = {offset} for {range}"),
            steady,
        )
        .with_values([&offset]),
    );

    report.push(Finding::evidence(format!("gap F(rect) - S_n for {range}")).with_values(rows.iter().map(|r| &r.gap)));
    report.set_details(&rows);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(s: &str) -> Rect {
        s.parse().unwrap()
    }

    #[test]
    fn product_order_six() {
        let r = rect("[0,1]x[1,sqrt2]");
        let row = order_row(&RectFunction::product(), &r, 6);
        assert_eq!(row.gap, r.area() - &row.covered_area);
        assert!(row.gap.is_positive());
        assert!(row.gap <= QNum::frac(2, 32) + QNum::frac(4, 4096));
    }

    #[test]
    fn counterexample_order_four() {
        let r = rect("[0,1]x[1,sqrt2]");
        let row = order_row(&RectFunction::counterexample(), &r, 4);
        // floor(16 sqrt2) = 22: six rows of sixteen squares
        assert_eq!(row.covered_area, QNum::frac(6, 16));
        assert_eq!(row.gap, QNum::frac(-11, 8));
        let row = order_row(&RectFunction::counterexample(), &r, 5);
        assert_eq!(row.gap, QNum::frac(-45, 32));
        assert!(row.gap <= QNum::frac(-139, 100));
    }

    #[test]
    fn dyadic_square_at_its_own_order() {
        let r = rect("[1/4,1/2]x[3/4,1]");
        for f in [RectFunction::counterexample(), RectFunction::product()] {
            let row = order_row(&f, &r, 2);
            assert_eq!(row.count, "1");
            assert!(row.gap.is_zero());
        }
    }

    #[test]
    fn explicit_and_block_sums_agree() {
        let r = rect("[0,1]x[1,sqrt2]");
        let f = RectFunction::product();
        let cover = r.dyadic_inner_cover(5);
        assert_eq!(explicit_sum(&f, &cover), f.evaluate(&cover.bounding_rect().unwrap()));
    }

    #[test]
    fn empty_cover_at_coarse_order() {
        let r = rect("[0,1]x[1,sqrt2]");
        let row = order_row(&RectFunction::counterexample(), &r, 1);
        assert_eq!(row.method, SumMethod::Empty);
        assert!(row.sum.is_zero());
    }

    #[test]
    fn product_report_passes() {
        let report = cmd_dyadic_approx(&rect("[0,1]x[1,sqrt2]"), &RectFunction::product(), 1, 8);
        assert!(report.passed(), "{}", report.to_json());
    }
}
