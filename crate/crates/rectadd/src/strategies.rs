//! Input generators for the property suites.

use num_traits::One;
use proptest::prelude::*;
use rectadd_core::{Axis, PointTable, QNum, Rect, RectFunction};

/// Elements `a + b sqrt2` with small numerators and denominators.
pub fn qnum() -> impl Strategy<Value = QNum> {
    (-40i64..=40, 1i64..=9, -12i64..=12, 1i64..=5)
        .prop_map(|(a, d, b, e)| QNum::frac(a, d) + QNum::frac(b, e) * QNum::sqrt2())
}

/// Positive lengths in Q(sqrt2) between 1/8 and 16.
pub fn length() -> impl Strategy<Value = QNum> {
    (-30i64..=30, 1i64..=6, -4i64..=4, 1i64..=3)
        .prop_map(|(a, d, b, e)| QNum::frac(a, d) + QNum::frac(b, e) * QNum::sqrt2())
        .prop_filter("length out of range", |l| {
            *l >= QNum::frac(1, 8) && *l <= QNum::from_integer(16)
        })
}

pub fn rect() -> impl Strategy<Value = Rect> {
    (-5i64..=5, -5i64..=5, length(), length()).prop_map(|(x, y, w, h)| {
        let x = QNum::from_integer(x);
        let y = QNum::frac(y, 3);
        Rect::new(x.clone(), &x + &w, y.clone(), &y + &h).expect("positive lengths")
    })
}

/// Which corner-difference function a case uses. `Table` fills every corner
/// the case touches with pseudo-random values derived from the seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionChoice {
    Counterexample,
    Product,
    Table(u64),
}

pub fn function_choice() -> impl Strategy<Value = FunctionChoice> {
    prop_oneof![
        Just(FunctionChoice::Counterexample),
        Just(FunctionChoice::Product),
        any::<u64>().prop_map(FunctionChoice::Table),
    ]
}

impl FunctionChoice {
    /// Materializes the function; `Table` covers the corners of `pieces`.
    pub fn build<'a>(self, pieces: impl IntoIterator<Item = &'a Rect>) -> RectFunction {
        match self {
            FunctionChoice::Counterexample => RectFunction::counterexample(),
            FunctionChoice::Product => RectFunction::product(),
            FunctionChoice::Table(seed) => {
                let mut table = PointTable::new();
                let mut state = seed;
                for p in pieces {
                    for x in [p.x1(), p.x2()] {
                        for y in [p.y1(), p.y2()] {
                            state = state
                                .wrapping_mul(6364136223846793005)
                                .wrapping_add(1442695040888963407);
                            let v = (state >> 40) as i64 % 97 - 48;
                            table.insert(
                                x.clone(),
                                y.clone(),
                                QNum::frac(v, 7) + QNum::frac(v % 5, 3) * QNum::sqrt2(),
                            );
                        }
                    }
                }
                RectFunction::custom(table)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SplitCase {
    pub rect: Rect,
    pub axis: Axis,
    /// Split coordinate, strictly inside the rectangle along `axis`.
    pub at: QNum,
    pub function: FunctionChoice,
}

impl SplitCase {
    pub fn pieces(&self) -> Vec<Rect> {
        let (a, b) = self.rect.split(self.axis, &self.at).expect("split inside range");
        vec![self.rect.clone(), a, b]
    }
}

pub fn split_case() -> impl Strategy<Value = SplitCase> {
    (
        rect(),
        prop_oneof![Just(Axis::Vertical), Just(Axis::Horizontal)],
        (1i64..=15, 0i64..=3),
        function_choice(),
    )
        .prop_map(|(rect, axis, (t, s), function)| {
            let (lo, hi) = match axis {
                Axis::Vertical => (rect.x1().clone(), rect.x2().clone()),
                Axis::Horizontal => (rect.y1().clone(), rect.y2().clone()),
            };
            // Fraction in (0, 1): t/16, nudged by a multiple of (sqrt2 - 1)/64.
            let frac = QNum::frac(t, 16) + QNum::frac(s, 64) * (QNum::sqrt2() - QNum::one());
            let at = &lo + &(frac * (&hi - &lo));
            SplitCase {
                rect,
                axis,
                at,
                function,
            }
        })
}

pub fn telescope_case() -> impl Strategy<Value = (Rect, FunctionChoice)> {
    (rect(), function_choice())
}
