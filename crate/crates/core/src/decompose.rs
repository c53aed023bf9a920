//! Greedy square decomposition of a rectangle.
//!
//! Each step packs as many squares of the shorter side as fit along the
//! longer side, then recurses on the leftover strip. The side lengths follow
//! the Euclidean algorithm on the two sides, so the per-step counts are the
//! continued-fraction coefficients of the aspect ratio, and every two steps
//! at least halve the side length.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::geometry::Rect;
use crate::numeric::QNum;
use crate::rectfn::RectFunction;

/// One round of packing: `count` squares of side `side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub side: QNum,
    pub count: u64,
    pub squares: Vec<Rect>,
}

impl Step {
    /// Bounding rectangle of the step's squares.
    pub fn strip(&self) -> Option<Rect> {
        let first = self.squares.first()?;
        let last = self.squares.last()?;
        Rect::new(
            first.x1().clone(),
            last.x2().clone(),
            first.y1().clone(),
            last.y2().clone(),
        )
        .ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub original: Rect,
    pub steps: Vec<Step>,
    pub remainder: Option<Rect>,
    pub terminated: bool,
    /// `l0, l1, ..., lN`: the longer side of the original, then the square
    /// side of every step.
    pub sides: Vec<QNum>,
}

/// Packs squares of the shorter side from the min-coordinate corner along the
/// longer axis; the leftover strip (if any) sits at the max-coordinate end.
pub fn greedy_step(r: &Rect) -> (Step, Option<Rect>) {
    let (w, h) = (r.width(), r.height());
    if w == h {
        let step = Step {
            side: w,
            count: 1,
            squares: vec![r.clone()],
        };
        return (step, None);
    }
    let horizontal = w > h;
    let (long, short) = if horizontal { (w, h) } else { (h, w) };
    let count = (&long / &short).floor();
    let count = count.to_u64().expect("square count fits in u64");
    let origin = if horizontal { r.x1() } else { r.y1() };
    let at = |i: u64| origin + &(&short * &QNum::from_integer(i));
    let mut hi = origin.clone();
    let squares: Vec<Rect> = (0..count)
        .map(|i| {
            let lo = std::mem::replace(&mut hi, at(i + 1));
            let hi = hi.clone();
            let piece = if horizontal {
                Rect::new(lo, hi, r.y1().clone(), r.y2().clone())
            } else {
                Rect::new(r.x1().clone(), r.x2().clone(), lo, hi)
            };
            piece.expect("positive side")
        })
        .collect();
    let end = at(count);
    let remainder = if horizontal {
        Rect::new(end, r.x2().clone(), r.y1().clone(), r.y2().clone())
    } else {
        Rect::new(r.x1().clone(), r.x2().clone(), end, r.y2().clone())
    };
    // an exact fit leaves a degenerate strip, which Rect::new rejects
    let step = Step {
        side: short,
        count,
        squares,
    };
    (step, remainder.ok())
}

/// Runs [`greedy_step`] on successive remainders, at most `max_steps` times.
pub fn decompose(r: &Rect, max_steps: usize) -> Decomposition {
    let mut steps = Vec::new();
    let mut sides = vec![r.longer_side()];
    let mut current = Some(r.clone());
    while steps.len() < max_steps {
        let Some(rect) = current.take() else { break };
        let (step, rest) = greedy_step(&rect);
        sides.push(step.side.clone());
        steps.push(step);
        current = rest;
    }
    Decomposition {
        original: r.clone(),
        steps,
        terminated: current.is_none(),
        remainder: current,
        sides,
    }
}

impl Decomposition {
    pub fn counts(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.count).collect()
    }

    pub fn square_count(&self) -> u64 {
        self.steps.iter().map(|s| s.count).sum()
    }

    pub fn squares(&self) -> impl Iterator<Item = &Rect> {
        self.steps.iter().flat_map(|s| s.squares.iter())
    }

    /// Squares followed by the remainder.
    pub fn pieces(&self) -> impl Iterator<Item = &Rect> {
        self.squares().chain(self.remainder.iter())
    }

    /// `sum of piece areas - area(original)`; zero for an exact tiling.
    pub fn area_discrepancy(&self) -> QNum {
        self.pieces().map(Rect::area).sum::<QNum>() - self.original.area()
    }

    /// Full tiling check: every piece inside the original, pairwise disjoint
    /// interiors, and zero area discrepancy.
    ///
    /// Disjointness is checked per strip: the squares of one step must abut
    /// in a row or column, and the strips plus the remainder must have
    /// pairwise disjoint interiors.
    pub fn check_tiling(&self) -> TilingCheck {
        let contained = self.pieces().all(|p| self.original.contains(p));
        let mut disjoint = self.steps.iter().all(|s| {
            s.squares.windows(2).all(|w| {
                let (a, b) = (&w[0], &w[1]);
                let in_row = a.x2() == b.x1() && a.y1() == b.y1() && a.y2() == b.y2();
                let in_column = a.y2() == b.y1() && a.x1() == b.x1() && a.x2() == b.x2();
                in_row || in_column
            })
        });
        let strips: Vec<Rect> = self
            .steps
            .iter()
            .filter_map(Step::strip)
            .chain(self.remainder.iter().cloned())
            .collect();
        for (i, a) in strips.iter().enumerate() {
            if strips[i + 1..].iter().any(|b| a.interiors_overlap(b)) {
                disjoint = false;
            }
        }
        TilingCheck {
            area_discrepancy: self.area_discrepancy(),
            contained,
            disjoint,
        }
    }

    pub fn verify_halving(&self) -> HalvingCertificate {
        verify_halving(&self.sides)
    }

    /// The leftover strip has both sides at most the last square side, so its
    /// squared diameter is at most `2 * side^2`. Vacuous without a remainder.
    pub fn remainder_within_side_bound(&self) -> bool {
        match (&self.remainder, self.sides.last()) {
            (Some(r), Some(side)) => r.diameter_sq() <= QNum::from_integer(2) * side * side,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCheck {
    pub area_discrepancy: QNum,
    pub contained: bool,
    pub disjoint: bool,
}

impl TilingCheck {
    pub fn holds(&self) -> bool {
        self.area_discrepancy.is_zero() && self.contained && self.disjoint
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalvingKind {
    /// `sides[n+1] <= sides[n]`
    Monotone,
    /// `sides[n+2] <= sides[n] / 2`
    Halving,
}

/// One exact comparison `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalvingCheck {
    pub n: usize,
    pub kind: HalvingKind,
    pub lhs: QNum,
    pub rhs: QNum,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalvingCertificate {
    pub holds: bool,
    pub checks: Vec<HalvingCheck>,
}

/// Checks `sides[n+1] <= sides[n]` and `sides[n+2] <= sides[n]/2` for every `n`.
pub fn verify_halving(sides: &[QNum]) -> HalvingCertificate {
    let half = QNum::frac(1, 2);
    let mut checks = Vec::new();
    for n in 0..sides.len() {
        if let Some(next) = sides.get(n + 1) {
            checks.push(HalvingCheck {
                n,
                kind: HalvingKind::Monotone,
                holds: *next <= sides[n],
                lhs: next.clone(),
                rhs: sides[n].clone(),
            });
        }
        if let Some(skip) = sides.get(n + 2) {
            let rhs = &sides[n] * &half;
            checks.push(HalvingCheck {
                n,
                kind: HalvingKind::Halving,
                holds: *skip <= rhs,
                lhs: skip.clone(),
                rhs,
            });
        }
    }
    HalvingCertificate {
        holds: checks.iter().all(|c| c.holds),
        checks,
    }
}

/// `sides[n] <= sides[1] * 2^-floor((n-1)/2)` for every `n >= 1`.
pub fn check_geometric_decay(sides: &[QNum]) -> bool {
    let Some(first) = sides.get(1) else {
        return true;
    };
    sides.iter().enumerate().skip(1).all(|(n, side)| {
        let bound = first * &QNum::pow2(-(((n - 1) / 2) as i64));
        *side <= bound
    })
}

/// Sum of `F` over every packed square and the remainder.
pub fn telescope(f: &RectFunction, d: &Decomposition) -> QNum {
    d.pieces().map(|p| f.evaluate(p)).sum()
}

/// Continued-fraction coefficients of (longer side)/(shorter side) by exact
/// floor-and-invert, stopping after `max_terms` or when the expansion ends.
pub fn continued_fraction_counts(r: &Rect, max_terms: usize) -> Vec<BigUint> {
    let mut x = &r.longer_side() / &r.shorter_side();
    let mut terms = Vec::new();
    while terms.len() < max_terms {
        let a = x.floor();
        let frac = &x - &QNum::from_integer(a.clone());
        terms.push(a.to_biguint().expect("ratio is at least 1"));
        if frac.is_zero() {
            break;
        }
        x = frac.recip().expect("nonzero fractional part");
    }
    terms
}
