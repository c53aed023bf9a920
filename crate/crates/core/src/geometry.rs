//! Closed axis-parallel rectangles with exact corners, and the dyadic mesh.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numeric::{NumericError, QNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    /// Carries the offending corners as a rendered literal.
    #[error("degenerate rectangle {0}: need x1 < x2 and y1 < y2")]
    Degenerate(String),
    #[error("split coordinate {at} is not strictly inside ({lo}, {hi})")]
    SplitOutOfRange { at: String, lo: String, hi: String },
    #[error("invalid rectangle literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
}

/// Which way a rectangle is cut. A vertical cut is the line `x = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Vertical,
    Horizontal,
}

/// The closed rectangle `[x1, x2] x [y1, y2]` with `x1 < x2`, `y1 < y2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    x1: QNum,
    x2: QNum,
    y1: QNum,
    y2: QNum,
}

impl Rect {
    pub fn new(x1: QNum, x2: QNum, y1: QNum, y2: QNum) -> Result<Self, GeometryError> {
        if x1 < x2 && y1 < y2 {
            Ok(Rect { x1, x2, y1, y2 })
        } else {
            Err(GeometryError::Degenerate(format!("[{x1},{x2}]x[{y1},{y2}]")))
        }
    }

    /// Square with lower-left corner `(x, y)`.
    pub fn square(x: QNum, y: QNum, side: &QNum) -> Result<Self, GeometryError> {
        let x2 = &x + side;
        let y2 = &y + side;
        Rect::new(x, x2, y, y2)
    }

    pub fn x1(&self) -> &QNum {
        &self.x1
    }

    pub fn x2(&self) -> &QNum {
        &self.x2
    }

    pub fn y1(&self) -> &QNum {
        &self.y1
    }

    pub fn y2(&self) -> &QNum {
        &self.y2
    }

    pub fn width(&self) -> QNum {
        &self.x2 - &self.x1
    }

    pub fn height(&self) -> QNum {
        &self.y2 - &self.y1
    }

    pub fn area(&self) -> QNum {
        self.width() * self.height()
    }

    /// Squared diameter `width^2 + height^2`. The diameter itself usually
    /// leaves Q(sqrt2).
    pub fn diameter_sq(&self) -> QNum {
        let w = self.width();
        let h = self.height();
        &w * &w + &h * &h
    }

    pub fn is_square(&self) -> bool {
        self.width() == self.height()
    }

    pub fn longer_side(&self) -> QNum {
        self.width().max(self.height())
    }

    pub fn shorter_side(&self) -> QNum {
        self.width().min(self.height())
    }

    /// Cuts along `axis` at `at`; the left (or bottom) piece comes first.
    pub fn split(&self, axis: Axis, at: &QNum) -> Result<(Rect, Rect), GeometryError> {
        let (lo, hi) = match axis {
            Axis::Vertical => (&self.x1, &self.x2),
            Axis::Horizontal => (&self.y1, &self.y2),
        };
        if !(lo < at && at < hi) {
            return Err(GeometryError::SplitOutOfRange {
                at: at.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let pieces = match axis {
            Axis::Vertical => (
                Rect::new(self.x1.clone(), at.clone(), self.y1.clone(), self.y2.clone()),
                Rect::new(at.clone(), self.x2.clone(), self.y1.clone(), self.y2.clone()),
            ),
            Axis::Horizontal => (
                Rect::new(self.x1.clone(), self.x2.clone(), self.y1.clone(), at.clone()),
                Rect::new(self.x1.clone(), self.x2.clone(), at.clone(), self.y2.clone()),
            ),
        };
        Ok((pieces.0?, pieces.1?))
    }

    pub fn contains_point(&self, x: &QNum, y: &QNum) -> bool {
        &self.x1 <= x && x <= &self.x2 && &self.y1 <= y && y <= &self.y2
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.x1 <= other.x1 && other.x2 <= self.x2 && self.y1 <= other.y1 && other.y2 <= self.y2
    }

    /// True when the open interiors intersect.
    pub fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x1 < other.x2 && other.x1 < self.x2 && self.y1 < other.y2 && other.y1 < self.y2
    }

    /// Recognizes `self` as a mesh square of the smallest possible order.
    pub fn as_dyadic_square(&self) -> Option<DyadicSquare> {
        let side = self.width();
        if side != self.height() || !side.is_rational() || !self.x1.is_dyadic() || !self.y1.is_dyadic() {
            return None;
        }
        // side must be exactly 2^-n with n >= 0
        let side = side.rational_part();
        if !side.numer().is_one() {
            return None;
        }
        let denom = side.denom();
        let order = denom.bits().checked_sub(1)?;
        if BigInt::one() << order != *denom {
            return None;
        }
        let order = u32::try_from(order).ok()?;
        let scale = QNum::pow2(order.into());
        let k = &self.x1 * &scale;
        let m = &self.y1 * &scale;
        if !k.is_integer() || !m.is_integer() {
            return None;
        }
        Some(DyadicSquare {
            order,
            k: k.rational_part().to_integer(),
            m: m.rational_part().to_integer(),
        })
    }

    /// The order-`order` mesh squares lying inside `self` (closed containment).
    pub fn dyadic_inner_cover(&self, order: u32) -> DyadicCover {
        let scale = QNum::pow2(order.into());
        let span = |lo: &QNum, hi: &QNum| {
            let start = (lo * &scale).ceil();
            let end = (hi * &scale).floor();
            let end = if end < start { start.clone() } else { end };
            (start, end)
        };
        let (k_start, k_end) = span(&self.x1, &self.x2);
        let (m_start, m_end) = span(&self.y1, &self.y2);
        DyadicCover {
            order,
            k_start,
            k_end,
            m_start,
            m_end,
        }
    }
}

/// Mesh square `[k 2^-n, (k+1) 2^-n] x [m 2^-n, (m+1) 2^-n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicSquare {
    pub order: u32,
    pub k: BigInt,
    pub m: BigInt,
}

impl DyadicSquare {
    pub fn new(order: u32, k: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        DyadicSquare {
            order,
            k: k.into(),
            m: m.into(),
        }
    }

    pub fn side(&self) -> QNum {
        QNum::pow2(-i64::from(self.order))
    }

    pub fn to_rect(&self) -> Rect {
        let side = self.side();
        let x = QNum::from_integer(self.k.clone()) * &side;
        let y = QNum::from_integer(self.m.clone()) * &side;
        Rect::square(x, y, &side).expect("mesh squares have positive side")
    }
}

/// A block of mesh squares of one order, stored by index ranges rather than
/// as a list: `k` in `k_start..k_end`, `m` in `m_start..m_end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicCover {
    pub order: u32,
    pub k_start: BigInt,
    pub k_end: BigInt,
    pub m_start: BigInt,
    pub m_end: BigInt,
}

impl DyadicCover {
    pub fn columns(&self) -> BigInt {
        &self.k_end - &self.k_start
    }

    pub fn rows(&self) -> BigInt {
        &self.m_end - &self.m_start
    }

    pub fn len(&self) -> BigInt {
        self.columns() * self.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    pub fn covered_area(&self) -> QNum {
        QNum::from_integer(self.len()) * QNum::pow2(-2 * i64::from(self.order))
    }

    /// The union of the block as a single rectangle, if nonempty.
    pub fn bounding_rect(&self) -> Option<Rect> {
        if self.is_empty() {
            return None;
        }
        let side = QNum::pow2(-i64::from(self.order));
        let at = |i: &BigInt| QNum::from_integer(i.clone()) * &side;
        Rect::new(at(&self.k_start), at(&self.k_end), at(&self.m_start), at(&self.m_end)).ok()
    }

    /// Row-major enumeration (by `m`, then `k`).
    pub fn squares(&self) -> impl Iterator<Item = DyadicSquare> + '_ {
        range(&self.m_start, &self.m_end).flat_map(move |m| {
            range(&self.k_start, &self.k_end).map(move |k| DyadicSquare {
                order: self.order,
                k,
                m: m.clone(),
            })
        })
    }
}

fn range(start: &BigInt, end: &BigInt) -> impl Iterator<Item = BigInt> {
    let end = end.clone();
    std::iter::successors(Some(start.clone()), |i| Some(i + 1)).take_while(move |i| *i < end)
}

/// Mesh squares of order `order` contained in `r`, as an explicit list.
pub fn dyadic_inner_cover(r: &Rect, order: u32) -> Vec<DyadicSquare> {
    r.dyadic_inner_cover(order).squares().collect()
}

/// Literal form `[x1,x2]x[y1,y2]`.
impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x1, self.x2, self.y1, self.y2)
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rect({self})")
    }
}

impl FromStr for Rect {
    type Err = GeometryError;

    fn from_str(literal: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GeometryError::Parse {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| err("expected [x1,x2]x[y1,y2]"))?;
        let (xs, ys) = body
            .split_once("]x[")
            .ok_or_else(|| err("expected ]x[ between intervals"))?;
        let interval = |part: &str| -> Result<(QNum, QNum), GeometryError> {
            let (lo, hi) = part.split_once(',').ok_or_else(|| err("expected lo,hi"))?;
            let parse = |t: &str| t.parse::<QNum>().map_err(|e: NumericError| err(&e.to_string()));
            Ok((parse(lo)?, parse(hi)?))
        };
        let (x1, x2) = interval(xs)?;
        let (y1, y2) = interval(ys)?;
        Rect::new(x1, x2, y1, y2)
    }
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rect {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QNum {
        s.parse().unwrap()
    }

    fn rect(s: &str) -> Rect {
        s.parse().unwrap()
    }

    #[test]
    fn area_examples() {
        assert_eq!(rect("[0,1]x[0,1]").area(), q("1"));
        assert_eq!(rect("[0,1]x[1,sqrt2]").area(), q("-1+1*sqrt2"));
        assert_eq!(rect("[0,8]x[0,5]").area(), q("40"));
    }

    #[test]
    fn diameter_sq_examples() {
        assert_eq!(rect("[0,1]x[0,1]").diameter_sq(), q("2"));
        assert_eq!(rect("[0,3]x[0,4]").diameter_sq(), q("25"));
        assert_eq!(rect("[0,1]x[0,sqrt2]").diameter_sq(), q("3"));
    }

    #[test]
    fn degenerate_rectangles_are_rejected() {
        assert!(Rect::new(q("0"), q("0"), q("0"), q("1")).is_err());
        assert!(Rect::new(q("0"), q("1"), q("2"), q("1")).is_err());
        assert!("[1,0]x[0,1]".parse::<Rect>().is_err());
    }

    #[test]
    fn split_examples() {
        let (l, r) = rect("[0,2]x[0,1]").split(Axis::Vertical, &q("1")).unwrap();
        assert_eq!(l, rect("[0,1]x[0,1]"));
        assert_eq!(r, rect("[1,2]x[0,1]"));

        let (b, t) = rect("[0,1]x[0,1]").split(Axis::Horizontal, &q("1/3")).unwrap();
        assert_eq!(b, rect("[0,1]x[0,1/3]"));
        assert_eq!(t, rect("[0,1]x[1/3,1]"));

        let half_root = q("0+1/2*sqrt2");
        let (l, r) = rect("[0,1]x[0,1]").split(Axis::Vertical, &half_root).unwrap();
        assert_eq!(l.width(), half_root);
        assert_eq!(r.width(), q("1-1/2*sqrt2"));
        assert_eq!(l.area() + r.area(), q("1"));
    }

    #[test]
    fn split_on_boundary_fails() {
        let unit = rect("[0,1]x[0,1]");
        assert!(matches!(
            unit.split(Axis::Vertical, &q("0")),
            Err(GeometryError::SplitOutOfRange { .. })
        ));
        assert!(unit.split(Axis::Horizontal, &q("1")).is_err());
        assert!(unit.split(Axis::Horizontal, &q("3/2")).is_err());
    }

    #[test]
    fn dyadic_recognition_examples() {
        assert_eq!(rect("[0,1]x[0,1]").as_dyadic_square(), Some(DyadicSquare::new(0, 0, 0)));
        assert_eq!(
            rect("[1/2,3/4]x[1/4,1/2]").as_dyadic_square(),
            Some(DyadicSquare::new(2, 2, 1))
        );
        assert_eq!(rect("[0,1]x[1,sqrt2]").as_dyadic_square(), None);
        assert_eq!(rect("[0,2]x[0,2]").as_dyadic_square(), None);
        assert_eq!(rect("[1/8,5/8]x[0,1/2]").as_dyadic_square(), None);
        assert_eq!(rect("[0,1/3]x[0,1/3]").as_dyadic_square(), None);
        assert_eq!(
            rect("[-3/4,-1/2]x[5,21/4]").as_dyadic_square(),
            Some(DyadicSquare::new(2, -3, 20))
        );
    }

    #[test]
    fn inner_cover_examples() {
        let unit = rect("[0,1]x[0,1]");
        let cover = dyadic_inner_cover(&unit, 1);
        assert_eq!(cover.len(), 4);
        assert!(cover.iter().all(|s| s.side() == q("1/2")));

        // floor(4 sqrt2) = 5, so rows 4..5 and columns 0..4
        let thin = rect("[0,1]x[1,sqrt2]");
        let cover = thin.dyadic_inner_cover(2);
        assert_eq!(cover.columns(), BigInt::from(4));
        assert_eq!(cover.rows(), BigInt::from(1));
        assert_eq!(dyadic_inner_cover(&thin, 2).len(), 4);

        assert!(dyadic_inner_cover(&rect("[0,1/3]x[0,1/3]"), 1).is_empty());
        assert!(rect("[0,1/3]x[0,1/3]").dyadic_inner_cover(1).bounding_rect().is_none());
    }

    #[test]
    fn inner_cover_squares_are_inside_and_disjoint() {
        let r = rect("[-1/3,1+1/5*sqrt2]x[1/7,sqrt2]");
        let squares: Vec<Rect> = dyadic_inner_cover(&r, 3).iter().map(DyadicSquare::to_rect).collect();
        assert!(!squares.is_empty());
        for (i, s) in squares.iter().enumerate() {
            assert!(r.contains(s));
            for t in &squares[i + 1..] {
                assert!(!s.interiors_overlap(t));
            }
        }
        let cover = r.dyadic_inner_cover(3);
        assert_eq!(BigInt::from(squares.len()), cover.len());
        let total: QNum = squares.iter().map(Rect::area).sum();
        assert_eq!(total, cover.covered_area());
    }

    #[test]
    fn rect_literal_round_trip() {
        let r = rect("[0,1]x[1,0+1*sqrt2]");
        assert_eq!(r.to_string(), "[0,1]x[1,0+1*sqrt2]");
        assert_eq!(r.to_string().parse::<Rect>().unwrap(), r);
        assert!("[0,1]x[0,1".parse::<Rect>().is_err());
        assert!("[0,1][0,1]".parse::<Rect>().is_err());
        assert!("[0;1]x[0,1]".parse::<Rect>().is_err());
    }

    fn coord() -> impl Strategy<Value = QNum> {
        (-40i64..=40, 1i64..=8, -3i64..=3, 1i64..=4)
            .prop_map(|(a, d, b, e)| QNum::frac(a, d) + QNum::frac(b, e) * QNum::sqrt2())
    }

    fn any_rect() -> impl Strategy<Value = Rect> {
        (coord(), coord(), coord(), coord()).prop_filter_map("degenerate", |(a, b, c, d)| {
            Rect::new(a.clone().min(b.clone()), a.max(b), c.clone().min(d.clone()), c.max(d)).ok()
        })
    }

    proptest! {
        #[test]
        fn split_conserves_area(r in any_rect(), t in 1i64..64, vertical: bool) {
            let axis = if vertical { Axis::Vertical } else { Axis::Horizontal };
            let (lo, hi) = if vertical { (r.x1(), r.x2()) } else { (r.y1(), r.y2()) };
            let c = lo + &(&(hi - lo) * &QNum::frac(t, 64));
            let (a, b) = r.split(axis, &c).unwrap();
            prop_assert_eq!(a.area() + b.area(), r.area());
            prop_assert!(a.diameter_sq() < r.diameter_sq());
            prop_assert!(b.diameter_sq() < r.diameter_sq());
            prop_assert!(!a.interiors_overlap(&b));
        }

        #[test]
        fn inner_cover_error_bound(r in any_rect(), order in 0u32..7) {
            let here = r.dyadic_inner_cover(order);
            let next = r.dyadic_inner_cover(order + 1);
            prop_assert!(next.covered_area() >= here.covered_area());
            let gap = r.area() - here.covered_area();
            let h = QNum::pow2(-i64::from(order));
            let bound = QNum::from_integer(2) * &h * (r.width() + r.height()) + QNum::from_integer(4) * &h * &h;
            prop_assert!(!gap.is_negative());
            prop_assert!(gap <= bound);
        }

        #[test]
        fn mesh_identity_round_trip(order in 0u32..=12, k in -(1i64 << 15)..=(1i64 << 15), m in -(1i64 << 15)..=(1i64 << 15)) {
            let sq = DyadicSquare::new(order, k, m);
            let r = sq.to_rect();
            prop_assert!(r.x1().is_dyadic() && r.x2().is_dyadic() && r.y1().is_dyadic() && r.y2().is_dyadic());
            prop_assert_eq!(r.as_dyadic_square(), Some(sq));
        }

        #[test]
        fn rect_literal_parses_back(r in any_rect()) {
            prop_assert_eq!(r.to_string().parse::<Rect>().unwrap(), r);
        }
    }
}
