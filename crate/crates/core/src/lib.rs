//! Exact computations on additive functions of rectangles.
//!
//! Coordinates live in the quadratic field Q(sqrt2) ([`numeric::QNum`]), which
//! is the smallest setting that keeps arithmetic and ordering exact while
//! still containing an irrational number. On top of it sit closed
//! axis-parallel rectangles and the dyadic mesh ([`geometry`]), corner
//! difference rectangle functions ([`rectfn`]) and the greedy square
//! decomposition ([`decompose`]).

pub mod decompose;
pub mod geometry;
pub mod numeric;
pub mod rectfn;

pub use decompose::{decompose, greedy_step, telescope, Decomposition, Step};
pub use geometry::{Axis, DyadicCover, DyadicSquare, GeometryError, Rect};
pub use numeric::{NumericError, QNum, Rational};
pub use rectfn::{PointFunction, PointTable, ProbeParams, ProbeReport, RectFnError, RectFunction};
