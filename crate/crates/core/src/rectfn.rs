//! Additive functions of rectangles built as corner differences of point
//! functions, the dyadic-positive counterexample, continuity families, and
//! sampled liminf-quotient probes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Axis, GeometryError, Rect};
use crate::numeric::{rational_literal, NumericError, QNum, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RectFnError {
    #[error("exponent alpha = {0} is outside [0, 2]")]
    AlphaOutOfRange(String),
    #[error("unknown function {0:?}; expected counterexample, product or constant:<number>")]
    UnknownFunction(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Finite table of point values, zero everywhere else.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointTable {
    values: HashMap<(QNum, QNum), QNum>,
}

impl PointTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: QNum, y: QNum, value: QNum) -> Option<QNum> {
        self.values.insert((x, y), value)
    }

    pub fn get(&self, x: &QNum, y: &QNum) -> QNum {
        // tuple keys need an owned lookup key
        self.values
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_else(QNum::zero)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<((QNum, QNum), QNum)> for PointTable {
    fn from_iter<I: IntoIterator<Item = ((QNum, QNum), QNum)>>(iter: I) -> Self {
        PointTable {
            values: iter.into_iter().collect(),
        }
    }
}

/// Exactly evaluable point function `f(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointFunction {
    /// `1` when `y` is irrational, `x*y` when `y` is rational.
    Counterexample,
    /// `x*y`.
    Product,
    Constant(QNum),
    Custom(PointTable),
}

impl PointFunction {
    pub fn evaluate(&self, x: &QNum, y: &QNum) -> QNum {
        match self {
            PointFunction::Counterexample => {
                if y.is_rational() {
                    x * y
                } else {
                    QNum::one()
                }
            }
            PointFunction::Product => x * y,
            PointFunction::Constant(c) => c.clone(),
            PointFunction::Custom(table) => table.get(x, y),
        }
    }
}

/// Additive rectangle function `F(I) = f(x2,y2) + f(x1,y1) - f(x1,y2) - f(x2,y1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectFunction {
    point: PointFunction,
    label: String,
}

impl RectFunction {
    pub fn corner_difference(point: PointFunction, label: impl Into<String>) -> Self {
        RectFunction {
            point,
            label: label.into(),
        }
    }

    pub fn counterexample() -> Self {
        Self::corner_difference(PointFunction::Counterexample, "counterexample")
    }

    pub fn product() -> Self {
        Self::corner_difference(PointFunction::Product, "product")
    }

    pub fn constant(c: QNum) -> Self {
        let label = format!("constant:{c}");
        Self::corner_difference(PointFunction::Constant(c), label)
    }

    pub fn custom(table: PointTable) -> Self {
        Self::corner_difference(PointFunction::Custom(table), "custom")
    }

    pub fn point_function(&self) -> &PointFunction {
        &self.point
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, r: &Rect) -> QNum {
        let f = |x: &QNum, y: &QNum| self.point.evaluate(x, y);
        f(r.x2(), r.y2()) + f(r.x1(), r.y1()) - f(r.x1(), r.y2()) - f(r.x2(), r.y1())
    }

    /// `F(I1) + F(I2) - F(I)` for the split of `r`; zero certifies additivity.
    pub fn check_additivity(&self, r: &Rect, axis: Axis, at: &QNum) -> Result<QNum, GeometryError> {
        let (first, second) = r.split(axis, at)?;
        Ok(self.evaluate(&first) + self.evaluate(&second) - self.evaluate(r))
    }
}

impl fmt::Display for RectFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Parses the CLI names `counterexample`, `product` and `constant:<qnum>`.
impl FromStr for RectFunction {
    type Err = RectFnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "counterexample" => Ok(Self::counterexample()),
            "product" => Ok(Self::product()),
            other => match other.strip_prefix("constant:") {
                Some(lit) => Ok(Self::constant(lit.parse()?)),
                None => Err(RectFnError::UnknownFunction(s.to_string())),
            },
        }
    }
}

/// Thin rectangles `[0,1] x [1, 1 + (sqrt2 - 1)/2^j]`, `j = 1..=k`, whose
/// areas go to zero while their widths stay 1, with the exact values of `F`.
pub fn strong_continuity_witness(f: &RectFunction, k: u32) -> Vec<(Rect, QNum)> {
    let silver_gap = QNum::sqrt2() - QNum::one();
    (1..=k)
        .map(|j| {
            let top = QNum::one() + &silver_gap * &QNum::pow2(-i64::from(j));
            let r = Rect::new(QNum::zero(), QNum::one(), QNum::one(), top).expect("sqrt2 - 1 is positive");
            let value = f.evaluate(&r);
            (r, value)
        })
        .collect()
}

/// Squares of side `2^-j` centered at `center`, `j = 1..=k`, with exact values.
pub fn weak_continuity_probe(f: &RectFunction, center: (&QNum, &QNum), k: u32) -> Vec<(Rect, QNum)> {
    (1..=k)
        .map(|j| {
            let half = QNum::pow2(-i64::from(j) - 1);
            let r = Rect::new(center.0 - &half, center.0 + &half, center.1 - &half, center.1 + &half)
                .expect("positive side");
            let value = f.evaluate(&r);
            (r, value)
        })
        .collect()
}

/// Number of fractional digits in a flagged approximate quotient.
pub const APPROX_PRECISION: usize = 12;

/// `F(Q) / |Q|^alpha`, exact when the power stays in Q(sqrt2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Quotient {
    Exact {
        value: QNum,
        approx: String,
    },
    /// Flagged: `|Q|^alpha` is not in Q(sqrt2), so only a decimal is given.
    Approximate {
        approx: String,
        precision: usize,
    },
}

impl Quotient {
    fn exact(value: QNum) -> Self {
        let approx = value.approximate(APPROX_PRECISION);
        Quotient::Exact { value, approx }
    }

    pub fn exact_value(&self) -> Option<&QNum> {
        match self {
            Quotient::Exact { value, .. } => Some(value),
            Quotient::Approximate { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quotient::Exact { value, .. } => value.to_f64(),
            Quotient::Approximate { approx, .. } => approx.parse().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeParams {
    pub point: (QNum, QNum),
    pub alpha: Rational,
    /// Scales `2^-1 .. 2^-depth`.
    pub depth: u32,
    /// Placements per scale; the first is centered on the point.
    pub offsets_per_scale: u32,
    /// When set, each sample records whether its square lies inside it.
    pub region: Option<Rect>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub square: Rect,
    /// Fractional position of the point inside the square along x and y.
    pub offset: (QNum, QNum),
    pub value: QNum,
    pub quotient: Quotient,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_region: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeScale {
    pub scale: u32,
    pub side: QNum,
    pub diameter_sq: QNum,
    pub samples: Vec<ProbeSample>,
    pub min_quotient: Quotient,
}

/// Finite evidence for `liminf F(Q)/|Q|^alpha >= 0` at one point; never a
/// certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub function: String,
    pub point: (QNum, QNum),
    #[serde(with = "rational_str")]
    pub alpha: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<Rect>,
    pub scales: Vec<ProbeScale>,
}

impl ProbeReport {
    pub fn samples(&self) -> impl Iterator<Item = &ProbeSample> {
        self.scales.iter().flat_map(|s| s.samples.iter())
    }
}

mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_literal(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::numeric::parse_rational_literal(&s).map_err(serde::de::Error::custom)
    }
}

/// Van der Corput fractions 1/2, 1/4, 3/4, 1/8, 5/8, ... (index from 1).
fn van_der_corput(mut i: u32) -> QNum {
    let mut numer = 0i64;
    let mut denom = 1i64;
    while i > 0 {
        numer = 2 * numer + i64::from(i & 1);
        denom *= 2;
        i >>= 1;
    }
    QNum::frac(numer, denom)
}

/// `2^e` for rational `e`, when it lies in Q(sqrt2): `2e` must be an integer.
fn pow2_rational(exp: &Rational) -> Option<QNum> {
    let doubled = exp * BigRational::from_integer(2.into());
    if !doubled.is_integer() {
        return None;
    }
    let t = doubled.to_integer().to_i64()?;
    let half = t.div_euclid(2);
    let p = QNum::pow2(half);
    Some(if t.rem_euclid(2) == 1 { p * QNum::sqrt2() } else { p })
}

fn in_alpha_range(alpha: &Rational) -> bool {
    !alpha.is_negative() && *alpha <= Rational::from_integer(BigInt::from(2))
}

/// Samples `F(Q)/|Q|^alpha` over squares of side `2^-j` containing the point.
///
/// At each scale the squares are placed so the point sits at fractional
/// position `(t, 1 - t)` inside them, with `t` running through the van der
/// Corput sequence; the first placement (`t = 1/2`) is centered.
pub fn liminf_quotient_probe(f: &RectFunction, params: &ProbeParams) -> Result<ProbeReport, RectFnError> {
    if !in_alpha_range(&params.alpha) {
        return Err(RectFnError::AlphaOutOfRange(rational_literal(&params.alpha)));
    }
    let (px, py) = &params.point;
    let alpha_f = params.alpha.to_f64().unwrap_or(f64::NAN);
    let scales = (1..=params.depth)
        .map(|j| {
            let side = QNum::pow2(-i64::from(j));
            // |Q| = 2^(-2j), so |Q|^alpha = 2^(-2j alpha)
            let power_exp = -(&params.alpha) * BigRational::from_integer(BigInt::from(2 * j));
            let power = pow2_rational(&power_exp);
            let samples: Vec<ProbeSample> = (1..=params.offsets_per_scale.max(1))
                .map(|i| {
                    let tx = van_der_corput(i);
                    let ty = QNum::one() - &tx;
                    let x1 = px - &(&tx * &side);
                    let y1 = py - &(&ty * &side);
                    let square = Rect::square(x1, y1, &side).expect("positive side");
                    let value = f.evaluate(&square);
                    let quotient = match &power {
                        Some(p) => Quotient::exact(&value / p),
                        None => {
                            let approx = value.to_f64() * 2f64.powf(2.0 * f64::from(j) * alpha_f);
                            Quotient::Approximate {
                                approx: format!("{approx:.APPROX_PRECISION$}"),
                                precision: APPROX_PRECISION,
                            }
                        }
                    };
                    let inside_region = params.region.as_ref().map(|r| r.contains(&square));
                    ProbeSample {
                        square,
                        offset: (tx, ty),
                        value,
                        quotient,
                        inside_region,
                    }
                })
                .collect();
            let min_quotient = minimum(samples.iter().map(|s| &s.quotient));
            ProbeScale {
                scale: j,
                diameter_sq: QNum::from_integer(2) * &side * &side,
                side,
                samples,
                min_quotient,
            }
        })
        .collect();
    Ok(ProbeReport {
        function: f.label().to_string(),
        point: params.point.clone(),
        alpha: params.alpha.clone(),
        region: params.region.clone(),
        scales,
    })
}

fn minimum<'a>(quotients: impl Iterator<Item = &'a Quotient>) -> Quotient {
    quotients
        .cloned()
        .reduce(|best, q| match (best.exact_value(), q.exact_value()) {
            (Some(a), Some(b)) => {
                if b < a {
                    q
                } else {
                    best
                }
            }
            _ => {
                if q.to_f64() < best.to_f64() {
                    q
                } else {
                    best
                }
            }
        })
        .expect("at least one sample per scale")
}
