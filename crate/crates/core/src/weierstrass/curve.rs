use super::group::{self, Point};
use super::CurveError;
use crate::quadfield::{FieldElem, QuadField};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(serialize_with = "ser_display")]
    pub b2: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub b4: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub b6: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub b8: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub c4: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub c6: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub disc: FieldElem,
    #[serde(serialize_with = "ser_display")]
    pub j: FieldElem,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Invariants {
    fn compute(a: &[FieldElem; 5]) -> Result<Self, CurveError> {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + a2 * 4;
        let b4 = a1 * a3 + a4 * 2;
        let b6 = a3 * a3 + a6 * 4;
        let b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - &b4 * 24;
        let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * 36 - &b6 * 216;
        let disc = -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27 + &b2 * &b4 * &b6 * 9;
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        assert_eq!(&disc * 1728, &c4 * &c4 * &c4 - &c6 * &c6, "1728 disc = c4^3 - c6^2");
        assert_eq!(&b8 * 4, &b2 * &b6 - &b4 * &b4, "4 b8 = b2 b6 - b4^2");
        let j = (&c4 * &c4 * &c4).checked_div(&disc).expect("disc is nonzero");
        Ok(Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        })
    }
}

/// A nonsingular long Weierstrass model over a real quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    field: QuadField,
    a: [FieldElem; 5],
    inv: Invariants,
}

impl Curve {
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` from `[a1, a2, a3, a4, a6]`.
    pub fn new(a: [FieldElem; 5]) -> Result<Self, CurveError> {
        let field = a[0].field();
        if let Some(bad) = a.iter().find(|c| c.field() != field) {
            return Err(CurveError::FieldMismatch(field.m(), bad.field().m()));
        }
        let inv = Invariants::compute(&a)?;
        Ok(Curve { field, a, inv })
    }

    /// `y^2 = x^3 + a4 x + a6`
    pub fn short(a4: FieldElem, a6: FieldElem) -> Result<Self, CurveError> {
        let z = a4.field().zero();
        Curve::new([z.clone(), z.clone(), z, a4, a6])
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn a_invariants(&self) -> &[FieldElem; 5] {
        &self.a
    }

    pub fn a1(&self) -> &FieldElem {
        &self.a[0]
    }
    pub fn a2(&self) -> &FieldElem {
        &self.a[1]
    }
    pub fn a3(&self) -> &FieldElem {
        &self.a[2]
    }
    pub fn a4(&self) -> &FieldElem {
        &self.a[3]
    }
    pub fn a6(&self) -> &FieldElem {
        &self.a[4]
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn c4(&self) -> &FieldElem {
        &self.inv.c4
    }

    pub fn c6(&self) -> &FieldElem {
        &self.inv.c6
    }

    pub fn discriminant(&self) -> &FieldElem {
        &self.inv.disc
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(FieldElem::is_integral)
    }

    pub fn is_on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                x.field() == self.field && y.field() == self.field && group::satisfies(&self.a, x, y)
            }
        }
    }

    /// Builds an affine point, checking that it lies on the curve.
    pub fn point(&self, x: FieldElem, y: FieldElem) -> Result<Point, CurveError> {
        let p = Point::Affine(x, y);
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(CurveError::NotOnCurve(format_point(&p)))
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        group::negate(&self.a, p)
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        group::add(&self.a, p, q)
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        group::add(&self.a, p, &self.negate(q))
    }

    pub fn scalar_mul(&self, k: i64, p: &Point) -> Point {
        group::scalar_mul(&self.a, k, p)
    }

    /// Smallest `1 <= k <= max` with `kP = O`.
    pub fn order_up_to(&self, p: &Point, max: u64) -> Option<u64> {
        let mut acc = p.clone();
        for k in 1..=max {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Parses `O` or `(x, y)` and checks membership.
    pub fn parse_point(&self, s: &str) -> Result<Point, CurveError> {
        let p = parse_point(self.field, s)?;
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(CurveError::NotOnCurve(s.trim().to_string()))
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a[0], self.a[1], self.a[2], self.a[3], self.a[4]
        )
    }
}

pub fn format_point(p: &Point) -> String {
    match p {
        Point::Infinity => "O".to_string(),
        Point::Affine(x, y) => format!("({x}, {y})"),
    }
}

/// Point grammar: `O`, or `(x, y)` with both coordinates in the element grammar.
pub fn parse_point(field: QuadField, s: &str) -> Result<Point, CurveError> {
    let s = s.trim();
    if s == "O" {
        return Ok(Point::Infinity);
    }
    let bad = |reason: &str| CurveError::PointParse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad("expected O or (x, y)"))?;
    let mut parts = inner.split(',');
    let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected exactly two coordinates"));
    };
    let x = FieldElem::parse(field, x).map_err(|e| bad(&e.to_string()))?;
    let y = FieldElem::parse(field, y).map_err(|e| bad(&e.to_string()))?;
    Ok(Point::Affine(x, y))
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_point(self))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
