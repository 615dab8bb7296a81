//! Mordell curves `y^2 = x^3 +- 1728 eps^n`, their integral points, and the
//! Weierstrass model `y^2 = x^3 - 27 c4 x - 54 c6` attached to a pair `(c4, c6)`.

mod generators;
mod search;

pub use generators::{
    combine_and_filter, verify_generators, GeneratorData, GeneratorReport, IntegralPoint, IntegralPointSet, NamedPoint,
    RANK_ASSUMPTION,
};
pub use search::{brute_search_integral, MAX_SEARCH_H};

use crate::quadfield::{fundamental_unit, FieldElem, QuadField};
use crate::weierstrass::{Curve, CurveError, Point};
use num_traits::{One, Signed};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MordellError {
    #[error("exponent n = {0} must satisfy 0 <= n < 12")]
    InvalidExponent(u32),
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i32),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{name} = {point} is not on {curve}")]
    NotOnCurve { name: String, point: String, curve: String },
    #[error("torsion point {name} has order {order} instead of 2")]
    TorsionOrder { name: String, order: String },
    #[error("generator {name} is a torsion point")]
    TorsionGenerator { name: String },
    #[error("generators are dependent: {0}")]
    Dependent(String),
    #[error("claimed rank {claimed} but {given} free generators given")]
    RankMismatch { claimed: usize, given: usize },
    #[error("search bound H = {0} exceeds {MAX_SEARCH_H}")]
    BoundTooLarge(u64),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `E_n^{sign}: y^2 = x^3 + sign * 1728 * eps^n`.
#[derive(Debug, Clone)]
pub struct MordellCurve {
    field: QuadField,
    sign: i32,
    n: u32,
    epsilon: FieldElem,
    curve: Curve,
}

/// Builds `E_n^{sign}` with the fundamental unit `eps > 1`.
pub fn build_mordell(field: QuadField, sign: i32, n: u32) -> Result<MordellCurve, MordellError> {
    build_mordell_with_unit(&fundamental_unit(field), sign, n)
}

/// Builds `E_n^{sign}` with a chosen generator `eps` of the units modulo torsion.
pub fn build_mordell_with_unit(epsilon: &FieldElem, sign: i32, n: u32) -> Result<MordellCurve, MordellError> {
    if n >= 12 {
        return Err(MordellError::InvalidExponent(n));
    }
    if sign != 1 && sign != -1 {
        return Err(MordellError::InvalidSign(sign));
    }
    if !epsilon.norm().abs().is_one() || !epsilon.is_integral() {
        return Err(MordellError::NotAUnit(epsilon.to_string()));
    }
    let field = epsilon.field();
    let k = epsilon.pow(n as i64) * (1728 * sign as i64);
    let curve = Curve::short(field.zero(), k)?;
    Ok(MordellCurve {
        field,
        sign,
        n,
        epsilon: epsilon.clone(),
        curve,
    })
}

impl MordellCurve {
    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn epsilon(&self) -> &FieldElem {
        &self.epsilon
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// The constant term `sign * 1728 * eps^n`.
    pub fn constant(&self) -> &FieldElem {
        self.curve.a6()
    }

    /// Discriminant class `Delta = -sign * eps^n` whose `(c4, c6)` pairs are
    /// the points of this curve (`c6^2 = c4^3 - 1728 Delta`).
    pub fn delta_class(&self) -> FieldElem {
        self.epsilon.pow(self.n as i64) * (-self.sign as i64)
    }

    pub fn label(&self) -> String {
        format!("E_{}^{}", self.n, if self.sign > 0 { '+' } else { '-' })
    }

    /// `(x, y) -> (eps^2 x, eps^3 y)`, a bijection onto `E_{n+6}` with the same sign.
    pub fn shift_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x * &self.epsilon.pow(2), y * &self.epsilon.pow(3)),
        }
    }
}

impl fmt::Display for MordellCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: y^2 = x^3 + {}", self.label(), self.constant())
    }
}

/// `E_C: y^2 = x^3 - 27 c4 x - 54 c6`, with `Delta(E_C) = 6^12 (c4^3 - c6^2) / 1728`.
pub fn curve_from_c4c6(c4: &FieldElem, c6: &FieldElem) -> Result<Curve, CurveError> {
    let c = Curve::short(c4 * -27, c6 * -54)?;
    let expected = (c4 * c4 * c4 - c6 * c6) * 2_176_782_336i64 / FieldElem::from_int(c4.field(), 1728);
    assert_eq!(*c.discriminant(), expected, "disc(E_C) = 6^12 (c4^3 - c6^2) / 1728");
    Ok(c)
}
