//! Weierstrass models over `K`: invariants, group law, changes of variables,
//! reduction to residue fields and torsion.

mod curve;
mod group;
mod reduction;
mod torsion;
mod transform;

pub use curve::{format_point, parse_point, Curve, Invariants};
pub use group::{Coeff, Point};
pub use reduction::{reduce_curve, ResidueCurve, MAX_COUNT_FIELD};
pub use torsion::{torsion_bound, torsion_subgroup, two_torsion_points, Torsion};
pub use transform::Isomorphism;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("coefficients from different fields: Q(sqrt({0})) vs Q(sqrt({1}))")]
    FieldMismatch(i64, i64),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("cannot parse point {input:?}: {reason}")]
    PointParse { input: String, reason: String },
    #[error("scaling factor u must be nonzero")]
    ZeroScaling,
    #[error("model is not integral at {0}")]
    NonIntegral(String),
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("residue field of size {0} is too large to count points")]
    FieldTooLarge(u64),
    #[error("torsion inconclusive: reduction bound {bound}, exhibited {exhibited}")]
    TorsionInconclusive { bound: u64, exhibited: u64 },
}
