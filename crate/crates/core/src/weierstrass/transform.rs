use super::group::Point;
use super::{Curve, CurveError};
use crate::quadfield::{FieldElem, QuadField};
use serde::Serialize;
use std::fmt;

/// The change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: FieldElem,
    pub r: FieldElem,
    pub s: FieldElem,
    pub t: FieldElem,
}

impl Isomorphism {
    pub fn new(u: FieldElem, r: FieldElem, s: FieldElem, t: FieldElem) -> Result<Self, CurveError> {
        if u.is_zero() {
            return Err(CurveError::ZeroScaling);
        }
        Ok(Isomorphism { u, r, s, t })
    }

    pub fn identity(field: QuadField) -> Self {
        Isomorphism {
            u: field.one(),
            r: field.zero(),
            s: field.zero(),
            t: field.zero(),
        }
    }

    pub fn scaling(u: FieldElem) -> Result<Self, CurveError> {
        let f = u.field();
        Isomorphism::new(u, f.zero(), f.zero(), f.zero())
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    pub fn inverse(&self) -> Self {
        let ui = self.u.inverse().expect("u is nonzero");
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        Isomorphism {
            r: -(&self.r * &ui2),
            s: -(&self.s * &ui),
            t: (&self.r * &self.s - &self.t) * &ui3,
            u: ui,
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Self {
        let u2 = &self.u * &self.u;
        Isomorphism {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.u * &next.t + &self.s * &u2 * &next.r,
        }
    }

    pub fn apply(&self, c: &Curve) -> Curve {
        let [a1, a2, a3, a4, a6] = c.a_invariants();
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let ui = u.inverse().expect("u is nonzero");
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui3 * &ui3;
        let na1 = (a1 + s * 2) * &ui;
        let na2 = (a2 - s * a1 + r * 3 - s * s) * &ui2;
        let na3 = (a3 + r * a1 + t * 2) * &ui3;
        let na4 = (a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2) * &ui4;
        let na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * &ui6;
        Curve::new([na1, na2, na3, na4, na6]).expect("isomorphic model is nonsingular")
    }

    /// Image on the new model of a point on the old one.
    pub fn map_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let ui = self.u.inverse().expect("u is nonzero");
                let ui2 = &ui * &ui;
                let xr = x - &self.r;
                let nx = &xr * &ui2;
                let ny = (y - &self.s * &xr - &self.t) * (&ui2 * &ui);
                Point::Affine(nx, ny)
            }
        }
    }
}

impl fmt::Display for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[u={}, r={}, s={}, t={}]", self.u, self.r, self.s, self.t)
    }
}

impl Serialize for Isomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: QuadField, s: &str) -> FieldElem {
        FieldElem::parse(f, s).unwrap()
    }

    fn sample() -> (QuadField, Curve, Isomorphism) {
        let f = QuadField::new(43).unwrap();
        let c = Curve::new([
            e(f, "1"),
            e(f, "-1 + 1*sqrt(43)"),
            e(f, "3"),
            e(f, "1/2"),
            e(f, "7 + -2*sqrt(43)"),
        ])
        .unwrap();
        let iso = Isomorphism::new(
            e(f, "2 + 1*sqrt(43)"),
            e(f, "1/3"),
            e(f, "-5*sqrt(43)"),
            e(f, "4 + 1*sqrt(43)"),
        )
        .unwrap();
        (f, c, iso)
    }

    #[test]
    fn identity_is_neutral() {
        let (f, c, _) = sample();
        assert_eq!(Isomorphism::identity(f).apply(&c), c);
    }

    #[test]
    fn discriminant_scales_by_u12() {
        let (_, c, iso) = sample();
        let d = iso.apply(&c);
        assert_eq!(d.discriminant() * &iso.u.pow(12), *c.discriminant());
        assert_eq!(d.c4() * &iso.u.pow(4), *c.c4());
        assert_eq!(d.c6() * &iso.u.pow(6), *c.c6());
    }

    #[test]
    fn inverse_and_composition_round_trip() {
        let (f, c, iso) = sample();
        assert_eq!(iso.inverse().apply(&iso.apply(&c)), c);
        assert!(iso.then(&iso.inverse()).is_identity());
        let other = Isomorphism::new(e(f, "-3"), e(f, "1*sqrt(43)"), e(f, "2"), e(f, "-1/5")).unwrap();
        assert_eq!(iso.then(&other).apply(&c), other.apply(&iso.apply(&c)));
    }

    #[test]
    fn points_follow_the_model() {
        let f = QuadField::new(43).unwrap();
        let c = Curve::short(f.zero(), e(f, "1728")).unwrap();
        let p = c.parse_point("(-104/9, -56/27*sqrt(43))").unwrap();
        let t = c.parse_point("(-12, 0)").unwrap();
        let (_, _, iso) = sample();
        let d = iso.apply(&c);
        let (ip, it) = (iso.map_point(&p), iso.map_point(&t));
        assert!(d.is_on_curve(&ip) && d.is_on_curve(&it));
        assert_eq!(d.add(&ip, &it), iso.map_point(&c.add(&p, &t)));
    }

    #[test]
    fn zero_scaling_is_rejected() {
        let f = QuadField::new(2).unwrap();
        assert!(Isomorphism::new(f.zero(), f.zero(), f.zero(), f.zero()).is_err());
    }
}
