use super::group::{self, Point};
use super::{Curve, CurveError};
use crate::quadfield::{PrimeIdeal, ResidueElem, ResidueField};

/// Largest residue field for which points are counted.
pub const MAX_COUNT_FIELD: u64 = 1_000_000;

/// A model over the residue field at a prime of good reduction.
#[derive(Debug, Clone)]
pub struct ResidueCurve {
    prime: PrimeIdeal,
    a: [ResidueElem; 5],
}

/// Reduction of a model that is integral with unit discriminant at `prime`.
pub fn reduce_curve(curve: &Curve, prime: &PrimeIdeal) -> Result<ResidueCurve, CurveError> {
    if curve.field() != prime.field() {
        return Err(CurveError::FieldMismatch(curve.field().m(), prime.field().m()));
    }
    let mut a = [prime.residue_field().zero(); 5];
    for (slot, c) in a.iter_mut().zip(curve.a_invariants()) {
        *slot = prime
            .reduce(c)
            .map_err(|_| CurveError::NonIntegral(prime.to_string()))?;
    }
    if prime.valuation(curve.discriminant()) != Some(0) {
        return Err(CurveError::BadReduction(prime.to_string()));
    }
    Ok(ResidueCurve {
        prime: prime.clone(),
        a,
    })
}

impl ResidueCurve {
    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn residue_field(&self) -> ResidueField {
        self.prime.residue_field()
    }

    pub fn a_invariants(&self) -> &[ResidueElem; 5] {
        &self.a
    }

    pub fn is_on_curve(&self, p: &Point<ResidueElem>) -> bool {
        group::on_curve(&self.a, p)
    }

    pub fn add(&self, p: &Point<ResidueElem>, q: &Point<ResidueElem>) -> Point<ResidueElem> {
        group::add(&self.a, p, q)
    }

    pub fn scalar_mul(&self, k: i64, p: &Point<ResidueElem>) -> Point<ResidueElem> {
        group::scalar_mul(&self.a, k, p)
    }

    /// Reduction of a point of the global model; points with a pole go to `O`.
    pub fn reduce_point(&self, p: &Point) -> Result<Point<ResidueElem>, CurveError> {
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine(x, y) => match self.prime.valuation(x) {
                Some(v) if v < 0 => Ok(Point::Infinity),
                _ => {
                    let rx = self
                        .prime
                        .reduce(x)
                        .map_err(|_| CurveError::NonIntegral(p.to_string()))?;
                    let ry = self
                        .prime
                        .reduce(y)
                        .map_err(|_| CurveError::NonIntegral(p.to_string()))?;
                    Ok(Point::Affine(rx, ry))
                }
            },
        }
    }

    /// `#E(F_q)`, infinity included.
    pub fn count_points(&self) -> Result<u64, CurveError> {
        let k = self.residue_field();
        let q = k.size();
        if q > MAX_COUNT_FIELD {
            return Err(CurveError::FieldTooLarge(q));
        }
        if k.characteristic() == 2 {
            return Ok(self.count_points_naive());
        }
        let [a1, a2, a3, a4, a6] = self.a;
        let four = k.from_i64(4);
        let mut n = 1i64;
        for x in k.elements() {
            // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
            let b = a1 * x + a3;
            let rhs = ((x + a2) * x + a4) * x + a6;
            let d = b * b + four * rhs;
            n += 1 + d.legendre() as i64;
        }
        Ok(n as u64)
    }

    /// `#E(F_q)` by testing every pair `(x, y)`.
    pub fn count_points_naive(&self) -> u64 {
        let k = self.residue_field();
        let mut n = 1;
        for x in k.elements() {
            for y in k.elements() {
                if group::satisfies(&self.a, &x, &y) {
                    n += 1;
                }
            }
        }
        n
    }

    /// All points of `E(F_q)`, starting with `O`; only for small fields.
    pub fn points(&self) -> Vec<Point<ResidueElem>> {
        let k = self.residue_field();
        let mut out = vec![Point::Infinity];
        for x in k.elements() {
            for y in k.elements() {
                if group::satisfies(&self.a, &x, &y) {
                    out.push(Point::Affine(x, y));
                }
            }
        }
        out
    }
}
